#include <doctest.h>

#include "loomcheck/parser.hpp"

using namespace loomcheck;

TEST_CASE("facts and rules parse in textual order") {
  Program p = parse_program(
      "% a program with negation\n"
      "p(X) :- \\+ p(f(X)).\n"
      "q.\n");
  REQUIRE(p.clauses.size() == 2);

  const Clause& c1 = p.clauses[0];
  CHECK(c1.head.predicate == "p");
  REQUIRE(c1.head.args.size() == 1);
  CHECK(c1.head.args[0]->is_var());
  REQUIRE(c1.body.size() == 1);
  CHECK(c1.body[0].polarity == Polarity::Negative);
  CHECK(c1.body[0].atom.predicate == "p");
  CHECK(to_string(c1.body[0].atom) == "p(f(X))");

  const Clause& c2 = p.clauses[1];
  CHECK(c2.head.predicate == "q");
  CHECK(c2.head.args.empty());
  CHECK(c2.body.empty());
}

TEST_CASE("queries are single atoms") {
  Atom q = parse_query("p(a)");
  CHECK(q.predicate == "p");
  CHECK(to_string(q) == "p(a)");
  CHECK(to_string(parse_query("append([a], [], X).")) == "append([a], [], X)");
  CHECK_THROWS_AS(parse_query("p(a), q"), ParseError);
  CHECK_THROWS_AS(parse_query(""), ParseError);
}

TEST_CASE("syntax errors carry line and column") {
  SUBCASE("truncated clause") {
    try {
      parse_program("p(X) :-");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 1);
      CHECK(e.column == 8);
      CHECK(std::string(e.what()).find("end of input") != std::string::npos);
    }
  }
  SUBCASE("missing dot") {
    try {
      parse_program("q.\np :- q\nr.\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 3);
      CHECK(e.column == 1);
    }
  }
  SUBCASE("negation in a clause head is rejected") {
    try {
      parse_program("\\+ p(a) :- q.");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line == 1);
      CHECK(e.column == 1);
      CHECK(std::string(e.what()).find("head") != std::string::npos);
    }
  }
  SUBCASE("stray character") {
    CHECK_THROWS_AS(parse_program("p :- q & r."), ParseError);
  }
  SUBCASE("upper-case predicate is rejected") {
    CHECK_THROWS_AS(parse_program("P(a)."), ParseError);
  }
}

TEST_CASE("list sugar") {
  Program p = parse_program("m([X|T], [a, b], []).");
  const Atom& head = p.clauses[0].head;
  REQUIRE(head.args.size() == 3);

  const TermPtr& cons = head.args[0];
  CHECK(cons->is_compound());
  CHECK(cons->name == kListFunctor);
  REQUIRE(cons->args.size() == 2);
  CHECK(cons->args[0]->is_var());
  CHECK(cons->args[1]->is_var());

  CHECK(equal(head.args[1],
              Term::list({Term::constant("a"), Term::constant("b")})));
  CHECK(equal(head.args[2], Term::nil()));
}

TEST_CASE("anonymous variables are distinct") {
  Program p = parse_program("p(_, _).");
  const Atom& head = p.clauses[0].head;
  CHECK(head.args[0]->is_var());
  CHECK(head.args[1]->is_var());
  CHECK(head.args[0]->name != head.args[1]->name);
}

TEST_CASE("comments and whitespace are skipped") {
  Program p = parse_program(
      "% leading comment\n"
      "  p :- % inline\n"
      "     q.    \n"
      "\n");
  REQUIRE(p.clauses.size() == 1);
  CHECK(to_string(p.clauses[0]) == "p :- q.");
}
