#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace loomcheck {

// Object-language terms: variables, constants and compound terms.
// Terms are immutable after construction and shared via TermPtr; they are
// only created through the factory functions below.
struct Term;
using TermPtr = std::shared_ptr<const Term>;

// The list constructor and nil are ordinary function symbols.
inline const std::string kListFunctor = "[|]";
inline const std::string kNilName = "[]";

struct Term {
  enum class Kind { Variable, Constant, Compound };

  Kind kind;
  std::string name;           // variable name, constant name or functor
  std::vector<TermPtr> args;  // nonempty exactly when kind == Compound
  bool ground = false;        // no variable occurs below; fixed at creation

  static TermPtr var(std::string name);
  static TermPtr constant(std::string name);
  static TermPtr compound(std::string functor, std::vector<TermPtr> args);
  // [e1,...,en|tail]; tail defaults to nil.
  static TermPtr list(std::vector<TermPtr> elems, TermPtr tail = nullptr);
  static TermPtr nil();

  bool is_var() const { return kind == Kind::Variable; }
  bool is_constant() const { return kind == Kind::Constant; }
  bool is_compound() const { return kind == Kind::Compound; }
};

struct Atom {
  std::string predicate;  // starts lower-case
  std::vector<TermPtr> args;
};

enum class Polarity { Positive, Negative };

struct Literal {
  Polarity polarity = Polarity::Positive;
  Atom atom;

  bool positive() const { return polarity == Polarity::Positive; }
};

struct Clause {
  Atom head;
  std::vector<Literal> body;  // empty body permitted (a fact)
};

// Clause order equals textual order and is semantically relevant.
struct Program {
  std::vector<Clause> clauses;
};

// A term/atom read left to right with every variable replaced by the
// placeholder symbol. The placeholder can never collide with an identifier
// because identifiers start with a lower-case letter.
inline const std::string kVariableSymbol = "\U0001D4B3";

struct SymbolString {
  std::vector<std::string> symbols;

  bool operator==(const SymbolString&) const = default;
};

// Structural equality / ordering (ordering is needed for atom sets).
bool operator==(const Term& a, const Term& b);
inline bool operator!=(const Term& a, const Term& b) { return !(a == b); }
bool equal(const TermPtr& a, const TermPtr& b);
bool operator==(const Atom& a, const Atom& b);
inline bool operator!=(const Atom& a, const Atom& b) { return !(a == b); }
bool operator==(const Literal& a, const Literal& b);
bool operator==(const Clause& a, const Clause& b);
bool operator==(const Program& a, const Program& b);
int compare(const TermPtr& a, const TermPtr& b);
int compare(const Atom& a, const Atom& b);
bool operator<(const Atom& a, const Atom& b);

// Number of occurrences of function symbols, variables and constants.
// The predicate symbol of an atom is not counted.
std::size_t term_size(const TermPtr& t);
std::size_t term_size(const Atom& a);

// For an atom the predicate symbol is the first element of the string.
SymbolString symbol_string(const TermPtr& t);
SymbolString symbol_string(const Atom& a);

// Fresh-variable renaming. Every variable of the clause is replaced by a
// fresh variable "V<n>" drawn from the counter; the counter is advanced
// past the names that were handed out.
Clause rename_apart(const Clause& c, std::uint64_t& counter);

void collect_variables(const TermPtr& t, std::set<std::string>& out);
void collect_variables(const Atom& a, std::set<std::string>& out);
bool is_ground(const TermPtr& t);
bool is_ground(const Atom& a);

// Equal up to variable renaming.
bool variants(const Atom& a, const Atom& b);

// Printing. parse_program(to_string(p)) reproduces p structurally; list
// terms are re-sugared to bracket notation.
std::string to_string(const TermPtr& t);
std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);
std::string to_string(const SymbolString& s);

}  // namespace loomcheck
