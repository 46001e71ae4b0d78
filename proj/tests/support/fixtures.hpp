#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "loomcheck/parser.hpp"
#include "loomcheck/syntax.hpp"

namespace loomcheck::testing {

struct CorpusCase {
  std::string name;
  std::string program;
  std::string query;
  std::uint64_t budget;
  std::size_t threshold;
  bool terminating;  // the engine alone completes within the budget
};

// Fixed programs exercised across the suites. The first three are the
// canonical examples; the rest cover the remaining expansion cases.
inline const std::vector<CorpusCase>& corpus() {
  static const std::vector<CorpusCase> cases = {
      {"p1_recursion_through_negation",
       "p(X) :- \\+ p(f(X)).\n", "p(a)", 100, 3, false},
      {"p2_pruned_subsidiary",
       "p :- \\+ q.\nq.\nq :- q.\n", "p", 100, 3, true},
      {"abnormal_self_negation",
       "a :- \\+ a.\n", "a", 100, 2, false},
      {"single_fact", "q.\n", "q", 100, 3, true},
      {"fact_then_loop_clause", "q.\nq :- q.\n", "q", 100, 3, true},
      {"no_matching_clause", "q.\n", "p", 100, 3, true},
      {"flounder_nonground_negation",
       "p :- \\+ r(X).\nr(a).\n", "p", 100, 3, true},
      {"negation_then_rest",
       "p :- \\+ q, r.\nr.\n", "p", 100, 3, true},
      {"negation_fails",
       "p :- \\+ q.\nq.\n", "p", 100, 3, true},
      {"negation_succeeds_alone",
       "p :- \\+ q.\n", "p", 100, 3, true},
      {"append_ground",
       "append([], L, L).\nappend([H|T], L, [H|R]) :- append(T, L, R).\n",
       "append([a, b], [c], X)", 100, 3, true},
      {"positive_self_loop", "t :- t.\n", "t", 100, 3, false},
      {"path_right_recursion",
       "e(a, b).\ne(b, c).\npath(X, Y) :- e(X, Y).\n"
       "path(X, Y) :- e(X, Z), path(Z, Y).\n",
       "path(a, c)", 200, 3, true},
      {"two_negations_in_sequence",
       "p :- \\+ q, \\+ r.\nr.\n", "p", 100, 3, true},
      {"negation_nested_in_subsidiary",
       "a :- \\+ b.\nb :- \\+ c.\n", "a", 100, 3, true},
      {"countdown_decreasing_terms",
       "p(f(X)) :- p(X).\np(a).\n", "p(f(f(f(a))))", 100, 3, true},
      {"list_growth_through_negation",
       "r(L) :- \\+ r([a|L]).\n", "r([])", 100, 3, false},
      {"win_move_two_cycle",
       "win(X) :- move(X, Y), \\+ win(Y).\nmove(a, b).\nmove(b, a).\n",
       "win(a)", 100, 3, false},
  };
  return cases;
}

inline Program parse(const std::string& text) { return parse_program(text); }

inline Atom query(const std::string& text) { return parse_query(text); }

}  // namespace loomcheck::testing
