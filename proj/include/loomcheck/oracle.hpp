#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loomcheck/syntax.hpp"

namespace loomcheck {

// Brute-force ground truth for function-free programs.

struct GroundInterpretation {
  std::set<Atom> facts;

  bool contains(const Atom& a) const { return facts.count(a) != 0; }
};

struct Stratification {
  // predicates grouped bottom stratum first
  std::vector<std::vector<std::string>> strata;
  std::map<std::string, std::size_t> level;
};

// Predicate strata such that negation only refers to lower strata, or
// nullopt when the program has a cycle through negation.
std::optional<Stratification> stratify(const Program& program);

bool is_function_free(const Program& program);

// Perfect-model fixpoint, stratum by stratum. The Herbrand universe is the
// constants of the program plus `extra_constants` (a single dummy constant
// stands in when that set is empty). Throws std::invalid_argument on
// unstratifiable or non-function-free programs.
GroundInterpretation bottom_up(const Program& program,
                               const std::vector<std::string>& extra_constants = {});

}  // namespace loomcheck
