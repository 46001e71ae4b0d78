#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "loomcheck/engine.hpp"
#include "loomcheck/syntax.hpp"

namespace loomcheck {

// True iff `a` can be obtained from `b` by removing zero or more elements
// (a not necessarily contiguous subsequence). Reflexive and transitive.
bool is_projection(const SymbolString& a, const SymbolString& b);

// Same predicate symbol and symbol-string projection. Implies
// term_size(a) <= term_size(b).
bool loops_into(const Atom& a, const Atom& b);

// A chain of (node, selected atom) pairs, each an ancestor subgoal of the
// next that also loops into it; all atoms share one predicate symbol.
struct LoopChainWitness {
  std::vector<std::pair<NodeId, Atom>> nodes;  // length >= 2
};

// Scans the ancestor list of the node's positive selected subgoal and
// assembles the longest chain of loop goals ending at that subgoal;
// reported only when its length reaches the threshold. On ties the chain
// through the earliest-created ancestors is kept. Returns nullopt when the
// selected subgoal is not positive.
std::optional<LoopChainWitness> find_loop_chain(const DerivationForest& forest,
                                                NodeId node,
                                                std::size_t threshold);

inline constexpr std::size_t kDefaultThreshold = 3;
inline constexpr std::uint64_t kDefaultBudget = 10000;

// Analyzer outcome. A witness is evidence of a most-likely non-terminating
// derivation, not a proof.
struct Verdict {
  struct Terminated {
    Classification outcome;
  };
  struct PredictedNonTerminating {
    LoopChainWitness witness;
  };
  struct BudgetExhausted {};

  std::variant<Terminated, PredictedNonTerminating, BudgetExhausted> kind;
  std::uint64_t expansions_used = 0;
  bool main_tree_exhausted = true;  // false when a first success cut the search

  bool predicted() const {
    return std::holds_alternative<PredictedNonTerminating>(kind);
  }
  const LoopChainWitness* witness() const {
    auto* p = std::get_if<PredictedNonTerminating>(&kind);
    return p ? &p->witness : nullptr;
  }
  std::optional<Classification> terminated() const {
    auto* p = std::get_if<Terminated>(&kind);
    return p ? std::optional(p->outcome) : std::nullopt;
  }
  bool budget_exhausted() const {
    return std::holds_alternative<BudgetExhausted>(kind);
  }
};

// Interleaves tree construction with loop-chain detection on every selected
// positive subgoal. Returns the first witness whose length reaches the
// threshold, the classification if the forest completes within budget, and
// BudgetExhausted otherwise. budget >= 1, threshold >= 2.
Verdict predict(const Program& program, const Atom& query,
                std::uint64_t budget = kDefaultBudget,
                std::size_t threshold = kDefaultThreshold);

}  // namespace loomcheck
