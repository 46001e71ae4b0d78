#include "loomcheck/loopcheck.hpp"

#include <algorithm>
#include <stdexcept>

namespace loomcheck {

bool is_projection(const SymbolString& a, const SymbolString& b) {
  // greedy left-to-right matching decides the subsequence relation
  std::size_t i = 0;
  for (std::size_t j = 0; i < a.symbols.size() && j < b.symbols.size(); ++j)
    if (a.symbols[i] == b.symbols[j]) ++i;
  return i == a.symbols.size();
}

bool loops_into(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate) return false;
  return is_projection(symbol_string(a), symbol_string(b));
}

std::optional<LoopChainWitness> find_loop_chain(const DerivationForest& forest,
                                                NodeId node,
                                                std::size_t threshold) {
  const Node& n = forest.node(node);
  if (n.goal.empty() || !n.goal.selected().literal.positive())
    return std::nullopt;
  const Atom& current = n.goal.selected().literal.atom;

  // Candidates, oldest ancestor first. The ancestor list is totally ordered
  // by the ancestor relation, so any subsequence of it extended with the
  // current subgoal has the required ancestor ordering; only the projection
  // test between consecutive picks is left to check.
  struct Candidate {
    NodeId node;
    Atom atom;
    SymbolString symbols;
    std::size_t size;
  };
  std::vector<Candidate> chain;
  {
    auto entries = n.goal.selected().ancestors.entries();  // nearest first
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
      if (it->atom.predicate != current.predicate) continue;
      chain.push_back({it->node, it->atom, symbol_string(it->atom),
                       term_size(it->atom)});
    }
  }
  chain.push_back({node, current, symbol_string(current), term_size(current)});

  const std::size_t k = chain.size();
  std::vector<std::size_t> best(k, 1);
  std::vector<std::size_t> prev(k, k);  // k = none
  for (std::size_t i = 1; i < k; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (best[j] + 1 <= best[i]) continue;  // ties keep the earliest link
      if (chain[j].size > chain[i].size) continue;  // necessary for projection
      if (!is_projection(chain[j].symbols, chain[i].symbols)) continue;
      best[i] = best[j] + 1;
      prev[i] = j;
    }
  }

  if (best[k - 1] < threshold) return std::nullopt;
  LoopChainWitness witness;
  for (std::size_t i = k - 1;; i = prev[i]) {
    witness.nodes.push_back({chain[i].node, chain[i].atom});
    if (prev[i] == k) break;
  }
  std::reverse(witness.nodes.begin(), witness.nodes.end());
  return witness;
}

Verdict predict(const Program& program, const Atom& query,
                std::uint64_t budget, std::size_t threshold) {
  if (threshold < 2) throw std::invalid_argument("threshold must be at least 2");
  Executor ex(program, query, budget);
  while (auto node = ex.pending()) {
    if (auto witness = find_loop_chain(ex.forest(), *node, threshold)) {
      Verdict v;
      v.kind = Verdict::PredictedNonTerminating{std::move(*witness)};
      v.expansions_used = ex.forest().budget_spent;
      return v;
    }
    ex.step();
  }
  Verdict v;
  if (ex.state() == Executor::RunState::Truncated)
    v.kind = Verdict::BudgetExhausted{};
  else
    v.kind = Verdict::Terminated{classify(ex.forest())};
  v.expansions_used = ex.forest().budget_spent;
  v.main_tree_exhausted = ex.forest().main().exhausted;
  return v;
}

}  // namespace loomcheck
