#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "loomcheck/engine.hpp"
#include "loomcheck/loopcheck.hpp"

namespace loomcheck {

// One line per expansion step, in construction order: node id, goal,
// rule applied (clause index or negation-case tag), marks.
std::string render_trace(const DerivationForest& forest);

// Graphviz rendering: solid edges for clause edges, dashed edges labeled
// "subsidiary" for the links between parent and child trees; leaf marks
// appear in the node labels.
std::string render_dot(const DerivationForest& forest);

std::string to_string(Mark mark);

// Stable one-line verdict: "QUERY <q> => SUCCEEDS | FAILS | FLOUNDERS |
// UNDETERMINED | PREDICTED-NONTERMINATING <chain> | BUDGET-EXHAUSTED".
std::string verdict_line(const Atom& query, const Verdict& verdict);

// Machine-readable record: kind, witness (node ids, atom renderings, symbol
// strings), expansions used, threshold and budget.
nlohmann::json verdict_json(const Atom& query, const Verdict& verdict,
                            std::uint64_t budget, std::size_t threshold);

}  // namespace loomcheck
