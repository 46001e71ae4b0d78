#include "loomcheck/export.hpp"

#include <sstream>

namespace loomcheck {

std::string to_string(Mark mark) {
  switch (mark) {
    case Mark::None: return "";
    case Mark::SuccessLeaf: return "□t";
    case Mark::FailureLeaf: return "□f";
    case Mark::FlounderLeaf: return "□fl";
    case Mark::Last: return "LAST";
    case Mark::SuccessAndLast: return "□t LAST";
  }
  return "";
}

namespace {

std::string edge_tag(const EdgeLabel& label) {
  if (const auto* c = std::get_if<ClauseEdge>(&label))
    return "C" + std::to_string(c->clause_index + 1);
  if (const auto* n = std::get_if<NegationEdge>(&label)) {
    switch (n->kind) {
      case NegCase::Fail: return "NEG:fail";
      case NegCase::Flounder: return "NEG:flounder";
      case NegCase::Proceed: return "NEG:proceed";
      case NegCase::NonGround: return "NEG:nonground";
    }
  }
  return "nomatch";
}

std::string node_line(const DerivationForest& forest, NodeId id) {
  const Node& n = forest.node(id);
  std::string s = to_string(id) + ": " + to_string(n.goal);
  if (n.mark != Mark::None) s += "  [" + to_string(n.mark) + "]";
  return s;
}

}  // namespace

std::string render_trace(const DerivationForest& forest) {
  std::ostringstream os;
  for (const TraceEvent& ev : forest.events) {
    const Node& n = forest.node(ev.node);
    switch (ev.kind) {
      case TraceEvent::Kind::Expand: {
        os << "expand " << node_line(forest, ev.node);
        if (n.subsidiary) {
          // children of a negation node arrive at resume time
          os << "  subsidiary -> " << to_string(*n.subsidiary);
        } else {
          for (const auto& [label, child] : n.children)
            os << "  " << edge_tag(label) << " -> " << to_string(child);
        }
        os << '\n';
        break;
      }
      case TraceEvent::Kind::Resume: {
        os << "resume " << to_string(ev.node);
        if (ev.neg_case) {
          os << "  " << edge_tag(NegationEdge{*ev.neg_case});
          for (const auto& [label, child] : n.children)
            os << " -> " << to_string(child);
        } else {
          os << "  [LAST]";
        }
        os << '\n';
        break;
      }
      case TraceEvent::Kind::Truncate:
        os << "budget exhausted before " << to_string(ev.node) << " ("
           << forest.budget_spent << " expansions)\n";
        break;
    }
  }
  for (const SldnfTree& t : forest.trees) {
    os << "tree T" << t.id << " rooted at " << to_string(t.root) << ": ";
    switch (t.status) {
      case TreeStatus::InProgress: os << "in progress"; break;
      case TreeStatus::Truncated: os << "truncated"; break;
      case TreeStatus::Complete:
        switch (t.outcome) {
          case TreeOutcome::Success: os << "success"; break;
          case TreeOutcome::Floundered: os << "floundered"; break;
          case TreeOutcome::Undetermined: os << "undetermined"; break;
          case TreeOutcome::AllFailed: os << "all branches failed"; break;
          case TreeOutcome::Unsettled: os << "unsettled"; break;
        }
        if (!t.exhausted) os << " (frontier left unexpanded)";
        break;
    }
    os << '\n';
  }
  return os.str();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render_dot(const DerivationForest& forest) {
  std::ostringstream os;
  os << "digraph forest {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (const Node& n : forest.nodes) {
    std::string label = dot_escape(to_string(n.id) + ": " + to_string(n.goal));
    if (n.mark != Mark::None) label += "\\n" + dot_escape(to_string(n.mark));
    os << "  n" << n.id.index << " [label=\"" << label << "\"];\n";
  }
  for (const Node& n : forest.nodes) {
    for (const auto& [label, child] : n.children) {
      os << "  n" << n.id.index << " -> n" << child.index << " [label=\""
         << dot_escape(edge_tag(label)) << "\"];\n";
    }
    if (n.subsidiary) {
      os << "  n" << n.id.index << " -> n" << n.subsidiary->index
         << " [style=dashed, label=\"subsidiary\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

namespace {

std::string witness_chain(const LoopChainWitness& w) {
  std::string s;
  for (std::size_t i = 0; i < w.nodes.size(); ++i) {
    if (i) s += " ⤳ ";
    s += to_string(w.nodes[i].second);
  }
  return s;
}

}  // namespace

std::string verdict_line(const Atom& query, const Verdict& verdict) {
  std::string line = "QUERY " + to_string(query) + " => ";
  if (verdict.predicted())
    return line + "PREDICTED-NONTERMINATING " + witness_chain(*verdict.witness());
  if (verdict.budget_exhausted()) return line + "BUDGET-EXHAUSTED";
  switch (*verdict.terminated()) {
    case Classification::Succeeds: return line + "SUCCEEDS";
    case Classification::Fails: return line + "FAILS";
    case Classification::Flounders: return line + "FLOUNDERS";
    case Classification::Undetermined: return line + "UNDETERMINED";
    case Classification::Unknown: break;
  }
  return line + "BUDGET-EXHAUSTED";
}

nlohmann::json verdict_json(const Atom& query, const Verdict& verdict,
                            std::uint64_t budget, std::size_t threshold) {
  nlohmann::json j;
  j["query"] = to_string(query);
  j["budget"] = budget;
  j["threshold"] = threshold;
  j["expansions_used"] = verdict.expansions_used;
  if (verdict.predicted()) {
    j["kind"] = "predicted-nonterminating";
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& [node, atom] : verdict.witness()->nodes) {
      nlohmann::json entry;
      entry["node"] = to_string(node);
      entry["tree"] = node.tree;
      entry["atom"] = to_string(atom);
      entry["symbol_string"] = symbol_string(atom).symbols;
      chain.push_back(std::move(entry));
    }
    j["witness"] = std::move(chain);
  } else if (verdict.budget_exhausted()) {
    j["kind"] = "budget-exhausted";
  } else {
    j["kind"] = "terminated";
    j["classification"] = to_string(*verdict.terminated());
    j["main_tree_exhausted"] = verdict.main_tree_exhausted;
  }
  return j;
}

}  // namespace loomcheck
