#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "loomcheck/syntax.hpp"

namespace loomcheck {

// ---------------------------------------------------------------------------
// Node identity
// ---------------------------------------------------------------------------

// `index` is the creation-order integer, global across the whole forest, so
// no two nodes share a name; `tree` is the SLDNF tree the node belongs to.
struct NodeId {
  std::uint32_t tree = 0;
  std::uint32_t index = 0;

  friend bool operator==(NodeId a, NodeId b) {
    return a.tree == b.tree && a.index == b.index;
  }
  friend bool operator!=(NodeId a, NodeId b) { return !(a == b); }
  friend bool operator<(NodeId a, NodeId b) { return a.index < b.index; }
};

std::string to_string(NodeId id);  // "N<index>"

// ---------------------------------------------------------------------------
// Goals with ancestor lists
// ---------------------------------------------------------------------------

struct AncestorEntry {
  NodeId node;
  Atom atom;  // the positive subgoal selected at that node, as labeled there
};

// Persistent list, nearest ancestor first. Extending shares the tail, so
// literals carried from goal to goal reuse their lists unchanged.
class AncestorList {
 public:
  AncestorList() = default;

  AncestorList prepend(AncestorEntry e) const {
    return AncestorList(std::make_shared<Cell>(Cell{std::move(e), head_}));
  }

  bool empty() const { return head_ == nullptr; }

  std::size_t size() const {
    std::size_t n = 0;
    for (const Cell* c = head_.get(); c; c = c->next.get()) ++n;
    return n;
  }

  // nearest ancestor first
  std::vector<AncestorEntry> entries() const {
    std::vector<AncestorEntry> out;
    for (const Cell* c = head_.get(); c; c = c->next.get())
      out.push_back(c->entry);
    return out;
  }

 private:
  struct Cell {
    AncestorEntry entry;
    std::shared_ptr<Cell> next;

    // hand-over-hand release; long chains must not unwind recursively
    ~Cell() {
      std::shared_ptr<Cell> n = std::move(next);
      while (n && n.use_count() == 1) n = std::move(n->next);
    }
  };

  explicit AncestorList(std::shared_ptr<Cell> head) : head_(std::move(head)) {}

  std::shared_ptr<Cell> head_;
};

struct AnnotatedLiteral {
  Literal literal;
  AncestorList ancestors;
};

// The selected subgoal is always the left-most literal.
struct Goal {
  std::vector<AnnotatedLiteral> literals;

  bool empty() const { return literals.empty(); }
  const AnnotatedLiteral& selected() const { return literals.front(); }
};

std::string to_string(const Goal& g);  // "<- L1, ..., Ln"

// ---------------------------------------------------------------------------
// Unification
// ---------------------------------------------------------------------------

// Triangular substitution; bindings may map to terms containing variables
// bound elsewhere in the same substitution. substitute() resolves fully.
using Substitution = std::map<std::string, TermPtr>;

TermPtr substitute(const Substitution& s, const TermPtr& t);
Atom substitute(const Substitution& s, const Atom& a);
Literal substitute(const Substitution& s, const Literal& l);

// Most general unifier with occurs check. When two variables meet, the
// variable of `a` (the goal side at call sites) is the one bound.
std::optional<Substitution> unify(const Atom& a, const Atom& b);
std::optional<Substitution> unify_terms(const TermPtr& a, const TermPtr& b);

// ---------------------------------------------------------------------------
// Forest structure
// ---------------------------------------------------------------------------

enum class Mark {
  None,
  SuccessLeaf,    // box_t
  FailureLeaf,    // box_f
  FlounderLeaf,   // box_fl
  Last,           // undetermined negation; completes its tree
  SuccessAndLast  // first success leaf of a subsidiary tree
};

struct ClauseEdge {
  std::size_t clause_index;  // position in the program, 0-based
  Substitution mgu;
};

// Outcome applied to a node whose selected subgoal was a negative literal.
enum class NegCase {
  Fail,      // subsidiary tree succeeded, so the negation fails
  Flounder,  // subsidiary tree floundered
  Proceed,   // subsidiary tree finitely failed; continue with the rest
  NonGround  // non-ground negative subgoal selected
};

struct NegationEdge {
  NegCase kind;
};

// A positive subgoal no program clause head unifies with.
struct NoMatchEdge {};

using EdgeLabel = std::variant<ClauseEdge, NegationEdge, NoMatchEdge>;

struct Node {
  NodeId id;
  Goal goal;
  Mark mark = Mark::None;
  std::optional<NodeId> parent;             // within the same tree
  std::optional<NodeId> subsidiary;         // root of the subsidiary tree, if any
  std::vector<std::pair<EdgeLabel, NodeId>> children;
  bool expanded = false;
};

enum class TreeStatus { InProgress, Complete, Truncated };

// Final state of a completed tree, in the case order the parent negation
// node consumes them: success beats flounder beats undetermined.
enum class TreeOutcome { Unsettled, Success, Floundered, Undetermined, AllFailed };

struct SldnfTree {
  std::uint32_t id = 0;
  NodeId root;
  std::optional<NodeId> parent_node;  // negation node this tree was built for
  bool root_ancestors_nonempty = false;
  std::vector<NodeId> node_ids;       // creation order
  std::vector<std::pair<NodeId, NodeId>> subsidiary_links;  // node -> child root
  std::vector<NodeId> success_leaves;
  std::vector<NodeId> failure_leaves;
  std::vector<NodeId> flounder_leaves;
  std::optional<NodeId> last_node;
  TreeStatus status = TreeStatus::InProgress;
  TreeOutcome outcome = TreeOutcome::Unsettled;
  // false when completion left created-but-unexpanded frontier nodes behind
  // (first-success pruning, or a LAST mark cutting off open branches)
  bool exhausted = true;
};

// Expansion log; enough to replay the construction order in traces.
struct TraceEvent {
  enum class Kind { Expand, Resume, Truncate };
  Kind kind;
  NodeId node;
  std::optional<NegCase> neg_case;  // Resume only
};

struct DerivationForest {
  std::vector<Node> nodes;       // indexed by NodeId.index
  std::vector<SldnfTree> trees;  // trees[0] is the main tree
  std::vector<TraceEvent> events;
  std::uint64_t budget = 0;
  std::uint64_t budget_spent = 0;
  bool truncated = false;

  const Node& node(NodeId id) const { return nodes[id.index]; }
  Node& node(NodeId id) { return nodes[id.index]; }
  const SldnfTree& main() const { return trees.front(); }
};

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

// Builds the forest of linked SLDNF trees step by step under the
// depth-first, left-most strategy. Each step expands the node that strategy
// selects; descending into a subsidiary tree suspends the parent tree until
// the subsidiary completes. One unit of budget buys one expansion; resuming
// a suspended negation node is part of the expansion already paid for.
class Executor {
 public:
  enum class RunState { Running, Complete, Truncated };

  // budget >= 1; the query is a single atom with an empty ancestor list.
  Executor(Program program, Atom query, std::uint64_t budget);

  // The node the next step will expand, or nullopt once the run is over.
  std::optional<NodeId> pending();

  // Performs one expansion. Returns false without expanding when the forest
  // is complete or the budget is exhausted (the forest is then marked
  // truncated).
  bool step();

  RunState state();

  const DerivationForest& forest() const { return forest_; }
  DerivationForest take_forest() { return std::move(forest_); }

 private:
  struct TreeWork {
    std::vector<NodeId> stack;         // unexpanded nodes, next on top
    std::optional<NodeId> suspended;   // negation node awaiting a subsidiary
  };

  void settle();
  void expand(NodeId id);
  void resume(std::uint32_t tree, NodeId waiting, const SldnfTree& sub);
  void complete_tree(std::uint32_t tree);
  void truncate();
  NodeId create_node(std::uint32_t tree, Goal goal, std::optional<NodeId> parent);
  void add_leaf_child(NodeId parent, EdgeLabel edge, Mark mark);
  std::uint32_t create_tree(Goal root_goal, std::optional<NodeId> parent_node);

  Program program_;
  DerivationForest forest_;
  std::vector<TreeWork> work_;            // parallel to forest_.trees
  std::vector<std::uint32_t> tree_stack_; // active chain, main at the bottom
  std::uint64_t fresh_counter_ = 0;
  RunState state_ = RunState::Running;
};

// Runs to completion or budget exhaustion and returns the forest.
DerivationForest run(const Program& program, const Atom& query,
                     std::uint64_t budget);

// ---------------------------------------------------------------------------
// Inspection
// ---------------------------------------------------------------------------

enum class Classification { Succeeds, Fails, Flounders, Undetermined, Unknown };

std::string to_string(Classification c);

// Succeeds: the main tree has a success leaf. Fails: complete with all main
// leaves failed. Flounders: complete, no success, a flounder leaf decided it.
// Undetermined: the main tree ended at a LAST node. Unknown: truncated.
Classification classify(const DerivationForest& forest);

// Enumerates maximal root-originating paths, crossing both clause edges and
// the dotted subsidiary edges (subsidiary first, then children in creation
// order).
class DerivationCursor {
 public:
  explicit DerivationCursor(const DerivationForest& forest);

  // Next maximal path from the root, or nullopt when exhausted.
  std::optional<std::vector<NodeId>> next();

 private:
  struct Frame {
    NodeId node;
    std::vector<NodeId> successors;
    std::size_t next = 0;
  };

  void push(NodeId id);

  const DerivationForest& forest_;
  std::vector<Frame> stack_;
  bool fresh_ = true;
};

std::vector<std::vector<NodeId>> all_derivations(const DerivationForest& forest);

// Structural checks used by the test suites: subsidiary roots carry nonempty
// ancestor lists, every ancestor entry lies on the upward tree-chain path
// with the recorded atom selected there, no tree has two success leaves, and
// ids/parents are consistent. Returns human-readable violations; empty means
// the forest is sound.
std::vector<std::string> forest_invariant_violations(const DerivationForest& forest);

}  // namespace loomcheck
