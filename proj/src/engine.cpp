#include "loomcheck/engine.hpp"

#include <cassert>
#include <set>
#include <stdexcept>
#include <utility>

namespace loomcheck {

std::string to_string(NodeId id) { return "N" + std::to_string(id.index); }

std::string to_string(const Goal& g) {
  std::string s = "<-";
  for (std::size_t i = 0; i < g.literals.size(); ++i) {
    s += i ? ", " : " ";
    s += to_string(g.literals[i].literal);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Unification
// ---------------------------------------------------------------------------

namespace {

TermPtr walk(TermPtr t, const Substitution& s) {
  while (t->is_var()) {
    auto it = s.find(t->name);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& var, const TermPtr& t, const Substitution& s) {
  std::vector<TermPtr> stack{t};
  while (!stack.empty()) {
    TermPtr w = walk(std::move(stack.back()), s);
    stack.pop_back();
    if (w->ground) continue;
    if (w->is_var()) {
      if (w->name == var) return true;
      continue;
    }
    for (const auto& arg : w->args) stack.push_back(arg);
  }
  return false;
}

bool unify_rec(TermPtr a, TermPtr b, Substitution& s) {
  a = walk(a, s);
  b = walk(b, s);
  if (a->is_var()) {
    if (b->is_var() && b->name == a->name) return true;
    if (occurs(a->name, b, s)) return false;
    s.emplace(a->name, b);
    return true;
  }
  if (b->is_var()) {
    if (occurs(b->name, a, s)) return false;
    s.emplace(b->name, a);
    return true;
  }
  if (a->kind != b->kind || a->name != b->name ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!unify_rec(a->args[i], b->args[i], s)) return false;
  return true;
}

}  // namespace

TermPtr substitute(const Substitution& s, const TermPtr& t) {
  if (t->ground) return t;  // nothing to replace, share the whole subtree

  // dereference a variable chain to its final binding
  auto deref = [&s](const TermPtr& start) -> const TermPtr& {
    const TermPtr* cur = &start;
    while ((*cur)->is_var()) {
      auto it = s.find((*cur)->name);
      if (it == s.end()) break;
      cur = &it->second;
    }
    return *cur;
  };

  const TermPtr& root = deref(t);
  if (root->ground || !root->is_compound()) return root;

  // explicit post-order rebuild; compounds deepen with the derivation, so
  // no recursion on term structure here
  struct Frame {
    const TermPtr* src;  // lives in the caller, the map, or a parent's args
    std::vector<TermPtr> out;
    std::size_t idx = 0;
    bool changed = false;
  };
  std::vector<Frame> stack;
  stack.push_back({&root, {}, 0, false});
  while (true) {
    Frame& f = stack.back();
    const Term& node = **f.src;
    if (f.idx < node.args.size()) {
      const TermPtr& child = deref(node.args[f.idx]);
      ++f.idx;
      if (child->ground || !child->is_compound()) {
        f.changed = f.changed || child.get() != node.args[f.idx - 1].get();
        f.out.push_back(child);
      } else {
        stack.push_back({&child, {}, 0, false});
      }
      continue;
    }
    TermPtr built =
        f.changed ? Term::compound(node.name, std::move(f.out)) : *f.src;
    stack.pop_back();
    if (stack.empty()) return built;
    Frame& parent = stack.back();
    parent.changed =
        parent.changed ||
        built.get() != (**parent.src).args[parent.idx - 1].get();
    parent.out.push_back(std::move(built));
  }
}

Atom substitute(const Substitution& s, const Atom& a) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& arg : a.args) out.args.push_back(substitute(s, arg));
  return out;
}

Literal substitute(const Substitution& s, const Literal& l) {
  return {l.polarity, substitute(s, l.atom)};
}

std::optional<Substitution> unify(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size())
    return std::nullopt;
  Substitution s;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify_rec(a.args[i], b.args[i], s)) return std::nullopt;
  return s;
}

std::optional<Substitution> unify_terms(const TermPtr& a, const TermPtr& b) {
  Substitution s;
  if (!unify_rec(a, b, s)) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Executor
// ---------------------------------------------------------------------------

Executor::Executor(Program program, Atom query, std::uint64_t budget)
    : program_(std::move(program)) {
  if (budget < 1) throw std::invalid_argument("budget must be at least 1");
  forest_.budget = budget;

  // Renamed clause variables are "V<n>"; start the counter past any such
  // name in the query so renaming can never capture a query variable.
  std::set<std::string> qvars;
  collect_variables(query, qvars);
  for (const auto& name : qvars) {
    if (name.size() < 2 || name[0] != 'V') continue;
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      digits = digits && name[i] >= '0' && name[i] <= '9';
    if (!digits) continue;
    try {
      std::uint64_t n = std::stoull(name.substr(1));
      if (n + 1 > fresh_counter_) fresh_counter_ = n + 1;
    } catch (const std::out_of_range&) {
    }
  }

  Goal root;
  root.literals.push_back(
      {Literal{Polarity::Positive, std::move(query)}, AncestorList{}});
  std::uint32_t main = create_tree(std::move(root), std::nullopt);
  tree_stack_.push_back(main);
}

NodeId Executor::create_node(std::uint32_t tree, Goal goal,
                             std::optional<NodeId> parent) {
  NodeId id{tree, static_cast<std::uint32_t>(forest_.nodes.size())};
  Node n;
  n.id = id;
  n.goal = std::move(goal);
  n.parent = parent;
  forest_.nodes.push_back(std::move(n));
  forest_.trees[tree].node_ids.push_back(id);
  return id;
}

std::uint32_t Executor::create_tree(Goal root_goal,
                                    std::optional<NodeId> parent_node) {
  std::uint32_t tid = static_cast<std::uint32_t>(forest_.trees.size());
  SldnfTree t;
  t.id = tid;
  t.parent_node = parent_node;
  t.root_ancestors_nonempty = !root_goal.selected().ancestors.empty();
  // every subsidiary root inherits a nonempty ancestor list
  assert(!parent_node || t.root_ancestors_nonempty);
  forest_.trees.push_back(std::move(t));
  work_.push_back({});
  NodeId root = create_node(tid, std::move(root_goal), std::nullopt);
  forest_.trees[tid].root = root;
  work_[tid].stack.push_back(root);
  if (parent_node) {
    forest_.node(*parent_node).subsidiary = root;
    forest_.trees[parent_node->tree].subsidiary_links.push_back(
        {*parent_node, root});
  }
  return tid;
}

void Executor::add_leaf_child(NodeId parent, EdgeLabel edge, Mark mark) {
  std::uint32_t tid = parent.tree;
  NodeId cid = create_node(tid, Goal{}, parent);
  forest_.node(cid).mark = mark;
  forest_.node(parent).children.push_back({std::move(edge), cid});
  SldnfTree& tree = forest_.trees[tid];
  if (mark == Mark::FailureLeaf)
    tree.failure_leaves.push_back(cid);
  else if (mark == Mark::FlounderLeaf)
    tree.flounder_leaves.push_back(cid);
}

void Executor::complete_tree(std::uint32_t tid) {
  SldnfTree& t = forest_.trees[tid];
  t.status = TreeStatus::Complete;
  t.exhausted = work_[tid].stack.empty();
  work_[tid].stack.clear();
  if (!t.success_leaves.empty())
    t.outcome = TreeOutcome::Success;
  else if (!t.flounder_leaves.empty())
    t.outcome = TreeOutcome::Floundered;
  else if (t.last_node)
    t.outcome = TreeOutcome::Undetermined;
  else
    t.outcome = TreeOutcome::AllFailed;
}

void Executor::expand(NodeId id) {
  forest_.events.push_back({TraceEvent::Kind::Expand, id, std::nullopt});
  forest_.node(id).expanded = true;
  const Goal goal = forest_.node(id).goal;  // snapshot; node storage may move
  std::uint32_t tid = id.tree;

  if (goal.empty()) {
    // Success leaf. It also completes the tree: with a nonempty root
    // ancestor list this is the first-success LAST mark; the main tree
    // simply stops here, keeping any unexplored frontier on record.
    SldnfTree& tree = forest_.trees[tid];
    bool last = tree.root_ancestors_nonempty;
    forest_.node(id).mark = last ? Mark::SuccessAndLast : Mark::SuccessLeaf;
    tree.success_leaves.push_back(id);
    if (last) tree.last_node = id;
    complete_tree(tid);
    return;
  }

  const AnnotatedLiteral sel = goal.selected();
  if (sel.literal.positive()) {
    const Atom& subgoal = sel.literal.atom;
    AncestorList child_ancestors = sel.ancestors.prepend({id, subgoal});
    std::vector<NodeId> created;
    for (std::size_t ci = 0; ci < program_.clauses.size(); ++ci) {
      Clause rc = rename_apart(program_.clauses[ci], fresh_counter_);
      auto theta = unify(subgoal, rc.head);
      if (!theta) continue;
      Goal child;
      child.literals.reserve(rc.body.size() + goal.literals.size() - 1);
      for (const Literal& bl : rc.body)
        child.literals.push_back({substitute(*theta, bl), child_ancestors});
      for (std::size_t k = 1; k < goal.literals.size(); ++k)
        child.literals.push_back({substitute(*theta, goal.literals[k].literal),
                                  goal.literals[k].ancestors});
      NodeId cid = create_node(tid, std::move(child), id);
      forest_.node(id).children.push_back(
          {ClauseEdge{ci, std::move(*theta)}, cid});
      created.push_back(cid);
    }
    if (created.empty()) {
      add_leaf_child(id, NoMatchEdge{}, Mark::FailureLeaf);
    } else {
      auto& stack = work_[tid].stack;
      for (auto it = created.rbegin(); it != created.rend(); ++it)
        stack.push_back(*it);
    }
    return;
  }

  const Atom& negated = sel.literal.atom;
  if (!is_ground(negated)) {
    add_leaf_child(id, NegationEdge{NegCase::NonGround}, Mark::FlounderLeaf);
    return;
  }

  // Ground negative subgoal: suspend this tree and descend into a fresh
  // subsidiary tree for <- A, which inherits the literal's ancestor list.
  Goal sub_root;
  sub_root.literals.push_back(
      {Literal{Polarity::Positive, negated}, sel.ancestors});
  std::uint32_t sub = create_tree(std::move(sub_root), id);
  work_[tid].suspended = id;
  tree_stack_.push_back(sub);
}

void Executor::resume(std::uint32_t tid, NodeId waiting,
                      const SldnfTree& sub) {
  const TreeOutcome outcome = sub.outcome;
  switch (outcome) {
    case TreeOutcome::Success:
      add_leaf_child(waiting, NegationEdge{NegCase::Fail}, Mark::FailureLeaf);
      forest_.events.push_back(
          {TraceEvent::Kind::Resume, waiting, NegCase::Fail});
      break;
    case TreeOutcome::Floundered:
      add_leaf_child(waiting, NegationEdge{NegCase::Flounder},
                     Mark::FlounderLeaf);
      forest_.events.push_back(
          {TraceEvent::Kind::Resume, waiting, NegCase::Flounder});
      break;
    case TreeOutcome::AllFailed: {
      const Goal& g = forest_.node(waiting).goal;
      Goal rest;
      rest.literals.assign(g.literals.begin() + 1, g.literals.end());
      NodeId cid = create_node(tid, std::move(rest), waiting);
      forest_.node(waiting).children.push_back(
          {NegationEdge{NegCase::Proceed}, cid});
      work_[tid].stack.push_back(cid);
      forest_.events.push_back(
          {TraceEvent::Kind::Resume, waiting, NegCase::Proceed});
      break;
    }
    case TreeOutcome::Undetermined:
      // The negation's value is undetermined; this node ends its tree.
      forest_.node(waiting).mark = Mark::Last;
      forest_.trees[tid].last_node = waiting;
      forest_.events.push_back(
          {TraceEvent::Kind::Resume, waiting, std::nullopt});
      complete_tree(tid);
      break;
    case TreeOutcome::Unsettled:
      assert(false && "resumed on an incomplete subsidiary tree");
      break;
  }
  work_[tid].suspended.reset();
}

void Executor::settle() {
  if (state_ != RunState::Running) return;
  while (!tree_stack_.empty()) {
    std::uint32_t top = tree_stack_.back();
    if (forest_.trees[top].status == TreeStatus::InProgress &&
        work_[top].stack.empty() && !work_[top].suspended) {
      complete_tree(top);  // every leaf carries a mark
    }
    if (forest_.trees[top].status == TreeStatus::Complete) {
      tree_stack_.pop_back();
      if (tree_stack_.empty()) {
        state_ = RunState::Complete;
        return;
      }
      std::uint32_t parent = tree_stack_.back();
      assert(work_[parent].suspended.has_value());
      resume(parent, *work_[parent].suspended, forest_.trees[top]);
      continue;
    }
    break;  // the top tree has a node to expand
  }
  if (state_ == RunState::Running && forest_.budget_spent >= forest_.budget)
    truncate();
}

void Executor::truncate() {
  forest_.truncated = true;
  std::uint32_t top = tree_stack_.back();
  NodeId next = work_[top].stack.back();
  forest_.events.push_back({TraceEvent::Kind::Truncate, next, std::nullopt});
  for (auto& t : forest_.trees)
    if (t.status == TreeStatus::InProgress) t.status = TreeStatus::Truncated;
  state_ = RunState::Truncated;
}

std::optional<NodeId> Executor::pending() {
  settle();
  if (state_ != RunState::Running) return std::nullopt;
  assert(!work_[tree_stack_.back()].stack.empty());
  return work_[tree_stack_.back()].stack.back();
}

bool Executor::step() {
  auto next = pending();
  if (!next) return false;
  work_[tree_stack_.back()].stack.pop_back();
  ++forest_.budget_spent;
  expand(*next);
  settle();
  return true;
}

Executor::RunState Executor::state() {
  settle();
  return state_;
}

DerivationForest run(const Program& program, const Atom& query,
                     std::uint64_t budget) {
  Executor ex(program, query, budget);
  while (ex.step()) {
  }
  return ex.take_forest();
}

// ---------------------------------------------------------------------------
// Inspection
// ---------------------------------------------------------------------------

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Succeeds: return "succeeds";
    case Classification::Fails: return "fails";
    case Classification::Flounders: return "flounders";
    case Classification::Undetermined: return "undetermined";
    case Classification::Unknown: return "unknown";
  }
  return "?";
}

Classification classify(const DerivationForest& forest) {
  const SldnfTree& main = forest.main();
  if (main.status != TreeStatus::Complete) return Classification::Unknown;
  switch (main.outcome) {
    case TreeOutcome::Success: return Classification::Succeeds;
    case TreeOutcome::Floundered: return Classification::Flounders;
    case TreeOutcome::Undetermined: return Classification::Undetermined;
    case TreeOutcome::AllFailed: return Classification::Fails;
    case TreeOutcome::Unsettled: break;
  }
  return Classification::Unknown;
}

DerivationCursor::DerivationCursor(const DerivationForest& forest)
    : forest_(forest) {}

void DerivationCursor::push(NodeId id) {
  Frame f;
  f.node = id;
  const Node& n = forest_.node(id);
  if (n.subsidiary) f.successors.push_back(*n.subsidiary);
  for (const auto& [edge, child] : n.children) f.successors.push_back(child);
  stack_.push_back(std::move(f));
}

std::optional<std::vector<NodeId>> DerivationCursor::next() {
  // extend the path with first successors until a sink is on top
  auto descend = [this] {
    while (!stack_.back().successors.empty()) {
      NodeId first = stack_.back().successors[stack_.back().next];
      ++stack_.back().next;
      push(first);
    }
  };
  auto current = [this] {
    std::vector<NodeId> path;
    path.reserve(stack_.size());
    for (const Frame& f : stack_) path.push_back(f.node);
    return path;
  };

  if (fresh_) {
    fresh_ = false;
    push(forest_.main().root);
    descend();
    return current();
  }
  while (!stack_.empty()) {
    stack_.pop_back();
    if (stack_.empty()) return std::nullopt;
    if (stack_.back().next < stack_.back().successors.size()) {
      NodeId sibling = stack_.back().successors[stack_.back().next];
      ++stack_.back().next;
      push(sibling);
      descend();
      return current();
    }
  }
  return std::nullopt;
}

std::vector<std::vector<NodeId>> all_derivations(const DerivationForest& forest) {
  std::vector<std::vector<NodeId>> out;
  DerivationCursor cursor(forest);
  while (auto path = cursor.next()) out.push_back(std::move(*path));
  return out;
}

std::vector<std::string> forest_invariant_violations(
    const DerivationForest& forest) {
  std::vector<std::string> out;

  for (std::size_t i = 0; i < forest.nodes.size(); ++i) {
    const Node& n = forest.nodes[i];
    if (n.id.index != i)
      out.push_back("node at slot " + std::to_string(i) + " has index " +
                    std::to_string(n.id.index));
    if (n.id.tree >= forest.trees.size())
      out.push_back(to_string(n.id) + " references missing tree");
    if (n.parent && n.parent->tree != n.id.tree)
      out.push_back(to_string(n.id) + " has a parent in another tree");
  }

  for (const SldnfTree& tree : forest.trees) {
    if (tree.parent_node) {
      const Node& root = forest.node(tree.root);
      if (root.goal.empty() || root.goal.selected().ancestors.empty())
        out.push_back("subsidiary tree T" + std::to_string(tree.id) +
                      " root has an empty ancestor list");
    }
    if (tree.success_leaves.size() > 1)
      out.push_back("tree T" + std::to_string(tree.id) +
                    " has more than one success leaf");
    if (tree.last_node) {
      const Node& last = forest.node(*tree.last_node);
      if (last.mark == Mark::Last && !last.children.empty())
        out.push_back(to_string(last.id) + " is marked LAST but has children");
    }
  }

  for (const Node& n : forest.nodes) {
    if (n.goal.empty()) continue;
    // upward path through parents and across dotted edges
    std::set<std::uint32_t> on_path;
    std::optional<NodeId> cur = n.id;
    while (cur) {
      on_path.insert(cur->index);
      const Node& c = forest.node(*cur);
      cur = c.parent ? c.parent : forest.trees[cur->tree].parent_node;
    }
    for (const AnnotatedLiteral& lit : n.goal.literals) {
      for (const AncestorEntry& e : lit.ancestors.entries()) {
        if (!on_path.count(e.node.index)) {
          out.push_back("ancestor " + to_string(e.node) + " of a literal at " +
                        to_string(n.id) + " is not on its derivation path");
          continue;
        }
        const Node& anc = forest.node(e.node);
        if (anc.goal.empty() || !anc.goal.selected().literal.positive() ||
            !(anc.goal.selected().literal.atom == e.atom))
          out.push_back("ancestor entry at " + to_string(n.id) +
                        " does not match the subgoal selected at " +
                        to_string(e.node));
      }
    }
  }

  return out;
}

}  // namespace loomcheck
