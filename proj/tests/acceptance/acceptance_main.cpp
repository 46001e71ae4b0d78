// Acceptance suite: runs every gate criterion and prints one line each.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "loomcheck/engine.hpp"
#include "loomcheck/export.hpp"
#include "loomcheck/loopcheck.hpp"
#include "loomcheck/oracle.hpp"
#include "loomcheck/parser.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/subseq_oracle.hpp"

using namespace loomcheck;
namespace lt = loomcheck::testing;

namespace {

class Checker {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::vector<std::string> failures_;
};

double seconds_of(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

const Program& p1() {
  static const Program p = parse_program("p(X) :- \\+ p(f(X)).\n");
  return p;
}
const Program& p2() {
  static const Program p = parse_program("p :- \\+ q.\nq.\nq :- q.\n");
  return p;
}
const Program& abnormal() {
  static const Program p = parse_program("a :- \\+ a.\n");
  return p;
}

// --------------------------------------------------------------------------

void criterion_1_example_fidelity_p1(Checker& c) {
  Verdict v;
  double elapsed = seconds_of(
      [&] { v = predict(p1(), parse_query("p(a)"), 100, 3); });
  c.require(v.predicted(), "verdict is not a prediction");
  if (!v.predicted()) return;
  const auto& w = v.witness()->nodes;
  c.require(w.size() == 3, "witness length != 3");
  std::vector<std::string> atoms;
  for (const auto& [node, atom] : w) atoms.push_back(to_string(atom));
  c.require(atoms == std::vector<std::string>{"p(a)", "p(f(a))", "p(f(f(a)))"},
            "witness atoms differ from the selected-subgoal sequence");
  c.require(v.expansions_used <= 20,
            "used " + std::to_string(v.expansions_used) + " expansions (> 20)");
  c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + "s");
}

void criterion_2_example_fidelity_p2(Checker& c) {
  Verdict v;
  double elapsed =
      seconds_of([&] { v = predict(p2(), parse_query("p"), 100, 3); });
  c.require(v.terminated().has_value() &&
                *v.terminated() == Classification::Fails,
            "verdict is not Terminated(Fails)");
  c.require(!v.predicted(), "the predictor flagged the terminating program");

  DerivationForest forest = run(p2(), parse_query("p"), 100);
  c.require(forest.trees.size() == 2, "expected exactly two trees");
  if (forest.trees.size() == 2) {
    const SldnfTree& sub = forest.trees[1];
    c.require(sub.success_leaves.size() == 1,
              "subsidiary tree does not have exactly one success leaf");
    c.require(!forest.main().success_leaves.size(),
              "main tree unexpectedly succeeded");
    bool failure_child = false;
    for (const auto& [edge, child] : forest.nodes[1].children)
      failure_child |= forest.node(child).mark == Mark::FailureLeaf;
    c.require(failure_child, "negation node did not get a failure child");
  }
  c.require(forest.budget_spent <= 6,
            "used " + std::to_string(forest.budget_spent) + " expansions (> 6)");
  c.require(classify(forest) == Classification::Fails, "classify is not Fails");
  c.require(elapsed < 1.0, "took " + std::to_string(elapsed) + "s");
}

void criterion_3_abnormal_program(Checker& c) {
  Verdict v = predict(abnormal(), parse_query("a"), 100, 2);
  c.require(v.predicted(), "threshold-2 prediction missing");
  if (v.predicted())
    c.require(v.witness()->nodes.size() == 2, "witness length != 2");
  for (std::uint64_t budget : {10u, 100u, 1000u}) {
    DerivationForest forest = run(abnormal(), parse_query("a"), budget);
    c.require(forest.truncated && classify(forest) == Classification::Unknown,
              "engine alone at budget " + std::to_string(budget) +
                  " did not exhaust its budget");
  }
}

void criterion_4_projection_properties(Checker& c) {
  lt::Rng rng(1404);
  for (int i = 0; i < 1000; ++i) {
    SymbolString s = lt::random_symbols(rng, 12);
    if (!is_projection(s, s)) {
      c.require(false, "reflexivity failed on " + to_string(s));
      return;
    }
  }
  for (int i = 0; i < 1000; ++i) {
    SymbolString s3 = lt::random_symbols(rng, 12);
    SymbolString s2 = lt::thin_symbols(rng, s3);
    SymbolString s1 = lt::thin_symbols(rng, s2);
    if (!(is_projection(s1, s2) && is_projection(s2, s3))) {
      c.require(false, "triple construction violated its own precondition");
      return;
    }
    if (!is_projection(s1, s3)) {
      c.require(false, "transitivity failed");
      return;
    }
  }
  int agreements = 0;
  for (int i = 0; i < 1200; ++i) {
    SymbolString b = lt::random_symbols(rng, 8);
    SymbolString a = lt::chance(rng, 0.5) ? lt::thin_symbols(rng, b)
                                          : lt::random_symbols(rng, 8);
    if (is_projection(a, b) != lt::subsequence_oracle(a, b)) {
      c.require(false, "greedy matcher disagrees with the exhaustive oracle");
      return;
    }
    ++agreements;
  }
  c.require(agreements >= 1000, "not enough oracle comparisons ran");
}

void criterion_5_loop_relation_properties(Checker& c) {
  lt::Rng rng(1405);
  for (int i = 0; i < 1000; ++i) {
    Atom a = lt::random_atom(rng, 2);
    Atom b = lt::grow_atom(rng, a);
    Atom d = lt::grow_atom(rng, b);
    if (!loops_into(a, b) || !loops_into(b, d)) {
      c.require(false, "growth did not preserve the loop relation");
      return;
    }
    if (term_size(a) > term_size(b) || term_size(b) > term_size(d)) {
      c.require(false, "term size decreased along a loop pair");
      return;
    }
    if (!loops_into(a, d)) {
      c.require(false, "loop relation is not transitive on a chain");
      return;
    }
  }
  for (int i = 0; i < 1000; ++i) {
    Atom a = lt::random_atom(rng, 2);
    std::uint64_t counter = 500;
    Atom b = rename_apart(Clause{a, {}}, counter).head;
    if (!loops_into(a, b) || !loops_into(b, a)) {
      c.require(false, "variants do not loop into each other both ways");
      return;
    }
  }
}

void criterion_6_oracle_equivalence(Checker& c) {
  lt::Rng rng(1406);
  int succeeded = 0, failed = 0;
  for (int i = 0; i < 50; ++i) {
    auto rd = lt::random_acyclic_datalog(rng);
    if (!stratify(rd.program)) {
      c.require(false, "generator produced an unstratifiable program");
      return;
    }
    GroundInterpretation model = bottom_up(rd.program, rd.sig.constants);
    for (const Atom& q : lt::all_ground_queries(rd.sig)) {
      DerivationForest forest = run(rd.program, q, 10000);
      Classification verdict = classify(forest);
      if (verdict == Classification::Unknown) {
        c.require(false, "run did not terminate within budget 10000: " +
                             to_string(q) + " on\n" + to_string(rd.program));
        return;
      }
      if (verdict == Classification::Succeeds && !model.contains(q)) {
        c.require(false, "engine succeeds but the model lacks " + to_string(q) +
                             " in\n" + to_string(rd.program));
        return;
      }
      if (verdict == Classification::Fails && model.contains(q)) {
        c.require(false, "engine fails but the model contains " + to_string(q) +
                             " in\n" + to_string(rd.program));
        return;
      }
      succeeded += verdict == Classification::Succeeds;
      failed += verdict == Classification::Fails;
      auto violations = forest_invariant_violations(forest);
      if (!violations.empty()) {
        c.require(false, "structural violation: " + violations.front());
        return;
      }
    }
  }
  c.require(succeeded > 0 && failed > 0,
            "corpus did not exercise both decisive outcomes");
}

void criterion_7_ancestor_structure(Checker& c) {
  for (const auto& cs : lt::corpus()) {
    DerivationForest forest =
        run(lt::parse(cs.program), lt::query(cs.query), cs.budget);
    for (const SldnfTree& tree : forest.trees) {
      if (!tree.parent_node) continue;
      const Node& root = forest.node(tree.root);
      c.require(!root.goal.empty() && !root.goal.selected().ancestors.empty(),
                cs.name + ": subsidiary root with empty ancestor list");
    }
    auto violations = forest_invariant_violations(forest);
    for (const auto& v : violations) c.require(false, cs.name + ": " + v);
  }
}

void criterion_8_determinism(Checker& c) {
  for (const auto& cs : lt::corpus()) {
    Program prog = lt::parse(cs.program);
    Atom q = lt::query(cs.query);
    Verdict v1 = predict(prog, q, cs.budget, cs.threshold);
    Verdict v2 = predict(prog, q, cs.budget, cs.threshold);
    c.require(verdict_line(q, v1) == verdict_line(q, v2),
              cs.name + ": verdict lines differ between runs");
    std::string dot1 = render_dot(run(prog, q, cs.budget));
    std::string dot2 = render_dot(run(prog, q, cs.budget));
    c.require(dot1 == dot2, cs.name + ": DOT output differs between runs");
  }

  // end to end through the binary
  namespace fs = std::filesystem;
  fs::path dir =
      fs::temp_directory_path() / ("loomcheck_acc_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  fs::path prog_path = dir / "p1.pl";
  std::ofstream(prog_path) << "p(X) :- \\+ p(f(X)).\n";
  auto run_once = [&]() -> std::string {
    std::string cmd = "\"" LOOMCHECK_BIN "\" \"" + prog_path.string() +
                      "\" --query \"p(a)\" --trace 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return "<popen failed>";
    std::string out;
    char buf[4096];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;)
      out.append(buf, n);
    pclose(pipe);
    return out;
  };
  std::string first = run_once();
  std::string second = run_once();
  c.require(!first.empty() && first == second,
            "CLI output differs between identical invocations");
}

struct Criterion {
  std::string name;
  std::function<void(Checker&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"example fidelity: recursion through negation yields the exact witness",
       criterion_1_example_fidelity_p1},
      {"example fidelity: pruned subsidiary tree, query finitely fails",
       criterion_2_example_fidelity_p2},
      {"self-negation program: predicted at threshold 2, engine exhausts budgets",
       criterion_3_abnormal_program},
      {"projection: reflexive, transitive, matches the exhaustive oracle",
       criterion_4_projection_properties},
      {"loop relation: size monotone, transitive, symmetric on variants",
       criterion_5_loop_relation_properties},
      {"engine agrees with bottom-up models on random stratified programs",
       criterion_6_oracle_equivalence},
      {"ancestor lists are sound across all corpus forests",
       criterion_7_ancestor_structure},
      {"verdict lines and DOT output are byte-identical across runs",
       criterion_8_determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Checker checker;
    std::string error;
    try {
      criteria[i].fn(checker);
    } catch (const std::exception& e) {
      error = e.what();
    }
    bool ok = error.empty() && checker.failures().empty();
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << (i + 1) << ". "
              << criteria[i].name << "\n";
    if (!error.empty()) std::cout << "       exception: " << error << "\n";
    for (const auto& f : checker.failures())
      std::cout << "       " << f << "\n";
    failures += !ok;
  }
  std::cout << (failures ? "ACCEPTANCE: FAIL (" : "ACCEPTANCE: PASS (")
            << (criteria.size() - failures) << "/" << criteria.size()
            << " criteria)\n";
  return failures ? 1 : 0;
}
