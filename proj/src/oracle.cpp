#include "loomcheck/oracle.hpp"

#include <stdexcept>

namespace loomcheck {

namespace {

void collect_predicates(const Program& p, std::set<std::string>& preds) {
  for (const auto& c : p.clauses) {
    preds.insert(c.head.predicate);
    for (const auto& l : c.body) preds.insert(l.atom.predicate);
  }
}

void collect_constants(const TermPtr& t, std::set<std::string>& out) {
  if (t->is_constant()) out.insert(t->name);
  for (const auto& arg : t->args) collect_constants(arg, out);
}

}  // namespace

bool is_function_free(const Program& program) {
  auto atom_ok = [](const Atom& a) {
    for (const auto& arg : a.args)
      if (arg->is_compound()) return false;
    return true;
  };
  for (const auto& c : program.clauses) {
    if (!atom_ok(c.head)) return false;
    for (const auto& l : c.body)
      if (!atom_ok(l.atom)) return false;
  }
  return true;
}

std::optional<Stratification> stratify(const Program& program) {
  std::set<std::string> preds;
  collect_predicates(program, preds);

  std::map<std::string, std::size_t> level;
  for (const auto& p : preds) level[p] = 0;

  // lift head levels over body requirements until stable; a level beyond
  // the predicate count means a cycle through negation
  const std::size_t cap = preds.size();
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : program.clauses) {
      std::size_t& h = level[c.head.predicate];
      for (const auto& l : c.body) {
        std::size_t need = level[l.atom.predicate] + (l.positive() ? 0 : 1);
        if (need > h) {
          h = need;
          if (h > cap) return std::nullopt;
          changed = true;
        }
      }
    }
  }

  Stratification s;
  s.level = level;
  std::size_t top = 0;
  for (const auto& [p, lv] : level) top = std::max(top, lv);
  s.strata.resize(preds.empty() ? 0 : top + 1);
  for (const auto& [p, lv] : level) s.strata[lv].push_back(p);
  return s;
}

namespace {

// all assignments of clause variables to universe constants
class GroundingIter {
 public:
  GroundingIter(std::vector<std::string> vars,
                const std::vector<std::string>& universe)
      : vars_(std::move(vars)), universe_(universe),
        digits_(vars_.size(), 0) {}

  bool done() const { return done_; }

  std::map<std::string, std::string> binding() const {
    std::map<std::string, std::string> b;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      b[vars_[i]] = universe_[digits_[i]];
    return b;
  }

  void next() {
    for (std::size_t i = 0; i < digits_.size(); ++i) {
      if (++digits_[i] < universe_.size()) return;
      digits_[i] = 0;
    }
    done_ = true;
  }

 private:
  std::vector<std::string> vars_;
  const std::vector<std::string>& universe_;
  std::vector<std::size_t> digits_;
  bool done_ = false;
};

}  // namespace

GroundInterpretation bottom_up(const Program& program,
                               const std::vector<std::string>& extra_constants) {
  if (!is_function_free(program))
    throw std::invalid_argument("bottom_up requires a function-free program");
  auto strat = stratify(program);
  if (!strat)
    throw std::invalid_argument("bottom_up requires a stratifiable program");

  std::set<std::string> universe_set;
  for (const auto& c : program.clauses) {
    for (const auto& arg : c.head.args) collect_constants(arg, universe_set);
    for (const auto& l : c.body)
      for (const auto& arg : l.atom.args) collect_constants(arg, universe_set);
  }
  universe_set.insert(extra_constants.begin(), extra_constants.end());
  if (universe_set.empty()) universe_set.insert("c0");
  std::vector<std::string> universe(universe_set.begin(), universe_set.end());

  auto ground_atom = [](const Atom& a,
                        const std::map<std::string, std::string>& b) {
    Atom out{a.predicate, {}};
    out.args.reserve(a.args.size());
    for (const auto& arg : a.args) {
      if (arg->is_var())
        out.args.push_back(Term::constant(b.at(arg->name)));
      else
        out.args.push_back(arg);
    }
    return out;
  };

  GroundInterpretation interp;
  for (std::size_t stratum = 0; stratum < strat->strata.size(); ++stratum) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : program.clauses) {
        if (strat->level.at(clause.head.predicate) != stratum) continue;
        std::set<std::string> vars;
        collect_variables(clause.head, vars);
        for (const auto& l : clause.body) collect_variables(l.atom, vars);
        GroundingIter it(std::vector<std::string>(vars.begin(), vars.end()),
                         universe);
        for (; !it.done(); it.next()) {
          auto binding = it.binding();
          bool body_holds = true;
          for (const auto& l : clause.body) {
            bool present = interp.contains(ground_atom(l.atom, binding));
            if (present != l.positive()) {
              body_holds = false;
              break;
            }
          }
          if (!body_holds) continue;
          if (interp.facts.insert(ground_atom(clause.head, binding)).second)
            changed = true;
        }
      }
    }
  }
  return interp;
}

}  // namespace loomcheck
