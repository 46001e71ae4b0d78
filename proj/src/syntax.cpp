#include "loomcheck/syntax.hpp"

#include <cassert>
#include <map>
#include <sstream>
#include <utility>

namespace loomcheck {

namespace {

// Terms can nest as deep as a derivation is long; teardown drains
// uniquely-owned subterms iteratively instead of unwinding the chain on
// the call stack.
void release_term(const Term* t) noexcept {
  std::vector<TermPtr> pending;
  auto detach = [&pending](const Term* node) {
    auto& args = const_cast<Term*>(node)->args;
    for (TermPtr& arg : args)
      if (arg.use_count() == 1) pending.push_back(std::move(arg));
    args.clear();
  };
  detach(t);
  delete t;
  while (!pending.empty()) {
    TermPtr next = std::move(pending.back());
    pending.pop_back();
    detach(next.get());
    // `next` dies here; its deleter sees a node without arguments
  }
}

TermPtr wrap(Term* t) { return TermPtr(t, &release_term); }

}  // namespace

TermPtr Term::var(std::string name) {
  return wrap(new Term{Kind::Variable, std::move(name), {}, false});
}

TermPtr Term::constant(std::string name) {
  return wrap(new Term{Kind::Constant, std::move(name), {}, true});
}

TermPtr Term::compound(std::string functor, std::vector<TermPtr> args) {
  assert(!args.empty());  // 0-ary functors are constants
  bool ground = true;
  for (const auto& arg : args) ground = ground && arg->ground;
  return wrap(new Term{Kind::Compound, std::move(functor), std::move(args), ground});
}

TermPtr Term::nil() { return constant(kNilName); }

TermPtr Term::list(std::vector<TermPtr> elems, TermPtr tail) {
  TermPtr acc = tail ? std::move(tail) : nil();
  for (auto it = elems.rbegin(); it != elems.rend(); ++it)
    acc = compound(kListFunctor, {*it, acc});
  return acc;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  return *a == *b;
}

bool operator==(const Term& a, const Term& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i])) return false;
  return true;
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i])) return false;
  return true;
}

bool operator==(const Literal& a, const Literal& b) {
  return a.polarity == b.polarity && a.atom == b.atom;
}

bool operator==(const Clause& a, const Clause& b) {
  if (!(a.head == b.head) || a.body.size() != b.body.size()) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!(a.body[i] == b.body[i])) return false;
  return true;
}

bool operator==(const Program& a, const Program& b) {
  if (a.clauses.size() != b.clauses.size()) return false;
  for (std::size_t i = 0; i < a.clauses.size(); ++i)
    if (!(a.clauses[i] == b.clauses[i])) return false;
  return true;
}

int compare(const TermPtr& a, const TermPtr& b) {
  if (a->kind != b->kind)
    return static_cast<int>(a->kind) < static_cast<int>(b->kind) ? -1 : 1;
  if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
  if (a->args.size() != b->args.size())
    return a->args.size() < b->args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (int c = compare(a->args[i], b->args[i])) return c;
  return 0;
}

int compare(const Atom& a, const Atom& b) {
  if (int c = a.predicate.compare(b.predicate)) return c < 0 ? -1 : 1;
  if (a.args.size() != b.args.size())
    return a.args.size() < b.args.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (int c = compare(a.args[i], b.args[i])) return c;
  return 0;
}

bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

std::size_t term_size(const TermPtr& t) {
  std::size_t n = 0;
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    ++n;  // the variable, constant or function symbol itself
    for (const auto& arg : cur->args) stack.push_back(arg.get());
  }
  return n;
}

std::size_t term_size(const Atom& a) {
  std::size_t n = 0;
  for (const auto& arg : a.args) n += term_size(arg);
  return n;
}

namespace {

// left-to-right, so arguments are stacked in reverse
void append_symbols(const TermPtr& t, std::vector<std::string>& out) {
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    out.push_back(cur->is_var() ? kVariableSymbol : cur->name);
    for (auto it = cur->args.rbegin(); it != cur->args.rend(); ++it)
      stack.push_back(it->get());
  }
}

}  // namespace

SymbolString symbol_string(const TermPtr& t) {
  SymbolString s;
  append_symbols(t, s.symbols);
  return s;
}

SymbolString symbol_string(const Atom& a) {
  SymbolString s;
  s.symbols.push_back(a.predicate);
  for (const auto& arg : a.args) append_symbols(arg, s.symbols);
  return s;
}

namespace {

TermPtr rename_term(const TermPtr& t, std::map<std::string, TermPtr>& renaming,
                    std::uint64_t& counter) {
  switch (t->kind) {
    case Term::Kind::Variable: {
      auto it = renaming.find(t->name);
      if (it == renaming.end()) {
        it = renaming.emplace(t->name, Term::var("V" + std::to_string(counter++)))
                 .first;
      }
      return it->second;
    }
    case Term::Kind::Constant:
      return t;
    case Term::Kind::Compound: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      for (const auto& arg : t->args)
        args.push_back(rename_term(arg, renaming, counter));
      return Term::compound(t->name, std::move(args));
    }
  }
  return t;
}

Atom rename_atom(const Atom& a, std::map<std::string, TermPtr>& renaming,
                 std::uint64_t& counter) {
  Atom out{a.predicate, {}};
  out.args.reserve(a.args.size());
  for (const auto& arg : a.args)
    out.args.push_back(rename_term(arg, renaming, counter));
  return out;
}

}  // namespace

Clause rename_apart(const Clause& c, std::uint64_t& counter) {
  std::map<std::string, TermPtr> renaming;
  Clause out;
  out.head = rename_atom(c.head, renaming, counter);
  out.body.reserve(c.body.size());
  for (const auto& lit : c.body)
    out.body.push_back({lit.polarity, rename_atom(lit.atom, renaming, counter)});
  return out;
}

void collect_variables(const TermPtr& t, std::set<std::string>& out) {
  std::vector<const Term*> stack{t.get()};
  while (!stack.empty()) {
    const Term* cur = stack.back();
    stack.pop_back();
    if (cur->ground) continue;
    if (cur->kind == Term::Kind::Variable) out.insert(cur->name);
    for (const auto& arg : cur->args) stack.push_back(arg.get());
  }
}

void collect_variables(const Atom& a, std::set<std::string>& out) {
  for (const auto& arg : a.args) collect_variables(arg, out);
}

bool is_ground(const TermPtr& t) { return t->ground; }

bool is_ground(const Atom& a) {
  for (const auto& arg : a.args)
    if (!arg->ground) return false;
  return true;
}

namespace {

bool variant_terms(const TermPtr& a, const TermPtr& b,
                   std::map<std::string, std::string>& fwd,
                   std::map<std::string, std::string>& bwd) {
  if (a->kind != b->kind) return false;
  if (a->is_var()) {
    auto f = fwd.find(a->name);
    auto g = bwd.find(b->name);
    if (f == fwd.end() && g == bwd.end()) {
      fwd.emplace(a->name, b->name);
      bwd.emplace(b->name, a->name);
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b->name &&
           g->second == a->name;
  }
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!variant_terms(a->args[i], b->args[i], fwd, bwd)) return false;
  return true;
}

}  // namespace

bool variants(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.args.size() != b.args.size())
    return false;
  std::map<std::string, std::string> fwd, bwd;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!variant_terms(a.args[i], b.args[i], fwd, bwd)) return false;
  return true;
}

namespace {

bool is_list_cell(const Term& t) {
  return t.kind == Term::Kind::Compound && t.name == kListFunctor &&
         t.args.size() == 2;
}

// worklist printer; list cells are re-sugared to bracket notation
void print_term(const TermPtr& root, std::ostringstream& os) {
  struct Item {
    const Term* term;  // exactly one of term/text is set
    const char* text;
  };
  std::vector<Item> stack{{root.get(), nullptr}};
  while (!stack.empty()) {
    Item item = stack.back();
    stack.pop_back();
    if (item.text) {
      os << item.text;
      continue;
    }
    const Term* t = item.term;
    if (is_list_cell(*t)) {
      os << '[';
      std::vector<const Term*> elems;
      const Term* tail = t;
      while (is_list_cell(*tail)) {
        elems.push_back(tail->args[0].get());
        tail = tail->args[1].get();
      }
      bool proper = tail->kind == Term::Kind::Constant && tail->name == kNilName;
      stack.push_back({nullptr, "]"});
      if (!proper) {
        stack.push_back({tail, nullptr});
        stack.push_back({nullptr, "|"});
      }
      for (std::size_t i = elems.size(); i-- > 0;) {
        stack.push_back({elems[i], nullptr});
        if (i) stack.push_back({nullptr, ", "});
      }
      continue;
    }
    os << t->name;
    if (t->kind == Term::Kind::Compound) {
      os << '(';
      stack.push_back({nullptr, ")"});
      for (std::size_t i = t->args.size(); i-- > 0;) {
        stack.push_back({t->args[i].get(), nullptr});
        if (i) stack.push_back({nullptr, ", "});
      }
    }
  }
}

void print_atom(const Atom& a, std::ostringstream& os) {
  os << a.predicate;
  if (!a.args.empty()) {
    os << '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ", ";
      print_term(a.args[i], os);
    }
    os << ')';
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(t, os);
  return os.str();
}

std::string to_string(const Atom& a) {
  std::ostringstream os;
  print_atom(a, os);
  return os.str();
}

std::string to_string(const Literal& l) {
  std::string s = to_string(l.atom);
  return l.positive() ? s : "\\+ " + s;
}

std::string to_string(const Clause& c) {
  std::string s = to_string(c.head);
  if (!c.body.empty()) {
    s += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) s += ", ";
      s += to_string(c.body[i]);
    }
  }
  return s + ".";
}

std::string to_string(const Program& p) {
  std::string s;
  for (const auto& c : p.clauses) {
    s += to_string(c);
    s += '\n';
  }
  return s;
}

std::string to_string(const SymbolString& s) {
  std::string out;
  for (std::size_t i = 0; i < s.symbols.size(); ++i) {
    if (i) out += ' ';
    out += s.symbols[i];
  }
  return out;
}

}  // namespace loomcheck
