/* Copyright 2026 The ESC Workbench Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "esc/term.hpp"

#include <algorithm>
#include <unordered_map>
#include <utility>

namespace esc {

std::string to_string(VarId x) {
  if (x.wildcard) return "_";
  return (x.is_mult() ? "m" : "e") + std::to_string(x.index);
}

namespace {

using detail::TermNode;

void require_occurrable(VarId x, const char* what) {
  if (x.wildcard) throw Error(std::string("wildcard used as ") + what);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction and access.

Term Term::var(VarId x) {
  require_occurrable(x, "a variable occurrence");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->a = x;
  return Term(std::move(n));
}

Term Term::abs(VarId binder, Term body) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Abs;
  n->a = binder;
  n->size = 1 + body.size();
  n->c0 = std::move(body);
  return Term(std::move(n));
}

Term Term::bang(Term body) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Bang;
  n->size = 1 + body.size();
  n->c0 = std::move(body);
  return Term(std::move(n));
}

Term Term::pair(Term left, Term right) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Pair;
  n->size = 1 + left.size() + right.size();
  n->c0 = std::move(left);
  n->c1 = std::move(right);
  return Term(std::move(n));
}

Term Term::cut(Term value, VarId binder, Term body) {
  if (!value.is_value()) throw SplitViolation("cut value slot holds a non-value");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Cut;
  n->a = binder;
  n->size = 1 + value.size() + body.size();
  n->c0 = std::move(value);
  n->c1 = std::move(body);
  return Term(std::move(n));
}

Term Term::sub(VarId head, Term value, VarId binder, Term body) {
  if (!head.is_mult()) throw Error("subtraction head must be multiplicative");
  require_occurrable(head, "a subtraction head");
  if (!value.is_value()) throw SplitViolation("subtraction value slot holds a non-value");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Sub;
  n->a = binder;
  n->b = head;
  n->size = 1 + value.size() + body.size();
  n->c0 = std::move(value);
  n->c1 = std::move(body);
  return Term(std::move(n));
}

Term Term::der(VarId head, VarId binder, Term body) {
  if (!head.is_exp()) throw Error("dereliction head must be exponential");
  require_occurrable(head, "a dereliction head");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Der;
  n->a = binder;
  n->b = head;
  n->size = 1 + body.size();
  n->c0 = std::move(body);
  return Term(std::move(n));
}

Term Term::tens(VarId head, VarId left, VarId right, Term body) {
  if (!head.is_mult()) throw Error("tensor elimination head must be multiplicative");
  require_occurrable(head, "a tensor elimination head");
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Tens;
  n->a = left;
  n->b = head;
  n->c = right;
  n->size = 1 + body.size();
  n->c0 = std::move(body);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }

bool Term::is_value() const {
  switch (node_->kind) {
    case TermKind::Var:
    case TermKind::Abs:
    case TermKind::Bang:
    case TermKind::Pair:
      return true;
    default:
      return false;
  }
}

bool Term::is_mult_value() const {
  switch (node_->kind) {
    case TermKind::Var:
      return node_->a.is_mult();
    case TermKind::Abs:
    case TermKind::Pair:
      return true;
    default:
      return false;
  }
}

bool Term::is_exp_value() const {
  switch (node_->kind) {
    case TermKind::Var:
      return node_->a.is_exp();
    case TermKind::Bang:
      return true;
    default:
      return false;
  }
}

VarId Term::var() const { return node_->a; }
VarId Term::head() const { return node_->b; }
VarId Term::var2() const { return node_->c; }
const Term& Term::value() const { return *node_->c0; }

const Term& Term::body() const {
  switch (node_->kind) {
    case TermKind::Cut:
    case TermKind::Sub:
      return *node_->c1;
    default:
      return *node_->c0;
  }
}

const Term& Term::left() const { return *node_->c0; }
const Term& Term::right() const { return *node_->c1; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  const TermNode& x = *a.node_;
  const TermNode& y = *b.node_;
  if (x.kind != y.kind || x.size != y.size || x.a != y.a || x.b != y.b || x.c != y.c) return false;
  if (x.c0.has_value() != y.c0.has_value() || x.c1.has_value() != y.c1.has_value()) return false;
  if (x.c0 && !(*x.c0 == *y.c0)) return false;
  if (x.c1 && !(*x.c1 == *y.c1)) return false;
  return true;
}

bool is_binder(TermKind k) {
  return k == TermKind::Abs || k == TermKind::Cut || k == TermKind::Sub || k == TermKind::Der ||
         k == TermKind::Tens;
}

bool is_left_constructor(TermKind k) {
  return k == TermKind::Cut || k == TermKind::Sub || k == TermKind::Der || k == TermKind::Tens;
}

// ---------------------------------------------------------------------------
// Paths.

const char* to_string(Selector s) {
  switch (s) {
    case Selector::AbsBody: return "AbsBody";
    case Selector::BangBody: return "BangBody";
    case Selector::CutValue: return "CutValue";
    case Selector::CutBody: return "CutBody";
    case Selector::SubValue: return "SubValue";
    case Selector::SubBody: return "SubBody";
    case Selector::DerBody: return "DerBody";
    case Selector::PairLeft: return "PairLeft";
    case Selector::PairRight: return "PairRight";
    case Selector::TensBody: return "TensBody";
  }
  return "?";
}

std::string to_string(const Path& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += to_string(p[i]);
  }
  return out + "]";
}

std::vector<Selector> child_selectors(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return {};
    case TermKind::Abs: return {Selector::AbsBody};
    case TermKind::Bang: return {Selector::BangBody};
    case TermKind::Pair: return {Selector::PairLeft, Selector::PairRight};
    case TermKind::Cut: return {Selector::CutValue, Selector::CutBody};
    case TermKind::Sub: return {Selector::SubValue, Selector::SubBody};
    case TermKind::Der: return {Selector::DerBody};
    case TermKind::Tens: return {Selector::TensBody};
  }
  return {};
}

std::optional<Term> child(const Term& t, Selector s) {
  TermKind k = t.kind();
  switch (s) {
    case Selector::AbsBody:
      if (k == TermKind::Abs) return t.body();
      break;
    case Selector::BangBody:
      if (k == TermKind::Bang) return t.body();
      break;
    case Selector::CutValue:
      if (k == TermKind::Cut) return t.value();
      break;
    case Selector::CutBody:
      if (k == TermKind::Cut) return t.body();
      break;
    case Selector::SubValue:
      if (k == TermKind::Sub) return t.value();
      break;
    case Selector::SubBody:
      if (k == TermKind::Sub) return t.body();
      break;
    case Selector::DerBody:
      if (k == TermKind::Der) return t.body();
      break;
    case Selector::PairLeft:
      if (k == TermKind::Pair) return t.left();
      break;
    case Selector::PairRight:
      if (k == TermKind::Pair) return t.right();
      break;
    case Selector::TensBody:
      if (k == TermKind::Tens) return t.body();
      break;
  }
  return std::nullopt;
}

bool is_value_slot(Selector s) { return s == Selector::CutValue || s == Selector::SubValue; }

bool valid_path(const Term& root, const Path& path) {
  Term cur = root;
  for (Selector s : path) {
    auto c = child(cur, s);
    if (!c) return false;
    cur = *c;
  }
  return true;
}

Term subterm_at(const Term& root, const Path& path) {
  Term cur = root;
  for (Selector s : path) {
    auto c = child(cur, s);
    if (!c) throw InvalidPath("selector " + std::string(to_string(s)) + " does not match");
    cur = *c;
  }
  return cur;
}

namespace {

Term replace_child(const Term& t, Selector s, const Term& c) {
  switch (s) {
    case Selector::AbsBody: return Term::abs(t.var(), c);
    case Selector::BangBody: return Term::bang(c);
    case Selector::CutValue: return Term::cut(c, t.var(), t.body());
    case Selector::CutBody: return Term::cut(t.value(), t.var(), c);
    case Selector::SubValue: return Term::sub(t.head(), c, t.var(), t.body());
    case Selector::SubBody: return Term::sub(t.head(), t.value(), t.var(), c);
    case Selector::DerBody: return Term::der(t.head(), t.var(), c);
    case Selector::PairLeft: return Term::pair(c, t.right());
    case Selector::PairRight: return Term::pair(t.left(), c);
    case Selector::TensBody: return Term::tens(t.head(), t.var(), t.var2(), c);
  }
  return t;
}

Term plug_rec(const Term& cur, const Path& path, std::size_t i, const Term& t) {
  if (i == path.size()) return t;
  auto c = child(cur, path[i]);
  if (!c) throw InvalidPath("selector " + std::string(to_string(path[i])) + " does not match");
  return replace_child(cur, path[i], plug_rec(*c, path, i + 1, t));
}

}  // namespace

Term plug(const Term& root, const Path& path, const Term& t) {
  if (!path.empty() && is_value_slot(path.back()) && !t.is_value())
    throw SplitViolation("plugging a non-value into a value slot");
  return plug_rec(root, path, 0, t);
}

Term plug(const Position& pos, const Term& t) { return plug(pos.root, pos.path, t); }

Term plug_value(const Position& pos, const Term& v) {
  if (!v.is_value()) throw SplitViolation("plug_value expects a value");
  return plug(pos.root, pos.path, v);
}

bool is_left_path(const Path& p) {
  return std::all_of(p.begin(), p.end(), [](Selector s) {
    return s == Selector::CutBody || s == Selector::SubBody || s == Selector::DerBody ||
           s == Selector::TensBody;
  });
}

bool is_cut_path(const Path& p) {
  return std::all_of(p.begin(), p.end(), [](Selector s) { return s == Selector::CutBody; });
}

bool is_value_context_path(const Path& p) {
  if (p.empty()) return true;
  Selector s = p.front();
  return s == Selector::AbsBody || s == Selector::BangBody || s == Selector::PairLeft ||
         s == Selector::PairRight;
}

Split split(const Term& t) {
  Path path;
  Term cur = t;
  for (;;) {
    switch (cur.kind()) {
      case TermKind::Cut: path.push_back(Selector::CutBody); break;
      case TermKind::Sub: path.push_back(Selector::SubBody); break;
      case TermKind::Der: path.push_back(Selector::DerBody); break;
      case TermKind::Tens: path.push_back(Selector::TensBody); break;
      default: return Split{Position{t, std::move(path)}, cur};
    }
    cur = cur.body();
  }
}

// ---------------------------------------------------------------------------
// Free variables.

namespace {

// Binder multiset for scope-aware traversals.
class Scope {
 public:
  void bind(VarId x) { ++count_[x]; }
  void unbind(VarId x) {
    auto it = count_.find(x);
    if (--it->second == 0) count_.erase(it);
  }
  bool bound(VarId x) const { return count_.count(x) != 0; }

 private:
  std::unordered_map<VarId, int, VarIdHash> count_;
};

template <typename F>
void visit_free(const Term& t, Scope& scope, F&& on_free) {
  auto occ = [&](VarId x) {
    if (!scope.bound(x)) on_free(x);
  };
  switch (t.kind()) {
    case TermKind::Var:
      occ(t.var());
      return;
    case TermKind::Abs:
      scope.bind(t.var());
      visit_free(t.body(), scope, on_free);
      scope.unbind(t.var());
      return;
    case TermKind::Bang:
      visit_free(t.body(), scope, on_free);
      return;
    case TermKind::Pair:
      visit_free(t.left(), scope, on_free);
      visit_free(t.right(), scope, on_free);
      return;
    case TermKind::Cut:
      visit_free(t.value(), scope, on_free);
      scope.bind(t.var());
      visit_free(t.body(), scope, on_free);
      scope.unbind(t.var());
      return;
    case TermKind::Sub:
      occ(t.head());
      visit_free(t.value(), scope, on_free);
      scope.bind(t.var());
      visit_free(t.body(), scope, on_free);
      scope.unbind(t.var());
      return;
    case TermKind::Der:
      occ(t.head());
      scope.bind(t.var());
      visit_free(t.body(), scope, on_free);
      scope.unbind(t.var());
      return;
    case TermKind::Tens:
      occ(t.head());
      scope.bind(t.var());
      scope.bind(t.var2());
      visit_free(t.body(), scope, on_free);
      scope.unbind(t.var2());
      scope.unbind(t.var());
      return;
  }
}

}  // namespace

VarSet FreeVars::all() const {
  VarSet out = mult;
  out.insert(exp.begin(), exp.end());
  return out;
}

FreeVars free_vars(const Term& t) {
  FreeVars out;
  Scope scope;
  visit_free(t, scope, [&](VarId x) { (x.is_mult() ? out.mult : out.exp).insert(x); });
  return out;
}

VarSet fv(const Term& t) {
  VarSet out;
  Scope scope;
  visit_free(t, scope, [&](VarId x) { out.insert(x); });
  return out;
}

VarSet mfv(const Term& t) { return free_vars(t).mult; }

std::size_t count_free(VarId x, const Term& t) {
  std::size_t n = 0;
  Scope scope;
  visit_free(t, scope, [&](VarId y) { n += (y == x); });
  return n;
}

bool occurs_free(VarId x, const Term& t) { return count_free(x, t) != 0; }

bool is_cut_free(const Term& t) {
  if (t.kind() == TermKind::Cut) return false;
  for (Selector s : child_selectors(t))
    if (!is_cut_free(*child(t, s))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Clashes and garbage.

namespace {

struct ClashFinder {
  struct Entry {
    VarId x;
    TermKind value_kind;
    bool is_cut;
    Path path;
  };
  std::vector<Entry> scope;
  Path path;
  std::optional<Path> found;

  const Entry* lookup(VarId x) const {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->x == x) return &*it;
    return nullptr;
  }

  void push_binder(VarId x) { scope.push_back({x, TermKind::Var, false, {}}); }

  void descend(const Term& t, Selector s) {
    path.push_back(s);
    walk(*child(t, s));
    path.pop_back();
  }

  void walk(const Term& t) {
    if (found) return;
    switch (t.kind()) {
      case TermKind::Var:
        return;
      case TermKind::Abs:
        push_binder(t.var());
        descend(t, Selector::AbsBody);
        scope.pop_back();
        return;
      case TermKind::Bang:
        descend(t, Selector::BangBody);
        return;
      case TermKind::Pair:
        descend(t, Selector::PairLeft);
        descend(t, Selector::PairRight);
        return;
      case TermKind::Cut: {
        const Term& v = t.value();
        bool clash = (v.is_mult_value() && t.var().is_exp()) || (v.is_exp_value() && t.var().is_mult());
        if (clash) {
          found = path;
          return;
        }
        descend(t, Selector::CutValue);
        scope.push_back({t.var(), v.kind(), true, path});
        descend(t, Selector::CutBody);
        scope.pop_back();
        return;
      }
      case TermKind::Sub: {
        if (const Entry* e = lookup(t.head()); e && e->is_cut && e->value_kind == TermKind::Pair) {
          found = e->path;
          return;
        }
        descend(t, Selector::SubValue);
        push_binder(t.var());
        descend(t, Selector::SubBody);
        scope.pop_back();
        return;
      }
      case TermKind::Der:
        push_binder(t.var());
        descend(t, Selector::DerBody);
        scope.pop_back();
        return;
      case TermKind::Tens: {
        if (const Entry* e = lookup(t.head()); e && e->is_cut && e->value_kind == TermKind::Abs) {
          found = e->path;
          return;
        }
        push_binder(t.var());
        push_binder(t.var2());
        descend(t, Selector::TensBody);
        scope.pop_back();
        scope.pop_back();
        return;
      }
    }
  }
};

void collect_out_cuts(const Term& t, Path& path, std::vector<Path>& out) {
  for (Selector s : child_selectors(t)) {
    if (s == Selector::CutValue) continue;
    const Term c = *child(t, s);
    path.push_back(s);
    if (c.kind() == TermKind::Cut) out.push_back(path);
    collect_out_cuts(c, path, out);
    path.pop_back();
  }
}

void collect_out_vars(const Term& t, VarSet& out) {
  switch (t.kind()) {
    case TermKind::Var: out.insert(t.var()); break;
    case TermKind::Sub:
    case TermKind::Der:
    case TermKind::Tens: out.insert(t.head()); break;
    default: break;
  }
  for (Selector s : child_selectors(t))
    if (s != Selector::CutValue) collect_out_vars(*child(t, s), out);
}

// Walks outside cut values; each binder records whether it is an out cut.
struct GarbageChecker {
  std::vector<std::pair<VarId, bool>> scope;
  bool ok = true;

  void occ(VarId x) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
      if (it->first == x) {
        if (it->second) ok = false;
        return;
      }
    }
  }

  void walk(const Term& t) {
    if (!ok) return;
    switch (t.kind()) {
      case TermKind::Var:
        occ(t.var());
        return;
      case TermKind::Abs:
        scope.emplace_back(t.var(), false);
        walk(t.body());
        scope.pop_back();
        return;
      case TermKind::Bang:
        walk(t.body());
        return;
      case TermKind::Pair:
        walk(t.left());
        walk(t.right());
        return;
      case TermKind::Cut:
        scope.emplace_back(t.var(), true);
        walk(t.body());
        scope.pop_back();
        return;
      case TermKind::Sub:
        occ(t.head());
        walk(t.value());
        scope.emplace_back(t.var(), false);
        walk(t.body());
        scope.pop_back();
        return;
      case TermKind::Der:
        occ(t.head());
        scope.emplace_back(t.var(), false);
        walk(t.body());
        scope.pop_back();
        return;
      case TermKind::Tens:
        occ(t.head());
        scope.emplace_back(t.var(), false);
        scope.emplace_back(t.var2(), false);
        walk(t.body());
        scope.pop_back();
        scope.pop_back();
        return;
    }
  }
};

}  // namespace

std::optional<Path> find_clash(const Term& t) {
  ClashFinder f;
  f.walk(t);
  return f.found;
}

std::vector<Path> out_cuts(const Term& t) {
  std::vector<Path> out;
  Path path;
  if (t.kind() == TermKind::Cut) out.push_back(path);
  collect_out_cuts(t, path, out);
  return out;
}

VarSet out_vars(const Term& t) {
  VarSet out;
  collect_out_vars(t, out);
  return out;
}

bool is_cut_free_up_to_garbage(const Term& t) {
  GarbageChecker g;
  g.walk(t);
  return g.ok;
}

// ---------------------------------------------------------------------------
// Names.

namespace {

void max_index_rec(const Term& t, std::uint32_t& m) {
  auto see = [&](VarId x) { m = std::max(m, x.index); };
  switch (t.kind()) {
    case TermKind::Var: see(t.var()); break;
    case TermKind::Abs:
    case TermKind::Cut: see(t.var()); break;
    case TermKind::Sub:
    case TermKind::Der: see(t.var()); see(t.head()); break;
    case TermKind::Tens: see(t.var()); see(t.var2()); see(t.head()); break;
    default: break;
  }
  for (Selector s : child_selectors(t)) max_index_rec(*child(t, s), m);
}

// Renames binders through `fresh`, keeping free variables.
template <typename Fresh>
struct Renamer {
  Fresh fresh;
  std::vector<std::pair<VarId, VarId>> env;

  VarId lookup(VarId x) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it)
      if (it->first == x) return it->second;
    return x;
  }

  VarId bind(VarId x) {
    VarId y = fresh(x);
    env.emplace_back(x, y);
    return y;
  }

  Term go(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        return Term::var(lookup(t.var()));
      case TermKind::Abs: {
        VarId y = bind(t.var());
        Term b = go(t.body());
        env.pop_back();
        return Term::abs(y, std::move(b));
      }
      case TermKind::Bang:
        return Term::bang(go(t.body()));
      case TermKind::Pair: {
        Term l = go(t.left());
        Term r = go(t.right());
        return Term::pair(std::move(l), std::move(r));
      }
      case TermKind::Cut: {
        Term v = go(t.value());
        VarId y = bind(t.var());
        Term b = go(t.body());
        env.pop_back();
        return Term::cut(std::move(v), y, std::move(b));
      }
      case TermKind::Sub: {
        VarId h = lookup(t.head());
        Term v = go(t.value());
        VarId y = bind(t.var());
        Term b = go(t.body());
        env.pop_back();
        return Term::sub(h, std::move(v), y, std::move(b));
      }
      case TermKind::Der: {
        VarId h = lookup(t.head());
        VarId y = bind(t.var());
        Term b = go(t.body());
        env.pop_back();
        return Term::der(h, y, std::move(b));
      }
      case TermKind::Tens: {
        VarId h = lookup(t.head());
        VarId y1 = bind(t.var());
        VarId y2 = bind(t.var2());
        Term b = go(t.body());
        env.pop_back();
        env.pop_back();
        return Term::tens(h, y1, y2, std::move(b));
      }
    }
    return t;
  }
};

template <typename Fresh>
Renamer<Fresh> make_renamer(Fresh f) {
  return Renamer<Fresh>{std::move(f), {}};
}

// Structural equality that ignores the wildcard flag on binders.
bool eq_modulo_wildcards(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  auto same_binder = [](VarId x, VarId y) { return x.kind == y.kind && x.index == y.index; };
  switch (a.kind()) {
    case TermKind::Var:
      return a.var() == b.var();
    case TermKind::Abs:
      return same_binder(a.var(), b.var()) && eq_modulo_wildcards(a.body(), b.body());
    case TermKind::Bang:
      return eq_modulo_wildcards(a.body(), b.body());
    case TermKind::Pair:
      return eq_modulo_wildcards(a.left(), b.left()) && eq_modulo_wildcards(a.right(), b.right());
    case TermKind::Cut:
      return same_binder(a.var(), b.var()) && eq_modulo_wildcards(a.value(), b.value()) &&
             eq_modulo_wildcards(a.body(), b.body());
    case TermKind::Sub:
      return a.head() == b.head() && same_binder(a.var(), b.var()) &&
             eq_modulo_wildcards(a.value(), b.value()) && eq_modulo_wildcards(a.body(), b.body());
    case TermKind::Der:
      return a.head() == b.head() && same_binder(a.var(), b.var()) &&
             eq_modulo_wildcards(a.body(), b.body());
    case TermKind::Tens:
      return a.head() == b.head() && same_binder(a.var(), b.var()) &&
             same_binder(a.var2(), b.var2()) && eq_modulo_wildcards(a.body(), b.body());
  }
  return false;
}

}  // namespace

std::uint32_t max_index(const Term& t) {
  std::uint32_t m = 0;
  max_index_rec(t, m);
  return m;
}

NameSupply NameSupply::after(const Term& t) { return NameSupply(max_index(t) + 1); }

Term rename_fresh(const Term& t, NameSupply& names) {
  auto r = make_renamer([&names](VarId x) { return VarId{x.kind, names.fresh(), x.wildcard}; });
  return r.go(t);
}

Term alpha_canonical(const Term& t) {
  std::uint32_t base = 0;
  for (VarId x : fv(t)) base = std::max(base, x.index);
  std::uint32_t next_m = base + 1;
  std::uint32_t next_e = base + 1;
  auto r = make_renamer([&](VarId x) {
    std::uint32_t i = x.is_mult() ? next_m++ : next_e++;
    return VarId{x.kind, i, x.wildcard};
  });
  return r.go(t);
}

bool alpha_eq(const Term& a, const Term& b) {
  return eq_modulo_wildcards(alpha_canonical(a), alpha_canonical(b));
}

namespace {

// Binders in sorted order, with an in-scope flag each.
class BoundChecker {
 public:
  explicit BoundChecker(const Term& t) { collect(t); }

  bool run(const Term& t) {
    std::sort(binders_.begin(), binders_.end());
    if (std::adjacent_find(binders_.begin(), binders_.end()) != binders_.end()) return false;
    in_scope_.assign(binders_.size(), false);
    return walk(t);
  }

 private:
  void collect(const Term& t) {
    if (is_binder(t.kind())) binders_.push_back(t.var());
    if (t.kind() == TermKind::Tens) binders_.push_back(t.var2());
    for (Selector s : child_selectors(t)) collect(*child(t, s));
  }

  std::size_t index(VarId x) const {
    auto it = std::lower_bound(binders_.begin(), binders_.end(), x);
    return it != binders_.end() && *it == x ? static_cast<std::size_t>(it - binders_.begin()) : binders_.size();
  }

  // An occurrence of a bound name outside its binder's scope.
  bool occurs(VarId x) const {
    std::size_t i = index(x);
    return i == binders_.size() || in_scope_[i];
  }

  bool scoped(VarId x, const Term& body) {
    std::size_t i = index(x);
    in_scope_[i] = true;
    bool ok = walk(body);
    in_scope_[i] = false;
    return ok;
  }

  bool walk(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: return occurs(t.var());
      case TermKind::Abs: return scoped(t.var(), t.body());
      case TermKind::Bang: return walk(t.body());
      case TermKind::Pair: return walk(t.left()) && walk(t.right());
      case TermKind::Cut: return walk(t.value()) && scoped(t.var(), t.body());
      case TermKind::Sub: return occurs(t.head()) && walk(t.value()) && scoped(t.var(), t.body());
      case TermKind::Der: return occurs(t.head()) && scoped(t.var(), t.body());
      case TermKind::Tens: {
        if (!occurs(t.head())) return false;
        std::size_t i = index(t.var()), j = index(t.var2());
        in_scope_[i] = in_scope_[j] = true;
        bool ok = walk(t.body());
        in_scope_[i] = in_scope_[j] = false;
        return ok;
      }
    }
    return true;
  }

  std::vector<VarId> binders_;
  std::vector<bool> in_scope_;
};

}  // namespace

bool is_well_bound(const Term& t) { return BoundChecker(t).run(t); }

}  // namespace esc
