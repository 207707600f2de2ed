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

#include "esc/typing.hpp"

#include <unordered_map>

namespace esc {

// ---------------------------------------------------------------------------
// Formulas.

namespace {
using detail::FormulaNode;
}

Formula Formula::atom() { return Formula(std::make_shared<FormulaNode>(FormulaNode{Kind::Atom, -1, {}, {}})); }

Formula Formula::tensor(Formula a, Formula b) {
  return Formula(std::make_shared<FormulaNode>(FormulaNode{Kind::Tensor, -1, std::move(a), std::move(b)}));
}

Formula Formula::lolli(Formula a, Formula b) {
  return Formula(std::make_shared<FormulaNode>(FormulaNode{Kind::Lolli, -1, std::move(a), std::move(b)}));
}

Formula Formula::bang(Formula a) {
  return Formula(std::make_shared<FormulaNode>(FormulaNode{Kind::Bang, -1, std::move(a), {}}));
}

Formula Formula::meta(int id) { return Formula(std::make_shared<FormulaNode>(FormulaNode{Kind::Meta, id, {}, {}})); }

Formula::Kind Formula::kind() const { return node_->kind; }
int Formula::meta_id() const { return node_->meta; }
const Formula& Formula::left() const { return *node_->l; }
const Formula& Formula::right() const { return *node_->r; }
const Formula& Formula::operand() const { return *node_->l; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Meta: return a.meta_id() == b.meta_id();
    case Formula::Kind::Bang: return a.operand() == b.operand();
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

std::string meta_name(int id) {
  std::string s = "'";
  s += static_cast<char>('a' + id % 26);
  if (id >= 26) s += std::to_string(id / 26);
  return s;
}

bool binary(const Formula& f) { return f.kind() == Formula::Kind::Lolli || f.kind() == Formula::Kind::Tensor; }

void print_formula(const Formula& f, std::string& out) {
  auto paren = [&](const Formula& g, bool wrap) {
    if (wrap) out += '(';
    print_formula(g, out);
    if (wrap) out += ')';
  };
  switch (f.kind()) {
    case Formula::Kind::Atom: out += "Xm"; return;
    case Formula::Kind::Meta: out += meta_name(f.meta_id()); return;
    case Formula::Kind::Bang:
      out += '!';
      paren(f.operand(), binary(f.operand()));
      return;
    case Formula::Kind::Lolli:
      paren(f.left(), binary(f.left()));
      out += " -o ";
      paren(f.right(), f.right().kind() == Formula::Kind::Tensor);
      return;
    case Formula::Kind::Tensor:
      paren(f.left(), binary(f.left()));
      out += " * ";
      paren(f.right(), binary(f.right()));
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_formula(f, out);
  return out;
}

const char* to_string(TypeErrorKind k) {
  switch (k) {
    case TypeErrorKind::UnificationFailure: return "UnificationFailure";
    case TypeErrorKind::OccursCheck: return "OccursCheck";
    case TypeErrorKind::LinearityViolation: return "LinearityViolation";
    case TypeErrorKind::BangShapeViolation: return "BangShapeViolation";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Inference.

namespace {

using K = Formula::Kind;

struct TNode {
  K kind;
  int a = -1;
  int b = -1;
  int ref = -1;  // Meta: bound target
  bool not_bang = false;
};

enum class UResult { Ok, Mismatch, Occurs, NotBang };

class Unifier {
 public:
  int fresh(bool not_bang = false) {
    nodes_.push_back(TNode{K::Meta});
    nodes_.back().not_bang = not_bang;
    return static_cast<int>(nodes_.size()) - 1;
  }
  int make(K k, int a, int b = -1) {
    nodes_.push_back(TNode{k, a, b});
    return static_cast<int>(nodes_.size()) - 1;
  }
  int fresh_bang() { return make(K::Bang, fresh()); }

  int find(int i) {
    int r = i;
    while (nodes_[r].kind == K::Meta && nodes_[r].ref >= 0) r = nodes_[r].ref;
    while (nodes_[i].kind == K::Meta && nodes_[i].ref >= 0) {
      int next = nodes_[i].ref;
      nodes_[i].ref = r;
      i = next;
    }
    return r;
  }

  const TNode& at(int i) { return nodes_[find(i)]; }

  UResult unify(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return UResult::Ok;
    if (nodes_[x].kind == K::Meta) return bind(x, y);
    if (nodes_[y].kind == K::Meta) return bind(y, x);
    if (nodes_[x].kind != nodes_[y].kind) return UResult::Mismatch;
    switch (nodes_[x].kind) {
      case K::Atom: return UResult::Ok;
      case K::Bang: return unify(nodes_[x].a, nodes_[y].a);
      default: {
        int xb = nodes_[x].b, yb = nodes_[y].b;
        UResult r = unify(nodes_[x].a, nodes_[y].a);
        if (r != UResult::Ok) return r;
        return unify(xb, yb);
      }
    }
  }

  int from_formula(const Formula& f, std::unordered_map<int, int>& metas) {
    switch (f.kind()) {
      case K::Atom: return make(K::Atom, -1);
      case K::Meta: {
        auto it = metas.find(f.meta_id());
        if (it != metas.end()) return it->second;
        int m = fresh();
        metas.emplace(f.meta_id(), m);
        return m;
      }
      case K::Bang: return make(K::Bang, from_formula(f.operand(), metas));
      default: {
        int a = from_formula(f.left(), metas);
        int b = from_formula(f.right(), metas);
        return make(f.kind(), a, b);
      }
    }
  }

  Formula to_formula(int i, std::unordered_map<int, int>& names, std::vector<int>& not_bang) {
    i = find(i);
    const TNode n = nodes_[i];
    switch (n.kind) {
      case K::Atom: return Formula::atom();
      case K::Meta: {
        auto it = names.find(i);
        if (it == names.end()) {
          it = names.emplace(i, static_cast<int>(names.size())).first;
          if (n.not_bang) not_bang.push_back(it->second);
        }
        return Formula::meta(it->second);
      }
      case K::Bang: return Formula::bang(to_formula(n.a, names, not_bang));
      case K::Lolli: {
        Formula a = to_formula(n.a, names, not_bang);
        return Formula::lolli(std::move(a), to_formula(n.b, names, not_bang));
      }
      case K::Tensor: {
        Formula a = to_formula(n.a, names, not_bang);
        return Formula::tensor(std::move(a), to_formula(n.b, names, not_bang));
      }
    }
    return Formula::atom();
  }

 private:
  bool occurs(int m, int i) {
    i = find(i);
    if (i == m) return true;
    const TNode& n = nodes_[i];
    if (n.kind == K::Meta || n.kind == K::Atom) return false;
    int a = n.a, b = n.b;
    if (occurs(m, a)) return true;
    return b >= 0 && occurs(m, b);
  }

  UResult bind(int m, int target) {
    if (occurs(m, target)) return UResult::Occurs;
    TNode& t = nodes_[target];
    if (nodes_[m].not_bang) {
      if (t.kind == K::Bang) return UResult::NotBang;
      if (t.kind == K::Meta) t.not_bang = true;
    }
    nodes_[m].ref = target;
    return UResult::Ok;
  }

  std::vector<TNode> nodes_;
};

struct Untypable {
  TypeErrorKind kind;
  Path where;
  std::optional<VarId> var;
  std::string reason;
};

// Multiplicative variables: exactly one occurrence, never under a promotion
// that does not also contain their binder.
class LinearityCheck {
 public:
  std::optional<Untypable> run(const Term& t) {
    walk(t);
    if (error_) return error_;
    for (auto& [x, info] : free_) {
      if (info.count != 1)
        return Untypable{TypeErrorKind::LinearityViolation, {}, x,
                         to_string(x) + " occurs " + std::to_string(info.count) + " times"};
    }
    return std::nullopt;
  }

 private:
  struct Info {
    VarId x;
    int bang_depth = 0;
    int count = 0;
    Path binder;
  };

  void occ(VarId x) {
    if (!x.is_mult() || error_) return;
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->x == x) {
        ++it->count;
        if (bang_depth_ > it->bang_depth) violation(x, " occurs inside a promotion");
        return;
      }
    }
    Info& f = free_[x];
    ++f.count;
    if (bang_depth_ > 0) violation(x, " occurs inside a promotion");
  }

  void violation(VarId x, const std::string& what) {
    if (!error_) error_ = Untypable{TypeErrorKind::LinearityViolation, path_, x, to_string(x) + what};
  }

  void bind(VarId x) {
    if (x.is_mult()) scope_.push_back(Info{x, bang_depth_, 0, path_});
  }

  void unbind(VarId x) {
    if (!x.is_mult()) return;
    Info info = scope_.back();
    scope_.pop_back();
    if (info.count != 1 && !error_)
      error_ = Untypable{TypeErrorKind::LinearityViolation, info.binder, x,
                         to_string(x) + " occurs " + std::to_string(info.count) + " times"};
  }

  void down(const Term& t, Selector s) {
    path_.push_back(s);
    walk(*child(t, s));
    path_.pop_back();
  }

  void walk(const Term& t) {
    if (error_) return;
    switch (t.kind()) {
      case TermKind::Var: occ(t.var()); return;
      case TermKind::Abs:
        bind(t.var());
        down(t, Selector::AbsBody);
        unbind(t.var());
        return;
      case TermKind::Bang:
        ++bang_depth_;
        down(t, Selector::BangBody);
        --bang_depth_;
        return;
      case TermKind::Pair:
        down(t, Selector::PairLeft);
        down(t, Selector::PairRight);
        return;
      case TermKind::Cut:
        down(t, Selector::CutValue);
        bind(t.var());
        down(t, Selector::CutBody);
        unbind(t.var());
        return;
      case TermKind::Sub:
        occ(t.head());
        down(t, Selector::SubValue);
        bind(t.var());
        down(t, Selector::SubBody);
        unbind(t.var());
        return;
      case TermKind::Der:
        bind(t.var());
        down(t, Selector::DerBody);
        unbind(t.var());
        return;
      case TermKind::Tens:
        occ(t.head());
        bind(t.var());
        bind(t.var2());
        down(t, Selector::TensBody);
        unbind(t.var2());
        unbind(t.var());
        return;
    }
  }

  std::vector<Info> scope_;
  std::map<VarId, Info> free_;
  int bang_depth_ = 0;
  Path path_;
  std::optional<Untypable> error_;
};

class Inferencer {
 public:
  Inferencer(Unifier& u, const TypingContext& assumptions) : u_(u), assumptions_(assumptions) {}

  int run(const Term& t) { return walk(t); }

  std::optional<Untypable> error;
  std::map<VarId, int> free_types;

 private:
  int var_type(VarId x) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == x) return it->second;
    auto f = free_types.find(x);
    if (f != free_types.end()) return f->second;
    int ty;
    auto a = assumptions_.find(x);
    if (a != assumptions_.end()) {
      ty = u_.from_formula(a->second, assumption_metas_);
      if (x.is_exp() && u_.at(ty).kind != K::Bang && u_.at(ty).kind != K::Meta) {
        fail(TypeErrorKind::BangShapeViolation, x, "assumption for exponential " + to_string(x) + " is not a !-formula");
      } else if (x.is_exp()) {
        expect(ty, u_.fresh_bang(), x, "exponential variable");
      } else if (u_.at(ty).kind == K::Bang) {
        fail(TypeErrorKind::UnificationFailure, x, "multiplicative " + to_string(x) + " assumed with a !-formula");
      } else {
        int m = u_.fresh(true);
        expect(m, ty, x, "multiplicative variable");
      }
    } else {
      ty = binder_type(x);
    }
    free_types.emplace(x, ty);
    return ty;
  }

  int binder_type(VarId x) { return x.is_exp() ? u_.fresh_bang() : u_.fresh(true); }

  void fail(TypeErrorKind k, std::optional<VarId> x, std::string why) {
    if (!error) error = Untypable{k, path_, x, std::move(why)};
  }

  // Unifies, classifying failures. `x` names the variable the equation is
  // about, when there is one.
  void expect(int a, int b, std::optional<VarId> x, const std::string& what) {
    if (error) return;
    switch (u_.unify(a, b)) {
      case UResult::Ok: return;
      case UResult::Occurs: fail(TypeErrorKind::OccursCheck, x, what + ": occurs check"); return;
      case UResult::NotBang:
        fail(TypeErrorKind::UnificationFailure, x, what + ": multiplicative variable would get a !-formula");
        return;
      case UResult::Mismatch:
        if (x && x->is_exp())
          fail(TypeErrorKind::BangShapeViolation, x, what + ": exponential " + to_string(*x) + " needs a !-formula");
        else
          fail(TypeErrorKind::UnificationFailure, x, what + ": formulas do not unify");
        return;
    }
  }

  int down(const Term& t, Selector s) {
    path_.push_back(s);
    int r = walk(*child(t, s));
    path_.pop_back();
    return r;
  }

  int bind(VarId x) {
    int ty = binder_type(x);
    env_.emplace_back(x, ty);
    return ty;
  }

  int walk(const Term& t) {
    if (error) return u_.fresh();
    switch (t.kind()) {
      case TermKind::Var:
        return var_type(t.var());
      case TermKind::Abs: {
        int tx = bind(t.var());
        int tb = down(t, Selector::AbsBody);
        env_.pop_back();
        return u_.make(K::Lolli, tx, tb);
      }
      case TermKind::Bang:
        return u_.make(K::Bang, down(t, Selector::BangBody));
      case TermKind::Pair: {
        int l = down(t, Selector::PairLeft);
        int r = down(t, Selector::PairRight);
        return u_.make(K::Tensor, l, r);
      }
      case TermKind::Cut: {
        int tv = down(t, Selector::CutValue);
        int tx = bind(t.var());
        expect(tv, tx, t.var(), "cut");
        int tb = down(t, Selector::CutBody);
        env_.pop_back();
        return tb;
      }
      case TermKind::Sub: {
        int tm = var_type(t.head());
        int tv = down(t, Selector::SubValue);
        int tx = bind(t.var());
        expect(tm, u_.make(K::Lolli, tv, tx), t.head(), "subtraction");
        int tb = down(t, Selector::SubBody);
        env_.pop_back();
        return tb;
      }
      case TermKind::Der: {
        int te = var_type(t.head());
        int tx = bind(t.var());
        expect(te, u_.make(K::Bang, tx), t.head(), "dereliction");
        int tb = down(t, Selector::DerBody);
        env_.pop_back();
        return tb;
      }
      case TermKind::Tens: {
        int tm = var_type(t.head());
        int tx = bind(t.var());
        int ty = bind(t.var2());
        expect(tm, u_.make(K::Tensor, tx, ty), t.head(), "tensor elimination");
        int tb = down(t, Selector::TensBody);
        env_.pop_back();
        env_.pop_back();
        return tb;
      }
    }
    return u_.fresh();
  }

  Unifier& u_;
  const TypingContext& assumptions_;
  std::unordered_map<int, int> assumption_metas_;
  std::vector<std::pair<VarId, int>> env_;
  Path path_;
};

TypingResult untypable(Untypable e) {
  TypingResult r;
  r.typed = false;
  r.error = e.kind;
  r.where = std::move(e.where);
  r.var = e.var;
  r.reason = std::move(e.reason);
  return r;
}

}  // namespace

TypingResult infer_type(const Term& t, const TypingContext& assumptions) {
  if (auto e = LinearityCheck().run(t)) return untypable(std::move(*e));
  Unifier u;
  Inferencer inf(u, assumptions);
  int ty = inf.run(t);
  if (inf.error) return untypable(std::move(*inf.error));
  TypingResult r;
  r.typed = true;
  std::unordered_map<int, int> names;
  r.type = u.to_formula(ty, names, r.not_bang);
  for (auto& [x, i] : inf.free_types) r.context.emplace(x, u.to_formula(i, names, r.not_bang));
  return r;
}

bool is_typable(const Term& t) { return infer_type(t).typed; }

std::string describe(const TypingResult& r) {
  if (!r.typed) {
    std::string out = std::string(to_string(r.error)) + ": " + r.reason;
    if (!r.where.empty()) out += " at " + to_string(r.where);
    return out;
  }
  std::string out = to_string(*r.type);
  for (std::size_t i = 0; i < r.not_bang.size(); ++i) {
    out += i == 0 ? "  where " : ", ";
    out += meta_name(r.not_bang[i]) + " != !_";
  }
  return out;
}

}  // namespace esc
