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

#include "esc/sesame.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

namespace esc {

using sesame::Binding;
using sesame::Job;
using sesame::kNone;
using sesame::Node;
using sesame::NodeId;
using sesame::Slot;
using sesame::VarRecord;
using sesame::VarRef;

class SesameEngine {
 public:
  explicit SesameEngine(SesameState& q) : q_(q) {}

  void init(const Term& t) {
    q_.metrics_.initial_size = t.size();
    Term t0 = t;
    if (!is_well_bound(t)) {
      NameSupply n = NameSupply::after(t);
      t0 = rename_fresh(t, n);
    }
    q_.next_index_ = max_index(t0) + 1;
    q_.nodes_.reserve(2 * t0.size());
    q_.vars_.reserve(t0.size());
    Env env;
    env.reserve(t0.size());
    NodeId r = build(t0, env);
    set(Slot{}, r);
    q_.pool_.push_back(Job{Slot{}, 1});
  }

  std::optional<Tag> step() {
    if (q_.pool_.empty() || q_.clashed_) return std::nullopt;
    const Slot slot = q_.pool_.back().slot;
    const NodeId t = q_.child(slot);
    const Node n = q_.nodes_[t];
    std::optional<Tag> tag;
    switch (n.kind) {
      case TermKind::Cut:
        q_.nodes_[t].parent = slot;
        q_.pool_.back().slot = Slot{t, 1};
        tag = Tag::Sea1;
        break;
      case TermKind::Sub:
        if (cut_bound(n.head)) {
          tag = on_sub(slot, t);
        } else {
          int a = q_.pool_.back().name;
          q_.pool_.pop_back();
          q_.pool_.push_back(Job{Slot{t, 1}, a});
          q_.pool_.push_back(Job{Slot{t, 0}, q_.next_job_++});
          tag = Tag::Sea2;
        }
        break;
      case TermKind::Der:
        if (cut_bound(n.head)) {
          tag = on_der(slot, t);
        } else {
          q_.pool_.back().slot = Slot{t, 0};
          tag = Tag::Sea3;
        }
        break;
      case TermKind::Abs:
        q_.pool_.back().slot = Slot{t, 0};
        tag = Tag::Sea4;
        break;
      case TermKind::Bang:
        q_.pool_.back().slot = Slot{t, 0};
        tag = Tag::Sea5;
        break;
      case TermKind::Var:
        if (cut_bound(n.var)) {
          tag = on_var(slot, t);
        } else {
          q_.pool_.pop_back();
          tag = Tag::Sea6;
        }
        break;
      case TermKind::Tens:
        if (cut_bound(n.head)) {
          tag = on_tens(slot, t);
        } else {
          q_.pool_.back().slot = Slot{t, 0};
          tag = Tag::Sea7;
        }
        break;
      case TermKind::Pair: {
        int a = q_.pool_.back().name;
        q_.pool_.pop_back();
        q_.pool_.push_back(Job{Slot{t, 1}, q_.next_job_++});
        q_.pool_.push_back(Job{Slot{t, 0}, a});
        tag = Tag::Sea8;
        break;
      }
    }
    if (!tag) {
      q_.clashed_ = true;
      return std::nullopt;
    }
    q_.metrics_.record(*tag);
    return tag;
  }

  void set_elapsed(double seconds) { q_.metrics_.elapsed_seconds = seconds; }

 private:
  bool cut_bound(VarRef x) const { return q_.vars_[x].binding == Binding::Cut; }

  NodeId make(TermKind k) {
    Node n;
    n.kind = k;
    q_.nodes_.push_back(n);
    return static_cast<NodeId>(q_.nodes_.size()) - 1;
  }

  // The one place child links change; keeps cut back-references current.
  void set(Slot s, NodeId c) {
    if (s.node == kNone)
      q_.root_ = c;
    else
      q_.nodes_[s.node].ch[s.index] = c;
    if (c != kNone && q_.nodes_[c].kind == TermKind::Cut) q_.nodes_[c].parent = s;
  }

  VarRef new_var(VarKind k, std::uint32_t index, bool wildcard) {
    VarRecord r;
    r.kind = k;
    r.index = index;
    r.wildcard = wildcard;
    r.copy = static_cast<VarRef>(q_.vars_.size());
    q_.vars_.push_back(r);
    return r.copy;
  }

  void bind(VarRef x, Binding b, NodeId node) {
    q_.vars_[x].binding = b;
    q_.vars_[x].binder = node;
  }

  // ---- building -------------------------------------------------------

  using Env = std::unordered_map<VarId, VarRef, VarIdHash>;

  VarRef occurrence(VarId x, Env& env) {
    auto it = env.find(x);
    if (it != env.end()) return it->second;
    VarRef r = new_var(x.kind, x.index, x.wildcard);
    env.emplace(x, r);
    return r;
  }

  VarRef binder(VarId x, Binding b, NodeId node, Env& env) {
    VarRef r = new_var(x.kind, x.index, x.wildcard);
    bind(r, b, node);
    env[x] = r;
    return r;
  }

  NodeId build(const Term& t, Env& env) {
    NodeId id = make(t.kind());
    switch (t.kind()) {
      case TermKind::Var:
        q_.nodes_[id].var = occurrence(t.var(), env);
        break;
      case TermKind::Abs:
        q_.nodes_[id].var = binder(t.var(), Binding::Abs, id, env);
        set(Slot{id, 0}, build(t.body(), env));
        break;
      case TermKind::Bang:
        set(Slot{id, 0}, build(t.body(), env));
        break;
      case TermKind::Pair:
        set(Slot{id, 0}, build(t.left(), env));
        set(Slot{id, 1}, build(t.right(), env));
        break;
      case TermKind::Cut:
        set(Slot{id, 0}, build(t.value(), env));
        q_.nodes_[id].var = binder(t.var(), Binding::Cut, id, env);
        set(Slot{id, 1}, build(t.body(), env));
        break;
      case TermKind::Sub:
        q_.nodes_[id].head = occurrence(t.head(), env);
        set(Slot{id, 0}, build(t.value(), env));
        q_.nodes_[id].var = binder(t.var(), Binding::Sub, id, env);
        set(Slot{id, 1}, build(t.body(), env));
        break;
      case TermKind::Der:
        q_.nodes_[id].head = occurrence(t.head(), env);
        q_.nodes_[id].var = binder(t.var(), Binding::Der, id, env);
        set(Slot{id, 0}, build(t.body(), env));
        break;
      case TermKind::Tens:
        q_.nodes_[id].head = occurrence(t.head(), env);
        q_.nodes_[id].var = binder(t.var(), Binding::Tens, id, env);
        q_.nodes_[id].var2 = binder(t.var2(), Binding::Tens, id, env);
        set(Slot{id, 0}, build(t.body(), env));
        break;
    }
    return id;
  }

  // ---- copying --------------------------------------------------------

  // Linear copy with fresh bound names. Binders record their copy in the
  // scratch field; occurrences follow it (free ones point to themselves).
  NodeId copy(NodeId src, std::size_t& count) {
    std::vector<VarRef> touched;
    NodeId r = copy_rec(src, touched, count);
    for (VarRef x : touched) q_.vars_[x].copy = x;
    return r;
  }

  VarRef copy_binder(VarRef x, Binding b, NodeId node, std::vector<VarRef>& touched) {
    const VarRecord old = q_.vars_[x];
    VarRef y = new_var(old.kind, q_.next_index_++, old.wildcard);
    bind(y, b, node);
    q_.vars_[x].copy = y;
    touched.push_back(x);
    return y;
  }

  NodeId copy_rec(NodeId src, std::vector<VarRef>& touched, std::size_t& count) {
    ++count;
    const Node n = q_.nodes_[src];
    NodeId id = make(n.kind);
    auto occ = [&](VarRef x) { return q_.vars_[x].copy; };
    switch (n.kind) {
      case TermKind::Var:
        q_.nodes_[id].var = occ(n.var);
        break;
      case TermKind::Abs:
        q_.nodes_[id].var = copy_binder(n.var, Binding::Abs, id, touched);
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        break;
      case TermKind::Bang:
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        break;
      case TermKind::Pair:
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        set(Slot{id, 1}, copy_rec(n.ch[1], touched, count));
        break;
      case TermKind::Cut:
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        q_.nodes_[id].var = copy_binder(n.var, Binding::Cut, id, touched);
        set(Slot{id, 1}, copy_rec(n.ch[1], touched, count));
        break;
      case TermKind::Sub:
        q_.nodes_[id].head = occ(n.head);
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        q_.nodes_[id].var = copy_binder(n.var, Binding::Sub, id, touched);
        set(Slot{id, 1}, copy_rec(n.ch[1], touched, count));
        break;
      case TermKind::Der:
        q_.nodes_[id].head = occ(n.head);
        q_.nodes_[id].var = copy_binder(n.var, Binding::Der, id, touched);
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        break;
      case TermKind::Tens:
        q_.nodes_[id].head = occ(n.head);
        q_.nodes_[id].var = copy_binder(n.var, Binding::Tens, id, touched);
        q_.nodes_[id].var2 = copy_binder(n.var2, Binding::Tens, id, touched);
        set(Slot{id, 0}, copy_rec(n.ch[0], touched, count));
        break;
    }
    return id;
  }

  // ---- principal transitions -----------------------------------------

  // L<v> rooted at `root`: the slot holding v (root slot when L is empty)
  // and v itself.
  struct Spine {
    Slot last;
    bool empty = true;
    NodeId value = kNone;
  };

  Spine split_at(NodeId root) {
    Spine s;
    NodeId cur = root;
    while (is_left_constructor(q_.nodes_[cur].kind)) {
      std::uint8_t i = q_.nodes_[cur].kind == TermKind::Cut || q_.nodes_[cur].kind == TermKind::Sub ? 1 : 0;
      s.last = Slot{cur, i};
      s.empty = false;
      cur = q_.nodes_[cur].ch[i];
    }
    s.value = cur;
    return s;
  }

  NodeId plug_spine(NodeId root, const Spine& s, NodeId t) {
    if (s.empty) return t;
    set(s.last, t);
    return root;
  }

  NodeId new_cut(VarRef x, NodeId value, NodeId body) {
    NodeId c = make(TermKind::Cut);
    q_.nodes_[c].var = x;
    bind(x, Binding::Cut, c);
    set(Slot{c, 0}, value);
    set(Slot{c, 1}, body);
    return c;
  }

  NodeId cut_of(VarRef x) {
    NodeId k = q_.vars_[x].binder;
    if (k == kNone || q_.nodes_[k].kind != TermKind::Cut)
      throw InternalInvariant("strong machine: binder record of a cut variable is not a cut");
    return k;
  }

  // Splices a consumed multiplicative cut out of the graph.
  void remove_cut(NodeId k) {
    const Slot p = q_.nodes_[k].parent;
    if (q_.child(p) != k) throw InternalInvariant("strong machine: cut back-reference does not hold the cut");
    set(p, q_.nodes_[k].ch[1]);
    if (q_.pool_.back().slot == Slot{k, 1}) q_.pool_.back().slot = p;
  }

  void note_copy(std::size_t size) {
    q_.metrics_.max_copied_value_size = std::max(q_.metrics_.max_copied_value_size, size);
  }

  std::optional<Tag> on_var(Slot slot, NodeId t) {
    const VarRef x = q_.nodes_[t].var;
    const NodeId k = cut_of(x);
    const NodeId v = q_.nodes_[k].ch[0];
    const Node& vn = q_.nodes_[v];
    const bool mult_value =
        vn.kind == TermKind::Abs || vn.kind == TermKind::Pair || (vn.kind == TermKind::Var && q_.vars_[vn.var].kind == VarKind::Mult);
    const bool exp_value = vn.kind == TermKind::Bang || (vn.kind == TermKind::Var && q_.vars_[vn.var].kind == VarKind::Exp);
    if (q_.vars_[x].kind == VarKind::Mult) {
      if (!mult_value) return std::nullopt;
      set(slot, v);
      remove_cut(k);
      return Tag::AxM1;
    }
    if (!exp_value) return std::nullopt;
    std::size_t count = 0;
    set(slot, copy(v, count));
    note_copy(count);
    return Tag::AxE1;
  }

  std::optional<Tag> on_sub(Slot slot, NodeId t) {
    const NodeId k = cut_of(q_.nodes_[t].head);
    const NodeId v = q_.nodes_[k].ch[0];
    const Node vn = q_.nodes_[v];
    if (vn.kind == TermKind::Var && q_.vars_[vn.var].kind == VarKind::Mult) {
      q_.nodes_[t].head = vn.var;
      remove_cut(k);
      return Tag::AxM2;
    }
    if (vn.kind != TermKind::Abs) return std::nullopt;
    const Node sub = q_.nodes_[t];
    const NodeId body = vn.ch[0];
    const Spine sp = split_at(body);
    NodeId inner = plug_spine(body, sp, new_cut(sub.var, sp.value, sub.ch[1]));
    set(slot, new_cut(vn.var, sub.ch[0], inner));
    remove_cut(k);
    return Tag::Lolli;
  }

  std::optional<Tag> on_der(Slot slot, NodeId t) {
    const NodeId k = cut_of(q_.nodes_[t].head);
    const NodeId v = q_.nodes_[k].ch[0];
    const Node vn = q_.nodes_[v];
    if (vn.kind == TermKind::Var && q_.vars_[vn.var].kind == VarKind::Exp) {
      q_.nodes_[t].head = vn.var;
      return Tag::AxE2;
    }
    if (vn.kind != TermKind::Bang) return std::nullopt;
    const Node der = q_.nodes_[t];
    std::size_t count = 1;
    const NodeId body = copy(vn.ch[0], count);
    note_copy(count);
    const Spine sp = split_at(body);
    set(slot, plug_spine(body, sp, new_cut(der.var, sp.value, der.ch[0])));
    return Tag::Bang;
  }

  std::optional<Tag> on_tens(Slot slot, NodeId t) {
    const NodeId k = cut_of(q_.nodes_[t].head);
    const NodeId v = q_.nodes_[k].ch[0];
    const Node vn = q_.nodes_[v];
    if (vn.kind == TermKind::Var && q_.vars_[vn.var].kind == VarKind::Mult) {
      q_.nodes_[t].head = vn.var;
      remove_cut(k);
      return Tag::AxM2Tens;
    }
    if (vn.kind != TermKind::Pair) return std::nullopt;
    const Node tens = q_.nodes_[t];
    const Spine left = split_at(vn.ch[0]);
    const Spine right = split_at(vn.ch[1]);
    NodeId inner = plug_spine(vn.ch[1], right, new_cut(tens.var2, right.value, tens.ch[0]));
    set(slot, plug_spine(vn.ch[0], left, new_cut(tens.var, left.value, inner)));
    remove_cut(k);
    return Tag::Tens;
  }

  SesameState& q_;
};

SesameState sesame_init(const Term& t) {
  SesameState q;
  SesameEngine(q).init(t);
  return q;
}

std::optional<Tag> sesame_step(SesameState& q) { return SesameEngine(q).step(); }

namespace {

struct SlotHash {
  std::size_t operator()(const Slot& s) const noexcept {
    return std::hash<std::int64_t>()((static_cast<std::int64_t>(s.node) << 1) | s.index);
  }
};

class Reader {
 public:
  Reader(const SesameState& q, bool with_paths) : q_(q), with_paths_(with_paths) {
    if (with_paths)
      for (std::size_t i = 0; i < q.pool().size(); ++i) jobs_.emplace(q.pool()[i].slot, i);
    paths_.resize(q.pool().size());
  }

  Term read(Slot s) {
    if (with_paths_) {
      auto it = jobs_.find(s);
      if (it != jobs_.end()) paths_[it->second] = path_;
    }
    NodeId id = q_.child(s);
    if (id == kNone) throw InternalInvariant("strong machine: empty slot");
    const Node& n = q_.nodes()[id];
    switch (n.kind) {
      case TermKind::Var: return Term::var(name(n.var));
      case TermKind::Abs: return Term::abs(name(n.var), down(id, 0, Selector::AbsBody));
      case TermKind::Bang: return Term::bang(down(id, 0, Selector::BangBody));
      case TermKind::Pair: {
        Term l = down(id, 0, Selector::PairLeft);
        return Term::pair(std::move(l), down(id, 1, Selector::PairRight));
      }
      case TermKind::Cut: {
        Term v = down(id, 0, Selector::CutValue);
        return Term::cut(std::move(v), name(n.var), down(id, 1, Selector::CutBody));
      }
      case TermKind::Sub: {
        Term v = down(id, 0, Selector::SubValue);
        return Term::sub(name(n.head), std::move(v), name(n.var), down(id, 1, Selector::SubBody));
      }
      case TermKind::Der: return Term::der(name(n.head), name(n.var), down(id, 0, Selector::DerBody));
      case TermKind::Tens:
        return Term::tens(name(n.head), name(n.var), name(n.var2), down(id, 0, Selector::TensBody));
    }
    throw InternalInvariant("strong machine: unknown node");
  }

  std::vector<Path> take_paths() { return std::move(paths_); }

 private:
  VarId name(VarRef x) const {
    const VarRecord& r = q_.vars()[x];
    return VarId{r.kind, r.index, r.wildcard};
  }

  Term down(NodeId id, std::uint8_t i, Selector s) {
    if (with_paths_) path_.push_back(s);
    Term t = read(Slot{id, i});
    if (with_paths_) path_.pop_back();
    return t;
  }

  const SesameState& q_;
  bool with_paths_;
  std::unordered_map<Slot, std::size_t, SlotHash> jobs_;
  std::vector<Path> paths_;
  Path path_;
};

}  // namespace

Term sesame_readback(const SesameState& q) { return Reader(q, false).read(Slot{}); }

MarkedReadback sesame_readback_marked(const SesameState& q) {
  Reader r(q, true);
  MarkedReadback out{r.read(Slot{}), {}};
  auto paths = r.take_paths();
  for (std::size_t i = q.pool().size(); i-- > 0;) out.jobs.push_back(Mark{paths[i], q.pool()[i].name});
  return out;
}

SesameRun sesame_run(const Term& t, std::uint64_t step_limit, const SesameObserver& observer) {
  auto start = std::chrono::steady_clock::now();
  SesameRun run{sesame_init(t), Outcome::Normal};
  SesameEngine engine(run.state);
  while (true) {
    if (run.state.halted()) break;
    if (run.state.metrics().total() >= step_limit) {
      run.outcome = Outcome::StepLimit;
      break;
    }
    auto tag = engine.step();
    if (!tag) {
      run.outcome = run.state.clashed() ? Outcome::Clash : Outcome::Normal;
      break;
    }
    if (observer) observer(run.state, *tag);
  }
  engine.set_elapsed(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  return run;
}

Term gc(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return t;
    case TermKind::Abs: return Term::abs(t.var(), gc(t.body()));
    case TermKind::Bang: return Term::bang(gc(t.body()));
    case TermKind::Pair: return Term::pair(gc(t.left()), gc(t.right()));
    case TermKind::Cut: {
      // Iterate down cut chains; they can be long.
      Term cur = t;
      while (cur.kind() == TermKind::Cut) cur = cur.body();
      return gc(cur);
    }
    case TermKind::Sub: return Term::sub(t.head(), gc(t.value()), t.var(), gc(t.body()));
    case TermKind::Der: return Term::der(t.head(), t.var(), gc(t.body()));
    case TermKind::Tens: return Term::tens(t.head(), t.var(), t.var2(), gc(t.body()));
  }
  return t;
}

}  // namespace esc
