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

#include "esc/bam.hpp"

#include <algorithm>
#include <chrono>

namespace esc {

BamState::BamState(const BamState& o)
    : entries_(o.entries_), active_(o.active_), clashed_(o.clashed_), names_(o.names_) {
  reindex();
}

BamState& BamState::operator=(const BamState& o) {
  if (this != &o) {
    entries_ = o.entries_;
    active_ = o.active_;
    clashed_ = o.clashed_;
    names_ = o.names_;
    reindex();
  }
  return *this;
}

void BamState::reindex() {
  index_.clear();
  for (auto it = entries_.begin(); it != entries_.end(); ++it) index_[it->binder] = it;
}

BamState bam_init(const Term& t) {
  VarSet open = fv(t);
  if (!open.empty()) throw OpenTerm("the basic machine needs a closed term; " + to_string(*open.begin()) + " is free");
  BamState q;
  q.names_ = NameSupply::after(t);
  q.active_ = rename_fresh(t, q.names_);
  return q;
}

namespace {

Term plug_split(const Split& s, const Term& t) { return plug(s.left, t); }

}  // namespace

std::optional<Tag> bam_step(BamState& q) {
  if (q.clashed_) return std::nullopt;
  const Term a = q.active_;

  auto lookup = [&](VarId x) {
    auto it = q.index_.find(x);
    if (it == q.index_.end()) throw UnboundVariable("basic machine: " + to_string(x) + " has no cut");
    return it->second;
  };
  auto remove = [&](BamState::Entries::iterator it) {
    q.index_.erase(it->binder);
    q.entries_.erase(it);
  };
  auto push = [&](Term v, VarId x) {
    q.entries_.push_back(CutEntry{std::move(v), x});
    q.index_[x] = std::prev(q.entries_.end());
  };
  auto clash = [&]() -> std::optional<Tag> {
    q.clashed_ = true;
    return std::nullopt;
  };

  switch (a.kind()) {
    case TermKind::Cut:
      push(a.value(), a.var());
      q.active_ = a.body();
      return Tag::Sea;

    case TermKind::Sub: {
      auto it = lookup(a.head());
      const Term v = it->value;
      if (v.kind() == TermKind::Var && v.var().is_mult()) {
        remove(it);
        q.active_ = Term::sub(v.var(), a.value(), a.var(), a.body());
        return Tag::AxM2;
      }
      if (v.kind() == TermKind::Abs) {
        remove(it);
        Split s = split(v.body());
        push(a.value(), v.var());
        q.active_ = plug_split(s, Term::cut(s.value, a.var(), a.body()));
        return Tag::Lolli;
      }
      return clash();
    }

    case TermKind::Der: {
      auto it = lookup(a.head());
      const Term& v = it->value;
      if (v.kind() == TermKind::Var && v.var().is_exp()) {
        q.active_ = Term::der(v.var(), a.var(), a.body());
        return Tag::AxE2;
      }
      if (v.kind() == TermKind::Bang) {
        Split s = split(rename_fresh(v.body(), q.names_));
        q.active_ = plug_split(s, Term::cut(s.value, a.var(), a.body()));
        return Tag::Bang;
      }
      return clash();
    }

    case TermKind::Tens: {
      auto it = lookup(a.head());
      const Term v = it->value;
      if (v.kind() == TermKind::Var && v.var().is_mult()) {
        remove(it);
        q.active_ = Term::tens(v.var(), a.var(), a.var2(), a.body());
        return Tag::AxM2Tens;
      }
      if (v.kind() == TermKind::Pair) {
        remove(it);
        Split l = split(v.left());
        Split r = split(v.right());
        Term inner = plug_split(r, Term::cut(r.value, a.var2(), a.body()));
        q.active_ = plug_split(l, Term::cut(l.value, a.var(), inner));
        return Tag::Tens;
      }
      return clash();
    }

    case TermKind::Var: {
      auto it = lookup(a.var());
      const Term v = it->value;
      if (a.var().is_mult() && v.is_mult_value()) {
        remove(it);
        q.active_ = v;
        return Tag::AxM1;
      }
      if (a.var().is_exp() && v.is_exp_value()) {
        q.active_ = rename_fresh(v, q.names_);
        return Tag::AxE1;
      }
      return clash();
    }

    default:
      // A non-variable value: an answer.
      return std::nullopt;
  }
}

Term bam_readback(const BamState& q) {
  Term t = q.active();
  for (auto it = q.context().rbegin(); it != q.context().rend(); ++it) t = Term::cut(it->value, it->binder, t);
  return t;
}

Path bam_active_path(const BamState& q) { return Path(q.context().size(), Selector::CutBody); }

BamRun bam_run(const Term& t, std::uint64_t step_limit, const BamObserver& observer) {
  auto start = std::chrono::steady_clock::now();
  BamRun run{bam_init(t), Outcome::Normal, {}};
  run.metrics.initial_size = t.size();
  while (true) {
    if (run.metrics.total() >= step_limit) {
      BamState probe = run.state;
      if (bam_step(probe)) {
        run.outcome = Outcome::StepLimit;
        break;
      }
    }
    // Copies made by ! and axe1 come from the cut being consulted.
    std::size_t copied = 0;
    const Term& a = run.state.active();
    if (a.kind() == TermKind::Der || (a.kind() == TermKind::Var && a.var().is_exp()))
      if (const CutEntry* e = run.state.cut_of(a.kind() == TermKind::Var ? a.var() : a.head()))
        copied = e->value.size();
    auto tag = bam_step(run.state);
    if (!tag) {
      run.outcome = run.state.clashed() ? Outcome::Clash : Outcome::Normal;
      break;
    }
    run.metrics.record(*tag);
    if (*tag == Tag::Bang || *tag == Tag::AxE1)
      run.metrics.max_copied_value_size = std::max(run.metrics.max_copied_value_size, copied);
    if (observer) observer(run.state, *tag);
  }
  run.metrics.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return run;
}

}  // namespace esc
