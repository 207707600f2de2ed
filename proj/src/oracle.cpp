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

#include "esc/oracle.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace esc {

std::string to_string(const Redex& r) {
  std::string s = tag_name(r.kind);
  s += " at ";
  s += to_string(r.position);
  if (r.kind != RuleKind::W) s += " (cut " + to_string(r.cut_site) + ")";
  return s;
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::GoodFull: return "good";
    case Mode::GoodNonErasing: return "good-nonerasing";
    case Mode::BasicNonErasing: return "basic";
  }
  return "?";
}

std::uint64_t NormalizeResult::multiplicative_count() const {
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < kRuleKinds; ++k)
    if (is_multiplicative(static_cast<RuleKind>(k))) n += counts[k];
  return n;
}

std::uint64_t NormalizeResult::exponential_count() const {
  std::uint64_t n = 0;
  for (std::size_t k = 0; k < kRuleKinds; ++k)
    if (!is_multiplicative(static_cast<RuleKind>(k))) n += counts[k];
  return n;
}

namespace {

// Which rule a cut value fires against an occurrence node, if any (clashes
// fire nothing).
std::optional<RuleKind> rule_for(const Term& value, const Term& occ) {
  switch (occ.kind()) {
    case TermKind::Var:
      if (occ.var().is_mult() && value.is_mult_value()) return RuleKind::AxM1;
      if (occ.var().is_exp() && value.is_exp_value()) return RuleKind::AxE1;
      return std::nullopt;
    case TermKind::Sub:
      if (value.kind() == TermKind::Var && value.var().is_mult()) return RuleKind::AxM2;
      if (value.kind() == TermKind::Abs) return RuleKind::Lolli;
      return std::nullopt;
    case TermKind::Der:
      if (value.kind() == TermKind::Var && value.var().is_exp()) return RuleKind::AxE2;
      if (value.kind() == TermKind::Bang) return RuleKind::Bang;
      return std::nullopt;
    case TermKind::Tens:
      if (value.kind() == TermKind::Var && value.var().is_mult()) return RuleKind::AxM2;
      if (value.kind() == TermKind::Pair) return RuleKind::Tens;
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

bool contains(const std::vector<VarId>& d, VarId x) { return std::find(d.begin(), d.end(), x) != d.end(); }

void erase(std::vector<VarId>& d, VarId x) {
  auto it = std::find(d.begin(), d.end(), x);
  if (it != d.end()) d.erase(it);
}

void insert(std::vector<VarId>& d, VarId x) {
  if (!contains(d, x)) d.push_back(x);
}

// dfv of the context given by `nodes` (nodes[i] is the node the i-th
// selector leaves) and `path`, computed from the hole outwards. `good`
// becomes false on a cut value slot or a dominated cut.
std::vector<VarId> dfv_along(const std::vector<Term>& nodes, const Path& path, bool& good) {
  std::vector<VarId> d;
  good = true;
  for (std::size_t i = path.size(); i-- > 0;) {
    const Term& n = nodes[i];
    switch (path[i]) {
      case Selector::AbsBody: erase(d, n.var()); break;
      case Selector::BangBody:
      case Selector::PairLeft:
      case Selector::PairRight: break;
      case Selector::CutValue: good = false; break;
      case Selector::CutBody:
        if (contains(d, n.var())) good = false;
        erase(d, n.var());
        break;
      case Selector::SubValue: insert(d, n.head()); break;
      case Selector::SubBody:
      case Selector::DerBody:
        if (contains(d, n.var())) {
          erase(d, n.var());
          insert(d, n.head());
        }
        break;
      case Selector::TensBody:
        // Mirrors the dereliction clause, with two binders.
        if (contains(d, n.var()) || contains(d, n.var2())) {
          erase(d, n.var());
          erase(d, n.var2());
          insert(d, n.head());
        }
        break;
    }
  }
  return d;
}

std::vector<Term> nodes_along(const Term& root, const Path& path) {
  std::vector<Term> nodes;
  nodes.reserve(path.size() + 1);
  nodes.push_back(root);
  for (Selector s : path) {
    auto c = child(nodes.back(), s);
    if (!c) throw InvalidPath("path " + to_string(path) + " leaves the term");
    nodes.push_back(std::move(*c));
  }
  return nodes;
}

// Binder stacks per name, so that occurrences resolve to their innermost
// binder in O(1).
struct Binding {
  bool is_cut = false;
  std::size_t depth = 0;  // path length at the binding node
  std::size_t uses = 0;
};

class Scope {
 public:
  void bind(VarId x, bool is_cut, std::size_t depth) {
    entries_.push_back(Binding{is_cut, depth, 0});
    stacks_[x].push_back(entries_.size() - 1);
  }
  Binding unbind(VarId x) {
    auto it = stacks_.find(x);
    std::size_t i = it->second.back();
    it->second.pop_back();
    if (it->second.empty()) stacks_.erase(it);
    Binding b = entries_[i];
    // Entries are strictly nested, so the one being dropped is the last.
    entries_.pop_back();
    return b;
  }
  Binding* lookup(VarId x) {
    auto it = stacks_.find(x);
    return it == stacks_.end() ? nullptr : &entries_[it->second.back()];
  }

 private:
  std::vector<Binding> entries_;
  std::unordered_map<VarId, std::vector<std::size_t>, VarIdHash> stacks_;
};

// Cut nodes binding an exponential variable with no occurrence in their body.
class ErasableCuts {
 public:
  explicit ErasableCuts(const Term& t) { walk(t); }
  bool contains(const Term& cut) const { return ids_.count(cut.id()) != 0; }

 private:
  void occ(VarId x) {
    if (Binding* b = scope_.lookup(x)) ++b->uses;
  }
  void walk(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var: occ(t.var()); return;
      case TermKind::Abs:
        scope_.bind(t.var(), false, 0);
        walk(t.body());
        scope_.unbind(t.var());
        return;
      case TermKind::Bang: walk(t.body()); return;
      case TermKind::Pair:
        walk(t.left());
        walk(t.right());
        return;
      case TermKind::Cut: {
        walk(t.value());
        scope_.bind(t.var(), true, 0);
        walk(t.body());
        Binding b = scope_.unbind(t.var());
        if (t.var().is_exp() && b.uses == 0) ids_.insert(t.id());
        return;
      }
      case TermKind::Sub:
        occ(t.head());
        walk(t.value());
        scope_.bind(t.var(), false, 0);
        walk(t.body());
        scope_.unbind(t.var());
        return;
      case TermKind::Der:
        occ(t.head());
        scope_.bind(t.var(), false, 0);
        walk(t.body());
        scope_.unbind(t.var());
        return;
      case TermKind::Tens:
        occ(t.head());
        scope_.bind(t.var(), false, 0);
        scope_.bind(t.var2(), false, 0);
        walk(t.body());
        scope_.unbind(t.var2());
        scope_.unbind(t.var());
        return;
    }
  }

  Scope scope_;
  std::unordered_set<const void*> ids_;
};

enum class Filter { All, GoodFull, GoodNonErasing, Basic };

Filter filter_of(Mode m) {
  switch (m) {
    case Mode::GoodFull: return Filter::GoodFull;
    case Mode::GoodNonErasing: return Filter::GoodNonErasing;
    case Mode::BasicNonErasing: return Filter::Basic;
  }
  return Filter::All;
}

// Pre-order walk producing redexes in lexicographic order of position.
class Finder {
 public:
  Finder(const Term& t, Filter f, bool first_only) : root_(t), filter_(f), first_only_(first_only), erasable_(t) {}

  std::vector<Redex> run() {
    nodes_.push_back(root_);
    walk(root_);
    return std::move(found_);
  }

 private:
  bool done() const { return first_only_ && !found_.empty(); }

  bool accepts(RuleKind k) const {
    switch (filter_) {
      case Filter::All: return true;
      case Filter::GoodFull: return good_here();
      case Filter::GoodNonErasing: return k != RuleKind::W && good_here();
      case Filter::Basic: return k != RuleKind::W && is_cut_path(path_);
    }
    return false;
  }

  bool good_here() const {
    bool good;
    dfv_along(nodes_, path_, good);
    return good;
  }

  void candidate(RuleKind k, std::size_t cut_depth, bool with_occurrence) {
    if (!accepts(k)) return;
    Redex r;
    r.kind = k;
    r.position = path_;
    r.cut_site.assign(path_.begin(), path_.begin() + static_cast<std::ptrdiff_t>(cut_depth));
    if (with_occurrence) r.occurrence_site = path_;
    found_.push_back(std::move(r));
  }

  void occurrence(const Term& t, VarId x) {
    Binding* b = scope_.lookup(x);
    if (!b || !b->is_cut) return;
    const Term& cut = nodes_[b->depth];
    if (auto k = rule_for(cut.value(), t)) candidate(*k, b->depth, true);
  }

  void down(const Term& t, Selector s) {
    if (done()) return;
    if (filter_ != Filter::All) {
      if (s == Selector::CutValue) return;
      if (filter_ == Filter::Basic && s != Selector::CutBody) return;
    }
    path_.push_back(s);
    Term c = *child(t, s);  // nodes_ may reallocate under walk
    nodes_.push_back(c);
    walk(c);
    nodes_.pop_back();
    path_.pop_back();
  }

  void bind(VarId x, bool is_cut) { scope_.bind(x, is_cut, path_.size()); }

  void walk(const Term& t) {
    switch (t.kind()) {
      case TermKind::Var:
        occurrence(t, t.var());
        return;
      case TermKind::Abs:
        bind(t.var(), false);
        down(t, Selector::AbsBody);
        scope_.unbind(t.var());
        return;
      case TermKind::Bang:
        down(t, Selector::BangBody);
        return;
      case TermKind::Pair:
        down(t, Selector::PairLeft);
        down(t, Selector::PairRight);
        return;
      case TermKind::Cut:
        if (erasable_.contains(t) && t.value().is_exp_value()) candidate(RuleKind::W, path_.size(), false);
        down(t, Selector::CutValue);
        bind(t.var(), true);
        down(t, Selector::CutBody);
        scope_.unbind(t.var());
        return;
      case TermKind::Sub:
        occurrence(t, t.head());
        down(t, Selector::SubValue);
        bind(t.var(), false);
        down(t, Selector::SubBody);
        scope_.unbind(t.var());
        return;
      case TermKind::Der:
        occurrence(t, t.head());
        bind(t.var(), false);
        down(t, Selector::DerBody);
        scope_.unbind(t.var());
        return;
      case TermKind::Tens:
        occurrence(t, t.head());
        bind(t.var(), false);
        bind(t.var2(), false);
        down(t, Selector::TensBody);
        scope_.unbind(t.var2());
        scope_.unbind(t.var());
        return;
    }
  }

  Term root_;
  Filter filter_;
  bool first_only_;
  ErasableCuts erasable_;
  Path path_;
  std::vector<Term> nodes_;
  Scope scope_;
  std::vector<Redex> found_;
};

[[noreturn]] void stale(const Redex& r, const std::string& why) {
  throw StaleRedex("stale redex " + to_string(r) + ": " + why);
}

bool has_prefix(const Path& p, const Path& prefix) {
  return p.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), p.begin());
}

// Checks that the occurrence at `rest` (relative to the cut body) is not
// captured by a binder of x on the way down.
bool reaches_unbound(const Term& body, const Path& rest, VarId x) {
  Term cur = body;
  for (Selector s : rest) {
    switch (s) {
      case Selector::AbsBody:
      case Selector::CutBody:
      case Selector::SubBody:
      case Selector::DerBody:
        if (cur.var() == x) return false;
        break;
      case Selector::TensBody:
        if (cur.var() == x || cur.var2() == x) return false;
        break;
      default: break;
    }
    cur = *child(cur, s);
  }
  return true;
}

Term plug_split(const Split& s, const Term& t) { return plug(s.left, t); }

}  // namespace

std::vector<Redex> enumerate_redexes(const Term& t) { return Finder(t, Filter::All, false).run(); }

std::vector<Redex> redexes(const Term& t, Mode mode) { return Finder(t, filter_of(mode), false).run(); }

std::vector<Redex> good_redexes(const Term& t) { return redexes(t, Mode::GoodFull); }

std::optional<Redex> first_redex(const Term& t, Mode mode) {
  auto found = Finder(t, filter_of(mode), true).run();
  if (found.empty()) return std::nullopt;
  return std::move(found.front());
}

VarSet dfv(const Position& pos) {
  bool good;
  auto d = dfv_along(nodes_along(pos.root, pos.path), pos.path, good);
  return VarSet(d.begin(), d.end());
}

bool is_good(const Position& pos) {
  bool good;
  dfv_along(nodes_along(pos.root, pos.path), pos.path, good);
  return good;
}

bool is_basic(const Position& pos) { return valid_path(pos.root, pos.path) && is_cut_path(pos.path); }

std::size_t copied_size(const Term& t, const Redex& r) {
  if (r.kind != RuleKind::AxE1 && r.kind != RuleKind::Bang && r.kind != RuleKind::W) return 0;
  return subterm_at(t, r.cut_site).value().size();
}

Term apply_redex(const Term& t, const Redex& r, NameSupply& names) {
  if (!valid_path(t, r.cut_site)) stale(r, "no such cut site");
  Term cut = subterm_at(t, r.cut_site);
  if (cut.kind() != TermKind::Cut) stale(r, "cut site is not a cut");
  const Term& v = cut.value();
  const VarId x = cut.var();

  if (r.kind == RuleKind::W) {
    if (r.position != r.cut_site || r.occurrence_site) stale(r, "erasure is positioned at its cut");
    if (!x.is_exp() || !v.is_exp_value() || occurs_free(x, cut.body())) stale(r, "cut is not erasable");
    return plug(t, r.cut_site, cut.body());
  }

  if (!r.occurrence_site || *r.occurrence_site != r.position) stale(r, "missing occurrence");
  const Path& occ_path = *r.occurrence_site;
  if (!has_prefix(occ_path, r.cut_site) || occ_path.size() == r.cut_site.size() ||
      occ_path[r.cut_site.size()] != Selector::CutBody)
    stale(r, "occurrence is not in the cut body");
  if (!valid_path(t, occ_path)) stale(r, "no such occurrence");
  Path rest(occ_path.begin() + static_cast<std::ptrdiff_t>(r.cut_site.size()) + 1, occ_path.end());
  const Term& body = cut.body();
  Term occ = subterm_at(body, rest);
  if (occ.kind() != TermKind::Var && occ.kind() != TermKind::Sub && occ.kind() != TermKind::Der &&
      occ.kind() != TermKind::Tens)
    stale(r, "nothing acts on a variable there");
  VarId acted = occ.kind() == TermKind::Var ? occ.var() : occ.head();
  if (acted != x || !reaches_unbound(body, rest, x)) stale(r, "occurrence does not belong to the cut");
  auto kind = rule_for(v, occ);
  if (!kind || *kind != r.kind) stale(r, "rule does not match");

  Term replacement = occ;
  bool keep_cut = false;
  switch (r.kind) {
    case RuleKind::AxM1:
      replacement = v;
      break;
    case RuleKind::AxE1:
      replacement = rename_fresh(v, names);
      keep_cut = true;
      break;
    case RuleKind::AxM2:
      if (occ.kind() == TermKind::Sub)
        replacement = Term::sub(v.var(), occ.value(), occ.var(), occ.body());
      else
        replacement = Term::tens(v.var(), occ.var(), occ.var2(), occ.body());
      break;
    case RuleKind::AxE2:
      replacement = Term::der(v.var(), occ.var(), occ.body());
      keep_cut = true;
      break;
    case RuleKind::Lolli: {
      Split s = split(v.body());
      replacement = Term::cut(occ.value(), v.var(), plug_split(s, Term::cut(s.value, occ.var(), occ.body())));
      break;
    }
    case RuleKind::Bang: {
      Split s = split(rename_fresh(v.body(), names));
      replacement = plug_split(s, Term::cut(s.value, occ.var(), occ.body()));
      keep_cut = true;
      break;
    }
    case RuleKind::Tens: {
      Split l = split(v.left());
      Split rr = split(v.right());
      Term inner = plug_split(rr, Term::cut(rr.value, occ.var2(), occ.body()));
      replacement = plug_split(l, Term::cut(l.value, occ.var(), inner));
      break;
    }
    case RuleKind::W: break;
  }
  Term new_body = plug(body, rest, replacement);
  Term result = keep_cut ? Term::cut(v, x, new_body) : new_body;
  return plug(t, r.cut_site, result);
}

Stepper::Stepper(Mode mode, Policy policy) : mode_(mode), policy_(policy), rng_(policy.seed()) {}

std::optional<Step> Stepper::step(const Term& t, NameSupply& names) {
  std::optional<Redex> r;
  if (policy_.is_random()) {
    auto all = redexes(t, mode_);
    if (all.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    r = std::move(all[pick(rng_)]);
  } else {
    r = first_redex(t, mode_);
    if (!r) return std::nullopt;
  }
  Term next = apply_redex(t, *r, names);
  return Step{std::move(next), std::move(*r)};
}

std::optional<Step> step_good(const Term& t, Policy policy, NameSupply& names) {
  return Stepper(Mode::GoodFull, policy).step(t, names);
}

NormalizeResult normalize(const Term& t, Mode mode, const NormalizeOptions& options) {
  Term cur = is_well_bound(t) ? t : [&] {
    NameSupply n = NameSupply::after(t);
    return rename_fresh(t, n);
  }();
  NameSupply names = NameSupply::after(cur);
  Stepper stepper(mode, options.policy);
  NormalizeResult res{cur, Outcome::Normal, 0, {}, 0, {}};
  while (true) {
    if (res.step_count >= options.step_limit) {
      // Only a limit if something is left to do.
      if (first_redex(cur, mode)) {
        res.outcome = Outcome::StepLimit;
        break;
      }
    }
    auto s = stepper.step(cur, names);
    if (!s) {
      res.outcome = find_clash(cur) ? Outcome::Clash : Outcome::Normal;
      break;
    }
    res.max_copied_value_size = std::max(res.max_copied_value_size, copied_size(cur, s->redex));
    ++res.counts[static_cast<std::size_t>(s->redex.kind)];
    ++res.step_count;
    if (options.record_steps) res.steps.push_back(std::move(s->redex));
    cur = std::move(s->term);
  }
  res.term = std::move(cur);
  return res;
}

}  // namespace esc
