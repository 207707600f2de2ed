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

// State checks for the strong machine. They recompute everything from the
// graph and the readback instead of trusting the machine's bookkeeping.

#include <set>

#include "esc/oracle.hpp"
#include "esc/sesame.hpp"

namespace esc {

using sesame::Binding;
using sesame::kNone;
using sesame::Node;
using sesame::NodeId;
using sesame::Slot;

std::string InvariantReport::to_string() const {
  if (violations.empty()) return "ok";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s;
}

namespace {

class GraphWalk {
 public:
  GraphWalk(const SesameState& q, InvariantReport& report) : q_(q), report_(report) {
    for (const auto& j : q.pool()) jobs_.insert(key(j.slot));
  }

  void run() {
    visit(Slot{});
    for (const auto& j : q_.pool())
      if (!reached_.count(key(j.slot))) fail("job " + std::to_string(j.name) + " is not a slot of the term");
  }

 private:
  static std::pair<NodeId, int> key(Slot s) { return {s.node, s.index}; }

  void fail(std::string what) {
    if (report_.violations.size() < 20) report_.violations.push_back(std::move(what));
  }

  void occurrence(sesame::VarRef x) {
    if (in_job_ || in_value_ > 0) return;
    const auto& r = q_.vars()[x];
    if (r.binding == Binding::Cut)
      fail("approximant: variable of out cut " + print_var(VarId{r.kind, r.index, r.wildcard}, Style::Ascii) +
           " occurs outside cut values");
  }

  void visit(Slot s) {
    bool job = jobs_.count(key(s)) != 0;
    if (job) {
      reached_.insert(key(s));
      if (in_value_ > 0 && !in_job_) fail("approximant: a job sits inside a cut value");
    }
    bool saved = in_job_;
    in_job_ = in_job_ || job;
    NodeId id = q_.child(s);
    if (id == kNone || id >= static_cast<NodeId>(q_.nodes().size())) {
      fail("dangling slot");
      in_job_ = saved;
      return;
    }
    if (++visits_ > q_.nodes().size()) {
      fail("node graph is not a tree");
      in_job_ = saved;
      return;
    }
    const Node& n = q_.nodes()[id];
    switch (n.kind) {
      case TermKind::Var: occurrence(n.var); break;
      case TermKind::Abs:
      case TermKind::Bang: visit(Slot{id, 0}); break;
      case TermKind::Pair:
        visit(Slot{id, 0});
        visit(Slot{id, 1});
        break;
      case TermKind::Cut:
        if (!(n.parent == s)) fail("cut back-reference does not name its slot");
        ++in_value_;
        visit(Slot{id, 0});
        --in_value_;
        visit(Slot{id, 1});
        break;
      case TermKind::Sub:
        occurrence(n.head);
        visit(Slot{id, 0});
        visit(Slot{id, 1});
        break;
      case TermKind::Der:
      case TermKind::Tens:
        occurrence(n.head);
        visit(Slot{id, 0});
        break;
    }
    in_job_ = saved;
  }

  const SesameState& q_;
  InvariantReport& report_;
  std::set<std::pair<NodeId, int>> jobs_;
  std::set<std::pair<NodeId, int>> reached_;
  bool in_job_ = false;
  int in_value_ = 0;
  std::size_t visits_ = 0;
};

void value_sizes(const Term& t, std::size_t bound, std::size_t& worst) {
  switch (t.kind()) {
    case TermKind::Var: return;
    case TermKind::Abs:
    case TermKind::Bang:
    case TermKind::Der:
    case TermKind::Tens: value_sizes(t.body(), bound, worst); return;
    case TermKind::Pair:
      value_sizes(t.left(), bound, worst);
      value_sizes(t.right(), bound, worst);
      return;
    case TermKind::Cut:
      if (t.value().size() > worst) worst = t.value().size();
      value_sizes(t.value(), bound, worst);
      value_sizes(t.body(), bound, worst);
      return;
    case TermKind::Sub:
      value_sizes(t.value(), bound, worst);
      value_sizes(t.body(), bound, worst);
      return;
  }
}

}  // namespace

InvariantReport check_invariants(const SesameState& q) {
  InvariantReport report;
  const auto& pool = q.pool();

  std::set<std::pair<NodeId, int>> slots;
  std::set<int> names;
  for (const auto& j : pool) {
    if (!slots.insert({j.slot.node, j.slot.index}).second) report.violations.push_back("unique names: two jobs share a slot");
    if (!names.insert(j.name).second)
      report.violations.push_back("unique names: job name " + std::to_string(j.name) + " used twice");
  }
  if (!report.ok()) return report;

  GraphWalk(q, report).run();
  if (!report.ok()) return report;

  MarkedReadback rb = sesame_readback_marked(q);
  if (!is_well_bound(rb.term)) report.violations.push_back("well-bound: readback reuses a binder name");
  if (!rb.jobs.empty() && !is_good(Position{rb.term, rb.jobs.front().path}))
    report.violations.push_back("contextual decoding: topmost job is not at a good position");

  const RunMetrics& m = q.metrics();
  std::size_t worst = 0;
  value_sizes(rb.term, m.initial_size, worst);
  for (const auto& j : rb.jobs) {
    Term sub = subterm_at(rb.term, j.path);
    if (sub.is_value() && sub.size() > worst) worst = sub.size();
  }
  if (worst > m.initial_size)
    report.violations.push_back("sub-term: a cut or job value has size " + std::to_string(worst) + " > " +
                                std::to_string(m.initial_size));
  if (!m.subterm_bound_holds())
    report.violations.push_back("sub-term: copied value of size " + std::to_string(m.max_copied_value_size));
  if (!m.search_bound_holds())
    report.violations.push_back("search bound: " + std::to_string(m.search_total) + " search transitions");
  return report;
}

}  // namespace esc
