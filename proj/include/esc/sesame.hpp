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

// The strong machine, run on a mutable term graph.
//
// The whole term lives in one node store. A job is a child slot of the graph
// (or the root) together with a name; the approximant is everything outside
// the job slots, so reading a state back is plain graph-to-tree conversion.
// Variables are records shared by all their occurrences. A record knows its
// binder node, which gives O(1) access to the cut acting on an occurrence,
// and every cut node knows the slot that holds it, which gives O(1) removal.

#ifndef ESC_SESAME_HPP
#define ESC_SESAME_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "esc/metrics.hpp"
#include "esc/oracle.hpp"
#include "esc/syntax.hpp"
#include "esc/term.hpp"

namespace esc {

namespace sesame {

using NodeId = std::int32_t;
using VarRef = std::int32_t;
inline constexpr NodeId kNone = -1;

// A child slot: child `index` of `node`, or the root when node == kNone.
struct Slot {
  NodeId node = kNone;
  std::uint8_t index = 0;
  friend bool operator==(const Slot&, const Slot&) = default;
};

enum class Binding : std::uint8_t { Free, Abs, Cut, Sub, Der, Tens };

struct VarRecord {
  VarKind kind = VarKind::Mult;
  std::uint32_t index = 0;
  bool wildcard = false;
  Binding binding = Binding::Free;
  NodeId binder = kNone;
  VarRef copy = -1;  // scratch for copying; the record itself when idle
};

// Children: Abs/Bang/Der/Tens body in ch[0]; Pair left/right; Cut and Sub
// value in ch[0], body in ch[1].
struct Node {
  TermKind kind = TermKind::Var;
  VarRef var = -1;   // occurrence, or (first) binder
  VarRef head = -1;  // Sub/Der/Tens acted-on variable
  VarRef var2 = -1;  // Tens second binder
  NodeId ch[2] = {kNone, kNone};
  Slot parent;  // Cut only: the slot holding this node
};

struct Job {
  Slot slot;
  int name = 1;
  friend bool operator==(const Job&, const Job&) = default;
};

}  // namespace sesame

class SesameState {
 public:
  const std::vector<sesame::Node>& nodes() const { return nodes_; }
  const std::vector<sesame::VarRecord>& vars() const { return vars_; }
  sesame::NodeId root() const { return root_; }
  // Topmost job last.
  const std::vector<sesame::Job>& pool() const { return pool_; }
  bool halted() const { return pool_.empty(); }
  bool clashed() const { return clashed_; }
  const RunMetrics& metrics() const { return metrics_; }

  sesame::NodeId child(sesame::Slot s) const { return s.node == sesame::kNone ? root_ : nodes_[s.node].ch[s.index]; }

  // Negative controls for the invariant checker.
  std::vector<sesame::Job>& pool_for_testing() { return pool_; }
  std::vector<sesame::Node>& nodes_for_testing() { return nodes_; }

 private:
  friend class SesameEngine;

  std::vector<sesame::Node> nodes_;
  std::vector<sesame::VarRecord> vars_;
  sesame::NodeId root_ = sesame::kNone;
  std::vector<sesame::Job> pool_;
  int next_job_ = 2;
  std::uint32_t next_index_ = 1;
  bool clashed_ = false;
  RunMetrics metrics_;
};

// Builds the graph of t (renamed first when t is not well-bound) with the
// single job 1 on the root.
SesameState sesame_init(const Term& t);

// One transition, or nothing when the pool is empty. A kind mismatch at a
// cut lookup sets clashed() and returns nothing.
std::optional<Tag> sesame_step(SesameState& q);

Term sesame_readback(const SesameState& q);

struct MarkedReadback {
  Term term;
  std::vector<Mark> jobs;  // topmost first
};
MarkedReadback sesame_readback_marked(const SesameState& q);

struct SesameRun {
  SesameState state;
  Outcome outcome = Outcome::Normal;
  const RunMetrics& metrics() const { return state.metrics(); }
};

using SesameObserver = std::function<void(const SesameState&, Tag)>;

SesameRun sesame_run(const Term& t, std::uint64_t step_limit = kDefaultStepLimit,
                     const SesameObserver& observer = {});

// Drops every cut, keeping its body.
Term gc(const Term& t);

struct InvariantReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

InvariantReport check_invariants(const SesameState& q);

}  // namespace esc

#endif  // ESC_SESAME_HPP
