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

// Basic abstract machine: closed terms, cut-context evaluation, no erasure.
// A state is a cut context E (outermost entry first) and an active term;
// it reads back as E<active>.

#ifndef ESC_BAM_HPP
#define ESC_BAM_HPP

#include <cstdint>
#include <functional>
#include <list>
#include <optional>
#include <unordered_map>

#include "esc/metrics.hpp"
#include "esc/oracle.hpp"
#include "esc/term.hpp"

namespace esc {

struct CutEntry {
  Term value;
  VarId binder;
};

class BamState {
 public:
  using Entries = std::list<CutEntry>;

  BamState() = default;
  BamState(const BamState& o);
  BamState& operator=(const BamState& o);
  BamState(BamState&&) = default;
  BamState& operator=(BamState&&) = default;

  const Entries& context() const { return entries_; }
  const Term& active() const { return active_; }
  bool clashed() const { return clashed_; }
  const CutEntry* cut_of(VarId x) const {
    auto it = index_.find(x);
    return it == index_.end() ? nullptr : &*it->second;
  }
  NameSupply& names() { return names_; }

 private:
  friend BamState bam_init(const Term& t);
  friend std::optional<Tag> bam_step(BamState& q);
  void reindex();

  Entries entries_;
  std::unordered_map<VarId, Entries::iterator, VarIdHash> index_;
  Term active_ = Term::var(VarId::mult(0));
  bool clashed_ = false;
  NameSupply names_;
};

// Throws OpenTerm on open input. The active term is a fresh renaming of t.
BamState bam_init(const Term& t);

// One transition, or nothing on a final state. A kind mismatch between the
// active constructor and its cut sets clashed() and returns nothing.
// Throws UnboundVariable if the active head is not in the cut context.
std::optional<Tag> bam_step(BamState& q);

Term bam_readback(const BamState& q);
// Path of the active term inside the readback.
Path bam_active_path(const BamState& q);

struct BamRun {
  BamState state;
  Outcome outcome = Outcome::Normal;
  RunMetrics metrics;
};

// Called after every transition with the new state.
using BamObserver = std::function<void(const BamState&, Tag)>;

BamRun bam_run(const Term& t, std::uint64_t step_limit = kDefaultStepLimit, const BamObserver& observer = {});

}  // namespace esc

#endif  // ESC_BAM_HPP
