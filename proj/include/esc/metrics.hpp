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

// Rule and transition labels, run outcomes and counters shared by the
// rewriting oracle and the two machines.

#ifndef ESC_METRICS_HPP
#define ESC_METRICS_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace esc {

enum class RuleKind : std::uint8_t { AxM1, AxM2, Lolli, AxE1, AxE2, Bang, W, Tens };

inline constexpr std::size_t kRuleKinds = 8;

bool is_multiplicative(RuleKind k);
bool is_erasing(RuleKind k);
// axm1 axm2 -o axe1 axe2 ! w *
const char* tag_name(RuleKind k);

// Machine transitions. Sea is the single search transition of the BAM.
enum class Tag : std::uint8_t {
  Sea,
  Sea1,
  Sea2,
  Sea3,
  Sea4,
  Sea5,
  Sea6,
  Sea7,
  Sea8,
  AxM1,
  AxM2,
  AxM2Tens,
  Lolli,
  AxE1,
  AxE2,
  Bang,
  Tens,
};

inline constexpr std::size_t kTags = 17;

bool is_principal(Tag t);
bool is_search(Tag t);
// The calculus rule a principal transition projects to.
std::optional<RuleKind> rule_of(Tag t);
// sea1 ... sea8, sea, axm1, axm2, axm2', -o, axe1, axe2, !, *
const char* tag_name(Tag t);
// sea₁ ..., axm₁, axm₂′, ⊗
const char* tag_name_unicode(Tag t);
std::optional<Tag> parse_tag(const std::string& name);

enum class Outcome : std::uint8_t {
  Normal,     // natural halt
  StepLimit,  // step limit reached, partial result available
  Clash,      // stuck on a kind mismatch
};

const char* to_string(Outcome o);

struct RunMetrics {
  std::array<std::uint64_t, kTags> counts{};
  std::uint64_t principal_total = 0;
  std::uint64_t search_total = 0;
  std::size_t initial_size = 0;
  std::size_t max_copied_value_size = 0;
  double elapsed_seconds = 0;

  void record(Tag t) {
    ++counts[static_cast<std::size_t>(t)];
    if (is_principal(t))
      ++principal_total;
    else
      ++search_total;
  }
  std::uint64_t count(Tag t) const { return counts[static_cast<std::size_t>(t)]; }
  std::uint64_t total() const { return principal_total + search_total; }
  std::uint64_t multiplicative_total() const;
  std::uint64_t exponential_total() const;
  bool search_bound_holds() const {
    return search_total <= initial_size * (principal_total + 1);
  }
  bool subterm_bound_holds() const { return max_copied_value_size <= initial_size; }
};

// "principal=6 search=7 size=... " one line.
std::string summary_line(const RunMetrics& m);

}  // namespace esc

#endif  // ESC_METRICS_HPP
