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

// The exploding family and its components, plus a small timing harness.
//
//   pi(k)      [f?_]...[f?_][f?e]e          k derelictions on a free f
//   delta(n)   [!pi(2) - f]...[!pi(2) - f]pi(2)   n-1 cuts; reduces to pi(2^n)
//   sigma(n)   [!!\m m - f]delta(n)         closed
//   cutpi(k,h) [!pi(k) - f]pi(h)            reduces to pi(k*h)
//
// Each f inside a cut value refers to the previous cut, so names are
// generated distinct and the terms are well-bound as built. The free
// variable is e1.

#ifndef ESC_FAMILIES_HPP
#define ESC_FAMILIES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "esc/metrics.hpp"
#include "esc/term.hpp"

namespace esc {

enum class Family : std::uint8_t { Pi, Delta, Sigma, CutPi };

struct FamilySpec {
  Family family = Family::Sigma;
  std::uint32_t a = 1;
  std::uint32_t b = 1;  // CutPi only

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

// "pi:3", "delta:4", "sigma:5", "cutpi:3,4". Throws Error.
FamilySpec parse_family(const std::string& text);
std::string to_string(const FamilySpec& s);

inline constexpr VarId kFamilyFree = VarId::exp(1);

// Throws Error on zero parameters.
Term gen(const FamilySpec& spec);

enum class Engine : std::uint8_t { Sesame, Oracle };

struct BenchRow {
  FamilySpec spec;
  Engine engine = Engine::Sesame;
  std::size_t initial_size = 0;
  std::uint64_t principal_total = 0;
  std::uint64_t search_total = 0;
  std::uint64_t multiplicative = 0;
  std::uint64_t exponential = 0;
  RunMetrics metrics;  // last repetition
  double elapsed_seconds = 0;  // median over repetitions
  double overhead_ratio = 0;   // elapsed / (size * (principal + 1))
  Outcome outcome = Outcome::Normal;
  bool facts_hold = true;
  std::string facts;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::string table() const;
  // One key=value record per row.
  std::string records() const;
  // max / min overhead ratio over rows.
  double ratio_spread() const;
};

struct BenchOptions {
  Engine engine = Engine::Sesame;
  int repetitions = 3;
  int warmups = 1;
  std::uint64_t step_limit = 0;  // 0: sized from the family
};

BenchReport bench(const std::vector<FamilySpec>& specs, const BenchOptions& options = {});

}  // namespace esc

#endif  // ESC_FAMILIES_HPP
