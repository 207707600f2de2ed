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

// Tree rewriting: root rules under contextual closure, redex positions,
// dominating free variables, good and basic positions, and the normalizers
// the machines are tested against.
//
// Terms handed to the oracle are expected to be well-bound (no binder
// shadows another or a free name); normalize() renames once up front if
// they are not, and every copy made afterwards uses fresh names, so moving
// values into contexts never captures.

#ifndef ESC_ORACLE_HPP
#define ESC_ORACLE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "esc/metrics.hpp"
#include "esc/term.hpp"

namespace esc {

struct Redex {
  RuleKind kind = RuleKind::W;
  // For non-erasing kinds the hole sits at the acted-on occurrence (a
  // variable, or the subtraction/dereliction/tensor node acting on it); for
  // W it sits at the erased cut.
  Path position;
  Path cut_site;
  std::optional<Path> occurrence_site;

  friend bool operator==(const Redex&, const Redex&) = default;
};

std::string to_string(const Redex& r);

// All redexes of t sorted by position (then kind).
std::vector<Redex> enumerate_redexes(const Term& t);

// Throws StaleRedex when r does not describe a redex of t.
Term apply_redex(const Term& t, const Redex& r, NameSupply& names);

// Size of the value the step copies (axe1, !) or erases (w); 0 otherwise.
std::size_t copied_size(const Term& t, const Redex& r);

// Dominating free variables of the context (root, path). Throws InvalidPath.
VarSet dfv(const Position& pos);
bool is_good(const Position& pos);
bool is_basic(const Position& pos);
inline bool is_good(const Term& t, const Redex& r) { return is_good({t, r.position}); }
inline bool is_basic(const Term& t, const Redex& r) { return is_basic({t, r.position}); }

enum class Mode : std::uint8_t {
  GoodFull,         // good steps, erasure included
  GoodNonErasing,   // good steps without w
  BasicNonErasing,  // steps at cut contexts, without w
};

const char* to_string(Mode m);

// Redexes of t selected by `mode`, sorted by position.
std::vector<Redex> redexes(const Term& t, Mode mode);
std::vector<Redex> good_redexes(const Term& t);
// Leftmost selected redex, found without enumerating the others.
std::optional<Redex> first_redex(const Term& t, Mode mode);

class Policy {
 public:
  static Policy leftmost() { return Policy(false, 0); }
  static Policy random(std::uint64_t seed) { return Policy(true, seed); }
  bool is_random() const { return random_; }
  std::uint64_t seed() const { return seed_; }

 private:
  Policy(bool r, std::uint64_t s) : random_(r), seed_(s) {}
  bool random_;
  std::uint64_t seed_;
};

struct Step {
  Term term;
  Redex redex;
};

// One step at a time of the selected relation. The random policy keeps its
// generator across calls.
class Stepper {
 public:
  Stepper(Mode mode, Policy policy);
  std::optional<Step> step(const Term& t, NameSupply& names);

 private:
  Mode mode_;
  Policy policy_;
  std::mt19937_64 rng_;
};

std::optional<Step> step_good(const Term& t, Policy policy, NameSupply& names);

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

struct NormalizeOptions {
  Policy policy = Policy::leftmost();
  std::uint64_t step_limit = kDefaultStepLimit;
  bool record_steps = true;
};

struct NormalizeResult {
  Term term;
  Outcome outcome = Outcome::Normal;
  std::uint64_t step_count = 0;
  std::array<std::uint64_t, kRuleKinds> counts{};
  std::size_t max_copied_value_size = 0;
  std::vector<Redex> steps;  // when recorded

  std::uint64_t count(RuleKind k) const { return counts[static_cast<std::size_t>(k)]; }
  std::uint64_t multiplicative_count() const;
  std::uint64_t exponential_count() const;
};

NormalizeResult normalize(const Term& t, Mode mode, const NormalizeOptions& options = {});

}  // namespace esc

#endif  // ESC_ORACLE_HPP
