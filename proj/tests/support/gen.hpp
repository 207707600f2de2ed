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

// Term sources for the test suites: a type-directed random generator whose
// output is proper and typable by construction (callers still re-check),
// and an exhaustive enumerator of small proper terms.

#ifndef ESC_TESTS_GEN_HPP
#define ESC_TESTS_GEN_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "esc/term.hpp"

namespace esc::testing {

struct GenOptions {
  std::size_t min_size = 1;
  std::size_t max_size = 30;
  bool closed = true;
  bool tensor = false;
  // Per-attempt constructor budget; larger values give bigger terms.
  int budget = 24;
  // Start with [\x t - m][m>v,y]u or [!t - e][e?x]u, so that closed terms
  // are not answers right away.
  bool redex_at_root = false;
};

class RandomTerms {
 public:
  explicit RandomTerms(std::uint64_t seed, GenOptions options = {});
  // Proper, typable, clash-free, of size <= max_size.
  Term next();
  std::uint64_t attempts() const { return attempts_; }
  // Rejected attempts: no term, size, open, improper or clashing, untypable.
  const std::array<std::uint64_t, 5>& rejections() const { return rejections_; }

 private:
  std::mt19937_64 rng_;
  GenOptions options_;
  std::uint64_t attempts_ = 0;
  std::array<std::uint64_t, 5> rejections_{};
};

// `count` terms from RandomTerms(seed, options).
std::vector<Term> random_corpus(std::uint64_t seed, std::size_t count, GenOptions options = {});

// Every closed proper term of size <= max_size up to the choice of bound
// names, without pairs or tensors, in which every cut binder has the kind
// of its value. Unused exponential binders are named, not wildcards. The
// results are not well-bound in general; rename before rewriting.
std::vector<Term> enumerate_terms(std::size_t max_size);
void enumerate_terms(std::size_t max_size, const std::function<void(const Term&)>& sink);

}  // namespace esc::testing

#endif  // ESC_TESTS_GEN_HPP
