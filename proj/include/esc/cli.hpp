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

// Front end: parse, properness, optional typing, a machine or oracle run
// with an optional trace, final garbage collection, metrics.

#ifndef ESC_CLI_HPP
#define ESC_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "esc/families.hpp"
#include "esc/oracle.hpp"
#include "esc/syntax.hpp"

namespace esc {

enum class RunMode { Sesame, Bam, Good, Basic };

const char* to_string(RunMode m);

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;      // bad flags, unreadable file, internal error
inline constexpr int kExitSyntax = 2;     // syntax or binding error
inline constexpr int kExitImproper = 3;
inline constexpr int kExitClash = 4;
inline constexpr int kExitStepLimit = 5;
inline constexpr int kExitOpenTerm = 6;   // the basic machine got an open term

struct RunConfig {
  RunMode mode = RunMode::Sesame;
  bool trace = false;
  bool gc = true;
  bool type_check = false;
  std::uint64_t step_limit = kDefaultStepLimit;
  std::optional<FamilySpec> family;
  std::optional<std::uint64_t> seed;  // random redex choice in oracle modes
  bool json = false;
  Style style = Style::Unicode;
};

// Processes one term given as text. Returns an exit status.
int run_text(const std::string& text, const RunConfig& config, std::ostream& out, std::ostream& err);

// Processes an already built term; `label` is echoed as the input line.
int run_term(const Term& t, const std::string& label, const RunConfig& config, std::ostream& out,
             std::ostream& err);

// One term per non-blank line; lines starting with '#' are comments.
// Returns the first nonzero status met, or 0.
int run_lines(std::istream& in, const RunConfig& config, std::ostream& out, std::ostream& err,
              bool prompt = false);

// Reduces a few known terms and checks their results.
int self_test(std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace esc

#endif  // ESC_CLI_HPP
