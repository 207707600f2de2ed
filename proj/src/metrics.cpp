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

#include "esc/metrics.hpp"

#include <cstdio>

namespace esc {

bool is_multiplicative(RuleKind k) {
  return k == RuleKind::AxM1 || k == RuleKind::AxM2 || k == RuleKind::Lolli || k == RuleKind::Tens;
}

bool is_erasing(RuleKind k) { return k == RuleKind::W; }

const char* tag_name(RuleKind k) {
  switch (k) {
    case RuleKind::AxM1: return "axm1";
    case RuleKind::AxM2: return "axm2";
    case RuleKind::Lolli: return "-o";
    case RuleKind::AxE1: return "axe1";
    case RuleKind::AxE2: return "axe2";
    case RuleKind::Bang: return "!";
    case RuleKind::W: return "w";
    case RuleKind::Tens: return "*";
  }
  return "?";
}

bool is_principal(Tag t) { return t >= Tag::AxM1; }
bool is_search(Tag t) { return !is_principal(t); }

std::optional<RuleKind> rule_of(Tag t) {
  switch (t) {
    case Tag::AxM1: return RuleKind::AxM1;
    case Tag::AxM2:
    case Tag::AxM2Tens: return RuleKind::AxM2;
    case Tag::Lolli: return RuleKind::Lolli;
    case Tag::AxE1: return RuleKind::AxE1;
    case Tag::AxE2: return RuleKind::AxE2;
    case Tag::Bang: return RuleKind::Bang;
    case Tag::Tens: return RuleKind::Tens;
    default: return std::nullopt;
  }
}

namespace {

struct Names {
  const char* ascii;
  const char* unicode;
};

constexpr Names kNames[kTags] = {
    {"sea", "sea"},
    {"sea1", "sea₁"},
    {"sea2", "sea₂"},
    {"sea3", "sea₃"},
    {"sea4", "sea₄"},
    {"sea5", "sea₅"},
    {"sea6", "sea₆"},
    {"sea7", "sea₇"},
    {"sea8", "sea₈"},
    {"axm1", "axm₁"},
    {"axm2", "axm₂"},
    {"axm2'", "axm₂′"},
    {"-o", "-o"},
    {"axe1", "axe₁"},
    {"axe2", "axe₂"},
    {"!", "!"},
    {"*", "⊗"},
};

}  // namespace

const char* tag_name(Tag t) { return kNames[static_cast<std::size_t>(t)].ascii; }
const char* tag_name_unicode(Tag t) { return kNames[static_cast<std::size_t>(t)].unicode; }

std::optional<Tag> parse_tag(const std::string& name) {
  for (std::size_t i = 0; i < kTags; ++i)
    if (name == kNames[i].ascii || name == kNames[i].unicode) return static_cast<Tag>(i);
  if (name == "lolli" || name == "⊸") return Tag::Lolli;
  return std::nullopt;
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Normal: return "normal";
    case Outcome::StepLimit: return "step-limit";
    case Outcome::Clash: return "clash";
  }
  return "?";
}

std::uint64_t RunMetrics::multiplicative_total() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < kTags; ++i) {
    auto k = rule_of(static_cast<Tag>(i));
    if (k && is_multiplicative(*k)) n += counts[i];
  }
  return n;
}

std::uint64_t RunMetrics::exponential_total() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < kTags; ++i) {
    auto k = rule_of(static_cast<Tag>(i));
    if (k && !is_multiplicative(*k)) n += counts[i];
  }
  return n;
}

std::string summary_line(const RunMetrics& m) {
  std::string s = "transitions=" + std::to_string(m.total()) + " principal=" + std::to_string(m.principal_total) +
                  " search=" + std::to_string(m.search_total) + " multiplicative=" +
                  std::to_string(m.multiplicative_total()) + " exponential=" + std::to_string(m.exponential_total()) +
                  " size=" + std::to_string(m.initial_size) + " max_copied=" + std::to_string(m.max_copied_value_size);
  for (std::size_t i = 0; i < kTags; ++i) {
    if (m.counts[i] == 0) continue;
    s += ' ';
    s += kNames[i].ascii;
    s += '=';
    s += std::to_string(m.counts[i]);
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, " elapsed_us=%.1f", m.elapsed_seconds * 1e6);
  s += buf;
  return s;
}

}  // namespace esc
