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

#include "esc/families.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "esc/oracle.hpp"
#include "esc/sesame.hpp"

namespace esc {

namespace {

const char* family_name(Family f) {
  switch (f) {
    case Family::Pi: return "pi";
    case Family::Delta: return "delta";
    case Family::Sigma: return "sigma";
    case Family::CutPi: return "cutpi";
  }
  return "?";
}

std::uint32_t parse_param(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
    throw Error("bad family parameter in '" + whole + "'");
  return static_cast<std::uint32_t>(std::stoul(s));
}

// k derelictions on f; the first k-1 bind wildcards.
Term pi(std::uint32_t k, VarId f, NameSupply& names) {
  VarId e = VarId::exp(names.fresh());
  Term t = Term::der(f, e, Term::var(e));
  for (std::uint32_t i = 1; i < k; ++i) t = Term::der(f, VarId::wild(names.fresh()), t);
  return t;
}

// Cuts of !pi(2) around pi(2), innermost built last; `f` is free.
Term delta(std::uint32_t n, VarId f, NameSupply& names) {
  std::vector<std::pair<Term, VarId>> cuts;
  VarId prev = f;
  for (std::uint32_t i = 1; i < n; ++i) {
    Term value = Term::bang(pi(2, prev, names));
    VarId g = VarId::exp(names.fresh());
    cuts.emplace_back(std::move(value), g);
    prev = g;
  }
  Term t = pi(2, prev, names);
  for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) t = Term::cut(it->first, it->second, t);
  return t;
}

}  // namespace

FamilySpec parse_family(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("family must look like NAME:PARAMS, got '" + text + "'");
  std::string name = text.substr(0, colon);
  std::string params = text.substr(colon + 1);
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  FamilySpec s;
  if (name == "pi")
    s.family = Family::Pi;
  else if (name == "delta")
    s.family = Family::Delta;
  else if (name == "sigma")
    s.family = Family::Sigma;
  else if (name == "cutpi")
    s.family = Family::CutPi;
  else
    throw Error("unknown family '" + name + "' (pi, delta, sigma, cutpi)");
  if (s.family == Family::CutPi) {
    auto comma = params.find(',');
    if (comma == std::string::npos) throw Error("cutpi needs two parameters, e.g. cutpi:3,4");
    s.a = parse_param(params.substr(0, comma), text);
    s.b = parse_param(params.substr(comma + 1), text);
  } else {
    s.a = parse_param(params, text);
  }
  if (s.a == 0 || (s.family == Family::CutPi && s.b == 0)) throw Error("family parameters start at 1");
  return s;
}

std::string to_string(const FamilySpec& s) {
  std::string out = family_name(s.family);
  out += ':' + std::to_string(s.a);
  if (s.family == Family::CutPi) out += ',' + std::to_string(s.b);
  return out;
}

Term gen(const FamilySpec& spec) {
  if (spec.a == 0 || (spec.family == Family::CutPi && spec.b == 0)) throw Error("family parameters start at 1");
  NameSupply names(kFamilyFree.index + 1);
  switch (spec.family) {
    case Family::Pi: return pi(spec.a, kFamilyFree, names);
    case Family::Delta: return delta(spec.a, kFamilyFree, names);
    case Family::Sigma: {
      VarId m = VarId::mult(names.fresh());
      Term id = Term::bang(Term::bang(Term::abs(m, Term::var(m))));
      VarId f = VarId::exp(names.fresh());
      return Term::cut(id, f, delta(spec.a, f, names));
    }
    case Family::CutPi: {
      Term value = Term::bang(pi(spec.a, kFamilyFree, names));
      VarId f = VarId::exp(names.fresh());
      return Term::cut(value, f, pi(spec.b, f, names));
    }
  }
  return Term::var(kFamilyFree);
}

namespace {

std::uint64_t default_limit(const FamilySpec& s) {
  switch (s.family) {
    case Family::Pi: return 1000;
    case Family::CutPi: return 64ull * s.a * s.b + 1000;
    case Family::Delta:
    case Family::Sigma: return s.a >= 40 ? kDefaultStepLimit : (64ull << s.a) + 1000;
  }
  return kDefaultStepLimit;
}

// Checks the facts the family is built to exhibit on a halted run.
void check_facts(BenchRow& row, const Term& result) {
  std::ostringstream why;
  const FamilySpec& s = row.spec;
  if (row.outcome != Outcome::Normal) {
    row.facts_hold = false;
    row.facts = std::string("run ended with ") + to_string(row.outcome);
    return;
  }
  Term expected = Term::var(kFamilyFree);
  switch (s.family) {
    case Family::Pi: expected = gen(s); break;
    case Family::Delta: expected = gen({Family::Pi, 1u << std::min<std::uint32_t>(s.a, 30), 1}); break;
    case Family::Sigma: {
      VarId m = VarId::mult(1);
      expected = Term::bang(Term::abs(m, Term::var(m)));
      break;
    }
    case Family::CutPi: expected = gen({Family::Pi, s.a * s.b, 1}); break;
  }
  if (!alpha_eq(gc(result), expected)) {
    row.facts_hold = false;
    why << "result is not " << (s.family == Family::Sigma ? "!\\m m" : "the expected pi") << "; ";
  }
  if (s.family == Family::Sigma) {
    if (row.multiplicative != 0) {
      row.facts_hold = false;
      why << "multiplicative steps: " << row.multiplicative << "; ";
    }
    if (s.a < 63 && row.exponential < (1ull << s.a)) {
      row.facts_hold = false;
      why << "only " << row.exponential << " exponential steps; ";
    }
  }
  row.facts = row.facts_hold ? "ok" : why.str();
}

}  // namespace

BenchReport bench(const std::vector<FamilySpec>& specs, const BenchOptions& options) {
  BenchReport report;
  std::vector<FamilySpec> sorted = specs;
  std::stable_sort(sorted.begin(), sorted.end(), [](const FamilySpec& x, const FamilySpec& y) {
    return std::tie(x.family, x.a, x.b) < std::tie(y.family, y.a, y.b);
  });
  for (const FamilySpec& s : sorted) {
    Term t = gen(s);
    std::uint64_t limit = options.step_limit ? options.step_limit : default_limit(s);
    BenchRow row;
    row.spec = s;
    row.engine = options.engine;
    row.initial_size = t.size();
    std::vector<double> times;
    Term result = t;
    int total = std::max(0, options.warmups) + std::max(1, options.repetitions);
    for (int rep = 0; rep < total; ++rep) {
      if (options.engine == Engine::Sesame) {
        SesameRun run = sesame_run(t, limit);
        const RunMetrics& m = run.metrics();
        row.metrics = m;
        row.principal_total = m.principal_total;
        row.search_total = m.search_total;
        row.multiplicative = m.multiplicative_total();
        row.exponential = m.exponential_total();
        row.outcome = run.outcome;
        if (rep >= options.warmups) times.push_back(m.elapsed_seconds);
        if (rep + 1 == total) result = sesame_readback(run.state);
      } else {
        NormalizeOptions no;
        no.step_limit = limit;
        no.record_steps = false;
        auto start = std::chrono::steady_clock::now();
        NormalizeResult nr = normalize(t, Mode::GoodNonErasing, no);
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        row.principal_total = nr.step_count;
        row.search_total = 0;
        row.multiplicative = nr.multiplicative_count();
        row.exponential = nr.exponential_count();
        row.outcome = nr.outcome;
        row.metrics = RunMetrics{};
        row.metrics.initial_size = t.size();
        row.metrics.principal_total = nr.step_count;
        row.metrics.max_copied_value_size = nr.max_copied_value_size;
        row.metrics.elapsed_seconds = secs;
        if (rep >= options.warmups) times.push_back(secs);
        if (rep + 1 == total) result = nr.term;
      }
    }
    std::sort(times.begin(), times.end());
    row.elapsed_seconds = times[times.size() / 2];
    row.overhead_ratio = row.elapsed_seconds / (static_cast<double>(row.initial_size) * (row.principal_total + 1));
    check_facts(row, result);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string BenchReport::table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-7s %6s %10s %10s %6s %10s %12s %12s  %s\n", "family", "engine", "size",
                "principal", "search", "mult", "exp", "elapsed_us", "ratio_ns", "facts");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-12s %-7s %6zu %10llu %10llu %6llu %10llu %12.1f %12.3f  %s\n",
                  to_string(r.spec).c_str(), r.engine == Engine::Sesame ? "sesame" : "oracle", r.initial_size,
                  static_cast<unsigned long long>(r.principal_total), static_cast<unsigned long long>(r.search_total),
                  static_cast<unsigned long long>(r.multiplicative), static_cast<unsigned long long>(r.exponential),
                  r.elapsed_seconds * 1e6, r.overhead_ratio * 1e9, r.facts.c_str());
    out += line;
  }
  return out;
}

std::string BenchReport::records() const {
  std::string out;
  char line[512];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line,
                  "family=%s engine=%s size=%zu principal=%llu search=%llu multiplicative=%llu exponential=%llu "
                  "elapsed_s=%.9f ratio=%.6e outcome=%s facts=%s\n",
                  to_string(r.spec).c_str(), r.engine == Engine::Sesame ? "sesame" : "oracle", r.initial_size,
                  static_cast<unsigned long long>(r.principal_total), static_cast<unsigned long long>(r.search_total),
                  static_cast<unsigned long long>(r.multiplicative), static_cast<unsigned long long>(r.exponential),
                  r.elapsed_seconds, r.overhead_ratio, to_string(r.outcome), r.facts_hold ? "ok" : "failed");
    out += line;
  }
  return out;
}

double BenchReport::ratio_spread() const {
  if (rows.empty()) return 1.0;
  double lo = rows.front().overhead_ratio, hi = lo;
  for (const auto& r : rows) {
    lo = std::min(lo, r.overhead_ratio);
    hi = std::max(hi, r.overhead_ratio);
  }
  return lo > 0 ? hi / lo : 0.0;
}

}  // namespace esc
