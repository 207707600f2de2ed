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

// Acceptance run: one PASS/FAIL line per criterion. Criterion 9 depends on
// wall-clock timing and only warns. The exit status is nonzero iff a hard
// criterion fails.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "esc/bam.hpp"
#include "esc/families.hpp"
#include "esc/oracle.hpp"
#include "esc/sesame.hpp"
#include "esc/syntax.hpp"
#include "esc/typing.hpp"
#include "gen.hpp"

using namespace esc;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Principal transitions of SESAME on sigma 1..12, computed with the tree
// oracle (good non-erasing steps) and frozen here.
constexpr std::uint64_t kSigmaPrincipal[] = {3, 8, 17, 34, 67, 132, 261, 518, 1031, 2056, 4105, 8202};

const char* kExample = "[!\\m1m1-e1][e1?m2][e1?m3][m2>m3,m4]m4";

struct Verdict {
  bool ok = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    ok = false;
    if (failures.size() < 5) failures.push_back(why);
  }
};

class Report {
 public:
  void hard(int n, const std::string& title, const Verdict& v) { line(n, title, v, v.ok ? "PASS" : "FAIL"); hard_ok_ &= v.ok; }
  void soft(int n, const std::string& title, const Verdict& v) { line(n, title, v, v.ok ? "PASS" : "WARN"); }
  bool ok() const { return hard_ok_; }

 private:
  void line(int n, const std::string& title, const Verdict& v, const char* word) {
    std::cout << "criterion " << n << " " << word << ": " << title << " (" << v.detail << ")" << std::endl;
    for (const auto& f : v.failures) std::cout << "    " << f << std::endl;
  }
  bool hard_ok_ = true;
};

// Bounds shared by every machine run.
void check_bounds(const RunMetrics& m, const std::string& what, Verdict& v, std::size_t& runs) {
  ++runs;
  if (!m.search_bound_holds())
    v.fail(what + ": search " + std::to_string(m.search_total) + " > size " + std::to_string(m.initial_size) +
           " * (principal " + std::to_string(m.principal_total) + " + 1)");
  if (!m.subterm_bound_holds())
    v.fail(what + ": copied value of size " + std::to_string(m.max_copied_value_size) + " > size " +
           std::to_string(m.initial_size));
}

std::vector<std::string> tag_names(const std::vector<Tag>& tags) {
  std::vector<std::string> out;
  for (Tag t : tags) out.push_back(tag_name(t));
  return out;
}

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ",") + x;
  return s;
}

// ---------------------------------------------------------------------------

Verdict golden(Verdict& bounds, std::size_t& bounded_runs) {
  Verdict v;
  Term t = parse(kExample);
  const std::vector<std::string> expected{"sea1", "!", "sea1", "!", "sea1", "-o", "sea1",
                                          "sea1", "axm1", "axm1", "axm1", "sea4", "sea6"};
  std::vector<Tag> tags;
  auto run = sesame_run(t, kDefaultStepLimit, [&](const SesameState&, Tag g) { tags.push_back(g); });
  check_bounds(run.metrics(), "example", bounds, bounded_runs);
  if (run.outcome != Outcome::Normal) v.fail(std::string("outcome ") + to_string(run.outcome));
  if (tag_names(tags) != expected) v.fail("tags " + join(tag_names(tags)));
  Term rb = sesame_readback(run.state);
  if (!alpha_eq(rb, parse("[!(\\m1m1)-e1]\\m6m6"))) v.fail("readback " + print(rb));
  if (!alpha_eq(gc(rb), parse("\\m6m6"))) v.fail("gc " + print(gc(rb)));

  // Best of several runs, to keep scheduler noise out of a sub-millisecond figure.
  double best = 1e9;
  for (int i = 0; i < 20; ++i) {
    auto t0 = Clock::now();
    auto r = sesame_run(t);
    best = std::min(best, seconds_since(t0));
    if (r.metrics().total() != 13) v.fail("repeated run differs");
  }
  if (best >= 1e-3) v.fail("runtime " + std::to_string(best * 1e3) + " ms");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu transitions, readback %s, gc %s, %.1f us", tags.size(), print(rb).c_str(),
                print(gc(rb)).c_str(), best * 1e6);
  v.detail = buf;
  return v;
}

Verdict families(Verdict& bounds, std::size_t& bounded_runs) {
  Verdict v;
  Term id = parse("!\\m1m1");
  std::uint64_t oracle_checked = 0;
  for (std::uint32_t n = 1; n <= 10; ++n) {
    std::string name = "sigma:" + std::to_string(n);
    Term s = gen({Family::Sigma, n});
    auto run = sesame_run(s);
    const auto& m = run.metrics();
    check_bounds(m, name, bounds, bounded_runs);
    if (run.outcome != Outcome::Normal) v.fail(name + ": " + to_string(run.outcome));
    if (m.count(Tag::AxM1) + m.count(Tag::AxM2) + m.count(Tag::AxM2Tens) + m.count(Tag::Lolli) != 0)
      v.fail(name + ": multiplicative transitions");
    if (m.exponential_total() < (std::uint64_t{1} << n)) v.fail(name + ": fewer than 2^n exponential steps");
    if (m.principal_total != kSigmaPrincipal[n - 1])
      v.fail(name + ": principal " + std::to_string(m.principal_total) + ", pinned " +
             std::to_string(kSigmaPrincipal[n - 1]));
    if (!alpha_eq(gc(sesame_readback(run.state)), id)) v.fail(name + ": gc result");
    // The pinned count again from the oracle.
    auto ref = normalize(s, Mode::GoodNonErasing, {Policy::leftmost(), kDefaultStepLimit, false});
    if (ref.step_count != kSigmaPrincipal[n - 1]) v.fail(name + ": oracle " + std::to_string(ref.step_count));
    ++oracle_checked;
  }
  auto cp = sesame_run(gen({Family::CutPi, 3, 4}));
  check_bounds(cp.metrics(), "cutpi:3,4", bounds, bounded_runs);
  if (!alpha_eq(gc(sesame_readback(cp.state)), gen({Family::Pi, 12}))) v.fail("cutpi:3,4 does not give pi:12");
  auto cpo = normalize(gen({Family::CutPi, 3, 4}), Mode::GoodNonErasing);
  if (!alpha_eq(gc(cpo.term), gen({Family::Pi, 12}))) v.fail("oracle: cutpi:3,4 does not give pi:12");
  v.detail = "sigma 1..10 pinned and re-derived by the oracle (" + std::to_string(oracle_checked) +
             " terms), cutpi:3,4 gives pi:12";
  return v;
}

struct MachineCorpus {
  std::vector<Term> terms;
};

std::vector<Term> differential_corpus() {
  testing::GenOptions o;
  o.closed = false;
  o.tensor = true;
  std::vector<Term> terms = testing::random_corpus(2026, 600, o);
  o.closed = true;
  o.redex_at_root = true;
  for (const Term& t : testing::random_corpus(2027, 600, o)) terms.push_back(t);
  return terms;
}

// Criteria 3 and 4 share one pass over the corpus.
void differential(const std::vector<Term>& corpus, Verdict& big, Verdict& small, Verdict& bounds,
                  std::size_t& bounded_runs) {
  auto t0 = Clock::now();
  std::size_t principal = 0, search = 0, max_size = 0;
  for (const Term& t : corpus) {
    max_size = std::max(max_size, t.size());
    if (!is_typable(t)) big.fail("untypable corpus term " + print(t));
    Term before = sesame_readback(sesame_init(t));
    auto run = sesame_run(t, kDefaultStepLimit, [&](const SesameState& q, Tag g) {
      Term after = sesame_readback(q);
      if (is_search(g)) {
        ++search;
        if (!(after == before)) small.fail(std::string(tag_name(g)) + " changed the readback of " + print(t));
      } else {
        ++principal;
        if (!testing::projects(before, after, *rule_of(g), Mode::GoodFull))
          small.fail(std::string(tag_name(g)) + " is not a good step: " + print(before) + " => " + print(after));
      }
      before = after;
    });
    check_bounds(run.metrics(), print(t), bounds, bounded_runs);
    if (run.outcome != Outcome::Normal) {
      big.fail(print(t) + ": " + to_string(run.outcome));
      continue;
    }
    auto full = normalize(t, Mode::GoodFull, {Policy::leftmost(), kDefaultStepLimit, false});
    auto ne = normalize(t, Mode::GoodNonErasing, {Policy::leftmost(), kDefaultStepLimit, false});
    Term got = gc(sesame_readback(run.state));
    if (!alpha_eq(got, full.term)) big.fail(print(t) + ": machine " + print(got) + ", oracle " + print(full.term));
    if (run.metrics().principal_total != ne.step_count)
      big.fail(print(t) + ": principal " + std::to_string(run.metrics().principal_total) + ", oracle " +
               std::to_string(ne.step_count));
  }
  double secs = seconds_since(t0);
  if (secs >= 60) big.fail("took " + std::to_string(secs) + " s");
  char buf[200];
  std::snprintf(buf, sizeof buf, "%zu typable terms, sizes <= %zu, %.1f s", corpus.size(), max_size, secs);
  big.detail = buf;
  small.detail = std::to_string(principal) + " principal and " + std::to_string(search) + " search transitions";
  if (max_size > 30) big.fail("corpus term above size 30");
}

bool has_cut(const Term& t) {
  for (Selector s : child_selectors(t)) {
    const Term c = *child(t, s);
    if (c.kind() == TermKind::Cut || has_cut(c)) return true;
  }
  return t.kind() == TermKind::Cut;
}

Verdict diamond(std::size_t max_size) {
  Verdict v;
  auto t0 = Clock::now();
  std::size_t proper = 0, typable = 0, branching = 0, pairs = 0;
  testing::enumerate_terms(max_size, [&](const Term& t) {
    ++proper;
    // Without a cut there is no redex; with fewer than two good redexes
    // there is no pair to join.
    if (!has_cut(t)) return;
    NameSupply names = NameSupply::after(t);
    Term r = rename_fresh(t, names);
    if (good_redexes(r).size() < 2) return;
    if (!is_typable(t) || find_clash(t)) return;
    ++typable;
    testing::DiamondStats st;
    if (auto f = testing::check_diamond(r, &st)) v.fail(print(t) + ": " + *f);
    pairs += st.pairs;
    branching += st.distinct_reducts >= 2;
  });
  double secs = seconds_since(t0);
  if (secs >= 300) v.fail("took " + std::to_string(secs) + " s");
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "size <= %zu: %zu proper terms, %zu typable with two or more good redexes, %zu pairs joined, %.1f s",
                max_size, proper, typable, pairs, secs);
  v.detail = buf;
  return v;
}

bool is_answer(Term t) {
  while (t.kind() == TermKind::Cut) t = t.body();
  return t.is_value() && t.kind() != TermKind::Var;
}

Verdict bam(Verdict& bounds, std::size_t& bounded_runs) {
  Verdict v;
  testing::GenOptions o;
  o.tensor = true;
  std::vector<Term> terms = testing::random_corpus(2028, 200, o);
  o.redex_at_root = true;
  for (const Term& t : testing::random_corpus(2029, 400, o)) terms.push_back(t);
  std::size_t principal = 0;
  for (const Term& t : terms) {
    if (!fv(t).empty() || !is_typable(t)) v.fail("corpus term not closed and typable: " + print(t));
    Term before = bam_readback(bam_init(t));
    auto run = bam_run(t, kDefaultStepLimit, [&](const BamState& q, Tag g) {
      Term after = bam_readback(q);
      if (is_search(g)) {
        if (!(after == before)) v.fail("sea changed the readback of " + print(t));
      } else {
        ++principal;
        if (!testing::projects(before, after, *rule_of(g), Mode::BasicNonErasing))
          v.fail(std::string(tag_name(g)) + " is not a basic step: " + print(before) + " => " + print(after));
      }
      before = after;
    });
    check_bounds(run.metrics, "bam " + print(t), bounds, bounded_runs);
    Term end = bam_readback(run.state);
    if (run.outcome != Outcome::Normal) v.fail(print(t) + ": " + to_string(run.outcome));
    if (!is_answer(end)) v.fail(print(t) + ": halted on " + print(end));
    if (first_redex(end, Mode::BasicNonErasing)) v.fail(print(t) + ": halted on a basic redex");
  }
  v.detail = std::to_string(terms.size()) + " closed typable terms, " + std::to_string(principal) +
             " principal transitions";
  return v;
}

Verdict soundness(const std::vector<Term>& corpus, std::size_t enum_size) {
  Verdict v;
  std::size_t terms = 0, states = 0;
  auto run = [&](const Term& t, Policy policy) {
    ++terms;
    NameSupply names = NameSupply::after(t);
    Term cur = is_well_bound(t) ? t : rename_fresh(t, names);
    Stepper stepper(Mode::GoodFull, policy);
    for (std::uint64_t i = 0; i < 100000; ++i) {
      ++states;
      if (auto c = find_clash(cur)) {
        v.fail(print(t) + " reaches " + print(cur) + " with a clash at " + to_string(*c));
        return;
      }
      auto s = stepper.step(cur, names);
      if (!s) return;
      cur = s->term;
    }
  };
  for (const Term& t : corpus) {
    if (!is_typable(t)) continue;
    run(t, Policy::leftmost());
    run(t, Policy::random(t.size()));
  }
  testing::enumerate_terms(enum_size, [&](const Term& t) {
    if (is_typable(t)) run(t, Policy::leftmost());
  });
  v.detail = std::to_string(terms) + " runs of typed terms (random corpus and all of size <= " +
             std::to_string(enum_size) + "), " + std::to_string(states) + " states clash-free";
  return v;
}

Verdict overhead(int reps) {
  Verdict v;
  std::vector<FamilySpec> specs;
  for (std::uint32_t n = 4; n <= 12; ++n) specs.push_back({Family::Sigma, n});
  BenchOptions opt;
  opt.repetitions = reps;
  opt.warmups = 2;
  auto rep = bench(specs, opt);
  double lo = 1e300, hi = 0;
  for (const auto& row : rep.rows) {
    lo = std::min(lo, row.overhead_ratio);
    hi = std::max(hi, row.overhead_ratio);
    if (!row.facts_hold) v.fail(to_string(row.spec) + ": " + row.facts);
  }
  double spread = rep.ratio_spread();
  if (spread > 5.0) v.fail("ratio spread above 5");
  char buf[200];
  std::snprintf(buf, sizeof buf, "sigma 4..12, ratio max/min %.2f (limit 5), min %.3g s, max %.3g s", spread, lo,
                hi);
  v.detail = buf;
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ESC acceptance run"};
  std::size_t diamond_size = 10;
  std::size_t soundness_size = 8;
  int reps = 7;
  app.add_option("--diamond-size", diamond_size, "largest enumerated term size for the diamond check");
  app.add_option("--soundness-size", soundness_size, "largest enumerated term size for the soundness check");
  app.add_option("--bench-reps", reps, "timing repetitions per family member");
  CLI11_PARSE(app, argc, argv);

  Report report;
  Verdict bounds;
  std::size_t bounded_runs = 0;

  report.hard(1, "golden trace", golden(bounds, bounded_runs));
  report.hard(2, "family facts", families(bounds, bounded_runs));

  std::vector<Term> corpus = differential_corpus();
  Verdict big, small;
  differential(corpus, big, small, bounds, bounded_runs);
  report.hard(3, "differential equivalence with the oracle", big);
  report.hard(4, "per-transition projection", small);

  Verdict b7 = bam(bounds, bounded_runs);
  bounds.detail = std::to_string(bounded_runs) + " runs within the search and copy bounds";
  report.hard(5, "quantitative bounds", bounds);
  report.hard(6, "diamond", diamond(diamond_size));
  report.hard(7, "basic machine", b7);
  report.hard(8, "typing soundness by execution", soundness(corpus, soundness_size));
  report.soft(9, "bilinear overhead", overhead(reps));

  std::cout << (report.ok() ? "acceptance: all hard criteria pass" : "acceptance: FAILED") << std::endl;
  return report.ok() ? 0 : 1;
}
