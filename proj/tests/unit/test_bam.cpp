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

#include <doctest.h>

#include "checks.hpp"
#include "esc/bam.hpp"
#include "esc/families.hpp"
#include "esc/syntax.hpp"
#include "gen.hpp"

using namespace esc;

namespace {

std::vector<Tag> tags_of(const Term& t) {
  std::vector<Tag> tags;
  bam_run(t, kDefaultStepLimit, [&](const BamState&, Tag g) { tags.push_back(g); });
  return tags;
}

bool is_answer(Term t) {
  while (t.kind() == TermKind::Cut) t = t.body();
  return t.is_value() && t.kind() != TermKind::Var;
}

}  // namespace

TEST_CASE("initial state") {
  Term t = parse("[\\m1m1-m2]m2");
  BamState q = bam_init(t);
  CHECK(q.context().empty());
  CHECK(alpha_eq(q.active(), t));
  CHECK(bam_active_path(q).empty());
  CHECK_THROWS_AS(bam_init(parse("m1")), OpenTerm);
  CHECK_THROWS_AS(bam_init(parse("[e1?m2]m2")), OpenTerm);
}

TEST_CASE("search then multiplicative axiom") {
  BamState q = bam_init(parse("[\\m1m1-m2]m2"));
  CHECK(bam_step(q) == Tag::Sea);
  CHECK(q.context().size() == 1);
  CHECK(q.active().kind() == TermKind::Var);
  CHECK(bam_active_path(q) == Path{Selector::CutBody});
  CHECK(bam_step(q) == Tag::AxM1);
  CHECK(q.context().empty());
  CHECK(alpha_eq(q.active(), parse("\\m1m1")));
  CHECK_FALSE(bam_step(q));
  CHECK_FALSE(q.clashed());
}

TEST_CASE("exponential rows keep the context") {
  BamState q = bam_init(parse("[!\\m1m1 - e2][e2?m3]m3"));
  CHECK(bam_step(q) == Tag::Sea);
  CHECK(bam_step(q) == Tag::Bang);
  CHECK(q.context().size() == 1);
  CHECK(alpha_eq(q.active(), parse("[\\m4m4 - m3]m3")));
  // The copy is fresh.
  CHECK(q.active().value().var() != q.context().front().value.body().var());

  BamState r = bam_init(parse("[!\\m1m1 - e5][e5 - e1][e1?m2]m2"));
  CHECK(bam_step(r) == Tag::Sea);
  CHECK(bam_step(r) == Tag::Sea);
  CHECK(bam_step(r) == Tag::AxE2);
  CHECK(r.context().size() == 2);
  CHECK(alpha_eq(bam_readback(r), parse("[!\\m1m1 - e5][e5 - e1][e5?m2]m2")));
  CHECK(bam_step(r) == Tag::Bang);
  CHECK(bam_step(r) == Tag::Sea);
  CHECK(bam_step(r) == Tag::AxM1);
  CHECK_FALSE(bam_step(r));
  CHECK(alpha_eq(bam_readback(r), parse("[!\\m1m1 - e5][e5 - e1]\\m2m2")));
}

TEST_CASE("values are final") {
  Term v = parse("!\\m1m1");
  auto run = bam_run(v);
  CHECK(run.metrics.total() == 0);
  CHECK(alpha_eq(bam_readback(run.state), v));
}

TEST_CASE("clash halts the machine") {
  auto run = bam_run(parse("[!\\m1m1 - e1][e1?m2][m2@m3,m4]<m3,m4>"));
  CHECK(run.outcome == Outcome::Clash);
}

TEST_CASE("sigma 1 agrees with basic evaluation") {
  Term s = gen({Family::Sigma, 1});
  auto run = bam_run(s);
  CHECK(run.outcome == Outcome::Normal);
  Term rb = bam_readback(run.state);
  CHECK(is_answer(rb));
  auto ref = normalize(s, Mode::BasicNonErasing);
  CHECK(alpha_eq(rb, ref.term));
  CHECK(run.metrics.principal_total == ref.step_count);
  CHECK(run.metrics.count(Tag::Bang) == ref.count(RuleKind::Bang));
  CHECK(run.metrics.count(Tag::AxE1) == ref.count(RuleKind::AxE1));
}

TEST_CASE("random closed terms") {
  testing::GenOptions o;
  o.tensor = true;
  o.redex_at_root = true;
  std::size_t principal = 0, busy = 0;
  for (const Term& t : testing::random_corpus(51, 600, o)) {
    Term before = bam_readback(bam_init(t));
    bool ok = true;
    auto run = bam_run(t, kDefaultStepLimit, [&](const BamState& q, Tag g) {
      Term after = bam_readback(q);
      if (is_search(g)) {
        ok = ok && after == before;
      } else {
        ++principal;
        ok = ok && testing::projects(before, after, *rule_of(g), Mode::BasicNonErasing);
      }
      // Closure and well-boundness.
      ok = ok && fv(after).empty() && is_well_bound(after);
      ok = ok && subterm_at(after, bam_active_path(q)) == q.active();
      before = after;
    });
    CHECK_MESSAGE(ok, print(t));
    REQUIRE(run.outcome == Outcome::Normal);
    Term end = bam_readback(run.state);
    CHECK(is_answer(end));
    CHECK_FALSE(first_redex(end, Mode::BasicNonErasing));
    CHECK(run.metrics.search_bound_holds());
    CHECK(run.metrics.subterm_bound_holds());
    auto ref = normalize(t, Mode::BasicNonErasing, {Policy::leftmost(), kDefaultStepLimit, false});
    CHECK(run.metrics.principal_total == ref.step_count);
    CHECK(alpha_eq(end, ref.term));
    busy += run.metrics.principal_total > 0;
  }
  MESSAGE(busy << " runs with principal transitions, " << principal << " in total");
  CHECK(busy == 600);
  CHECK(principal > 1000);
}
