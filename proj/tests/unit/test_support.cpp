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

#include <functional>
#include <set>

#include "checks.hpp"
#include "esc/oracle.hpp"
#include "esc/proper.hpp"
#include "esc/syntax.hpp"
#include "esc/typing.hpp"
#include "gen.hpp"

using namespace esc;

namespace {

// Raw syntax over three names per kind, without pairs and tensors.
const std::vector<VarId> kNames{VarId::mult(1), VarId::mult(2), VarId::mult(3),
                                VarId::exp(1),  VarId::exp(2),  VarId::exp(3)};

void raw_terms(std::size_t n, const std::function<void(const Term&)>& k);

void raw_values(std::size_t n, const std::function<void(const Term&)>& k) {
  if (n == 1) {
    for (VarId v : kNames) k(Term::var(v));
    return;
  }
  for (VarId x : kNames) raw_terms(n - 1, [&](const Term& b) { k(Term::abs(x, b)); });
  raw_terms(n - 1, [&](const Term& b) { k(Term::bang(b)); });
}

void raw_terms(std::size_t n, const std::function<void(const Term&)>& k) {
  raw_values(n, k);
  for (std::size_t a = 1; a + 1 < n; ++a)
    for (VarId x : kNames)
      raw_values(a, [&](const Term& v) { raw_terms(n - 1 - a, [&](const Term& b) { k(Term::cut(v, x, b)); }); });
  for (std::size_t a = 1; a + 1 < n; ++a)
    for (VarId m : kNames)
      if (m.is_mult())
        for (VarId x : kNames)
          raw_values(a, [&](const Term& v) {
            raw_terms(n - 1 - a, [&](const Term& b) { k(Term::sub(m, v, x, b)); });
          });
  if (n >= 2)
    for (VarId e : kNames)
      if (e.is_exp())
        for (VarId x : kNames) raw_terms(n - 1, [&](const Term& b) { k(Term::der(e, x, b)); });
}

// Cut binders have the kind of their value.
bool kinds_agree(const Term& t) {
  switch (t.kind()) {
    case TermKind::Var: return true;
    case TermKind::Abs:
    case TermKind::Bang:
    case TermKind::Der: return kinds_agree(t.body());
    case TermKind::Cut: return t.value().is_mult_value() == t.var().is_mult() && kinds_agree(t.value()) && kinds_agree(t.body());
    case TermKind::Sub: return kinds_agree(t.value()) && kinds_agree(t.body());
    default: return false;
  }
}

}  // namespace

TEST_CASE("enumerator matches raw enumeration") {
  const std::size_t expected[] = {0, 0, 2, 10, 58, 390};
  for (std::size_t n = 1; n <= 5; ++n) {
    std::set<std::string> raw, enumerated;
    raw_terms(n, [&](const Term& t) {
      if (fv(t).empty() && is_proper(t) && kinds_agree(t)) raw.insert(testing::alpha_key(t));
    });
    std::size_t emitted = 0;
    testing::enumerate_terms(n, [&](const Term& t) {
      if (t.size() != n) return;
      ++emitted;
      enumerated.insert(testing::alpha_key(t));
    });
    CHECK(enumerated == raw);
    CHECK(emitted == enumerated.size());
    CHECK(raw.size() == expected[n]);
  }
}

TEST_CASE("enumerated terms are closed, proper and well-bound") {
  std::size_t count = 0;
  testing::enumerate_terms(7, [&](const Term& t) {
    ++count;
    CHECK(t.size() <= 7);
    CHECK(fv(t).empty());
    CHECK(is_proper(t));
  });
  CHECK(count == testing::enumerate_terms(7).size());
}

TEST_CASE("random terms meet their contract") {
  for (bool closed : {true, false})
    for (bool tensor : {true, false}) {
      testing::GenOptions o;
      o.closed = closed;
      o.tensor = tensor;
      o.min_size = 6;
      testing::RandomTerms gen(71, o);
      std::size_t with_cuts = 0, pairs = 0;
      for (int i = 0; i < 300; ++i) {
        Term t = gen.next();
        CHECK(t.size() >= 6);
        CHECK(t.size() <= 30);
        CHECK(is_proper(t));
        CHECK(is_typable(t));
        CHECK_FALSE(find_clash(t));
        if (closed) CHECK(fv(t).empty());
        with_cuts += !is_cut_free(t);
        pairs += print(t).find('<') != std::string::npos;
      }
      CHECK(with_cuts > 100);
      CHECK((pairs > 0) == tensor);
      CHECK(gen.attempts() >= 300);
    }
}

TEST_CASE("random terms are reproducible") {
  auto a = testing::random_corpus(5, 50);
  auto b = testing::random_corpus(5, 50);
  auto c = testing::random_corpus(6, 50);
  CHECK(a == b);
  CHECK_FALSE(a == c);
}

TEST_CASE("root redex option") {
  testing::GenOptions o;
  o.redex_at_root = true;
  for (const Term& t : testing::random_corpus(72, 200, o)) {
    REQUIRE(t.kind() == TermKind::Cut);
    CHECK(first_redex(t, Mode::BasicNonErasing).has_value());
  }
}

TEST_CASE("diamond checker") {
  testing::DiamondStats st;
  CHECK_FALSE(testing::check_diamond(parse("[!\\m1m1-e1][e1?m2][e1?m3][m2>m3,m4]m4"), &st));
  CHECK(st.redexes == 2);
  CHECK_FALSE(testing::check_diamond(parse("\\m1m1"), &st));
  CHECK(st.redexes == 0);
  CHECK(testing::projects(parse("[\\m1m1 - m2]m2"), parse("\\m5m5"), RuleKind::AxM1, Mode::GoodFull));
  CHECK_FALSE(testing::projects(parse("[\\m1m1 - m2]m2"), parse("\\m5m5"), RuleKind::Lolli, Mode::GoodFull));
}
