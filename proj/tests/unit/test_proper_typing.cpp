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

#include <map>

#include "checks.hpp"
#include "esc/oracle.hpp"
#include "esc/proper.hpp"
#include "esc/sesame.hpp"
#include "esc/syntax.hpp"
#include "esc/typing.hpp"
#include "gen.hpp"

using namespace esc;

namespace {

const char* kExample = "[!\\m1m1-e1][e1?m2][e1?m3][m2>m3,m4]m4";

// Does `general` instantiate to `specific`?
bool matches(const Formula& general, const Formula& specific, std::map<int, Formula>& sub) {
  if (general.kind() == Formula::Kind::Meta) {
    auto [it, fresh] = sub.emplace(general.meta_id(), specific);
    return fresh || it->second == specific;
  }
  if (general.kind() != specific.kind()) return false;
  switch (general.kind()) {
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Bang: return matches(general.operand(), specific.operand(), sub);
    default:
      return matches(general.left(), specific.left(), sub) && matches(general.right(), specific.right(), sub);
  }
}

std::vector<Term> corpus(std::uint64_t seed, std::size_t n, bool closed = true) {
  testing::GenOptions o;
  o.closed = closed;
  o.tensor = true;
  return testing::random_corpus(seed, n, o);
}

}  // namespace

TEST_CASE("properness") {
  CHECK(is_proper(parse(kExample)));
  CHECK(is_proper(parse("\\m1 m1")));
  CHECK(is_proper(parse("[e1?_]!\\m2m2")));

  auto bang = check_proper(parse("!m1"));
  CHECK_FALSE(bang.proper);
  CHECK(bang.where.empty());
  CHECK(bang.reason.find("m1") != std::string::npos);

  CHECK_FALSE(is_proper(parse("\\m1 m2")));
  CHECK_FALSE(is_proper(parse("\\m1 <m1,m1>")));
  // The head may also occur in the argument; such terms are proper but
  // never typable.
  CHECK(is_proper(parse("[m1>m1,m2]m2")));
  CHECK_FALSE(is_typable(parse("[m1>m1,m2]m2")));
  CHECK_FALSE(is_proper(parse("[e1?m2]e1")));
  CHECK_FALSE(is_proper(parse("[m1-m2]<m2,m1>")));
  CHECK_FALSE(is_proper(parse("[m1@m2,m3]<m2,m1>")));
  CHECK(is_proper(parse("[m1@m2,m3]<m2,m3>")));

  // The outermost violation is reported.
  auto deep = check_proper(parse("\\m1 [e2?m3] \\m4 m1"));
  CHECK_FALSE(deep.proper);
  CHECK(deep.where == Path{Selector::AbsBody});
}

TEST_CASE("types of small terms") {
  CHECK(describe(infer_type(parse("!\\m1 m1"))) == "!('a -o 'a)  where 'a != !_");
  CHECK(describe(infer_type(parse("\\m1\\m2 <m1,m2>"))) == "'a -o 'b -o ('a * 'b)  where 'a != !_, 'b != !_");
  CHECK(describe(infer_type(parse("[!\\m1m1 - e1]!\\m2[e1?m3][m3>m2,m4]m4"))) == "!('a -o 'a)  where 'a != !_");

  auto open = infer_type(parse("[m1>m2,m3]m3"));
  REQUIRE(open.typed);
  CHECK(open.context.count(VarId::mult(1)) == 1);
  CHECK(open.context.count(VarId::mult(2)) == 1);
  CHECK(open.context.at(VarId::mult(1)).kind() == Formula::Kind::Lolli);

  auto e = infer_type(parse("[e1?m2]m2"));
  REQUIRE(e.typed);
  CHECK(e.context.at(VarId::exp(1)).kind() == Formula::Kind::Bang);
}

TEST_CASE("untypable terms") {
  auto bad = infer_type(parse("[\\m1m1 - e1]e1"));
  CHECK_FALSE(bad.typed);
  CHECK(bad.error == TypeErrorKind::BangShapeViolation);

  // Self-application through a promotion.
  auto ex = infer_type(parse(kExample));
  CHECK_FALSE(ex.typed);
  CHECK(ex.error == TypeErrorKind::OccursCheck);

  auto mismatch = infer_type(parse("[!\\m1m1 - e1][e1?m2][m2@m3,m4]<m3,m4>"));
  CHECK_FALSE(mismatch.typed);
  CHECK(mismatch.error == TypeErrorKind::UnificationFailure);
  CHECK_FALSE(is_typable(parse("[\\m1m1 - m2][m2@m3,m4]<m3,m4>")));
}

TEST_CASE("alpha invariance of typing") {
  for (const Term& t : corpus(31, 300, false)) {
    auto a = infer_type(t);
    auto b = infer_type(alpha_canonical(t));
    REQUIRE(a.typed);
    REQUIRE(b.typed);
    CHECK(describe(a) == describe(b));
  }
}

TEST_CASE("properness is preserved by good steps") {
  std::size_t steps = 0;
  for (const Term& t : corpus(32, 1000, false)) {
    REQUIRE(is_proper(t));
    NameSupply names = NameSupply::after(t);
    Stepper stepper(Mode::GoodFull, Policy::random(t.size()));
    Term cur = t;
    for (int i = 0; i < 200; ++i) {
      auto s = stepper.step(cur, names);
      if (!s) break;
      ++steps;
      cur = s->term;
      auto p = check_proper(cur);
      REQUIRE_MESSAGE(p.proper, print(t) << " -> " << print(cur) << ": " << p.reason);
    }
  }
  CHECK(steps > 500);
}

TEST_CASE("types survive reduction") {
  // A reduct's principal type is at least as general as the original one,
  // and typed terms never clash.
  std::size_t steps = 0;
  for (const Term& t : corpus(33, 1000)) {
    auto ty = infer_type(t);
    REQUIRE(ty.typed);
    NameSupply names = NameSupply::after(t);
    Stepper stepper(Mode::GoodFull, Policy::random(t.size() + 7));
    Term cur = t;
    for (int i = 0; i < 200; ++i) {
      auto s = stepper.step(cur, names);
      if (!s) break;
      ++steps;
      cur = s->term;
      auto r = infer_type(cur);
      REQUIRE_MESSAGE(r.typed, print(t) << " -> " << print(cur) << ": " << r.reason);
      std::map<int, Formula> sub;
      CHECK_MESSAGE(matches(*r.type, *ty.type, sub), describe(r) << " vs " << describe(ty));
      CHECK_FALSE(find_clash(cur));
    }
    auto run = sesame_run(t);
    CHECK(run.outcome == Outcome::Normal);
  }
  CHECK(steps > 500);
}
