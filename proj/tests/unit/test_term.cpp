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

#include "esc/syntax.hpp"
#include "esc/term.hpp"
#include "gen.hpp"

using namespace esc;

namespace {

const char* kExample = "[!\\m1m1-e1][e1?m2][e1?m3][m2>m3,m4]m4";

// Every valid path of t, pre-order.
void paths(const Term& t, Path& cur, std::vector<Path>& out) {
  out.push_back(cur);
  for (Selector s : child_selectors(t)) {
    cur.push_back(s);
    paths(*child(t, s), cur, out);
    cur.pop_back();
  }
}

std::vector<Path> all_paths(const Term& t) {
  std::vector<Path> out;
  Path cur;
  paths(t, cur, out);
  return out;
}

std::vector<Term> corpus(std::size_t n, std::uint64_t seed) {
  testing::GenOptions o;
  o.closed = false;
  o.tensor = true;
  return testing::random_corpus(seed, n, o);
}

}  // namespace

TEST_CASE("free variables") {
  auto a = free_vars(parse("m1"));
  CHECK(a.mult == VarSet{VarId::mult(1)});
  CHECK(a.exp.empty());

  auto b = free_vars(parse("[e1?m2][e1?m3][m2>m3,m4]m4"));
  CHECK(b.mult.empty());
  CHECK(b.exp == VarSet{VarId::exp(1)});

  CHECK(fv(parse("\\m1 m1")).empty());
  CHECK(fv(parse(kExample)).empty());
  CHECK(fv(parse("[m1@m2,m3]<m2,m3>")) == VarSet{VarId::mult(1)});
}

TEST_CASE("split") {
  // [e?m][v-n]\g [m>n,f] f
  Term t = parse("[e1?m2][e5-e3]\\e6[m2>e3,e4]e4");
  Split s = split(t);
  CHECK(s.left.path == Path{Selector::DerBody, Selector::CutBody});
  CHECK(print(s.value) == "\\e6[m2>e3,e4]e4");
  CHECK(plug(s.left, s.value) == t);

  Term v = parse("m1");
  CHECK(split(v).left.path.empty());
  CHECK(split(v).value == v);

  Term c = parse("[!(\\m1m1) - e1] e1");
  CHECK(split(c).left.path == Path{Selector::CutBody});
  CHECK(print(split(c).value) == "e1");
}

TEST_CASE("split is the unique left-context decomposition") {
  for (const Term& t : testing::enumerate_terms(6)) {
    Split s = split(t);
    CHECK(is_left_path(s.left.path));
    CHECK(s.value.is_value());
    CHECK(plug(s.left, s.value) == t);
    // No other left path ends at a value.
    std::size_t hits = 0;
    for (const Path& p : all_paths(t))
      if (is_left_path(p) && subterm_at(t, p).is_value()) ++hits;
    CHECK(hits == 1);
  }
}

TEST_CASE("plug") {
  Term t = parse("m4");
  CHECK(plug(Position{t, {}}, parse("m7")) == parse("m7"));

  Term d = parse("[e1?m2]m2");
  CHECK(print(plug(Position{d, {Selector::DerBody}}, parse("m2"))) == "[e1?m2]m2");

  Term s = parse("[m2>m3,m4]m4");
  Term p = plug_value(Position{s, {Selector::SubValue}}, parse("\\m5m5"));
  CHECK(print(p) == "[m2>\\m5m5,m4]m4");
  CHECK(print(subterm_at(p, {Selector::SubValue})) == "\\m5m5");

  CHECK_THROWS_AS(plug(Position{s, {Selector::SubValue}}, parse("[e1?m5]m5")), SplitViolation);
  CHECK_THROWS_AS(subterm_at(s, {Selector::AbsBody}), InvalidPath);
}

TEST_CASE("plug and subterm_at round trip, sizes add up") {
  for (const Term& t : corpus(200, 11)) {
    for (const Path& p : all_paths(t)) {
      Term old = subterm_at(t, p);
      Term repl = parse("e99");
      Term u = plug(t, p, repl);
      CHECK(subterm_at(u, p) == repl);
      CHECK(u.size() == t.size() - old.size() + repl.size());
      CHECK(plug(u, p, old) == t);
    }
  }
}

TEST_CASE("clashes") {
  auto a = find_clash(parse("[\\m1m1 - e1] e1"));
  REQUIRE(a);
  CHECK(a->empty());
  auto b = find_clash(parse("[!(\\m1m1) - m2] m2"));
  REQUIRE(b);
  CHECK(b->empty());
  CHECK_FALSE(find_clash(parse("\\m1 m1")));
  CHECK_FALSE(find_clash(parse(kExample)));
}

TEST_CASE("out cuts and garbage") {
  Term g = parse("[!(\\m1m1) - e1]\\m6 m6");
  CHECK(out_cuts(g) == std::vector<Path>{Path{}});
  CHECK(is_cut_free_up_to_garbage(g));

  CHECK(out_cuts(parse("\\m1 m1")).empty());
  CHECK(is_cut_free_up_to_garbage(parse("\\m1 m1")));

  Term h = parse("[\\m5m5 - m2][m2>m3,m4]m4");
  CHECK_FALSE(is_cut_free_up_to_garbage(h));
  CHECK(out_vars(h).count(VarId::mult(2)));

  // A cut nested in another cut's value is not an out cut.
  Term n = parse("[![!\\m1m1-e2]e2-e3]\\m4m4");
  CHECK(out_cuts(n).size() == 1);
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_eq(parse("\\m1 m1"), parse("\\m9 m9")));
  CHECK_FALSE(alpha_eq(parse("\\m1 m1"), parse("\\e1 e1")));
  CHECK_FALSE(alpha_eq(parse("\\e1\\e2 e1"), parse("\\e1\\e2 e2")));
  // Free names are not renamed.
  CHECK_FALSE(alpha_eq(parse("e1"), parse("e2")));
  for (const Term& t : corpus(1000, 12)) {
    Term c = alpha_canonical(t);
    CHECK(alpha_canonical(c) == c);
    CHECK(alpha_eq(t, c));
  }
}

TEST_CASE("fresh renaming") {
  NameSupply five(5);
  CHECK(print(rename_fresh(parse("\\m1m1"), five)) == "\\m5m5");
  CHECK(five.peek() == 6);

  NameSupply seven(7);
  CHECK(print(rename_fresh(parse("[e1-e2]e2"), seven)) == "[e1-e7]e7");

  for (const Term& t : corpus(1000, 13)) {
    NameSupply names = NameSupply::after(t);
    Term r = rename_fresh(t, names);
    CHECK(alpha_eq(r, t));
    CHECK(fv(r) == fv(t));
    CHECK(is_well_bound(r));
  }
}

TEST_CASE("paths and contexts") {
  CHECK(is_cut_path({Selector::CutBody, Selector::CutBody}));
  CHECK_FALSE(is_cut_path({Selector::DerBody}));
  CHECK(is_left_path({Selector::DerBody, Selector::SubBody, Selector::TensBody}));
  CHECK_FALSE(is_left_path({Selector::CutValue}));
  CHECK(is_value_context_path({}));
  CHECK(is_value_context_path({Selector::AbsBody, Selector::CutValue}));
  CHECK_FALSE(is_value_context_path({Selector::CutBody}));
  CHECK(valid_path(parse(kExample), {Selector::CutValue, Selector::BangBody, Selector::AbsBody}));
  CHECK_FALSE(valid_path(parse(kExample), {Selector::CutBody, Selector::CutBody}));
}
