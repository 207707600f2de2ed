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

#include "esc/proper.hpp"

#include <optional>

namespace esc {

namespace {

struct Failure {
  Path where;
  std::string reason;
};

bool disjoint(const VarSet& a, const VarSet& b, VarId except, std::optional<VarId>* witness) {
  for (VarId x : a) {
    if (x != except && b.count(x)) {
      *witness = x;
      return false;
    }
  }
  return true;
}

class Checker {
 public:
  // Returns mfv(t); `first` receives the pre-order first violation in t.
  VarSet walk(const Term& t, std::optional<Failure>& first) {
    std::optional<Failure> mine;
    std::optional<Failure> below;
    auto fail = [&](std::string why) {
      if (!mine) mine = Failure{path_, std::move(why)};
    };
    auto need_used = [&](VarId x, const VarSet& body) {
      if (x.is_mult() && !body.count(x)) fail(to_string(x) + " is multiplicative but unused");
    };
    auto down = [&](Selector s) {
      path_.push_back(s);
      std::optional<Failure> f;
      VarSet r = walk(*child(t, s), f);
      if (!below) below = std::move(f);
      path_.pop_back();
      return r;
    };
    VarSet out;
    switch (t.kind()) {
      case TermKind::Var:
        if (t.var().is_mult()) out.insert(t.var());
        break;
      case TermKind::Abs: {
        VarSet b = down(Selector::AbsBody);
        need_used(t.var(), b);
        b.erase(t.var());
        out = std::move(b);
        break;
      }
      case TermKind::Bang: {
        VarSet b = down(Selector::BangBody);
        if (!b.empty()) fail("promotion body has free multiplicative " + to_string(*b.begin()));
        out = std::move(b);
        break;
      }
      case TermKind::Pair: {
        VarSet l = down(Selector::PairLeft);
        VarSet r = down(Selector::PairRight);
        std::optional<VarId> w;
        if (!disjoint(l, r, VarId::wild(0), &w)) fail(to_string(*w) + " shared by both pair components");
        out = std::move(l);
        out.insert(r.begin(), r.end());
        break;
      }
      case TermKind::Cut: {
        VarSet v = down(Selector::CutValue);
        VarSet b = down(Selector::CutBody);
        std::optional<VarId> w;
        if (!disjoint(v, b, t.var(), &w)) fail(to_string(*w) + " shared by cut value and body");
        need_used(t.var(), b);
        b.erase(t.var());
        out = std::move(v);
        out.insert(b.begin(), b.end());
        break;
      }
      case TermKind::Sub: {
        VarSet v = down(Selector::SubValue);
        VarSet b = down(Selector::SubBody);
        std::optional<VarId> w;
        if (!disjoint(v, b, t.var(), &w)) fail(to_string(*w) + " shared by subtraction value and body");
        if (b.count(t.head())) fail(to_string(t.head()) + " occurs in its own subtraction body");
        need_used(t.var(), b);
        b.erase(t.var());
        out = std::move(v);
        out.insert(b.begin(), b.end());
        out.insert(t.head());
        break;
      }
      case TermKind::Der: {
        VarSet b = down(Selector::DerBody);
        need_used(t.var(), b);
        b.erase(t.var());
        out = std::move(b);
        break;
      }
      case TermKind::Tens: {
        VarSet b = down(Selector::TensBody);
        if (b.count(t.head())) fail(to_string(t.head()) + " occurs in its own elimination body");
        need_used(t.var(), b);
        need_used(t.var2(), b);
        b.erase(t.var());
        b.erase(t.var2());
        out = std::move(b);
        out.insert(t.head());
        break;
      }
    }
    first = mine ? std::move(mine) : std::move(below);
    return out;
  }

 private:
  Path path_;
};

}  // namespace

ProperResult check_proper(const Term& t) {
  Checker c;
  std::optional<Failure> first;
  c.walk(t, first);
  ProperResult r;
  if (first) {
    r.proper = false;
    r.where = std::move(first->where);
    r.reason = std::move(first->reason);
  }
  return r;
}

bool is_proper(const Term& t) { return check_proper(t).proper; }

}  // namespace esc
