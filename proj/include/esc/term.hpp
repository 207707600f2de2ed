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

// Tree form of exponential substitution calculus terms.
//
//   values  v ::= x | \x t | !t | <t,s>
//   terms   t ::= v | [v-x]t | [m>v,x]t | [e?x]t | [m@x,y]t
//
// Cuts and subtractions are split: their left slot holds a value. Terms are
// immutable and share structure freely, so a Term is cheap to copy and safe
// to hand to other threads.

#ifndef ESC_TERM_HPP
#define ESC_TERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "esc/error.hpp"

namespace esc {

enum class VarKind : std::uint8_t { Mult, Exp };

// A variable name. Display form is m<index> or e<index>; wildcards print as
// `_` and never occur, only bind.
struct VarId {
  VarKind kind = VarKind::Mult;
  std::uint32_t index = 0;
  bool wildcard = false;

  static constexpr VarId mult(std::uint32_t i) { return {VarKind::Mult, i, false}; }
  static constexpr VarId exp(std::uint32_t i) { return {VarKind::Exp, i, false}; }
  static constexpr VarId wild(std::uint32_t i) { return {VarKind::Exp, i, true}; }

  constexpr bool is_mult() const { return kind == VarKind::Mult; }
  constexpr bool is_exp() const { return kind == VarKind::Exp; }

  friend constexpr auto operator<=>(const VarId&, const VarId&) = default;
};

std::string to_string(VarId x);

struct VarIdHash {
  std::size_t operator()(VarId x) const noexcept {
    return (std::size_t{x.index} << 2) | (x.is_exp() ? 2u : 0u) | (x.wildcard ? 1u : 0u);
  }
};

using VarSet = std::set<VarId>;

enum class TermKind : std::uint8_t { Var, Abs, Bang, Pair, Cut, Sub, Der, Tens };

namespace detail {
struct TermNode;
}

class Term {
 public:
  static Term var(VarId x);
  static Term abs(VarId binder, Term body);
  static Term bang(Term body);
  static Term pair(Term left, Term right);
  // Throw SplitViolation when `value` is not a value.
  static Term cut(Term value, VarId binder, Term body);
  static Term sub(VarId head, Term value, VarId binder, Term body);
  static Term der(VarId head, VarId binder, Term body);
  static Term tens(VarId head, VarId left, VarId right, Term body);

  TermKind kind() const;
  bool is_value() const;
  // Multiplicative values are m-variables, abstractions and pairs;
  // exponential values are e-variables and promotions.
  bool is_mult_value() const;
  bool is_exp_value() const;

  // Var: the variable. Abs/Cut/Sub/Der: the bound variable. Tens: the left binder.
  VarId var() const;
  // Sub/Der/Tens: the acted-on variable.
  VarId head() const;
  // Tens: the right binder.
  VarId var2() const;
  // Cut/Sub: the value slot.
  const Term& value() const;
  // Abs/Bang/Cut/Sub/Der/Tens.
  const Term& body() const;
  // Pair components.
  const Term& left() const;
  const Term& right() const;

  // Number of constructors.
  std::size_t size() const;

  bool same_node(const Term& o) const { return node_ == o.node_; }
  const void* id() const { return node_.get(); }

  // Structural (not alpha) equality.
  friend bool operator==(const Term& a, const Term& b);

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::TermNode> node_;
};

namespace detail {
struct TermNode {
  TermKind kind;
  VarId a{};  // variable / binder
  VarId b{};  // head
  VarId c{};  // second tensor binder
  std::optional<Term> c0;
  std::optional<Term> c1;
  std::size_t size = 1;
};
}  // namespace detail

bool is_binder(TermKind k);
bool is_left_constructor(TermKind k);  // Cut Sub Der Tens

// ---------------------------------------------------------------------------
// Positions. A context is a root term plus a path of child selectors; the
// hole sits at the end of the path.

enum class Selector : std::uint8_t {
  AbsBody,
  BangBody,
  CutValue,
  CutBody,
  SubValue,
  SubBody,
  DerBody,
  PairLeft,
  PairRight,
  TensBody,
};

using Path = std::vector<Selector>;

struct Position {
  Term root;
  Path path;
};

const char* to_string(Selector s);
std::string to_string(const Path& p);

// Selectors of the children of t, in the fixed order above.
std::vector<Selector> child_selectors(const Term& t);
std::optional<Term> child(const Term& t, Selector s);
bool is_value_slot(Selector s);

bool valid_path(const Term& root, const Path& path);
// Throws InvalidPath.
Term subterm_at(const Term& root, const Path& path);
inline Term subterm_at(const Position& p) { return subterm_at(p.root, p.path); }

// Replace the sub-term addressed by pos. Throws SplitViolation if the slot is
// a cut or subtraction value slot and t is not a value.
Term plug(const Position& pos, const Term& t);
Term plug_value(const Position& pos, const Term& v);
Term plug(const Term& root, const Path& path, const Term& t);

// Left contexts go through CutBody/SubBody/DerBody/TensBody only; cut
// contexts through CutBody only. A value context is empty or starts under an
// abstraction, a promotion or a pair component.
bool is_left_path(const Path& p);
bool is_cut_path(const Path& p);
bool is_value_context_path(const Path& p);

struct Split {
  Position left;
  Term value;
};
// The unique decomposition t = L<v>.
Split split(const Term& t);

struct FreeVars {
  VarSet mult;
  VarSet exp;
  VarSet all() const;
};
FreeVars free_vars(const Term& t);
VarSet fv(const Term& t);
VarSet mfv(const Term& t);
bool occurs_free(VarId x, const Term& t);
// Free occurrences of x in t.
std::size_t count_free(VarId x, const Term& t);

bool is_cut_free(const Term& t);

// Position of a sub-term [v_m - e]t or [v_e - m]t, if any. With tensors, a
// cut whose multiplicative value does not match the constructor acting on
// its variable ([\y.. - m] under [m@x,y], or [<..> - m] under [m>v,x]) is
// also reported.
std::optional<Path> find_clash(const Term& t);

// Cuts not contained in the value of another cut.
std::vector<Path> out_cuts(const Term& t);
// Variables with an occurrence outside every cut value.
VarSet out_vars(const Term& t);
bool is_cut_free_up_to_garbage(const Term& t);

// ---------------------------------------------------------------------------
// Names.

// Monotone source of fresh indices, shared by both variable kinds.
class NameSupply {
 public:
  explicit NameSupply(std::uint32_t next = 1) : next_(next) {}
  // Starts after every index used in t.
  static NameSupply after(const Term& t);
  std::uint32_t fresh() { return next_++; }
  std::uint32_t peek() const { return next_; }
  void reserve_past(std::uint32_t index) {
    if (index >= next_) next_ = index + 1;
  }

 private:
  std::uint32_t next_;
};

std::uint32_t max_index(const Term& t);

// Alpha-equivalent copy whose bound variables all come fresh from `names`.
// Free variables are kept.
Term rename_fresh(const Term& t, NameSupply& names);

// Bound variables renamed in pre-order with per-kind counters, starting past
// the largest free index.
Term alpha_canonical(const Term& t);
bool alpha_eq(const Term& a, const Term& b);

// Every binder binds a distinct name, and no bound name also occurs free.
bool is_well_bound(const Term& t);

}  // namespace esc

#endif  // ESC_TERM_HPP
