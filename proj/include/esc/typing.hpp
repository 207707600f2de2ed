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

// Simple IMELL types for ESC terms, inferred by first-order unification.
// Multiplicative variables are used exactly once (checked by counting) and
// never carry a !-formula; exponential variables always carry one.

#ifndef ESC_TYPING_HPP
#define ESC_TYPING_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "esc/term.hpp"

namespace esc {

namespace detail {
struct FormulaNode;
}

class Formula {
 public:
  enum class Kind { Atom, Tensor, Lolli, Bang, Meta };

  static Formula atom();
  static Formula tensor(Formula a, Formula b);
  static Formula lolli(Formula a, Formula b);
  static Formula bang(Formula a);
  static Formula meta(int id);

  Kind kind() const;
  int meta_id() const;
  const Formula& left() const;
  const Formula& right() const;
  // Bang operand.
  const Formula& operand() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const detail::FormulaNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::FormulaNode> node_;
};

namespace detail {
struct FormulaNode {
  Formula::Kind kind;
  int meta = -1;
  std::optional<Formula> l;
  std::optional<Formula> r;
};
}  // namespace detail

// Xm, A -o B (right associative), A * B, !A; metavariables print as 'a, 'b,
// ... in order of their ids.
std::string to_string(const Formula& f);

using TypingContext = std::map<VarId, Formula>;

enum class TypeErrorKind { UnificationFailure, OccursCheck, LinearityViolation, BangShapeViolation };

const char* to_string(TypeErrorKind k);

struct TypingResult {
  bool typed = false;

  // Typed: metavariables are numbered 0.. by first appearance in `type`,
  // then in `context`.
  std::optional<Formula> type;
  TypingContext context;          // free variables
  std::vector<int> not_bang;      // metavariables constrained to A != !B

  // Untypable.
  TypeErrorKind error = TypeErrorKind::UnificationFailure;
  Path where;
  std::optional<VarId> var;
  std::string reason;

  explicit operator bool() const { return typed; }
};

// Free variables missing from `assumptions` get a fresh metavariable, wrapped
// in ! for exponential ones.
TypingResult infer_type(const Term& t, const TypingContext& assumptions = {});

bool is_typable(const Term& t);

// "'a -o 'a  where 'a != !_"
std::string describe(const TypingResult& r);

}  // namespace esc

#endif  // ESC_TYPING_HPP
