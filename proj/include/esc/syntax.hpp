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

// Concrete syntax.
//
//   term   ::= value | "[" binder "]" term | "(" term ")"
//   value  ::= var | "\" var term | "!" term | "<" term "," term ">"
//   binder ::= value "-" var | evar "?" var | mvar ">" value "," var
//            | mvar "@" var "," var
//   mvar   ::= "m" digits      evar ::= "e" digits | "_"
//
// Whitespace is allowed between tokens. A bare "m" or "e" names index 0.
// Every "_" is a distinct exponential binder with no occurrences.

#ifndef ESC_SYNTAX_HPP
#define ESC_SYNTAX_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "esc/error.hpp"
#include "esc/term.hpp"

namespace esc {

struct SourceSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
};

class SyntaxError : public Error {
 public:
  SyntaxError(SourceSpan span, std::vector<std::string> expected, std::string found);
  const SourceSpan& span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
  std::string found_;
};

// The input reuses a binder name, or binds a name that also occurs free.
class BindingError : public Error {
 public:
  BindingError(SourceSpan span, VarId var, const std::string& what);
  const SourceSpan& span() const { return span_; }
  VarId var() const { return var_; }

 private:
  SourceSpan span_;
  VarId var_;
};

Term parse(std::string_view input);

enum class Style { Ascii, Unicode };

std::string print(const Term& t, Style style = Style::Ascii);

struct Mark {
  Path path;
  int job = 1;
};

// Prints t with each marked sub-term bracketed as <...> followed by its job
// number (subscript in Unicode style, "_k" in Ascii style).
std::string print_marked(const Term& t, const std::vector<Mark>& marks, Style style);
std::string print_marked(const Term& t, const Path& marked, int job, Style style);

std::string print_var(VarId x, Style style);

// Human-readable grammar, shown by the REPL on start.
const char* grammar_text();

// "^^^" underline for a span, for diagnostics.
std::string caret_line(SourceSpan span);

}  // namespace esc

#endif  // ESC_SYNTAX_HPP
