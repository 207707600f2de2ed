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

#ifndef ESC_PROPER_HPP
#define ESC_PROPER_HPP

#include <string>

#include "esc/term.hpp"

namespace esc {

struct ProperResult {
  bool proper = true;
  // Outermost (pre-order first) violating sub-term.
  Path where;
  std::string reason;

  explicit operator bool() const { return proper; }
};

// Multiplicative variables are linear and promotions have no free
// multiplicative variables:
//   \x t       x multiplicative implies x in mfv(t)
//   [m>v,x]t   mfv(v) # mfv(t)\{x}, m not in mfv(t), x mult implies x in mfv(t)
//   !t         mfv(t) empty
//   [e?x]t     x mult implies x in mfv(t)
//   [v-x]t     mfv(v) # mfv(t)\{x}, x mult implies x in mfv(t)
//   <t,s>      mfv(t) # mfv(s)
//   [m@x,y]t   m not in mfv(t), x (y) mult implies x (y) in mfv(t)
ProperResult check_proper(const Term& t);
bool is_proper(const Term& t);

}  // namespace esc

#endif  // ESC_PROPER_HPP
