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

#ifndef ESC_ERROR_HPP
#define ESC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace esc {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A non-value was plugged into the value slot of a cut or subtraction.
class SplitViolation : public Error {
 public:
  using Error::Error;
};

// A path does not address a sub-term of the given term.
class InvalidPath : public Error {
 public:
  using Error::Error;
};

// A redex handed to apply_redex is not a redex of the term.
class StaleRedex : public Error {
 public:
  using Error::Error;
};

// The BAM only runs closed terms.
class OpenTerm : public Error {
 public:
  using Error::Error;
};

// A machine looked up a variable that its invariants say must be bound.
// Signals a bug, never a property of the input.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public InternalInvariant {
 public:
  using InternalInvariant::InternalInvariant;
};

}  // namespace esc

#endif  // ESC_ERROR_HPP
