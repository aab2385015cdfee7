// Copyright 2026 The BFR Codes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace bfr {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands belong to different fields.
class FieldMismatchError : public Error {
 public:
  using Error::Error;
};

/// A linear system is singular, rank deficient or inconsistent.
class LinearAlgebraError : public Error {
 public:
  using Error::Error;
};

/// Collected evaluations do not span the message space.
class InsufficientRankError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or violated preconditions on a call.
class ParameterError : public Error {
 public:
  using Error::Error;
};

}  // namespace bfr
