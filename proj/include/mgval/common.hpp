// Copyright 2026 The mgval Authors.
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

#ifndef MGVAL_COMMON_HPP_
#define MGVAL_COMMON_HPP_

#include <stdexcept>
#include <string>

namespace mgval {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad game description, out-of-range argument.
class ValidationError : public Error {
 public:
  enum class Code {
    kDimensionMismatch,
    kEmptyMatrix,
    kRaggedMatrix,
    kNonFinite,
    kNegativeRate,
    kDegenerateChain,
    kNonpositiveDiscount,
    kMissingKey,
    kUnknownKey,
    kBadType,
    kOutOfRange,
  };

  ValidationError(Code code, const std::string& what)
      : Error(what), code_(code) {}

  Code code() const { return code_; }

 private:
  Code code_;
};

// File-system failures.
class IoError : public Error {
 public:
  using Error::Error;
};

// Numerical pipeline failures (stalled progress, non-convergence).
class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace mgval

#endif  // MGVAL_COMMON_HPP_
