/*
 * Copyright 2026 The restricted-range Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace rr {

//============================================================================
// Tolerances
//============================================================================

// Every numerical threshold used by validation and decision code lives here.
struct Tolerances {
  double hermiticity = 1e-12;          // relative to the largest |entry|
  double normalization = 1e-12;        // | <psi|psi> - 1 |
  double schmidt_sum = 1e-12;          // | sum xi^2 - 1 |
  double frame_orthonormality = 1e-10;
  double schmidt_cutoff = 1e-13;       // Schmidt coefficients below are dropped
  double density_eigenvalue = 1e-10;   // smallest admissible eigenvalue is -this
  double density_trace = 1e-10;
  double kraus_identity = 1e-10;
  double violation = 1e-9;             // negative values below -this are violations
  double compression = 1e-9;           // P X P = lambda P residual
  double preimage = 1e-9;              // field-of-values inversion residual
  double degeneracy = 1e-12;           // eigenvalue gap treated as a crossing
};

inline constexpr Tolerances kTol{};

//============================================================================
// Errors
//============================================================================

// Exit codes are part of the CLI contract (see README).
enum class ErrorKind : int {
  parse = 2,
  dimension = 3,
  guard = 4,
  no_certificate = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

// Malformed or out-of-domain input (non-Hermitian, bad parameter range, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::parse, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorKind::dimension, what) {}
};

// Size guards (problem would be too large for dense methods).
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& what)
      : Error(ErrorKind::guard, what) {}
};

// A requested object does not exist for these inputs (e.g. no product vector
// annihilating the expectation value).
class NoCertificateError : public Error {
 public:
  explicit NoCertificateError(const std::string& what)
      : Error(ErrorKind::no_certificate, what) {}
};

}  // namespace rr
