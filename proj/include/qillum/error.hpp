// Copyright 2026 The qillum Authors
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

namespace qillum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters, malformed input, or a violated precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A covariance matrix that does not describe a physical state.
class NonPhysicalError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Solver failure: non-convergence, singular system, lost precision.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Fock truncation too small for the requested state.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Parameters outside the regime where the Fock oracle can converge.
class RegimeError : public Error {
 public:
  using Error::Error;
};

}  // namespace qillum
