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

// Parameter validation helpers shared by the library sources.

#include <cmath>
#include <string>

#include "qillum/error.hpp"
#include "qillum/linalg.hpp"

namespace qillum::detail {

inline void require_finite(const char* name, Real value) {
  if (!std::isfinite(value)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
}

inline void require_nonnegative(const char* name, Real value) {
  require_finite(name, value);
  if (value < 0) {
    throw ValidationError(std::string(name) + " must be >= 0, got " + std::to_string(static_cast<double>(value)));
  }
}

inline Real max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qillum::detail
