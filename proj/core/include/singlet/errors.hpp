// Copyright 2026 The singlet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace singlet {

// Operator/state dimensions are inconsistent (non-square, mismatched tensor
// factors, truncation too small for a requested construction).
struct InvalidDimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Bad configuration input: unknown key, unparsable value, parameter outside
// its allowed range. The message names the offending key or line.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The integrator could not meet its error control (step-size underflow,
// trace drift beyond tolerance).
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The propagated density matrix developed an eigenvalue below the allowed
// floor; kept separate from NumericalFailure so callers can distinguish
// error-control trouble from a state that stopped being physical.
struct PositivityFailure : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

// An analytic formula was evaluated at (or too close to) one of its
// resonances; the message names the vanishing denominator.
struct SingularityError : std::domain_error {
  using std::domain_error::domain_error;
};

// Structurally valid input for which the requested quantity is undefined
// (empty excitation sector, all rates zero, ...).
struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The optimizer exhausted its budget without a single finite objective value.
struct OptimizationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace singlet
