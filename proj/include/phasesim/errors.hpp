// Copyright 2026 The phasesim authors
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

namespace phasesim {

// Root of every error thrown by the library. Catching SimError is enough to
// translate any failure into a diagnostic and an exit code.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define PHASESIM_DEFINE_ERROR(NAME)                            \
  struct NAME : SimError {                                     \
    explicit NAME(const std::string& msg) : SimError(msg) {}   \
  }

// Input validation.
PHASESIM_DEFINE_ERROR(DimensionNotOddPrime);
PHASESIM_DEFINE_ERROR(ShapeMismatch);
PHASESIM_DEFINE_ERROR(SupportOutOfRange);
PHASESIM_DEFINE_ERROR(DuplicateSite);
PHASESIM_DEFINE_ERROR(ParseError);

// Operator-algebra validation.
PHASESIM_DEFINE_ERROR(ImagResidueTooLarge);
PHASESIM_DEFINE_ERROR(NotTracePreserving);
PHASESIM_DEFINE_ERROR(NotCompletelyPositive);
PHASESIM_DEFINE_ERROR(NotStochastic);
PHASESIM_DEFINE_ERROR(NotSymplectic);
PHASESIM_DEFINE_ERROR(NotResolutionOfIdentity);
PHASESIM_DEFINE_ERROR(NotPositiveSemidefinite);

// Sampling.
PHASESIM_DEFINE_ERROR(NotNormalized);
PHASESIM_DEFINE_ERROR(NegativeEntry);
PHASESIM_DEFINE_ERROR(NegativeTable);
PHASESIM_DEFINE_ERROR(NotSamplable);

// Resource caps.
PHASESIM_DEFINE_ERROR(TooLarge);

#undef PHASESIM_DEFINE_ERROR

}  // namespace phasesim
