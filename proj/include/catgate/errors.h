// Copyright 2026 The catgate Authors
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

#ifndef CATGATE_ERRORS_H
#define CATGATE_ERRORS_H

#include <stdexcept>
#include <string>

namespace catgate {

/// Base class of every error raised by the library.
struct CatgateError : std::runtime_error {
    using std::runtime_error::runtime_error;
    virtual const char *kind() const noexcept = 0;
};

#define CATGATE_DECLARE_ERROR(Name)                                 \
    struct Name : CatgateError {                                    \
        using CatgateError::CatgateError;                           \
        const char *kind() const noexcept override { return #Name; } \
    }

/// Truncated Fock space cannot hold the state to the configured tolerance.
CATGATE_DECLARE_ERROR(CutoffTooSmall);
/// Tensor dimension exceeds the configured limit.
CATGATE_DECLARE_ERROR(SizeOverflow);
/// A norm or trace vanished where a normalized quantity was required.
CATGATE_DECLARE_ERROR(ZeroNorm);
/// Phase shift of zero (mod 2pi) was requested from a gate solver.
CATGATE_DECLARE_ERROR(DegeneratePhase);
/// The Hadamard acceptance condition has no solution for the inputs.
CATGATE_DECLARE_ERROR(InfeasibleCondition);
/// Malformed or incomplete experiment configuration.
CATGATE_DECLARE_ERROR(ConfigError);

#undef CATGATE_DECLARE_ERROR

}  // namespace catgate

#endif
