// Copyright 2026 The loccflat Authors
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

namespace loccflat {

/// Shapes or local dimensions of the operands do not fit together.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value outside of the documented domain (NaN entries, epsilon out of range, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotNormalized : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The two input states are not orthogonal within the orthogonality gate.
/// Carries the measured overlap modulus so callers can report it.
struct NonOrthogonalInput : std::invalid_argument {
    NonOrthogonalInput(const std::string &what, double overlap_modulus)
        : std::invalid_argument(what), overlap(overlap_modulus) {}
    double overlap;
};

/// Kraus operators do not sum to the identity.
struct TracePreservationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace loccflat
