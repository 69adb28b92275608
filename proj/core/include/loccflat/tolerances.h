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

namespace loccflat {

/// Zero test, relative to the Frobenius norm of the operand.
inline constexpr double kZeroTol = 1e-10;
/// Unit-norm gate for state vectors.
inline constexpr double kNormTol = 1e-8;
/// Gate on |<phi|psi>| for inputs that must be orthogonal.
inline constexpr double kOrthTol = 1e-8;

struct Tolerances {
    double zero = kZeroTol;
    double norm = kNormTol;
    double orth = kOrthTol;
};

}  // namespace loccflat
