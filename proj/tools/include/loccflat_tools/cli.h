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

#include <ostream>
#include <string>
#include <vector>

namespace loccflat::cli {

/// Process exit codes shared by all subcommands.
enum ExitCode : int {
    kOk = 0,
    /// Unreadable or malformed input, bad arguments, dimension mismatch.
    kInputError = 1,
    /// Inputs violate a precondition of the construction: non-orthogonal
    /// states, or a channel whose input dimension does not exceed 1.
    kPreconditionError = 2,
    /// The construction ran but its independent check failed.
    kVerificationFailed = 3,
};

/// Runs `loccflat <subcommand> ...`; args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace loccflat::cli
