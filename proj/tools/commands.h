// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_TOOLS_COMMANDS_H
#define QWALK_TOOLS_COMMANDS_H

#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qwalk::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 2,
    kExitVerdictMismatch = 3,
    kExitSpectralDegeneracy = 4,
    kExitDRAgreement = 5,
};

inline constexpr int kFormatVersion = 1;

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Parses "re" or "re,im".
std::complex<double> parse_complex(const std::string &text);

/// Runs one subcommand. Diagnostics go to `err`, a short summary to `out`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qwalk::cli

#endif  // QWALK_TOOLS_COMMANDS_H
