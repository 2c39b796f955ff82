// Copyright 2026 The immrate Authors
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

#ifndef IMMRATE_TOOLS_CLI_H
#define IMMRATE_TOOLS_CLI_H

#include <ostream>

namespace immrate {

enum ExitCode : int {
    kExitSuccess = 0,
    kExitFailure = 1,
    kExitConfigError = 2,
    kExitSizeGuard = 3,
    kExitNumericalFailure = 4,
};

/// Entry point of the command-line tool, with the output streams injectable for tests.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace immrate

#endif
