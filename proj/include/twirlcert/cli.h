// Copyright 2026 The twirlcert Authors
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

#ifndef TWIRLCERT_CLI_H
#define TWIRLCERT_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace twirlcert {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitParse = 3,
    kExitCapacity = 4,
};

/// The twirlcert command line (subcommands plan, simulate, estimate, oracle, rb).
/// argv[0] is the program name. Never throws; returns an ExitCode.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Convenience overload; `args` excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace twirlcert

#endif
