// Copyright 2026 The eprbsim Authors
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

#ifndef EPRB_CLI_CLI_H
#define EPRB_CLI_CLI_H

#include <iosfwd>
#include <string>
#include <vector>

namespace eprb::cli {

enum ExitCode : int {
    kOk = 0,
    /// An oracle run whose quadrature and closed form disagree.
    kDisagreement = 1,
    kConfigError = 2,
    kFormatError = 3,
    kUnsupported = 4,
};

/// Runs the eprbsim command line. args[0] is the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace eprb::cli

#endif
