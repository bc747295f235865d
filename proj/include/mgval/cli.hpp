// Copyright 2026 The mgval Authors.
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

#ifndef MGVAL_CLI_HPP_
#define MGVAL_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace mgval {

// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitIo = 2,
  kExitValidation = 3,
  kExitSolver = 4,
};

// Runs `mgval <subcommand> [flags]`; args exclude the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace mgval

#endif  // MGVAL_CLI_HPP_
