// Copyright 2026 The Nucleo Authors.
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

#ifndef NUCLEO_CLI_HPP
#define NUCLEO_CLI_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace nucleo::cli {

/// Process exit codes.
enum ExitCode : int {
  kPass = 0,
  kFail = 1,
  kParseError = 2,
  kLimitExceeded = 3,
};

/// Ordered record of one command run. Rendering is deterministic: identical
/// inputs and flags give byte-identical output.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;   // file name, digest
  std::vector<std::pair<std::string, std::string>> results;  // key, value
  int exit_code = kPass;

  void add(std::string key, std::string value) { results.emplace_back(std::move(key), std::move(value)); }

  std::string render_text() const;
  std::string render_json() const;
};

/// Runs one subcommand; `args` excludes the program name.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nucleo::cli

#endif  // NUCLEO_CLI_HPP
