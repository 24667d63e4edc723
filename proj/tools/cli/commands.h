// Copyright 2026 The decipher-fst Authors.
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

#ifndef DECIPHER_TOOLS_CLI_COMMANDS_H_
#define DECIPHER_TOOLS_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "cli/config.h"
#include "cli/logging.h"

namespace decipher::cli {

struct CommandContext {
  const ExperimentConfig &config;
  int jobs = 1;
  bool validate_only = false;
  const JsonLogger &log;
  std::ostream &out;
};

// Each command checks every input first; with validate_only it stops
// there without touching the output directory. Returns the artifact paths
// written, relative to the output directory.
std::vector<std::string> RunSynth(const CommandContext &ctx);
std::vector<std::string> RunLm(const CommandContext &ctx);
std::vector<std::string> RunTrain(const CommandContext &ctx);
std::vector<std::string> RunDecode(const CommandContext &ctx);
std::vector<std::string> RunEval(const CommandContext &ctx);

// Records the command's outputs in output_dir/manifest.json together with
// the tool version and config hash. Entries from a different config are
// discarded.
void UpdateManifest(const ExperimentConfig &config, const std::string &command,
                    const std::vector<std::string> &outputs);

// Entry point shared by the binary and the tests. Returns the exit status.
int Main(int argc, const char *const *argv, std::ostream &out,
         std::ostream &err);

}  // namespace decipher::cli

#endif  // DECIPHER_TOOLS_CLI_COMMANDS_H_
