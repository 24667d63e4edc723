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

#ifndef DECIPHER_TOOLS_CLI_CONFIG_H_
#define DECIPHER_TOOLS_CLI_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace decipher::cli {

namespace fs = std::filesystem;
using nlohmann::json;

// An experiment: one JSON document whose relative paths are resolved
// against the directory holding it. Artifacts go under
// output_dir/{synth,lm,train,decode,eval}.
class ExperimentConfig {
 public:
  static ExperimentConfig Load(const std::string &path,
                               std::optional<uint64_t> seed_override = {});
  static ExperimentConfig FromJson(json doc, const fs::path &base_dir,
                                   std::optional<uint64_t> seed_override = {});

  const json &Json() const { return doc_; }
  std::optional<uint64_t> Seed() const;
  // Throws ConfigError when no seed was given.
  uint64_t RequireSeed() const;
  const fs::path &OutputDir() const { return output_dir_; }
  fs::path StageDir(std::string_view stage) const { return output_dir_ / stage; }

  // The named section, or an empty object.
  const json &Section(std::string_view name) const;
  // A path from `section.key`, relative to the config directory, or
  // `fallback` (relative to the output directory) when the key is absent.
  fs::path PathOr(std::string_view section, std::string_view key,
                  const fs::path &fallback) const;
  std::optional<fs::path> OptionalPath(std::string_view section,
                                       std::string_view key) const;

  // FNV-1a of the canonical serialization, as 16 hex digits.
  std::string Hash() const;

 private:
  json doc_;
  fs::path base_dir_;
  fs::path output_dir_;
};

// Throws ConfigError when `obj` is not an object or has a key outside
// `allowed`.
void CheckKeys(const json &obj, std::string_view where,
               std::initializer_list<std::string_view> allowed);

// Typed member access with ConfigError on a type mismatch.
double GetDouble(const json &obj, std::string_view key, double fallback);
int64_t GetInt(const json &obj, std::string_view key, int64_t fallback);
bool GetBool(const json &obj, std::string_view key, bool fallback);
std::string GetString(const json &obj, std::string_view key,
                      const std::string &fallback);

}  // namespace decipher::cli

#endif  // DECIPHER_TOOLS_CLI_CONFIG_H_
