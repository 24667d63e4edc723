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

#include "cli/config.h"

#include <cstdio>
#include <fstream>

#include "decipher/errors.h"
#include "decipher/util/text.h"

namespace decipher::cli {
namespace {

const json &Member(const json &obj, std::string_view key) {
  static const json kNull;
  auto it = obj.find(std::string(key));
  return it == obj.end() ? kNull : *it;
}

[[noreturn]] void TypeError(std::string_view key, std::string_view type) {
  throw ConfigError("config: '" + std::string(key) + "' must be " +
                    std::string(type));
}

}  // namespace

ExperimentConfig ExperimentConfig::Load(const std::string &path,
                                        std::optional<uint64_t> seed_override) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config: " + path);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::exception &e) {
    throw FormatError(path + ": " + e.what());
  }
  return FromJson(std::move(doc), fs::absolute(path).parent_path(),
                  seed_override);
}

ExperimentConfig ExperimentConfig::FromJson(
    json doc, const fs::path &base_dir, std::optional<uint64_t> seed_override) {
  CheckKeys(doc, "config",
            {"output_dir", "seed", "synth", "lm", "train", "decode", "eval"});
  if (seed_override) doc["seed"] = *seed_override;
  if (doc.contains("seed") && !doc["seed"].is_number_unsigned()) {
    TypeError("seed", "a nonnegative integer");
  }
  if (!doc.contains("output_dir") || !doc["output_dir"].is_string()) {
    throw ConfigError("config: 'output_dir' is required");
  }
  ExperimentConfig c;
  c.base_dir_ = base_dir;
  c.output_dir_ = base_dir / doc["output_dir"].get<std::string>();
  c.doc_ = std::move(doc);
  return c;
}

std::optional<uint64_t> ExperimentConfig::Seed() const {
  if (!doc_.contains("seed")) return std::nullopt;
  return doc_["seed"].get<uint64_t>();
}

uint64_t ExperimentConfig::RequireSeed() const {
  auto s = Seed();
  if (!s) throw ConfigError("a seed is required (config 'seed' or --seed)");
  return *s;
}

const json &ExperimentConfig::Section(std::string_view name) const {
  static const json kEmpty = json::object();
  const json &s = Member(doc_, name);
  if (s.is_null()) return kEmpty;
  if (!s.is_object()) TypeError(name, "an object");
  return s;
}

std::optional<fs::path> ExperimentConfig::OptionalPath(
    std::string_view section, std::string_view key) const {
  const json &v = Member(Section(section), key);
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) TypeError(key, "a path string");
  return base_dir_ / v.get<std::string>();
}

fs::path ExperimentConfig::PathOr(std::string_view section,
                                  std::string_view key,
                                  const fs::path &fallback) const {
  auto p = OptionalPath(section, key);
  return p ? *p : output_dir_ / fallback;
}

std::string ExperimentConfig::Hash() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(util::Fnv1a64(doc_.dump())));
  return buf;
}

void CheckKeys(const json &obj, std::string_view where,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(std::string(where) + ": expected a JSON object");
  }
  for (const auto &[key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) {
      throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
    }
  }
}

double GetDouble(const json &obj, std::string_view key, double fallback) {
  const json &v = Member(obj, key);
  if (v.is_null()) return fallback;
  if (!v.is_number()) TypeError(key, "a number");
  return v.get<double>();
}

int64_t GetInt(const json &obj, std::string_view key, int64_t fallback) {
  const json &v = Member(obj, key);
  if (v.is_null()) return fallback;
  if (!v.is_number_integer()) TypeError(key, "an integer");
  return v.get<int64_t>();
}

bool GetBool(const json &obj, std::string_view key, bool fallback) {
  const json &v = Member(obj, key);
  if (v.is_null()) return fallback;
  if (!v.is_boolean()) TypeError(key, "a boolean");
  return v.get<bool>();
}

std::string GetString(const json &obj, std::string_view key,
                      const std::string &fallback) {
  const json &v = Member(obj, key);
  if (v.is_null()) return fallback;
  if (!v.is_string()) TypeError(key, "a string");
  return v.get<std::string>();
}

}  // namespace decipher::cli
