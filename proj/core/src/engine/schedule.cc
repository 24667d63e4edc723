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

#include "decipher/engine/schedule.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "decipher/errors.h"
#include "json.hpp"

namespace decipher::engine {

using nlohmann::json;

std::string LmRef::ToString() const {
  return (kind == lm::TokenKind::kGrapheme ? "char:" : "word:") +
         std::to_string(order);
}

LmRef LmRef::Parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ConfigError("language model reference must look like char:N or "
                      "word:N, got '" + std::string(text) + "'");
  }
  LmRef ref;
  ref.kind = lm::ParseTokenKind(text.substr(0, colon));
  const auto num = text.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(),
                                   ref.order);
  if (ec != std::errc() || ptr != num.data() + num.size() || ref.order < 1 ||
      ref.order > 7) {
    throw ConfigError("bad language model order in '" + std::string(text) +
                      "'");
  }
  return ref;
}

void TrainingSchedule::Validate() const {
  if (stages.empty()) throw ConfigError("schedule has no stages");
  auto alpha_ok = [](const std::optional<double> &a) {
    return !a || (*a > 0.0 && *a <= 1.0);
  };
  for (size_t i = 0; i < stages.size(); ++i) {
    const Stage &s = stages[i];
    const std::string where = "schedule stage " + std::to_string(i) + ": ";
    if (s.iterations < 1) throw ConfigError(where + "iterations must be >= 1");
    if (!alpha_ok(s.smooth_alpha) || !alpha_ok(s.smooth_after_alpha)) {
      throw ConfigError(where + "smoothing alpha must be in (0, 1]");
    }
    if (s.prune_k && *s.prune_k < 1) {
      throw ConfigError(where + "prune_k must be >= 1");
    }
    if (s.beam && !(*s.beam > 0.0)) {
      throw ConfigError(where + "beam must be positive");
    }
  }
}

TrainingSchedule TrainingSchedule::CharOnly(int from, int to, int iterations,
                                            std::optional<int> prune_k,
                                            std::optional<double> beam) {
  TrainingSchedule sched;
  for (int n = from; n <= to; ++n) {
    Stage s;
    s.lm = {lm::TokenKind::kGrapheme, n};
    s.iterations = iterations;
    s.beam = beam;
    if (n == from + 1) s.prune_k = prune_k;
    sched.stages.push_back(s);
  }
  return sched;
}

TrainingSchedule TrainingSchedule::Default() {
  TrainingSchedule sched = CharOnly(2, 5, 10, 10);
  Stage word;
  word.lm = {lm::TokenKind::kWord, 3};
  word.iterations = 10;
  word.smooth_alpha = 0.9;
  word.beam = 10.0;
  word.smooth_after_alpha = 0.9;
  sched.stages.push_back(word);
  return sched;
}

TrainingSchedule TrainingSchedule::FromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  if (doc.is_object() && doc.contains("stages")) doc = doc["stages"];
  if (!doc.is_array()) throw ConfigError("schedule: expected a list of stages");
  TrainingSchedule sched;
  try {
    for (const auto &obj : doc) {
      Stage s;
      s.lm = LmRef::Parse(obj.at("lm").get<std::string>());
      s.iterations = obj.value("iterations", 10);
      if (obj.contains("smooth_alpha")) s.smooth_alpha = obj["smooth_alpha"].get<double>();
      if (obj.contains("prune_k")) s.prune_k = obj["prune_k"].get<int>();
      if (obj.contains("beam") && !obj["beam"].is_null()) {
        s.beam = obj["beam"].get<double>();
      }
      if (obj.contains("smooth_after_alpha")) {
        s.smooth_after_alpha = obj["smooth_after_alpha"].get<double>();
      }
      for (const auto &[key, value] : obj.items()) {
        if (key != "lm" && key != "iterations" && key != "smooth_alpha" &&
            key != "prune_k" && key != "beam" && key != "smooth_after_alpha") {
          throw ConfigError("schedule: unknown stage field '" + key + "'");
        }
      }
      sched.stages.push_back(s);
    }
  } catch (const json::exception &e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  sched.Validate();
  return sched;
}

TrainingSchedule TrainingSchedule::FromJsonFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return FromJson(ss.str());
}

std::string TrainingSchedule::ToJson() const {
  json doc = json::array();
  for (const Stage &s : stages) {
    json obj;
    obj["lm"] = s.lm.ToString();
    obj["iterations"] = s.iterations;
    if (s.smooth_alpha) obj["smooth_alpha"] = *s.smooth_alpha;
    if (s.prune_k) obj["prune_k"] = *s.prune_k;
    if (s.beam) obj["beam"] = *s.beam;
    if (s.smooth_after_alpha) obj["smooth_after_alpha"] = *s.smooth_after_alpha;
    doc.push_back(obj);
  }
  return doc.dump(2);
}

std::vector<LmRef> TrainingSchedule::RequiredLms() const {
  std::vector<LmRef> out;
  for (const Stage &s : stages) {
    bool seen = false;
    for (const LmRef &r : out) seen = seen || r == s.lm;
    if (!seen) out.push_back(s.lm);
  }
  return out;
}

}  // namespace decipher::engine
