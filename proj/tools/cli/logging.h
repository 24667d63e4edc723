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

#ifndef DECIPHER_TOOLS_CLI_LOGGING_H_
#define DECIPHER_TOOLS_CLI_LOGGING_H_

#include <ostream>
#include <string>

#include "json.hpp"

namespace decipher::cli {

// One JSON object per line: {"level", "command", "msg", ...fields}.
class JsonLogger {
 public:
  JsonLogger(std::ostream &os, std::string command)
      : os_(os), command_(std::move(command)) {}

  void Info(const std::string &msg, const nlohmann::json &fields = {}) const {
    Write("info", msg, fields);
  }
  void Error(const std::string &msg, const nlohmann::json &fields = {}) const {
    Write("error", msg, fields);
  }

 private:
  void Write(const char *level, const std::string &msg,
             const nlohmann::json &fields) const {
    nlohmann::ordered_json line;
    line["level"] = level;
    line["command"] = command_;
    line["msg"] = msg;
    if (fields.is_object()) {
      for (const auto &[k, v] : fields.items()) line[k] = v;
    }
    os_ << line.dump() << '\n';
    os_.flush();
  }

  std::ostream &os_;
  std::string command_;
};

}  // namespace decipher::cli

#endif  // DECIPHER_TOOLS_CLI_LOGGING_H_
