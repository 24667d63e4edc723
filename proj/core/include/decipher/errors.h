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

#ifndef DECIPHER_ERRORS_H_
#define DECIPHER_ERRORS_H_

#include <stdexcept>
#include <string>

namespace decipher {

// Invalid arguments, mismatched symbol tables, malformed configs.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string &what) : std::invalid_argument(what) {}
};

// Unparseable input files (FST text, symbol tables, TSV models, JSON).
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string &what) : std::runtime_error(what) {}
};

// Structural precondition violated by an algorithm input, e.g. a cycle
// handed to forward-backward.
class AlgorithmError : public std::runtime_error {
 public:
  explicit AlgorithmError(const std::string &what)
      : std::runtime_error(what) {}
};

// A training stage could not proceed (too many unusable utterances).
class TrainingError : public std::runtime_error {
 public:
  explicit TrainingError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace decipher

#endif  // DECIPHER_ERRORS_H_
