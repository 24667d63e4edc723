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

#ifndef DECIPHER_UTIL_TEXT_H_
#define DECIPHER_UTIL_TEXT_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace decipher::util {

// Lowercases ASCII letters, collapses whitespace runs to one space and
// strips leading/trailing whitespace.
std::string NormalizeText(std::string_view line);

// Splits UTF-8 text into code points (one string each). Malformed bytes
// are passed through as single-byte tokens.
std::vector<std::string> SplitUtf8(std::string_view text);

// Splits on runs of spaces/tabs.
std::vector<std::string> SplitWhitespace(std::string_view text);

std::string Join(const std::vector<std::string> &parts, std::string_view sep);

// Reads all lines of a file (without trailing newlines); ConfigError when
// the file cannot be opened.
std::vector<std::string> ReadLines(const std::string &path);
void WriteLines(const std::string &path, const std::vector<std::string> &lines);

// 64-bit FNV-1a, stable across platforms.
uint64_t Fnv1a64(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);

}  // namespace decipher::util

#endif  // DECIPHER_UTIL_TEXT_H_
