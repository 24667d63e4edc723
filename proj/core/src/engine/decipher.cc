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

#include "decipher/engine/decipher.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "decipher/errors.h"
#include "decipher/fst/compose.h"
#include "decipher/fst/shortest_path.h"
#include "decipher/lm/ngram_lm.h"
#include "decipher/util/text.h"

namespace decipher::engine {

DecipherResult Decipher(const fst::Wfst &edit, const fst::Wfst &g,
                        std::span<const Label> phones,
                        std::optional<double> beam, bool emit_lattice) {
  const fst::Wfst x = fst::StringAcceptor(phones, edit.InputSymbols());
  fst::Wfst lattice = fst::Compose3(x, edit, g, beam);
  DecipherResult result;
  if (auto path = fst::ShortestPath(lattice)) {
    result.graphemes = std::move(path->olabels);
    result.weight = path->weight;
  }
  if (emit_lattice) result.lattice = std::move(lattice);
  return result;
}

DecipherResult Decipher(const LexicalModel &lex, const AlignmentModel &ali,
                        const fst::Wfst &g, std::span<const Label> phones,
                        std::optional<double> beam, bool emit_lattice) {
  return Decipher(BuildEditFst(lex, ali), g, phones, beam, emit_lattice);
}

std::vector<DecipherResult> DecipherCorpus(
    const fst::Wfst &edit, const fst::Wfst &g,
    const std::vector<std::vector<Label>> &corpus, std::optional<double> beam,
    int jobs, bool emit_lattices) {
  std::vector<DecipherResult> results(corpus.size());
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    try {
      for (size_t i = next++; i < corpus.size(); i = next++) {
        results[i] = Decipher(edit, g, corpus[i], beam, emit_lattices);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
      next = corpus.size();
    }
  };
  const int n = std::clamp<int>(jobs, 1, std::max<int>(1, corpus.size()));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n; ++t) threads.emplace_back(worker);
    for (auto &t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

std::vector<Label> PhoneTokens(std::string_view line,
                               const fst::SymbolTable &phones) {
  std::vector<Label> out;
  for (const auto &tok : util::SplitWhitespace(line)) {
    const Label l = phones.Find(tok);
    if (l == fst::kNoLabel || l == fst::kEpsilon) {
      throw ConfigError("unknown phone '" + tok + "'");
    }
    out.push_back(l);
  }
  return out;
}

std::string GraphemesToText(std::span<const Label> graphemes,
                            const fst::SymbolTable &syms) {
  std::string out;
  for (Label l : graphemes) {
    const std::string &s = syms.Symbol(l);
    out += s == lm::kWordBoundary ? std::string(" ") : s;
  }
  return out;
}

}  // namespace decipher::engine
