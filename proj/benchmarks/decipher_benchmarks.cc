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

#include <benchmark/benchmark.h>

#include "decipher/engine/decipher.h"
#include "decipher/engine/edit_fst.h"
#include "decipher/engine/lexical_model.h"
#include "decipher/engine/trainer.h"
#include "decipher/fst/compose.h"
#include "decipher/fst/forward_backward.h"
#include "decipher/fst/ops.h"
#include "decipher/lm/ngram_lm.h"
#include "decipher/synth/cipher.h"
#include "decipher/synth/default_task.h"

namespace decipher {
namespace {

using fst::Label;

// The default synthetic task: character LM, bijective table, 200 shortest
// utterances.
struct Task {
  explicit Task(int order) {
    const auto table = synth::BijectiveTable(1);
    const auto lm_text = synth::GenerateText(3000, 11);
    auto alphabet = std::make_shared<const fst::SymbolTable>(
        lm::GraphemeAlphabet(lm_text));
    g = lm::LmToFst(lm::TrainCharLm(lm_text, order, alphabet));
    auto cipher = synth::GenCipher(synth::GenerateText(1500, 12), table, {});
    cipher = synth::Subset(cipher, synth::SelectShortest(cipher.phones, 200));
    phones = std::make_shared<const fst::SymbolTable>(table.PhoneSymbols());
    for (const auto &u : cipher.phones) {
      std::vector<Label> x;
      for (const auto &p : u) x.push_back(phones->Find(p));
      corpus.push_back(std::move(x));
    }
    lex.emplace(engine::LexicalModel::Init(
        phones, alphabet, {phones->Find(synth::kDefaultSilence)}));
    edit = engine::BuildEditFst(*lex, ali);
  }

  fst::SymbolTablePtr phones;
  fst::Wfst g;
  engine::PhoneCorpus corpus;
  std::optional<engine::LexicalModel> lex;
  engine::AlignmentModel ali;
  fst::Wfst edit;
};

const Task &TaskOfOrder(int order) {
  static std::map<int, Task> tasks;
  auto it = tasks.find(order);
  if (it == tasks.end()) it = tasks.emplace(order, Task(order)).first;
  return it->second;
}

const std::vector<Label> &LongestUtterance(const Task &t) {
  return t.corpus.back();
}

void BM_Compose(benchmark::State &state) {
  const Task &t = TaskOfOrder(static_cast<int>(state.range(0)));
  const auto x = fst::StringAcceptor(LongestUtterance(t), t.phones);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fst::Compose(fst::Compose(x, t.edit), t.g));
  }
}
BENCHMARK(BM_Compose)->Arg(2)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Compose3Beam(benchmark::State &state) {
  const Task &t = TaskOfOrder(5);
  const auto x = fst::StringAcceptor(LongestUtterance(t), t.phones);
  const double beam = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fst::Compose3(x, t.edit, t.g, beam));
  }
}
BENCHMARK(BM_Compose3Beam)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ForwardBackward(benchmark::State &state) {
  const Task &t = TaskOfOrder(static_cast<int>(state.range(0)));
  const auto x = fst::StringAcceptor(LongestUtterance(t), t.phones);
  const auto lattice = fst::Compose3(x, t.edit, t.g);
  state.counters["arcs"] = static_cast<double>(lattice.TotalArcs());
  for (auto _ : state) {
    benchmark::DoNotOptimize(fst::ForwardBackward(lattice));
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EmStep(benchmark::State &state) {
  const Task &t = TaskOfOrder(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::EmStep(*t.lex, t.ali, t.corpus, t.g));
  }
  state.SetItemsProcessed(state.iterations() * t.corpus.size());
}
BENCHMARK(BM_EmStep)->Unit(benchmark::kMillisecond)->Iterations(2);

void BM_Decipher(benchmark::State &state) {
  const Task &t = TaskOfOrder(3);
  const auto &x = LongestUtterance(t);
  for (auto _ : state) {
    benchmark::DoNotOptimize(engine::Decipher(t.edit, t.g, x, 10.0));
  }
}
BENCHMARK(BM_Decipher)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace decipher

BENCHMARK_MAIN();
