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

#include "decipher/engine/trainer.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include "decipher/errors.h"
#include "decipher/fst/compose.h"
#include "decipher/fst/forward_backward.h"

namespace decipher::engine {
namespace {

struct UtteranceCounts {
  bool empty = true;
  double loglik = 0.0;
  std::vector<std::pair<ParamId, double>> counts;  // ascending ParamId
};

UtteranceCounts CountUtterance(const fst::Wfst &edit, const fst::Wfst &g,
                               const std::vector<Label> &phones,
                               std::optional<double> beam,
                               std::vector<double> &scratch,
                               std::vector<ParamId> &touched) {
  UtteranceCounts out;
  const fst::Wfst x = fst::StringAcceptor(phones, edit.InputSymbols());
  const fst::Wfst lattice = fst::Compose3(x, edit, g, beam);
  const auto fb = fst::ForwardBackward(lattice);
  if (!fb) return out;
  out.empty = false;
  out.loglik = -fb->total;
  touched.clear();
  for (fst::StateId s = 0; s < static_cast<fst::StateId>(lattice.NumStates());
       ++s) {
    const auto arcs = lattice.Arcs(s);
    for (size_t i = 0; i < arcs.size(); ++i) {
      const ParamId p = arcs[i].tag;
      if (p == fst::kNoParam) continue;
      const double post = fb->Posterior(s, i);
      if (post <= 0.0) continue;
      if (scratch[p] == 0.0) touched.push_back(p);
      scratch[p] += post;
    }
  }
  std::sort(touched.begin(), touched.end());
  out.counts.reserve(touched.size());
  for (ParamId p : touched) {
    out.counts.emplace_back(p, scratch[p]);
    scratch[p] = 0.0;
  }
  return out;
}

}  // namespace

EStepResult EStep(const LexicalModel &lex, const AlignmentModel &ali,
                  const PhoneCorpus &corpus, const fst::Wfst &g,
                  std::optional<double> beam, int jobs) {
  const fst::Wfst edit = BuildEditFst(lex, ali);
  std::vector<UtteranceCounts> per_utt(corpus.size());
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;

  auto worker = [&] {
    std::vector<double> scratch(lex.NumParams(), 0.0);
    std::vector<ParamId> touched;
    try {
      for (size_t i = next++; i < corpus.size(); i = next++) {
        per_utt[i] = CountUtterance(edit, g, corpus[i], beam, scratch, touched);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = corpus.size();
    }
  };
  const int n_threads = std::clamp<int>(jobs, 1, std::max<int>(1, corpus.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto &t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);

  EStepResult result;
  result.counts.assign(lex.NumParams(), 0.0);
  result.utterances = corpus.size();
  for (size_t i = 0; i < per_utt.size(); ++i) {
    if (per_utt[i].empty) {
      result.skipped.push_back(i);
      continue;
    }
    result.loglik += per_utt[i].loglik;
    for (const auto &[p, c] : per_utt[i].counts) result.counts[p] += c;
  }
  return result;
}

EmStepResult EmStep(const LexicalModel &lex, const AlignmentModel &ali,
                    const PhoneCorpus &corpus, const fst::Wfst &g,
                    std::optional<double> beam, int jobs) {
  EStepResult e = EStep(lex, ali, corpus, g, beam, jobs);
  EmStepResult out{lex.Reestimate(e.counts), e.loglik, e.utterances,
                   std::move(e.skipped)};
  out.model.CheckNormalized();
  return out;
}

TrainResult Train(const TrainingSchedule &schedule, const PhoneCorpus &corpus,
                  const std::map<std::string, fst::Wfst> &lms,
                  LexicalModel init, const AlignmentModel &ali,
                  const TrainOptions &options) {
  schedule.Validate();
  ali.Validate();
  if (corpus.empty()) throw ConfigError("training corpus is empty");
  for (const LmRef &ref : schedule.RequiredLms()) {
    if (!lms.count(ref.ToString())) {
      throw ConfigError("schedule needs language model " + ref.ToString() +
                        " which was not provided");
    }
  }
  TrainResult result{std::move(init), {}};
  result.model.CheckNormalized();
  for (size_t si = 0; si < schedule.stages.size(); ++si) {
    const Stage &stage = schedule.stages[si];
    const std::string name = stage.lm.ToString();
    const fst::Wfst &g = lms.at(name);
    if (stage.smooth_alpha) {
      result.model = result.model.Smooth(*stage.smooth_alpha);
    }
    if (stage.prune_k) result.model = result.model.Prune(*stage.prune_k);
    result.model.CheckNormalized();
    for (int it = 1; it <= stage.iterations; ++it) {
      EmStepResult step = EmStep(result.model, ali, corpus, g, stage.beam,
                                 options.jobs);
      IterationRecord rec;
      rec.stage = name;
      rec.stage_index = static_cast<int>(si);
      rec.iteration = it;
      rec.loglik = step.loglik;
      rec.utterances = step.utterances;
      rec.skipped = step.skipped.size();
      const double skip_fraction =
          static_cast<double>(rec.skipped) / static_cast<double>(corpus.size());
      if (skip_fraction > options.max_skip_fraction) {
        std::string first;
        for (size_t k = 0; k < step.skipped.size() && k < 10; ++k) {
          first += (k ? "," : "") + std::to_string(step.skipped[k]);
        }
        throw TrainingError("stage " + std::to_string(si) + " (" + name +
                            ") iteration " + std::to_string(it) + ": " +
                            std::to_string(rec.skipped) + " of " +
                            std::to_string(corpus.size()) +
                            " utterances have empty lattices (first: " +
                            first + ")");
      }
      result.model = std::move(step.model);
      rec.active_params = result.model.ActiveParams();
      result.log.push_back(rec);
      if (options.on_iteration) options.on_iteration(rec);
    }
    if (stage.smooth_after_alpha) {
      result.model = result.model.Smooth(*stage.smooth_after_alpha);
      result.model.CheckNormalized();
    }
  }
  return result;
}

}  // namespace decipher::engine
