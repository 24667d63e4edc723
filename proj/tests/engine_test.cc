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

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "decipher/engine/decipher.h"
#include "decipher/engine/edit_fst.h"
#include "decipher/engine/lexical_model.h"
#include "decipher/engine/schedule.h"
#include "decipher/engine/trainer.h"
#include "decipher/errors.h"
#include "decipher/fst/compose.h"
#include "decipher/fst/forward_backward.h"
#include "decipher/fst/ops.h"
#include "decipher/fst/shortest_path.h"
#include "decipher/lm/ngram_lm.h"
#include "oracles/decipher_oracle.h"
#include "oracles/edit_patterns.h"

namespace decipher::engine {
namespace {

using fst::Label;

SymbolTablePtr MakePhones(int n, bool with_silence = true) {
  fst::SymbolTable syms;
  for (int i = 1; i <= n; ++i) syms.AddSymbol("p" + std::to_string(i));
  if (with_silence) syms.AddSymbol("sil");
  return std::make_shared<const fst::SymbolTable>(std::move(syms));
}

SymbolTablePtr MakeGraphemes(int n) {
  fst::SymbolTable syms;
  syms.AddSymbol(lm::kWordBoundary);
  for (int i = 0; i < n; ++i) syms.AddSymbol(std::string(1, 'a' + i));
  return std::make_shared<const fst::SymbolTable>(std::move(syms));
}

std::vector<Label> Silence(const SymbolTablePtr &phones) {
  const Label s = phones->Find("sil");
  return s == fst::kNoLabel ? std::vector<Label>{} : std::vector<Label>{s};
}

// Gives every active entry a random probability via a re-estimation from
// random counts.
LexicalModel Randomize(const LexicalModel &lex, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> counts(lex.NumParams());
  for (auto &c : counts) c = u(rng);
  return lex.Reestimate(counts);
}

double RowSum(const LexicalModel &lex, Label y) {
  double s = 0.0;
  for (Label x = 0; x < static_cast<Label>(lex.NumCols()); ++x) {
    s += lex.Prob(y, x);
  }
  return s;
}

// --- lexical model ---------------------------------------------------------

TEST(LexicalModelTest, InitialTable) {
  auto phones = MakePhones(5);
  auto graphemes = MakeGraphemes(2);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones));
  const Label a = graphemes->Find("a"), wb = graphemes->Find("<wb>");
  const Label sil = phones->Find("sil");
  EXPECT_DOUBLE_EQ(lex.Prob(a, fst::kEpsilon), 0.01);
  for (Label x = 1; x <= 5; ++x) EXPECT_DOUBLE_EQ(lex.Prob(a, x), 0.198);
  EXPECT_EQ(lex.State(a, sil), EntryState::kForbidden);
  for (Label x = 1; x <= 5; ++x) {
    EXPECT_EQ(lex.State(wb, x), EntryState::kForbidden);
    EXPECT_DOUBLE_EQ(lex.Prob(fst::kEpsilon, x), 0.2);
  }
  EXPECT_DOUBLE_EQ(lex.Prob(wb, sil), 0.99);
  EXPECT_EQ(lex.State(fst::kEpsilon, fst::kEpsilon), EntryState::kForbidden);
  EXPECT_EQ(lex.State(fst::kEpsilon, sil), EntryState::kForbidden);
  // The silence column is nonzero only in the <wb> row.
  for (Label y = 0; y < static_cast<Label>(lex.NumRows()); ++y) {
    if (y != wb) EXPECT_EQ(lex.Prob(y, sil), 0.0);
  }
  EXPECT_NO_THROW(lex.CheckNormalized(1e-12));
}

TEST(LexicalModelTest, InitWithoutInsertions) {
  auto phones = MakePhones(4);
  auto graphemes = MakeGraphemes(3);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  EXPECT_FALSE(lex.AllowsInsertions());
  EXPECT_EQ(lex.State(graphemes->Find("b"), fst::kEpsilon),
            EntryState::kForbidden);
  EXPECT_DOUBLE_EQ(lex.Prob(graphemes->Find("<wb>"), phones->Find("sil")), 1.0);
  lex.CheckNormalized(1e-12);
}

TEST(LexicalModelTest, RejectsBadStructure) {
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(2);
  EXPECT_THROW(LexicalModel::Init(phones, graphemes, {17}), ConfigError);
  EXPECT_THROW(LexicalModel::Init(phones, graphemes, {0}), ConfigError);
  fst::SymbolTable no_wb;
  no_wb.AddSymbol("a");
  EXPECT_THROW(LexicalModel::Init(phones,
                                  std::make_shared<const fst::SymbolTable>(no_wb),
                                  Silence(phones)),
               ConfigError);
  EXPECT_THROW(LexicalModel::Init(phones, graphemes, Silence(phones), 1.0),
               ConfigError);
}

TEST(LexicalModelTest, SmoothArithmetic) {
  auto phones = MakePhones(10);
  auto graphemes = MakeGraphemes(1);
  auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  const Label a = graphemes->Find("a");
  lex.SetProb(a, 1, 0.5);
  for (Label x = 2; x <= 10; ++x) lex.SetProb(a, x, 0.5 / 9);
  const auto s = lex.Smooth(0.9);
  EXPECT_NEAR(s.Prob(a, 1), 0.46, 1e-15);
  EXPECT_NEAR(s.Prob(a, 2), 0.9 * 0.5 / 9 + 0.01, 1e-15);
  s.CheckNormalized(1e-9);
  EXPECT_THROW(lex.Smooth(0.0), ConfigError);
  EXPECT_THROW(lex.Smooth(1.5), ConfigError);
}

TEST(LexicalModelTest, SmoothFixedPoint) {
  auto phones = MakePhones(7);
  auto graphemes = MakeGraphemes(3);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  const auto s = lex.Smooth(0.9);
  for (Label y = 2; y < 5; ++y) {
    for (Label x = 1; x <= 7; ++x) {
      EXPECT_NEAR(s.Prob(y, x), lex.Prob(y, x), 1e-15);
    }
  }
}

TEST(LexicalModelTest, SmoothKeepsRowsNormalizedAndRevivesPruned) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    auto phones = MakePhones(3 + trial % 9);
    auto graphemes = MakeGraphemes(1 + trial % 5);
    auto lex = Randomize(
        LexicalModel::Init(phones, graphemes, Silence(phones), 0.02), rng);
    if (trial % 2) lex = lex.Prune(1 + trial % 3);
    const double alpha = 0.05 + 0.95 * (trial % 10) / 10.0;
    const auto s = lex.Smooth(alpha);
    ASSERT_NO_THROW(s.CheckNormalized(1e-9));
    const Label wb = graphemes->Find("<wb>");
    for (Label x = 0; x < static_cast<Label>(lex.NumCols()); ++x) {
      EXPECT_EQ(s.Prob(wb, x), lex.Prob(wb, x));
      EXPECT_EQ(s.Prob(fst::kEpsilon, x), lex.Prob(fst::kEpsilon, x));
    }
    for (Label y = 2; y < static_cast<Label>(lex.NumRows()); ++y) {
      for (Label x = 1; x < static_cast<Label>(lex.NumCols()) - 1; ++x) {
        EXPECT_EQ(s.State(y, x), EntryState::kActive);
        EXPECT_GT(s.Prob(y, x), 0.0);
      }
      EXPECT_NEAR(s.Prob(y, fst::kEpsilon), alpha * lex.Prob(y, fst::kEpsilon),
                  1e-15);
    }
  }
}

TEST(LexicalModelTest, PruneArithmetic) {
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(1);
  auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  const Label a = graphemes->Find("a");
  lex.SetProb(a, 1, 0.5);
  lex.SetProb(a, 2, 0.3);
  lex.SetProb(a, 3, 0.2);
  const auto p = lex.Prune(2);
  EXPECT_NEAR(p.Prob(a, 1), 0.625, 1e-15);
  EXPECT_NEAR(p.Prob(a, 2), 0.375, 1e-15);
  EXPECT_EQ(p.Prob(a, 3), 0.0);
  EXPECT_EQ(p.State(a, 3), EntryState::kPruned);
  EXPECT_TRUE(lex.Prune(3) == lex);
  EXPECT_TRUE(lex.Prune(50) == lex);
  EXPECT_THROW(lex.Prune(0), ConfigError);
}

TEST(LexicalModelTest, PruneToTopTen) {
  auto phones = MakePhones(12);
  auto graphemes = MakeGraphemes(2);
  std::mt19937_64 rng(5);
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones), 0.01), rng);
  const auto p = lex.Prune(10);
  p.CheckNormalized(1e-9);
  for (Label y = 2; y <= 3; ++y) {
    std::vector<std::pair<double, Label>> ranked;
    for (Label x = 1; x <= 12; ++x) ranked.emplace_back(-lex.Prob(y, x), x);
    std::sort(ranked.begin(), ranked.end());
    int kept = 0;
    for (size_t r = 0; r < ranked.size(); ++r) {
      const Label x = ranked[r].second;
      const bool active = p.State(y, x) == EntryState::kActive;
      EXPECT_EQ(active, r < 10) << "row " << y << " phone " << x;
      kept += active;
    }
    EXPECT_EQ(kept, 10);
    // Survivors and the insertion entry keep their ratios.
    const double scale = p.Prob(y, ranked[0].second) / lex.Prob(y, ranked[0].second);
    EXPECT_NEAR(p.Prob(y, fst::kEpsilon), scale * lex.Prob(y, fst::kEpsilon),
                1e-12);
  }
  // Deletion and boundary rows are exempt.
  for (Label x = 0; x < static_cast<Label>(lex.NumCols()); ++x) {
    EXPECT_EQ(p.Prob(fst::kEpsilon, x), lex.Prob(fst::kEpsilon, x));
    EXPECT_EQ(p.Prob(1, x), lex.Prob(1, x));
  }
}

TEST(LexicalModelTest, PruneBreaksTiesByPhoneId) {
  auto phones = MakePhones(4);
  auto graphemes = MakeGraphemes(1);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  const auto p = lex.Prune(2);
  const Label a = graphemes->Find("a");
  EXPECT_EQ(p.State(a, 1), EntryState::kActive);
  EXPECT_EQ(p.State(a, 2), EntryState::kActive);
  EXPECT_EQ(p.State(a, 3), EntryState::kPruned);
  EXPECT_EQ(p.State(a, 4), EntryState::kPruned);
}

TEST(LexicalModelTest, ReestimateKeepsRowsWithoutEvidence) {
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(2);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones));
  std::vector<double> counts(lex.NumParams(), 0.0);
  const Label a = graphemes->Find("a"), b = graphemes->Find("b");
  counts[lex.Param(a, 1)] = 3.0;
  counts[lex.Param(a, 2)] = 1.0;
  const auto r = lex.Reestimate(counts);
  EXPECT_DOUBLE_EQ(r.Prob(a, 1), 0.75);
  EXPECT_DOUBLE_EQ(r.Prob(a, 2), 0.25);
  EXPECT_DOUBLE_EQ(r.Prob(a, 3), 0.0);
  for (Label x = 0; x < 5; ++x) EXPECT_EQ(r.Prob(b, x), lex.Prob(b, x));
  r.CheckNormalized();
}

TEST(LexicalModelTest, TsvRoundTrip) {
  auto phones = MakePhones(6);
  auto graphemes = MakeGraphemes(4);
  std::mt19937_64 rng(8);
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones)), rng).Prune(3);
  std::stringstream ss;
  lex.WriteTsv(ss);
  const auto back = LexicalModel::ReadTsv(ss, phones, graphemes,
                                          Silence(phones), true);
  EXPECT_TRUE(back == lex);
  std::stringstream bad("a\tsil\t1\n");
  EXPECT_THROW(LexicalModel::ReadTsv(bad, phones, graphemes, Silence(phones),
                                     true),
               FormatError);
}

// --- edit transducer -------------------------------------------------------

using oracle::kDel;
using oracle::kIns;
using oracle::kSub;
using oracle::OperationAcceptor;
using oracle::OpOf;
using oracle::PatternAcceptor;
using Op = oracle::EditOp;

fst::Wfst SequenceAcceptor(const std::vector<Label> &ops) {
  return fst::StringAcceptor(ops, nullptr);
}

TEST(EditFstTest, ForbiddenOperationPatternsAreEmpty) {
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(3);
  const auto edit = BuildEditFst(
      LexicalModel::Init(phones, graphemes, Silence(phones)), {});
  ASSERT_EQ(edit.NumStates(), 3u);
  const auto ops = OperationAcceptor(edit);
  EXPECT_TRUE(fst::Trim(fst::Compose(ops, PatternAcceptor(kIns, kIns))).Empty());
  EXPECT_TRUE(fst::Trim(fst::Compose(ops, PatternAcceptor(kDel, kDel))).Empty());
  EXPECT_FALSE(fst::Trim(fst::Compose(ops, PatternAcceptor(kSub, kIns))).Empty());
  EXPECT_FALSE(fst::Trim(fst::Compose(ops, PatternAcceptor(kDel, kSub))).Empty());
  EXPECT_FALSE(
      fst::Trim(fst::Compose(ops, SequenceAcceptor({kSub, kIns, kSub}))).Empty());
  EXPECT_FALSE(
      fst::Trim(fst::Compose(ops, SequenceAcceptor({kIns, kSub, kDel}))).Empty());
  EXPECT_TRUE(
      fst::Trim(fst::Compose(ops, SequenceAcceptor({kSub, kIns, kIns}))).Empty());
}

TEST(EditFstTest, StructureAndTags) {
  auto phones = MakePhones(4);
  auto graphemes = MakeGraphemes(3);
  std::mt19937_64 rng(12);
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones)), rng).Prune(2);
  const AlignmentModel ali;
  const auto edit = BuildEditFst(lex, ali);
  edit.Validate();
  EXPECT_TRUE(edit.InputSorted());
  for (size_t s = 0; s < 3; ++s) {
    EXPECT_EQ(edit.Final(s), 0.0);
    for (const auto &arc : edit.Arcs(s)) {
      ASSERT_NE(arc.tag, fst::kNoParam);
      const auto [y, x] = lex.Entry(arc.tag);
      EXPECT_EQ(x, arc.ilabel);
      EXPECT_EQ(y, arc.olabel);
      EXPECT_EQ(lex.State(y, x), EntryState::kActive);
      const Op op = OpOf(arc);
      const double p_op = op == kSub ? ali.substitute
                          : op == kIns ? ali.insert
                                       : ali.remove;
      EXPECT_NEAR(arc.weight, -std::log(lex.Prob(y, x) * p_op), 1e-12);
      if (op == kSub) EXPECT_EQ(arc.nextstate, kBase);
      if (op == kIns) {
        EXPECT_EQ(s, static_cast<size_t>(kBase));
        EXPECT_EQ(arc.nextstate, kAfterInsertion);
      }
      if (op == kDel) {
        EXPECT_EQ(s, static_cast<size_t>(kBase));
        EXPECT_EQ(arc.nextstate, kAfterDeletion);
      }
    }
  }
}

TEST(EditFstTest, SingleEntryMapsExactly) {
  auto phones = MakePhones(1);
  auto graphemes = MakeGraphemes(1);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  const AlignmentModel sub_only{1.0, 0.0, 0.0};
  const auto edit = BuildEditFst(lex, sub_only);
  const auto x = fst::StringAcceptor(std::vector<Label>{1, 1}, phones);
  const auto out = fst::Trim(fst::Compose(x, edit));
  ASSERT_FALSE(out.Empty());
  const auto path = fst::ShortestPath(out);
  const Label a = graphemes->Find("a");
  EXPECT_EQ(path->olabels, (std::vector<Label>{a, a}));
  EXPECT_NEAR(path->weight, 0.0, 1e-15);
  // Exactly one path.
  EXPECT_EQ(out.TotalArcs(), 2u);
}

TEST(EditFstTest, AlignmentWeightIsProductOfTerms) {
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(2);
  std::mt19937_64 rng(4);
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones)), rng);
  const AlignmentModel ali{0.8, 0.15, 0.05};
  const auto edit = BuildEditFst(lex, ali);
  const Label a = graphemes->Find("a"), b = graphemes->Find("b");
  // sub p1->a, ins b, sub p3->a, del p2
  struct Step { Label in, out; };
  const std::vector<Step> steps = {{1, a}, {0, b}, {3, a}, {2, 0}};
  double w = 0.0;
  fst::StateId s = edit.Start();
  for (const auto &step : steps) {
    const fst::Arc *hit = nullptr;
    for (const auto &arc : edit.Arcs(s)) {
      if (arc.ilabel == step.in && arc.olabel == step.out) hit = &arc;
    }
    ASSERT_NE(hit, nullptr);
    w += hit->weight;
    s = hit->nextstate;
  }
  w += edit.Final(s);
  const double expected = -std::log(lex.Prob(a, 1) * 0.8) -
                          std::log(lex.Prob(b, 0) * 0.15) -
                          std::log(lex.Prob(a, 3) * 0.8) -
                          std::log(lex.Prob(0, 2) * 0.05);
  EXPECT_NEAR(w, expected, 1e-12);
}

// --- EM ----------------------------------------------------------------------

// A random character bigram model over the first `n` letters.
lm::NGramLm RandomCharLm(std::mt19937_64 &rng, const SymbolTablePtr &graphemes,
                         int order, int lines = 30) {
  std::vector<std::string> text;
  const int n = static_cast<int>(graphemes->Size()) - 2;
  for (int i = 0; i < lines; ++i) {
    std::string s;
    const int len = 1 + rng() % 8;
    for (int k = 0; k < len; ++k) {
      if (k > 0 && k + 1 < len && rng() % 4 == 0 && s.back() != ' ') {
        s += ' ';
      } else {
        s += static_cast<char>('a' + rng() % n);
      }
    }
    text.push_back(s);
  }
  return lm::TrainCharLm(text, order, graphemes);
}

PhoneCorpus RandomPhoneCorpus(std::mt19937_64 &rng, const SymbolTablePtr &phones,
                              size_t n, size_t max_len) {
  PhoneCorpus corpus;
  const Label sil = phones->Find("sil");
  const int k = static_cast<int>(phones->Size()) - 2;
  for (size_t i = 0; i < n; ++i) {
    std::vector<Label> u;
    const size_t len = 1 + rng() % max_len;
    for (size_t t = 0; t < len; ++t) {
      const bool silence = sil != fst::kNoLabel && t > 0 && t + 1 < len &&
                           rng() % 5 == 0 && u.back() != sil;
      u.push_back(silence ? sil : static_cast<Label>(1 + rng() % k));
    }
    corpus.push_back(u);
  }
  return corpus;
}

TEST(EmTest, BijectionRecoveredInOneStep) {
  auto phones = MakePhones(2, false);
  auto graphemes = MakeGraphemes(2);
  const auto lex = LexicalModel::Init(phones, graphemes, {}, 0.0);
  const Label a = graphemes->Find("a"), b = graphemes->Find("b");
  // G accepts "a b" only.
  const auto g = fst::StringAcceptor(std::vector<Label>{a, b}, graphemes);
  const PhoneCorpus corpus = {{1, 2}, {1, 2}};
  const auto step = EmStep(lex, {1.0, 0.0, 0.0}, corpus, g);
  EXPECT_DOUBLE_EQ(step.model.Prob(a, 1), 1.0);
  EXPECT_DOUBLE_EQ(step.model.Prob(a, 2), 0.0);
  EXPECT_DOUBLE_EQ(step.model.Prob(b, 2), 1.0);
  EXPECT_DOUBLE_EQ(step.model.Prob(b, 1), 0.0);
  EXPECT_NEAR(step.loglik, 2 * std::log(0.25), 1e-12);
}

TEST(EmTest, LikelihoodNeverDecreases) {
  std::mt19937_64 rng(2024);
  int trials = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto phones = MakePhones(2 + trial % 3);
    auto graphemes = MakeGraphemes(2 + trial % 2);
    const auto lm = RandomCharLm(rng, graphemes, 1 + trial % 3);
    const auto g = lm::LmToFst(lm);
    const auto corpus = RandomPhoneCorpus(rng, phones, 6, 5);
    auto lex = Randomize(
        LexicalModel::Init(phones, graphemes, Silence(phones), 0.05), rng);
    if (trial % 4 == 3) lex = lex.Prune(1);
    const AlignmentModel ali{0.8, 0.1, 0.1};
    double prev = -std::numeric_limits<double>::infinity();
    std::optional<std::vector<size_t>> skipped;
    for (int it = 0; it < 6; ++it) {
      auto step = EmStep(lex, ali, corpus, g);
      // The active entry set is fixed, so the same utterances stay
      // unalignable.
      if (!skipped) skipped = step.skipped;
      ASSERT_EQ(step.skipped, *skipped) << "trial " << trial;
      if (trial % 4 != 3) ASSERT_TRUE(step.skipped.empty());
      ASSERT_GE(step.loglik, prev - 1e-9 * std::fabs(prev))
          << "trial " << trial << " iteration " << it;
      prev = step.loglik;
      lex = std::move(step.model);
      ASSERT_NO_THROW(lex.CheckNormalized(1e-9));
    }
    ++trials;
  }
  EXPECT_GE(trials, 40);
}

TEST(EmTest, PrunedEntriesGetNoCounts) {
  std::mt19937_64 rng(77);
  auto phones = MakePhones(4);
  auto graphemes = MakeGraphemes(3);
  const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 2));
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones)), rng).Prune(2);
  const auto corpus = RandomPhoneCorpus(rng, phones, 8, 5);
  const auto e = EStep(lex, {}, corpus, g);
  for (ParamId p = 0; p < static_cast<ParamId>(lex.NumParams()); ++p) {
    const auto [y, x] = lex.Entry(p);
    if (lex.State(y, x) != EntryState::kActive) EXPECT_EQ(e.counts[p], 0.0);
  }
  const auto next = lex.Reestimate(e.counts);
  for (ParamId p = 0; p < static_cast<ParamId>(lex.NumParams()); ++p) {
    const auto [y, x] = lex.Entry(p);
    if (lex.State(y, x) == EntryState::kPruned) EXPECT_EQ(next.Prob(y, x), 0.0);
  }
}

// Counts equal the posterior mass summed by hand from a separately
// computed forward-backward over each lattice.
TEST(EmTest, CountsAreSummedArcPosteriors) {
  std::mt19937_64 rng(91);
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(2);
  const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 2));
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones)), rng);
  const AlignmentModel ali;
  const auto corpus = RandomPhoneCorpus(rng, phones, 5, 4);
  const auto e = EStep(lex, ali, corpus, g);
  std::vector<double> expected(lex.NumParams(), 0.0);
  double loglik = 0.0;
  const auto edit = BuildEditFst(lex, ali);
  for (const auto &u : corpus) {
    const auto lattice = fst::Trim(fst::Compose(
        fst::Compose(fst::StringAcceptor(u, phones), edit), g));
    const auto fb = fst::ForwardBackward(lattice);
    ASSERT_TRUE(fb.has_value());
    loglik -= fb->total;
    for (size_t s = 0; s < lattice.NumStates(); ++s) {
      for (size_t i = 0; i < lattice.NumArcs(s); ++i) {
        const auto tag = lattice.Arcs(s)[i].tag;
        if (tag != fst::kNoParam) expected[tag] += fb->Posterior(s, i);
      }
    }
  }
  EXPECT_NEAR(e.loglik, loglik, 1e-9 * std::fabs(loglik));
  for (size_t p = 0; p < expected.size(); ++p) {
    EXPECT_NEAR(e.counts[p], expected[p], 1e-9) << "param " << p;
  }
}

TEST(EmTest, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(5);
  auto phones = MakePhones(4);
  auto graphemes = MakeGraphemes(3);
  const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 3));
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones));
  const auto corpus = RandomPhoneCorpus(rng, phones, 30, 6);
  const auto one = EStep(lex, {}, corpus, g, std::nullopt, 1);
  const auto four = EStep(lex, {}, corpus, g, std::nullopt, 4);
  EXPECT_EQ(one.counts, four.counts);
  EXPECT_EQ(one.loglik, four.loglik);
}

TEST(EmTest, EmptyLatticesAreSkipped) {
  auto phones = MakePhones(2);
  auto graphemes = MakeGraphemes(2);
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones), 0.0);
  const Label a = graphemes->Find("a");
  // G accepts exactly one grapheme; without insertions or deletions only
  // single-phone utterances have a path.
  const auto g = fst::StringAcceptor(std::vector<Label>{a}, graphemes);
  const PhoneCorpus corpus = {{1}, {1, 2}, {2}};
  const auto step = EmStep(lex, {1.0, 0.0, 0.0}, corpus, g);
  EXPECT_EQ(step.skipped, (std::vector<size_t>{1}));
  EXPECT_DOUBLE_EQ(step.model.Prob(a, 1), 0.5);
  TrainingSchedule sched;
  sched.stages.push_back({{lm::TokenKind::kGrapheme, 1}, 1});
  const std::map<std::string, fst::Wfst> lms = {{"char:1", g}};
  EXPECT_NO_THROW(Train(sched, corpus, lms, lex, {1.0, 0.0, 0.0}));
  const PhoneCorpus mostly_bad = {{1, 2}, {2, 1}, {1}};
  EXPECT_THROW(Train(sched, mostly_bad, lms, lex, {1.0, 0.0, 0.0}),
               TrainingError);
}

// --- schedule and training loop ------------------------------------------

TEST(ScheduleTest, DefaultStructure) {
  const auto s = TrainingSchedule::Default();
  ASSERT_EQ(s.stages.size(), 5u);
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(s.stages[i].lm.ToString(), "char:" + std::to_string(i + 2));
    EXPECT_EQ(s.stages[i].iterations, 10);
    EXPECT_FALSE(s.stages[i].beam.has_value());
  }
  EXPECT_EQ(s.stages[1].prune_k, 10);
  EXPECT_EQ(s.stages[4].lm.ToString(), "word:3");
  EXPECT_EQ(s.stages[4].smooth_alpha, 0.9);
  EXPECT_EQ(s.stages[4].smooth_after_alpha, 0.9);
  EXPECT_EQ(s.stages[4].beam, 10.0);
  EXPECT_EQ(s.RequiredLms().size(), 5u);
}

TEST(ScheduleTest, JsonRoundTripAndValidation) {
  const auto s = TrainingSchedule::Default();
  EXPECT_TRUE(TrainingSchedule::FromJson(s.ToJson()) == s);
  EXPECT_THROW(TrainingSchedule::FromJson(R"([{"lm":"char:2","iterations":0}])"),
               ConfigError);
  EXPECT_THROW(TrainingSchedule::FromJson(R"([{"lm":"char:2","smooth_alpha":0}])"),
               ConfigError);
  EXPECT_THROW(TrainingSchedule::FromJson(R"([{"lm":"char:2","prune_k":0}])"),
               ConfigError);
  EXPECT_THROW(TrainingSchedule::FromJson(R"([{"lm":"bigram"}])"), ConfigError);
  EXPECT_THROW(TrainingSchedule::FromJson(R"([{"lm":"char:2","bogus":1}])"),
               ConfigError);
  EXPECT_THROW(TrainingSchedule::FromJson("[]"), ConfigError);
  const auto parsed = TrainingSchedule::FromJson(
      R"([{"lm":"word:3","iterations":2,"beam":10,"smooth_alpha":0.9}])");
  EXPECT_EQ(parsed.stages[0].lm.kind, lm::TokenKind::kWord);
  EXPECT_EQ(parsed.stages[0].iterations, 2);
}

TEST(TrainTest, SingleIterationEqualsEmStep) {
  std::mt19937_64 rng(10);
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(3);
  const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 2));
  const auto lex = LexicalModel::Init(phones, graphemes, Silence(phones));
  const auto corpus = RandomPhoneCorpus(rng, phones, 10, 5);
  TrainingSchedule sched;
  sched.stages.push_back({{lm::TokenKind::kGrapheme, 2}, 1});
  const auto res = Train(sched, corpus, {{"char:2", g}}, lex, {});
  const auto step = EmStep(lex, {}, corpus, g);
  EXPECT_TRUE(res.model == step.model);
  ASSERT_EQ(res.log.size(), 1u);
  EXPECT_EQ(res.log[0].loglik, step.loglik);
  EXPECT_EQ(res.log[0].active_params, step.model.ActiveParams());
}

TEST(TrainTest, StagedScheduleLogsMonotoneLikelihood) {
  std::mt19937_64 rng(20);
  auto phones = MakePhones(4);
  auto graphemes = MakeGraphemes(3);
  std::map<std::string, fst::Wfst> lms;
  for (int n = 2; n <= 3; ++n) {
    lms["char:" + std::to_string(n)] = lm::LmToFst(RandomCharLm(rng, graphemes, n, 60));
  }
  const auto corpus = RandomPhoneCorpus(rng, phones, 12, 6);
  auto sched = TrainingSchedule::CharOnly(2, 3, 4, 2);
  sched.stages[1].smooth_after_alpha = 0.9;
  std::vector<IterationRecord> seen;
  TrainOptions opts;
  opts.on_iteration = [&](const IterationRecord &r) { seen.push_back(r); };
  const auto res = Train(sched, corpus, lms,
                         LexicalModel::Init(phones, graphemes, Silence(phones)),
                         {}, opts);
  ASSERT_EQ(res.log.size(), 8u);
  ASSERT_EQ(seen.size(), 8u);
  for (size_t i = 1; i < res.log.size(); ++i) {
    if (res.log[i].stage != res.log[i - 1].stage) continue;
    EXPECT_GE(res.log[i].loglik,
              res.log[i - 1].loglik - 1e-9 * std::fabs(res.log[i - 1].loglik));
  }
  EXPECT_EQ(res.log[4].stage, "char:3");
  EXPECT_EQ(res.log[4].iteration, 1);
  res.model.CheckNormalized(1e-9);
  EXPECT_THROW(Train(sched, corpus, {{"char:2", lms["char:2"]}},
                     LexicalModel::Init(phones, graphemes, Silence(phones)), {}),
               ConfigError);
}

// --- decoding ----------------------------------------------------------------

TEST(DecipherTest, IdentityModelCopiesInput) {
  auto phones = MakePhones(3, false);
  fst::SymbolTable gs;
  gs.AddSymbol(lm::kWordBoundary);
  for (int i = 1; i <= 3; ++i) gs.AddSymbol("p" + std::to_string(i));
  auto graphemes = std::make_shared<const fst::SymbolTable>(std::move(gs));
  auto lex = LexicalModel::Init(phones, graphemes, {}, 0.0);
  for (Label y = 2; y <= 4; ++y) {
    for (Label x = 1; x <= 3; ++x) lex.SetProb(y, x, x + 1 == y ? 1.0 : 0.0);
  }
  const auto g = lm::LmToFst(lm::NGramLm::Uniform(lm::TokenKind::kGrapheme, graphemes));
  const std::vector<Label> x = {3, 1, 2, 2};
  const auto r = Decipher(lex, {1.0, 0.0, 0.0}, g, x);
  EXPECT_EQ(GraphemesToText(r.graphemes, *graphemes), "p3p1p2p2");
}

TEST(DecipherTest, LanguageModelPicksAllowedCandidate) {
  auto phones = MakePhones(2, false);
  auto graphemes = MakeGraphemes(2);
  auto lex = LexicalModel::Init(phones, graphemes, {}, 0.0);
  const Label a = graphemes->Find("a"), b = graphemes->Find("b");
  // Phone 1 prefers "a" but the model forbids "a a".
  lex.SetProb(a, 1, 0.9);
  lex.SetProb(a, 2, 0.1);
  lex.SetProb(b, 1, 0.4);
  lex.SetProb(b, 2, 0.6);
  fst::Wfst g(graphemes, graphemes);
  for (int i = 0; i < 3; ++i) g.AddState();
  g.SetStart(0);
  g.AddArc(0, {a, a, 0.0, 1});
  g.AddArc(0, {b, b, 0.0, 1});
  g.AddArc(1, {b, b, 0.0, 2});
  g.SetFinal(2, 0.0);
  const auto r = Decipher(lex, {1.0, 0.0, 0.0}, g, std::vector<Label>{1, 1});
  EXPECT_EQ(r.graphemes, (std::vector<Label>{a, b}));
  EXPECT_NEAR(r.weight, -std::log(0.9 * 0.4), 1e-12);
  const auto none = Decipher(lex, {1.0, 0.0, 0.0}, g, std::vector<Label>{1});
  EXPECT_TRUE(none.Empty());
  EXPECT_TRUE(none.graphemes.empty());
}

TEST(DecipherTest, SilenceBecomesWordBoundary) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    auto phones = MakePhones(3);
    auto graphemes = MakeGraphemes(3);
    const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 2));
    const auto lex = Randomize(
        LexicalModel::Init(phones, graphemes, Silence(phones)), rng);
    const Label sil = phones->Find("sil"), wb = graphemes->Find("<wb>");
    const auto corpus = RandomPhoneCorpus(rng, phones, 4, 7);
    for (const auto &x : corpus) {
      const auto r = Decipher(lex, {}, g, x, std::nullopt, true);
      ASSERT_TRUE(r.lattice.has_value());
      for (size_t s = 0; s < r.lattice->NumStates(); ++s) {
        for (const auto &arc : r.lattice->Arcs(s)) {
          if (arc.ilabel == sil) EXPECT_EQ(arc.olabel, wb);
        }
      }
      const auto n_sil = std::count(x.begin(), x.end(), sil);
      EXPECT_GE(std::count(r.graphemes.begin(), r.graphemes.end(), wb), n_sil);
    }
  }
}

// Exhaustive search over grapheme strings agrees with the lattice search.
// A bigram G is used so its best path for a string is the model score.
void CheckAgainstOracle(const AlignmentModel &ali, size_t max_phones,
                        uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  int compared = 0;
  for (int trial = 0; trial < trials; ++trial) {
    auto phones = MakePhones(2 + trial % 2, trial % 3 != 0);
    auto graphemes = MakeGraphemes(2 + trial % 2);
    const auto lm = RandomCharLm(rng, graphemes, 1 + trial % 2);
    const auto g = lm::LmToFst(lm);
    const auto lex = Randomize(
        LexicalModel::Init(phones, graphemes, Silence(phones),
                           ali.insert > 0.0 ? 0.1 : 0.0),
        rng);
    const auto x = RandomPhoneCorpus(rng, phones, 1, max_phones)[0];
    const size_t max_len = ali.insert > 0.0 ? 2 * x.size() : x.size();
    const auto oracle = testing::BruteForceDecipher(
        lex, ali, x, max_len,
        [&](const std::vector<Label> &y) { return -lm.SentenceLogProb(y); });
    const auto r = Decipher(lex, ali, g, x);
    ASSERT_FALSE(r.Empty());
    EXPECT_NEAR(r.weight, oracle.cost, 1e-9) << "trial " << trial;
    if (oracle.runner_up - oracle.cost > 1e-9) {
      EXPECT_EQ(r.graphemes, oracle.best) << "trial " << trial;
      ++compared;
    }
  }
  EXPECT_GT(compared, trials / 2);
}

TEST(DecipherTest, MatchesExhaustiveSearchSubstitutionOnly) {
  CheckAgainstOracle({1.0, 0.0, 0.0}, 6, 1, 30);
}

TEST(DecipherTest, MatchesExhaustiveSearchWithDeletions) {
  CheckAgainstOracle({0.8, 0.0, 0.2}, 6, 2, 30);
}

TEST(DecipherTest, MatchesExhaustiveSearchWithInsertions) {
  CheckAgainstOracle({0.8, 0.1, 0.1}, 4, 3, 30);
}

fst::Wfst ShiftWeights(const fst::Wfst &g, double arc_shift,
                       double final_shift) {
  fst::Wfst out(g.InputSymbols(), g.OutputSymbols());
  for (size_t s = 0; s < g.NumStates(); ++s) out.AddState();
  out.SetStart(g.Start());
  for (size_t s = 0; s < g.NumStates(); ++s) {
    if (g.IsFinal(s)) out.SetFinal(s, g.Final(s) + final_shift);
    for (auto arc : g.Arcs(s)) {
      arc.weight += arc_shift;
      out.AddArc(s, arc);
    }
  }
  return out;
}

TEST(DecipherTest, ArgmaxInvariantToScalingG) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    auto phones = MakePhones(3);
    auto graphemes = MakeGraphemes(3);
    const auto corpus = RandomPhoneCorpus(rng, phones, 3, 6);
    // Final-weight shift: every complete path gains the same constant.
    {
      const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 3));
      const auto lex = Randomize(
          LexicalModel::Init(phones, graphemes, Silence(phones)), rng);
      const auto shifted = ShiftWeights(g, 0.0, 2.5);
      for (const auto &x : corpus) {
        const auto a = Decipher(lex, {}, g, x);
        const auto b = Decipher(lex, {}, shifted, x);
        EXPECT_EQ(a.graphemes, b.graphemes);
        EXPECT_NEAR(b.weight, a.weight + 2.5, 1e-9);
      }
    }
    // Per-arc shift: with substitutions only and a unigram G, every path
    // through an utterance of length T uses exactly T arcs of G.
    {
      const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 1));
      const auto lex = Randomize(
          LexicalModel::Init(phones, graphemes, Silence(phones), 0.0), rng);
      const AlignmentModel sub_only{1.0, 0.0, 0.0};
      const auto shifted = ShiftWeights(g, 0.7, 0.0);
      for (const auto &x : corpus) {
        const auto a = Decipher(lex, sub_only, g, x);
        const auto b = Decipher(lex, sub_only, shifted, x);
        EXPECT_EQ(a.graphemes, b.graphemes);
        EXPECT_NEAR(b.weight, a.weight + 0.7 * x.size(), 1e-9);
      }
    }
  }
}

TEST(DecipherTest, CorpusDecodingIsOrderedAndThreadSafe) {
  std::mt19937_64 rng(55);
  auto phones = MakePhones(3);
  auto graphemes = MakeGraphemes(3);
  const auto g = lm::LmToFst(RandomCharLm(rng, graphemes, 2));
  const auto lex = Randomize(
      LexicalModel::Init(phones, graphemes, Silence(phones)), rng);
  const auto edit = BuildEditFst(lex, {});
  const auto corpus = RandomPhoneCorpus(rng, phones, 25, 6);
  const auto serial = DecipherCorpus(edit, g, corpus, std::nullopt, 1);
  const auto parallel = DecipherCorpus(edit, g, corpus, std::nullopt, 3);
  ASSERT_EQ(serial.size(), corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(serial[i].graphemes, parallel[i].graphemes);
    EXPECT_EQ(serial[i].graphemes, Decipher(edit, g, corpus[i]).graphemes);
  }
}

TEST(DecipherTest, PhoneAndGraphemeText) {
  auto phones = MakePhones(2);
  EXPECT_EQ(PhoneTokens(" p1  sil p2 ", *phones), (std::vector<Label>{1, 3, 2}));
  EXPECT_THROW(PhoneTokens("p9", *phones), ConfigError);
  auto graphemes = MakeGraphemes(2);
  EXPECT_EQ(GraphemesToText(std::vector<Label>{2, 1, 3}, *graphemes), "a b");
}

}  // namespace
}  // namespace decipher::engine
