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

#include "decipher/lm/ngram_lm.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "decipher/errors.h"
#include "decipher/util/text.h"

namespace decipher::lm {
namespace {

void CheckOrder(int order) {
  if (order < 1 || order > 7) {
    throw ConfigError("n-gram order must be in 1..7, got " +
                      std::to_string(order));
  }
}

std::vector<std::string> NonEmptyNormalized(
    const std::vector<std::string> &corpus) {
  std::vector<std::string> out;
  for (const auto &line : corpus) {
    std::string norm = util::NormalizeText(line);
    if (!norm.empty()) out.push_back(std::move(norm));
  }
  if (out.empty()) throw ConfigError("language model corpus is empty");
  return out;
}

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  return kind == TokenKind::kGrapheme ? "grapheme" : "word";
}

TokenKind ParseTokenKind(std::string_view name) {
  if (name == "grapheme" || name == "char") return TokenKind::kGrapheme;
  if (name == "word") return TokenKind::kWord;
  throw ConfigError("unknown token kind: " + std::string(name));
}

// ---------------------------------------------------------------------------
// NGramCounts

void NGramCounts::AddSentence(std::span<const Label> tokens) {
  std::vector<Label> context;
  context.reserve(tokens.size() + 1);
  if (order_ > 1) context.push_back(kBeginOfSentence);
  for (size_t i = 0; i <= tokens.size(); ++i) {
    const Label event = i < tokens.size() ? tokens[i] : kEndOfSentence;
    const size_t max_len =
        std::min(context.size(), static_cast<size_t>(order_ - 1));
    for (size_t n = 0; n <= max_len; ++n) {
      History h(context.end() - n, context.end());
      ++table_[h][event];
    }
    if (i < tokens.size()) context.push_back(event);
  }
}

uint64_t NGramCounts::Count(const History &h, Label event) const {
  auto it = table_.find(h);
  if (it == table_.end()) return 0;
  auto jt = it->second.find(event);
  return jt == it->second.end() ? 0 : jt->second;
}

double NGramCounts::RawRatio(const History &h, Label event) const {
  auto it = table_.find(h);
  if (it == table_.end()) return 0.0;
  uint64_t total = 0;
  for (const auto &[e, c] : it->second) total += c;
  auto jt = it->second.find(event);
  if (jt == it->second.end() || total == 0) return 0.0;
  return static_cast<double>(jt->second) / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// NGramLm

NGramLm::NGramLm(int order, TokenKind kind, SymbolTablePtr alphabet,
                 std::map<History, Context> contexts)
    : order_(order),
      kind_(kind),
      alphabet_(std::move(alphabet)),
      contexts_(std::move(contexts)) {
  CheckOrder(order_);
  if (!alphabet_ || alphabet_->Size() < 2) {
    throw ConfigError("NGramLm: alphabet must contain at least one token");
  }
  if (!contexts_.count(History{})) {
    throw ConfigError("NGramLm: missing unigram distribution");
  }
}

std::vector<Label> NGramLm::Events() const {
  std::vector<Label> events;
  events.reserve(alphabet_->Size());
  for (Label l = 1; l < static_cast<Label>(alphabet_->Size()); ++l) {
    events.push_back(l);
  }
  events.push_back(kEndOfSentence);
  return events;
}

NGramLm NGramLm::WittenBell(const NGramCounts &counts, TokenKind kind,
                            SymbolTablePtr alphabet) {
  if (!alphabet) throw ConfigError("WittenBell: null alphabet");
  const auto &table = counts.Table();
  if (table.empty()) throw ConfigError("WittenBell: no counts");
  const double vocab = static_cast<double>(alphabet->Size());  // +</s> -<eps>

  // Shorter histories sort first, so lower orders are ready when needed.
  std::vector<const History *> by_length;
  for (const auto &[h, events] : table) by_length.push_back(&h);
  std::stable_sort(by_length.begin(), by_length.end(),
                   [](const History *a, const History *b) {
                     return a->size() < b->size();
                   });

  NGramLm partial(counts.Order(), kind, alphabet,
                  {{History{}, Context{}}});
  for (const History *hp : by_length) {
    const History &h = *hp;
    const auto &events = table.at(h);
    double n = 0.0;
    for (const auto &[e, c] : events) n += static_cast<double>(c);
    const double t = static_cast<double>(events.size());
    Context ctx;
    ctx.backoff = t / (n + t);
    if (h.empty()) {
      for (Label e : partial.Events()) {
        auto it = events.find(e);
        const double c = it == events.end() ? 0.0 : static_cast<double>(it->second);
        ctx.probs[e] = (c + t / vocab) / (n + t);
      }
    } else {
      History lower(h.begin() + 1, h.end());
      for (const auto &[e, c] : events) {
        const double p_lower = partial.Prob(e, lower);
        ctx.probs[e] = (static_cast<double>(c) + t * p_lower) / (n + t);
      }
    }
    partial.contexts_[h] = std::move(ctx);
  }
  return NGramLm(counts.Order(), kind, std::move(alphabet),
                 std::move(partial.contexts_));
}

NGramLm NGramLm::Uniform(TokenKind kind, SymbolTablePtr alphabet) {
  if (!alphabet) throw ConfigError("Uniform: null alphabet");
  const double p = 1.0 / static_cast<double>(alphabet->Size());
  Context ctx;
  for (Label l = 1; l < static_cast<Label>(alphabet->Size()); ++l) {
    ctx.probs[l] = p;
  }
  ctx.probs[kEndOfSentence] = p;
  return NGramLm(1, kind, std::move(alphabet), {{History{}, std::move(ctx)}});
}

double NGramLm::Prob(Label event, std::span<const Label> history) const {
  const size_t max_len =
      std::min(history.size(), static_cast<size_t>(order_ - 1));
  double scale = 1.0;
  for (size_t n = max_len + 1; n-- > 0;) {
    History h(history.end() - n, history.end());
    auto it = contexts_.find(h);
    if (it == contexts_.end()) continue;
    auto jt = it->second.probs.find(event);
    if (jt != it->second.probs.end()) return scale * jt->second;
    scale *= it->second.backoff;
  }
  // Only events outside the alphabet get here: the uniform floor share.
  return scale / static_cast<double>(alphabet_->Size());
}

double NGramLm::SentenceLogProb(std::span<const Label> tokens) const {
  std::vector<Label> context;
  context.reserve(tokens.size() + 1);
  if (order_ > 1) context.push_back(kBeginOfSentence);
  double logp = 0.0;
  for (size_t i = 0; i <= tokens.size(); ++i) {
    const Label event = i < tokens.size() ? tokens[i] : kEndOfSentence;
    logp += std::log(Prob(event, context));
    context.push_back(event);
  }
  return logp;
}

History NGramLm::StateFor(std::span<const Label> history) const {
  const size_t max_len =
      std::min(history.size(), static_cast<size_t>(order_ - 1));
  for (size_t n = max_len + 1; n-- > 0;) {
    History h(history.end() - n, history.end());
    if (contexts_.count(h)) return h;
  }
  return History{};
}

std::vector<Label> NGramLm::Tokenize(std::string_view line,
                                     bool allow_unknown) const {
  if (kind_ == TokenKind::kGrapheme) {
    return GraphemeTokens(line, *alphabet_, allow_unknown);
  }
  const Label unk = alphabet_->Find(kUnknownWord);
  std::vector<Label> out;
  for (const auto &word :
       util::SplitWhitespace(util::NormalizeText(line))) {
    const Label l = alphabet_->Find(word);
    out.push_back(l != fst::kNoLabel ? l : unk);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Training

fst::SymbolTable GraphemeAlphabet(const std::vector<std::string> &corpus) {
  std::vector<std::string> chars;
  for (const auto &line : corpus) {
    for (auto &c : util::SplitUtf8(util::NormalizeText(line))) {
      if (c != " ") chars.push_back(std::move(c));
    }
  }
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  fst::SymbolTable syms;
  syms.AddSymbol(kWordBoundary);
  for (const auto &c : chars) syms.AddSymbol(c);
  return syms;
}

std::vector<Label> GraphemeTokens(std::string_view line,
                                  const fst::SymbolTable &alphabet,
                                  bool allow_unknown) {
  const Label wb = alphabet.Find(kWordBoundary);
  std::vector<Label> out;
  for (const auto &c : util::SplitUtf8(util::NormalizeText(line))) {
    Label l = c == " " ? wb : alphabet.Find(c);
    if (l == fst::kNoLabel && !allow_unknown) {
      throw ConfigError("grapheme not in alphabet: '" + c + "'");
    }
    out.push_back(l);
  }
  return out;
}

NGramLm TrainCharLm(const std::vector<std::string> &corpus, int order,
                    SymbolTablePtr alphabet) {
  CheckOrder(order);
  const auto lines = NonEmptyNormalized(corpus);
  if (!alphabet) {
    alphabet = std::make_shared<const fst::SymbolTable>(GraphemeAlphabet(lines));
  } else if (alphabet->Find(kWordBoundary) == fst::kNoLabel) {
    throw ConfigError("grapheme alphabet lacks " + std::string(kWordBoundary));
  }
  NGramCounts counts(order);
  for (const auto &line : lines) {
    counts.AddSentence(GraphemeTokens(line, *alphabet));
  }
  return NGramLm::WittenBell(counts, TokenKind::kGrapheme, std::move(alphabet));
}

NGramLm TrainWordLm(const std::vector<std::string> &corpus, int order,
                    size_t vocab_limit) {
  CheckOrder(order);
  if (vocab_limit < 1) throw ConfigError("vocab_limit must be >= 1");
  const auto lines = NonEmptyNormalized(corpus);
  std::unordered_map<std::string, uint64_t> freq;
  for (const auto &line : lines) {
    for (auto &w : util::SplitWhitespace(line)) ++freq[w];
  }
  std::vector<std::pair<std::string, uint64_t>> ranked(freq.begin(),
                                                       freq.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (ranked.size() > vocab_limit) ranked.resize(vocab_limit);
  std::vector<std::string> vocab;
  for (auto &[w, c] : ranked) vocab.push_back(w);
  std::sort(vocab.begin(), vocab.end());

  fst::SymbolTable syms;
  syms.AddSymbol(kUnknownWord);
  for (const auto &w : vocab) syms.AddSymbol(w);
  auto alphabet = std::make_shared<const fst::SymbolTable>(std::move(syms));

  NGramCounts counts(order);
  const Label unk = alphabet->Find(kUnknownWord);
  for (const auto &line : lines) {
    std::vector<Label> tokens;
    for (const auto &w : util::SplitWhitespace(line)) {
      const Label l = alphabet->Find(w);
      tokens.push_back(l != fst::kNoLabel ? l : unk);
    }
    counts.AddSentence(tokens);
  }
  return NGramLm::WittenBell(counts, TokenKind::kWord, std::move(alphabet));
}

double Perplexity(const NGramLm &lm, const std::vector<std::string> &text) {
  double logp = 0.0;
  size_t n = 0;
  for (const auto &line : text) {
    if (util::NormalizeText(line).empty()) continue;
    const auto tokens = lm.Tokenize(line, /*allow_unknown=*/true);
    logp += lm.SentenceLogProb(tokens);
    n += tokens.size() + 1;
  }
  if (n == 0) throw ConfigError("Perplexity: empty text");
  return std::exp(-logp / static_cast<double>(n));
}

// ---------------------------------------------------------------------------
// Compilation

fst::Wfst LmToFst(const NGramLm &lm) {
  fst::Wfst f(lm.Alphabet(), lm.Alphabet());
  const auto &contexts = lm.Contexts();
  std::map<History, fst::StateId> ids;
  const History start =
      lm.Order() > 1 ? lm.StateFor(History{kBeginOfSentence}) : History{};
  ids[start] = f.AddState();
  for (const auto &[h, ctx] : contexts) {
    if (!ids.count(h)) ids[h] = f.AddState();
  }
  f.SetStart(ids[start]);

  // Arcs are added in the order states were numbered.
  std::vector<const History *> order(ids.size());
  for (const auto &[h, s] : ids) order[s] = &h;
  for (const History *hp : order) {
    const History &h = *hp;
    const fst::StateId s = ids.at(h);
    const auto &ctx = contexts.at(h);
    if (!h.empty()) {
      const History lower = lm.StateFor(std::span(h).subspan(1));
      f.AddArc(s, {fst::kEpsilon, fst::kEpsilon, -std::log(ctx.backoff),
                   ids.at(lower)});
    }
    History next_hist = h;
    for (const auto &[event, p] : ctx.probs) {
      if (event == kEndOfSentence) {
        f.SetFinal(s, -std::log(p));
        continue;
      }
      next_hist.push_back(event);
      f.AddArc(s, {event, event, -std::log(p), ids.at(lm.StateFor(next_hist))});
      next_hist.pop_back();
    }
  }
  return f;
}

}  // namespace decipher::lm
