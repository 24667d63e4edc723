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

#include "cli/commands.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "decipher/engine/decipher.h"
#include "decipher/engine/edit_fst.h"
#include "decipher/engine/lexical_model.h"
#include "decipher/engine/schedule.h"
#include "decipher/engine/trainer.h"
#include "decipher/errors.h"
#include "decipher/eval/error_rate.h"
#include "decipher/fst/fst_io.h"
#include "decipher/lm/lexicon.h"
#include "decipher/lm/lm_io.h"
#include "decipher/lm/ngram_lm.h"
#include "decipher/synth/cipher.h"
#include "decipher/synth/default_task.h"
#include "decipher/util/random.h"
#include "decipher/util/text.h"

#ifndef DECIPHER_VERSION
#define DECIPHER_VERSION "0.0.0"
#endif

namespace decipher::cli {
namespace {

using fst::Label;
using fst::SymbolTablePtr;

void RequireFile(const fs::path &p, std::string_view what) {
  if (!fs::is_regular_file(p)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
}

void WriteText(const fs::path &p, const std::string &text) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw ConfigError("cannot open for writing: " + p.string());
  os << text;
}

json ReadJson(const fs::path &p) {
  std::ifstream is(p);
  if (!is) throw ConfigError("cannot open: " + p.string());
  try {
    return json::parse(is);
  } catch (const json::exception &e) {
    throw FormatError(p.string() + ": " + e.what());
  }
}

SymbolTablePtr ReadSymbols(const fs::path &p) {
  return std::make_shared<const fst::SymbolTable>(
      fst::SymbolTable::ReadFile(p.string()));
}

std::string Relative(const ExperimentConfig &config, const fs::path &p) {
  return fs::relative(p, config.OutputDir()).generic_string();
}

// File stem of a saved model: "char:3" -> "char3".
std::string LmFileName(const engine::LmRef &ref) {
  return std::string(lm::TokenKindName(ref.kind)) == "word"
             ? "word" + std::to_string(ref.order)
             : "char" + std::to_string(ref.order);
}

std::vector<int> Orders(const json &section, std::string_view key,
                        std::vector<int> fallback) {
  auto it = section.find(std::string(key));
  if (it == section.end()) return fallback;
  if (!it->is_array()) {
    throw ConfigError("config: '" + std::string(key) + "' must be a list");
  }
  std::vector<int> out;
  for (const auto &v : *it) {
    if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > 9) {
      throw ConfigError("config: LM orders must be integers in [1, 9]");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

engine::AlignmentModel ParseAlignment(const json &section) {
  engine::AlignmentModel ali;
  auto it = section.find("alignment");
  if (it != section.end()) {
    CheckKeys(*it, "alignment", {"substitute", "insert", "remove"});
    ali.substitute = GetDouble(*it, "substitute", ali.substitute);
    ali.insert = GetDouble(*it, "insert", ali.insert);
    ali.remove = GetDouble(*it, "remove", ali.remove);
  }
  ali.Validate();
  return ali;
}

json AlignmentJson(const engine::AlignmentModel &ali) {
  return {{"substitute", ali.substitute},
          {"insert", ali.insert},
          {"remove", ali.remove}};
}

std::vector<std::vector<Label>> ReadPhoneCorpus(const fs::path &p,
                                                const fst::SymbolTable &phones) {
  std::vector<std::vector<Label>> corpus;
  for (const auto &line : util::ReadLines(p.string())) {
    corpus.push_back(engine::PhoneTokens(line, phones));
  }
  return corpus;
}

engine::TrainingSchedule ParseSchedule(const ExperimentConfig &config) {
  const json &train = config.Section("train");
  auto it = train.find("schedule");
  if (it == train.end() || (it->is_string() && *it == "default")) {
    return engine::TrainingSchedule::Default();
  }
  if (it->is_string() && *it == "char") {
    return engine::TrainingSchedule::CharOnly(2, 5, 10, 10);
  }
  if (it->is_string()) {
    const fs::path p = *config.OptionalPath("train", "schedule");
    RequireFile(p, "schedule");
    return engine::TrainingSchedule::FromJsonFile(p.string());
  }
  if (it->is_array()) return engine::TrainingSchedule::FromJson(it->dump());
  throw ConfigError(
      "config: train.schedule must be \"default\", \"char\", a path or a list");
}

std::vector<Label> SilenceLabels(const std::vector<std::string> &names,
                                 const fst::SymbolTable &phones) {
  std::vector<Label> out;
  for (const auto &n : names) {
    const Label l = phones.Find(n);
    if (l == fst::kNoLabel) {
      throw ConfigError("silence phone '" + n + "' is not in the phone set");
    }
    out.push_back(l);
  }
  return out;
}

// Everything a decoder needs from a training run.
struct TrainedModel {
  SymbolTablePtr phones;
  SymbolTablePtr graphemes;
  engine::LexicalModel lexical;
  engine::AlignmentModel alignment;
  std::string final_lm;
};

TrainedModel LoadTrainedModel(const fs::path &dir) {
  const fs::path meta_path = dir / "model.json";
  RequireFile(meta_path, "trained model");
  const json meta = ReadJson(meta_path);
  try {
    auto phones = ReadSymbols(dir / meta.at("phone_symbols").get<std::string>());
    auto graphemes =
        ReadSymbols(dir / meta.at("grapheme_symbols").get<std::string>());
    auto silence = SilenceLabels(
        meta.at("silence").get<std::vector<std::string>>(), *phones);
    engine::AlignmentModel ali = ParseAlignment(meta);
    auto lex = engine::LexicalModel::ReadTsvFile(
        (dir / meta.at("lexical").get<std::string>()).string(), phones,
        graphemes, silence, meta.at("insertions").get<bool>());
    return {phones, graphemes, std::move(lex), ali,
            meta.at("final_lm").get<std::string>()};
  } catch (const json::exception &e) {
    throw FormatError(meta_path.string() + ": " + e.what());
  }
}

}  // namespace

std::vector<std::string> RunSynth(const CommandContext &ctx) {
  const auto &config = ctx.config;
  const json &s = config.Section("synth");
  CheckKeys(s, "synth",
            {"text", "generated_lines", "lm_text_lines", "table", "noise",
             "silence_prob", "train_utterances", "heldout_utterances"});
  const uint64_t seed = config.RequireSeed();
  const auto text_path = config.OptionalPath("synth", "text");
  if (text_path) RequireFile(*text_path, "synth text");
  const std::string table_name = GetString(s, "table", "bijective");
  std::optional<fs::path> table_path;
  if (table_name != "bijective" && table_name != "ambiguous") {
    table_path = config.OptionalPath("synth", "table");
    RequireFile(*table_path, "pronunciation table");
  }
  synth::ChannelNoise noise;
  if (auto it = s.find("noise"); it != s.end()) {
    CheckKeys(*it, "synth.noise", {"substitution", "deletion", "insertion"});
    noise.substitution = GetDouble(*it, "substitution", 0.0);
    noise.deletion = GetDouble(*it, "deletion", 0.0);
    noise.insertion = GetDouble(*it, "insertion", 0.0);
  }
  noise.Validate();
  synth::CipherOptions opts;
  opts.silence_prob = GetDouble(s, "silence_prob", 1.0);
  opts.seed = util::MixSeed(seed, 3);
  if (!(opts.silence_prob >= 0.0 && opts.silence_prob <= 1.0)) {
    throw ConfigError("synth.silence_prob must be in [0, 1]");
  }
  const int64_t generated = GetInt(s, "generated_lines", 1500);
  const int64_t lm_lines = GetInt(s, "lm_text_lines", 3000);
  const int64_t n_train = GetInt(s, "train_utterances", 200);
  const int64_t n_heldout = GetInt(s, "heldout_utterances", 100);
  if (generated < 0 || lm_lines < 0 || n_train < 0 || n_heldout < 0) {
    throw ConfigError("synth: line and utterance counts must be nonnegative");
  }
  if (ctx.validate_only) return {};

  const auto table = table_path
                         ? synth::PronunciationTable::ReadTsvFile(table_path->string())
                     : table_name == "ambiguous" ? synth::AmbiguousTable(seed)
                                                 : synth::BijectiveTable(seed);
  const auto text = text_path ? util::ReadLines(text_path->string())
                              : synth::GenerateText(generated, util::MixSeed(seed, 1));
  const auto corpus = synth::GenCipher(text, table, noise, opts);

  const fs::path dir = config.StageDir("synth");
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  auto emit = [&](const std::string &name) {
    outputs.push_back(Relative(config, dir / name));
    return (dir / name).string();
  };
  table.WriteTsvFile(emit("table.tsv"));
  table.PhoneSymbols().WriteFile(emit("phones.syms"));
  auto write_corpus = [&](const std::string &stem, const synth::CipherCorpus &c) {
    std::vector<std::string> lines;
    for (const auto &u : c.phones) lines.push_back(util::Join(u, " "));
    util::WriteLines(emit(stem + ".phones"), lines);
    util::WriteLines(emit(stem + ".ref"), c.references);
  };
  write_corpus("cipher", corpus);
  const auto order = synth::SelectShortest(
      corpus.phones, static_cast<size_t>(n_train + n_heldout));
  const size_t split = std::min<size_t>(order.size(), n_train);
  write_corpus("train", synth::Subset(corpus, {order.begin(), order.begin() + split}));
  write_corpus("heldout", synth::Subset(corpus, {order.begin() + split, order.end()}));
  if (!text_path && lm_lines > 0) {
    util::WriteLines(emit("lm_text.txt"),
                     synth::GenerateText(lm_lines, util::MixSeed(seed, 2)));
  }
  ctx.log.Info("synthesized cipher corpus",
               {{"utterances", corpus.phones.size()},
                {"train", split},
                {"heldout", order.size() - split}});
  return outputs;
}

std::vector<std::string> RunLm(const CommandContext &ctx) {
  const auto &config = ctx.config;
  const json &s = config.Section("lm");
  CheckKeys(s, "lm", {"text", "char_orders", "word_orders", "word_vocab"});
  const fs::path text_path = config.PathOr("lm", "text", "synth/lm_text.txt");
  RequireFile(text_path, "LM training text");
  const auto char_orders = Orders(s, "char_orders", {2, 3, 4, 5});
  const auto word_orders = Orders(s, "word_orders", {3});
  const int64_t vocab = GetInt(s, "word_vocab", 0);
  if (vocab < 0) throw ConfigError("lm.word_vocab must be nonnegative");
  const auto lines = util::ReadLines(text_path.string());
  size_t nonempty = 0;
  for (const auto &l : lines) nonempty += !util::NormalizeText(l).empty();
  if (nonempty == 0) {
    throw ConfigError("LM training text is empty: " + text_path.string());
  }
  if (ctx.validate_only) return {};

  const fs::path dir = config.StageDir("lm");
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  auto alphabet = std::make_shared<const fst::SymbolTable>(
      lm::GraphemeAlphabet(lines));
  alphabet->WriteFile((dir / "graphemes.syms").string());
  outputs.push_back(Relative(config, dir / "graphemes.syms"));
  auto record = [&](const std::string &sidecar) {
    const fs::path p(sidecar);
    for (const char *ext : {".json", ".fst", ".syms", ".lex"}) {
      fs::path f = p;
      f.replace_extension(ext);
      if (fs::exists(f)) outputs.push_back(Relative(config, f));
    }
  };
  for (int n : char_orders) {
    const auto model = lm::TrainCharLm(lines, n, alphabet);
    record(lm::SaveLm(model, dir.string(), LmFileName({lm::TokenKind::kGrapheme, n})));
    ctx.log.Info("trained character model",
                 {{"order", n}, {"perplexity", lm::Perplexity(model, lines)}});
  }
  for (int n : word_orders) {
    const auto model = lm::TrainWordLm(
        lines, n, vocab == 0 ? std::numeric_limits<size_t>::max()
                             : static_cast<size_t>(vocab));
    const auto lexicon = lm::GraphemeLexicon::FromWordLm(model, alphabet);
    record(lm::SaveLm(model, dir.string(), LmFileName({lm::TokenKind::kWord, n}),
                      &lexicon, "graphemes.syms"));
    ctx.log.Info("trained word model",
                 {{"order", n},
                  {"vocabulary", lexicon.Entries().size()},
                  {"perplexity", lm::Perplexity(model, lines)}});
  }
  return outputs;
}

std::vector<std::string> RunTrain(const CommandContext &ctx) {
  const auto &config = ctx.config;
  const json &s = config.Section("train");
  CheckKeys(s, "train",
            {"phones", "phone_symbols", "lm_dir", "silence", "schedule",
             "alignment", "insertion_mass", "max_skip_fraction"});
  const fs::path phones_path = config.PathOr("train", "phones", "synth/train.phones");
  const fs::path syms_path =
      config.PathOr("train", "phone_symbols", "synth/phones.syms");
  const fs::path lm_dir = config.PathOr("train", "lm_dir", "lm");
  RequireFile(phones_path, "training phones");
  RequireFile(syms_path, "phone symbol table");
  RequireFile(lm_dir / "graphemes.syms", "grapheme symbol table");
  const auto schedule = ParseSchedule(config);
  schedule.Validate();
  for (const auto &ref : schedule.RequiredLms()) {
    RequireFile(lm_dir / (LmFileName(ref) + ".json"),
                "language model " + ref.ToString());
  }
  const auto ali = ParseAlignment(s);
  std::vector<std::string> silence_names = {synth::kDefaultSilence};
  if (auto it = s.find("silence"); it != s.end()) {
    if (!it->is_array()) throw ConfigError("train.silence must be a list");
    silence_names = it->get<std::vector<std::string>>();
  }
  const double insertion_mass =
      ali.insert > 0.0 ? GetDouble(s, "insertion_mass", 0.01) : 0.0;
  engine::TrainOptions opts;
  opts.jobs = ctx.jobs;
  opts.max_skip_fraction = GetDouble(s, "max_skip_fraction", 0.5);
  auto phones = ReadSymbols(syms_path);
  auto graphemes = ReadSymbols(lm_dir / "graphemes.syms");
  const auto silence = SilenceLabels(silence_names, *phones);
  const auto corpus = ReadPhoneCorpus(phones_path, *phones);
  auto init = engine::LexicalModel::Init(phones, graphemes, silence, insertion_mass);
  if (ctx.validate_only) return {};

  std::map<std::string, fst::Wfst> lms;
  for (const auto &ref : schedule.RequiredLms()) {
    lms[ref.ToString()] =
        lm::LoadLm((lm_dir / (LmFileName(ref) + ".json")).string())
            .GraphemeAcceptor();
  }
  std::vector<std::string> log_lines;
  opts.on_iteration = [&](const engine::IterationRecord &r) {
    json j = {{"stage", r.stage},           {"stage_index", r.stage_index},
              {"iteration", r.iteration},   {"loglik", r.loglik},
              {"active_params", r.active_params},
              {"utterances", r.utterances}, {"skipped", r.skipped}};
    ctx.log.Info("em iteration", j);
    log_lines.push_back(j.dump());
  };
  const auto result = engine::Train(schedule, corpus, lms, std::move(init), ali, opts);

  const fs::path dir = config.StageDir("train");
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  auto emit = [&](const std::string &name) {
    outputs.push_back(Relative(config, dir / name));
    return (dir / name).string();
  };
  result.model.WriteTsvFile(emit("lexical.tsv"));
  phones->WriteFile(emit("phones.syms"));
  graphemes->WriteFile(emit("graphemes.syms"));
  util::WriteLines(emit("log.jsonl"), log_lines);
  WriteText(emit("schedule.json"), schedule.ToJson() + "\n");
  json meta = {{"lexical", "lexical.tsv"},
               {"phone_symbols", "phones.syms"},
               {"grapheme_symbols", "graphemes.syms"},
               {"silence", silence_names},
               {"insertions", result.model.AllowsInsertions()},
               {"alignment", AlignmentJson(ali)},
               {"final_lm", schedule.stages.back().lm.ToString()}};
  WriteText(emit("model.json"), meta.dump(2) + "\n");
  return outputs;
}

std::vector<std::string> RunDecode(const CommandContext &ctx) {
  const auto &config = ctx.config;
  const json &s = config.Section("decode");
  CheckKeys(s, "decode",
            {"phones", "model_dir", "lm_dir", "lm", "beam", "emit_lattices"});
  const fs::path phones_path =
      config.PathOr("decode", "phones", "synth/heldout.phones");
  const fs::path model_dir = config.PathOr("decode", "model_dir", "train");
  const fs::path lm_dir = config.PathOr("decode", "lm_dir", "lm");
  RequireFile(phones_path, "decode phones");
  auto model = LoadTrainedModel(model_dir);
  const auto lm_ref = engine::LmRef::Parse(GetString(s, "lm", model.final_lm));
  const fs::path lm_path = lm_dir / (LmFileName(lm_ref) + ".json");
  RequireFile(lm_path, "language model " + lm_ref.ToString());
  std::optional<double> beam;
  if (s.contains("beam") && !s["beam"].is_null()) {
    beam = GetDouble(s, "beam", 0.0);
    if (!(*beam > 0.0)) throw ConfigError("decode.beam must be positive");
  }
  const bool emit_lattices = GetBool(s, "emit_lattices", false);
  const auto corpus = ReadPhoneCorpus(phones_path, *model.phones);
  if (ctx.validate_only) return {};

  const auto g = lm::LoadLm(lm_path.string()).GraphemeAcceptor();
  const auto edit = engine::BuildEditFst(model.lexical, model.alignment);
  const auto results =
      engine::DecipherCorpus(edit, g, corpus, beam, ctx.jobs, emit_lattices);

  const fs::path dir = config.StageDir("decode");
  fs::create_directories(dir);
  std::vector<std::string> outputs;
  std::vector<std::string> hyps;
  size_t empty = 0;
  for (const auto &r : results) {
    empty += r.Empty();
    hyps.push_back(engine::GraphemesToText(r.graphemes, *model.graphemes));
  }
  util::WriteLines((dir / "hyp.txt").string(), hyps);
  outputs.push_back(Relative(config, dir / "hyp.txt"));
  if (emit_lattices) {
    const fs::path ldir = dir / "lattices";
    fs::remove_all(ldir);
    fs::create_directories(ldir);
    for (size_t i = 0; i < results.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "%06zu.fst", i);
      const fst::Wfst lattice =
          results[i].lattice ? *results[i].lattice : fst::Wfst();
      fst::WriteTextFile(lattice, (ldir / name).string());
    }
    outputs.push_back(Relative(config, ldir));
  }
  ctx.log.Info("decoded", {{"utterances", results.size()},
                           {"empty", empty},
                           {"lm", lm_ref.ToString()}});
  return outputs;
}

std::vector<std::string> RunEval(const CommandContext &ctx) {
  const auto &config = ctx.config;
  const json &s = config.Section("eval");
  CheckKeys(s, "eval",
            {"references", "hypotheses", "units", "oracle", "lattice_dir",
             "grapheme_symbols"});
  const fs::path refs_path = config.PathOr("eval", "references", "synth/heldout.ref");
  const fs::path hyps_path = config.PathOr("eval", "hypotheses", "decode/hyp.txt");
  RequireFile(refs_path, "references");
  RequireFile(hyps_path, "hypotheses");
  std::vector<eval::Unit> units;
  if (auto it = s.find("units"); it != s.end()) {
    if (!it->is_array()) throw ConfigError("eval.units must be a list");
    for (const auto &u : *it) units.push_back(eval::ParseUnit(u.get<std::string>()));
  } else {
    units = {eval::Unit::kChar, eval::Unit::kWord};
  }
  const bool oracle = GetBool(s, "oracle", false);
  const fs::path lattice_dir = config.PathOr("eval", "lattice_dir", "decode/lattices");
  const fs::path graphemes_path =
      config.PathOr("eval", "grapheme_symbols", "train/graphemes.syms");
  const auto refs = util::ReadLines(refs_path.string());
  const auto hyps = util::ReadLines(hyps_path.string());
  if (refs.size() != hyps.size()) {
    throw ConfigError("reference and hypothesis line counts differ: " +
                      std::to_string(refs.size()) + " vs " +
                      std::to_string(hyps.size()));
  }
  if (oracle) {
    RequireFile(graphemes_path, "grapheme symbol table");
    if (!fs::is_directory(lattice_dir)) {
      throw ConfigError("lattice directory not found: " + lattice_dir.string());
    }
  }
  if (ctx.validate_only) return {};

  std::vector<std::pair<std::string, eval::ErrorReport>> rows;
  nlohmann::ordered_json report;
  for (auto u : units) {
    const auto r = eval::CorpusErrorRate(refs, hyps, u, ctx.jobs);
    const std::string name(eval::UnitName(u));
    rows.emplace_back(name, r);
    report[name] = json::parse(r.ToJson());
  }
  if (oracle) {
    auto graphemes = ReadSymbols(graphemes_path);
    const Label unknown = static_cast<Label>(graphemes->Size());
    eval::ErrorReport total;
    total.unit = eval::Unit::kChar;
    size_t empty = 0;
    for (size_t i = 0; i < refs.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "%06zu.fst", i);
      const fs::path p = lattice_dir / name;
      RequireFile(p, "lattice");
      const auto lattice = fst::ReadTextFile(p.string(), nullptr, graphemes);
      std::vector<Label> ref = lm::GraphemeTokens(
          util::NormalizeText(refs[i]), *graphemes, /*allow_unknown=*/true);
      for (auto &l : ref) {
        if (l == fst::kNoLabel) l = unknown;
      }
      auto r = eval::OracleErrorRate(lattice, ref);
      if (!r) {
        ++empty;
        r = eval::Align<Label>(ref, {}, eval::Unit::kChar);
      }
      total += *r;
    }
    rows.emplace_back("oracle_char", total);
    report["oracle_char"] = json::parse(total.ToJson());
    if (empty) ctx.log.Info("empty lattices scored as deletions", {{"count", empty}});
  }
  const fs::path dir = config.StageDir("eval");
  fs::create_directories(dir);
  WriteText(dir / "report.json", report.dump(2) + "\n");
  const std::string summary = eval::FormatSummary(rows);
  WriteText(dir / "summary.txt", summary);
  ctx.out << summary;
  for (const auto &[name, r] : rows) {
    ctx.log.Info("score", {{"name", name}, {"rate", r.Rate()}});
  }
  return {Relative(config, dir / "report.json"),
          Relative(config, dir / "summary.txt")};
}

void UpdateManifest(const ExperimentConfig &config, const std::string &command,
                    const std::vector<std::string> &outputs) {
  const fs::path path = config.OutputDir() / "manifest.json";
  json manifest;
  if (fs::exists(path)) {
    try {
      manifest = ReadJson(path);
    } catch (const FormatError &) {
      manifest = json::object();
    }
  }
  if (!manifest.is_object() || manifest.value("config_hash", "") != config.Hash()) {
    manifest = json::object();
  }
  manifest["tool"] = "decipher-fst";
  manifest["version"] = DECIPHER_VERSION;
  manifest["config_hash"] = config.Hash();
  manifest["config"] = config.Json();
  manifest["commands"][command]["outputs"] = outputs;
  fs::create_directories(config.OutputDir());
  WriteText(path, manifest.dump(2) + "\n");
}

int Main(int argc, const char *const *argv, std::ostream &out,
         std::ostream &err) {
  CLI::App app{"Unsupervised decipherment with weighted finite-state transducers",
               "decipher-fst"};
  std::string command, config_path;
  int jobs = 1;
  std::optional<uint64_t> seed;
  bool validate = false;
  app.add_option("command", command, "synth, lm, train, decode or eval")
      ->required()
      ->check(CLI::IsMember({"synth", "lm", "train", "decode", "eval"}));
  app.add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Overrides the config seed");
  app.add_flag("--validate", validate, "Check inputs without writing");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  JsonLogger log(err, command);
  try {
    const auto config = ExperimentConfig::Load(config_path, seed);
    CommandContext ctx{config, jobs, validate, log, out};
    std::vector<std::string> outputs;
    if (command == "synth") outputs = RunSynth(ctx);
    if (command == "lm") outputs = RunLm(ctx);
    if (command == "train") outputs = RunTrain(ctx);
    if (command == "decode") outputs = RunDecode(ctx);
    if (command == "eval") outputs = RunEval(ctx);
    if (validate) {
      log.Info("configuration is valid");
      return 0;
    }
    UpdateManifest(config, command, outputs);
    log.Info("done", {{"outputs", outputs.size()}});
    return 0;
  } catch (const ConfigError &e) {
    log.Error(e.what(), {{"kind", "config"}});
    return 2;
  } catch (const FormatError &e) {
    log.Error(e.what(), {{"kind", "format"}});
    return 3;
  } catch (const TrainingError &e) {
    log.Error(e.what(), {{"kind", "training"}});
    return 4;
  } catch (const std::exception &e) {
    log.Error(e.what(), {{"kind", "internal"}});
    return 1;
  }
}

}  // namespace decipher::cli
