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

#include "decipher/lm/lm_io.h"

#include <filesystem>
#include <fstream>

#include "decipher/errors.h"
#include "decipher/fst/fst_io.h"
#include "json.hpp"

namespace decipher::lm {

namespace fs = std::filesystem;
using nlohmann::json;

fst::Wfst LoadedLm::GraphemeAcceptor() const {
  if (kind == TokenKind::kGrapheme) return fst;
  if (!lexicon) throw ConfigError("word model without lexicon");
  return WordGraphemeAcceptor(*lexicon, fst);
}

std::string SaveLm(const NGramLm &lm, const std::string &dir,
                   const std::string &name, const GraphemeLexicon *lexicon,
                   const std::string &grapheme_syms_file) {
  fs::create_directories(dir);
  const fs::path base(dir);
  json meta;
  meta["order"] = lm.Order();
  meta["token_kind"] = std::string(TokenKindName(lm.Kind()));
  meta["alphabet"] = name + ".syms";
  meta["fst"] = name + ".fst";
  lm.Alphabet()->WriteFile((base / (name + ".syms")).string());
  const fst::Wfst f = LmToFst(lm);
  fst::WriteTextFile(f, (base / (name + ".fst")).string());
  meta["num_states"] = f.NumStates();
  meta["num_arcs"] = f.TotalArcs();
  if (lm.Kind() == TokenKind::kWord) {
    if (!lexicon) throw ConfigError("SaveLm: word model needs a lexicon");
    lexicon->WriteFile((base / (name + ".lex")).string());
    meta["lexicon"] = name + ".lex";
    meta["graphemes"] = grapheme_syms_file;
  }
  const std::string path = (base / (name + ".json")).string();
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path);
  os << meta.dump(2) << '\n';
  return path;
}

LoadedLm LoadLm(const std::string &sidecar_path) {
  std::ifstream is(sidecar_path);
  if (!is) throw ConfigError("cannot open: " + sidecar_path);
  json meta;
  try {
    meta = json::parse(is);
  } catch (const json::exception &e) {
    throw FormatError(sidecar_path + ": " + e.what());
  }
  const fs::path base = fs::path(sidecar_path).parent_path();
  auto file = [&](const char *key) {
    if (!meta.contains(key) || !meta[key].is_string()) {
      throw FormatError(sidecar_path + ": missing '" + key + "'");
    }
    return (base / meta[key].get<std::string>()).string();
  };
  LoadedLm out;
  out.order = meta.value("order", 0);
  out.kind = ParseTokenKind(meta.value("token_kind", std::string("grapheme")));
  auto syms = std::make_shared<const fst::SymbolTable>(
      fst::SymbolTable::ReadFile(file("alphabet")));
  out.fst = fst::ReadTextFile(file("fst"), syms, syms);
  if (out.kind == TokenKind::kWord) {
    auto graphemes = std::make_shared<const fst::SymbolTable>(
        fst::SymbolTable::ReadFile(file("graphemes")));
    out.lexicon = GraphemeLexicon::ReadFile(file("lexicon"), graphemes, syms);
  }
  return out;
}

}  // namespace decipher::lm
