// Copyright (c) 2026 The atcboost Authors
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

#include "atcboost/rescore.h"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "atcboost/errors.h"

namespace atcboost {

namespace fs = std::filesystem;

Wfst RescoreLattice(const Utterance& u, const Wfst& bias) {
  if (!u.lattice.IsEmpty() && !u.lattice.IsAcyclic()) {
    throw ContractError("utterance " + u.id + ": lattice is cyclic");
  }
  return Compose(u.lattice, bias);
}

std::optional<std::vector<std::string>> BestHypothesis(const Wfst& l) {
  if (l.IsEmpty()) return std::nullopt;
  std::vector<ScoredPath> best = ShortestPath(l, 1);
  if (best.empty()) return std::nullopt;
  const std::shared_ptr<const SymbolTable>& symbols = l.Symbols();
  if (!symbols) throw ContractError("BestHypothesis: machine has no symbol table");
  std::vector<std::string> words;
  words.reserve(best[0].labels.size());
  for (int label : best[0].labels) {
    if (label == kEpsilonLabel || label == kSigmaLabel) continue;
    words.push_back(symbols->WordOf(label));
  }
  return words;
}

LatticeArchive ReadLatticeArchive(const std::string& dir) {
  fs::path root(dir);
  if (!fs::is_directory(root)) {
    throw ConfigError("lattice archive is not a directory: " + dir);
  }
  fs::path words = root / "words.txt";
  std::ifstream words_in(words);
  if (!words_in) {
    throw ConfigError("lattice archive has no symbol table: " + words.string());
  }

  LatticeArchive archive;
  archive.symbols = std::make_shared<SymbolTable>(SymbolTable::Read(words_in));

  std::vector<fs::path> files;
  for (const fs::directory_entry& entry : fs::directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".fst") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  for (const fs::path& file : files) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open lattice: " + file.string());
    Utterance u;
    u.id = file.stem().string();
    try {
      u.lattice = Trim(ReadWfstText(in, archive.symbols));
    } catch (const ParseError& err) {
      throw ParseError(file.string() + ": " + err.what());
    }
    if (!u.lattice.IsEmpty() && !u.lattice.IsAcyclic()) {
      throw ParseError(file.string() + ": lattice is cyclic");
    }
    archive.utterances.push_back(std::move(u));
  }
  return archive;
}

void WriteLatticeArchive(const LatticeArchive& archive, const std::string& dir) {
  if (!archive.symbols) {
    throw ContractError("WriteLatticeArchive: archive has no symbol table");
  }
  fs::path root(dir);
  fs::create_directories(root);
  {
    std::ofstream words(root / "words.txt");
    if (!words) throw ConfigError("cannot write symbol table under: " + dir);
    archive.symbols->Write(words);
  }
  for (const Utterance& u : archive.utterances) {
    if (u.id.empty() || u.id.find('/') != std::string::npos) {
      throw ContractError("WriteLatticeArchive: bad utterance id \"" + u.id + "\"");
    }
    std::ofstream out(root / (u.id + ".fst"));
    if (!out) throw ConfigError("cannot write lattice for utterance " + u.id);
    WriteWfstText(u.lattice, out);
  }
}

}  // namespace atcboost
