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

#include "atcboost/context_bias.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "atcboost/errors.h"
#include "atcboost/strings.h"

namespace atcboost {

namespace {

// Appends one hub-anchored expansion path. All arcs weigh 0 except the
// last, which carries the whole discount; a prefix alone earns nothing.
void AddExpansionPath(Wfst* fst, int hub, const Expansion& e, double discount,
                      const std::shared_ptr<SymbolTable>& table) {
  int state = hub;
  for (std::size_t i = 0; i < e.words.size(); ++i) {
    int label = table->AddWord(e.words[i]);
    bool last = i + 1 == e.words.size();
    int next = last ? hub : fst->AddState();
    fst->AddArc(state, {label, label, last ? Weight(-discount) : Weight::One(),
                        next});
    state = next;
  }
}

}  // namespace

Wfst BuildBiasMachine(std::span<const std::string> codes, const AirlineLexicon& lex,
                      double discount, bool include_shortened,
                      const std::shared_ptr<SymbolTable>& table) {
  if (discount < 0.0) {
    throw ConfigError("bias discount must be non-negative, got " +
                      FormatDouble(discount));
  }
  Wfst fst(table);
  const int hub = fst.AddState();
  fst.SetStart(hub);
  fst.SetFinal(hub, Weight::One());
  fst.AddArc(hub, {kSigmaLabel, kSigmaLabel, Weight::One(), hub});

  std::unordered_set<std::string> seen;
  for (const std::string& code : codes) {
    if (!seen.insert(code).second) continue;
    ParsedCallsign parsed = ParseIcao(code);
    for (const Expansion& full : Expand(parsed, lex)) {
      AddExpansionPath(&fst, hub, full, discount, table);
      if (!include_shortened) continue;
      for (const Expansion& shortened : ShortenedVariants(full)) {
        AddExpansionPath(&fst, hub, shortened, discount, table);
      }
    }
  }
  return fst;
}

Wfst BuildBiasingFst(const SurveillanceSnapshot& snapshot,
                     const AirlineLexicon& lex, const BoostConfig& cfg,
                     const std::shared_ptr<SymbolTable>& table) {
  if (cfg.discount < 0.0) {
    throw ConfigError("biasing discount must be non-negative, got " +
                      FormatDouble(cfg.discount));
  }
  if (snapshot.callsigns.size() > 1000) {
    throw ContractError("snapshot " + snapshot.utterance_id + " lists " +
                        std::to_string(snapshot.callsigns.size()) +
                        " callsigns; per-utterance biasing caps at 1000");
  }
  return BuildBiasMachine(snapshot.callsigns, lex, cfg.discount,
                          cfg.include_shortened, table);
}

Wfst ExtendGrammar(const Wfst& g, std::span<const std::string> all_callsigns,
                   const AirlineLexicon& lex, const BoostConfig& cfg,
                   const std::shared_ptr<SymbolTable>& table) {
  if (cfg.g_discount < 0.0) {
    throw ConfigError("grammar-extension discount must be non-negative, got " +
                      FormatDouble(cfg.g_discount));
  }
  if (g.Symbols() && table && g.Symbols() != table && *g.Symbols() != *table) {
    throw ConfigError("ExtendGrammar: grammar and symbol table disagree");
  }
  for (int s = 0; s < g.NumStates(); ++s) {
    for (const Arc& arc : g.Arcs(s)) {
      if (arc.ilabel == kSigmaLabel || arc.olabel == kSigmaLabel) {
        throw ContractError(
            "ExtendGrammar: grammar must be sigma-free; sigma never matches "
            "the bias machine's own sigma loop (use BuildBiasMachine for the "
            "accept-all grammar)");
      }
    }
  }
  if (all_callsigns.empty() || g.IsEmpty()) return g;

  // Widen g: a sigma self-loop at every state lets a callsign infix be
  // consumed in place, paired against the bias machine's discount paths.
  Wfst widened(table);
  for (int s = 0; s < g.NumStates(); ++s) widened.AddState();
  widened.SetStart(g.Start());
  for (int s = 0; s < g.NumStates(); ++s) {
    for (const Arc& arc : g.Arcs(s)) widened.AddArc(s, arc);
    widened.AddArc(s, {kSigmaLabel, kSigmaLabel, Weight::One(), s});
    Weight fin = g.Final(s);
    if (!fin.IsZero()) widened.SetFinal(s, fin);
  }

  Wfst bias = BuildBiasMachine(all_callsigns, lex, cfg.g_discount,
                               cfg.include_shortened, table);
  return Compose(widened, bias);
}

std::map<std::string, std::vector<Expansion>> SnapshotExpansions(
    const SurveillanceSnapshot& snapshot, const AirlineLexicon& lex,
    const BoostConfig& cfg, std::vector<std::string>* warnings) {
  std::map<std::string, std::vector<Expansion>> out;
  for (const std::string& code : snapshot.callsigns) {
    if (out.contains(code)) continue;
    ParsedCallsign parsed;
    try {
      parsed = ParseIcao(code);
    } catch (const ParseError& err) {
      if (warnings) {
        warnings->push_back("snapshot " + snapshot.utterance_id + ": " +
                            err.what());
      }
      continue;
    }
    std::vector<Expansion> expansions = Expand(parsed, lex);
    if (cfg.include_shortened) {
      std::vector<Expansion> shortened;
      for (const Expansion& full : expansions) {
        for (Expansion& v : ShortenedVariants(full)) {
          if (std::find(shortened.begin(), shortened.end(), v) ==
              shortened.end()) {
            shortened.push_back(std::move(v));
          }
        }
      }
      expansions.insert(expansions.end(), shortened.begin(), shortened.end());
    }
    out.emplace(code, std::move(expansions));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Surveillance I/O

std::vector<SurveillanceSnapshot> ReadSurveillance(std::istream& is) {
  std::vector<SurveillanceSnapshot> out;
  std::unordered_set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != 3) {
      throw ParseError("surveillance line " + std::to_string(line_no) +
                       ": expected id<TAB>timestamp<TAB>codes, got \"" + line +
                       "\"");
    }
    SurveillanceSnapshot snap;
    snap.utterance_id = fields[0];
    if (snap.utterance_id.empty()) {
      throw ParseError("surveillance line " + std::to_string(line_no) +
                       ": empty utterance id");
    }
    if (!ids.insert(snap.utterance_id).second) {
      throw ParseError("surveillance line " + std::to_string(line_no) +
                       ": duplicate utterance id \"" + snap.utterance_id + "\"");
    }
    const std::string& ts = fields[1];
    auto [ptr, ec] = std::from_chars(ts.data(), ts.data() + ts.size(),
                                     snap.timestamp);
    if (ec != std::errc() || ptr != ts.data() + ts.size()) {
      throw ParseError("surveillance line " + std::to_string(line_no) +
                       ": bad timestamp \"" + ts + "\"");
    }
    if (!fields[2].empty()) {
      for (const std::string& raw : Split(fields[2], ',')) {
        std::string code(StripAscii(raw));
        if (!code.empty()) snap.callsigns.push_back(std::move(code));
      }
    }
    out.push_back(std::move(snap));
  }
  return out;
}

std::vector<SurveillanceSnapshot> ReadSurveillanceFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open surveillance file: " + path);
  return ReadSurveillance(in);
}

void WriteSurveillance(std::span<const SurveillanceSnapshot> snapshots,
                       std::ostream& os) {
  for (const SurveillanceSnapshot& snap : snapshots) {
    os << snap.utterance_id << '\t' << snap.timestamp << '\t'
       << Join(snap.callsigns, ",") << '\n';
  }
}

}  // namespace atcboost
