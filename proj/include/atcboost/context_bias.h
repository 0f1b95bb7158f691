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
//
// Surveillance-driven contextual biasing: per-utterance biasing FSTs over
// the callsigns active on radar, and grammar extension with the full
// callsign list.

#ifndef ATCBOOST_CONTEXT_BIAS_H_
#define ATCBOOST_CONTEXT_BIAS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "atcboost/callsign.h"
#include "atcboost/wfst.h"

namespace atcboost {

// Callsigns active on radar at one utterance's timestamp.
struct SurveillanceSnapshot {
  std::string utterance_id;
  std::int64_t timestamp = 0;
  std::vector<std::string> callsigns;  // ICAO codes
};

// Knobs for the two weight-level boosting techniques.
struct BoostConfig {
  double discount = 2.0;           // per-utterance biasing discount, >= 0
  bool include_shortened = false;  // also boost shortened variants
  double g_discount = 2.0;         // grammar-extension discount, >= 0
};

// Per-utterance biasing machine: a hub state (start and final, weight 0)
// with a sigma self-loop, plus one hub-to-hub path per expansion whose
// arcs weigh 0 except the last, weighing -discount. Composing a lattice
// with it never drops a path and discounts each completed callsign
// occurrence once on the best derivation. Expansion words are inserted
// into `table` on demand.
// Throws ConfigError on a negative discount, ContractError when the
// snapshot lists more than 1000 callsigns, ParseError on a bad code.
Wfst BuildBiasingFst(const SurveillanceSnapshot& snapshot,
                     const AirlineLexicon& lex, const BoostConfig& cfg,
                     const std::shared_ptr<SymbolTable>& table);

// The hub machine over an arbitrary code list, the shared core of both
// boosting techniques: no size cap, duplicates contribute one path set.
// It is also the extension of the trivial accept-all grammar, which cannot
// be expressed through ExtendGrammar (that requires a sigma-free g).
Wfst BuildBiasMachine(std::span<const std::string> codes,
                      const AirlineLexicon& lex, double discount,
                      bool include_shortened,
                      const std::shared_ptr<SymbolTable>& table);

// Grammar extension: accepts every sentence of `g` at its old weight plus
// every listed callsign expansion as an infix anywhere, discounted by
// cfg.g_discount. Realized as composition of g (widened with sigma
// self-loops at every state) with a biasing machine over the full list;
// the full list may be arbitrarily large. An empty list returns g
// unchanged. `table` must match g's symbol table. `g` must be sigma-free
// (ContractError otherwise): for the accept-all grammar the extension is
// BuildBiasMachine itself.
Wfst ExtendGrammar(const Wfst& g, std::span<const std::string> all_callsigns,
                   const AirlineLexicon& lex, const BoostConfig& cfg,
                   const std::shared_ptr<SymbolTable>& table);

// Expansions per snapshot callsign (full variants, plus shortened ones
// when configured), keyed and ordered by ICAO code. Codes that fail to
// parse are skipped and reported through `warnings` when non-null.
std::map<std::string, std::vector<Expansion>> SnapshotExpansions(
    const SurveillanceSnapshot& snapshot, const AirlineLexicon& lex,
    const BoostConfig& cfg, std::vector<std::string>* warnings = nullptr);

// Surveillance file: `utterance_id<TAB>timestamp<TAB>code,code,...` per
// line; the third field may be empty. Utterance ids must be unique.
std::vector<SurveillanceSnapshot> ReadSurveillance(std::istream& is);
std::vector<SurveillanceSnapshot> ReadSurveillanceFile(const std::string& path);
void WriteSurveillance(std::span<const SurveillanceSnapshot> snapshots,
                       std::ostream& os);

}  // namespace atcboost

#endif  // ATCBOOST_CONTEXT_BIAS_H_
