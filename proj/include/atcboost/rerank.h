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
// Surveillance re-ranking: match an extracted callsign word sequence
// against the expanded active-callsign list by weighted Levenshtein
// distance and emit the closest ICAO code.

#ifndef ATCBOOST_RERANK_H_
#define ATCBOOST_RERANK_H_

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "atcboost/callsign.h"

namespace atcboost {

// Token-level edit costs. Deleting a telephony-name token of the
// reference expansion is discounted so shortened spoken forms still match
// their full expansions.
// File marker for a hypothesis with no recognized callsign entity.
inline constexpr std::string_view kNoCallsignMarker = "NO_CALLSIGN";

struct LevCosts {
  double substitution = 1.0;
  double insertion = 1.0;
  double deletion = 1.0;
  double airline_deletion = 0.25;
};

// Edit distance from candidate `a` to reference `b` over whole words.
// Skipping a token of `a` is an insertion; skipping a token of `b` is a
// deletion, discounted when the token occurs in a telephony name of
// `lex`. Throws ConfigError on negative costs.
double WeightedLevenshtein(std::span<const std::string> a,
                           std::span<const std::string> b, const LevCosts& costs,
                           const AirlineLexicon& lex);

struct RerankResult {
  std::string icao;  // chosen code, or kNoneMarker-equivalent "NONE"
  bool skipped = false;  // candidate was NO_CALLSIGN, re-ranking skipped
  double distance = std::numeric_limits<double>::infinity();
  // Distance gap to the best expansion of any other code; infinity when
  // the snapshot holds no second code.
  double margin = 0.0;
  int examined = 0;  // (code, expansion) pairs compared
};

// Closest snapshot callsign to the candidate. A nullopt candidate is the
// NO_CALLSIGN flag: re-ranking is skipped. Ties break on shorter
// expansion, then lexicographically smaller ICAO. An empty expansion map
// yields NO_MATCH.
RerankResult Rerank(
    const std::optional<std::vector<std::string>>& candidate,
    const std::map<std::string, std::vector<Expansion>>& snapshot_expansions,
    const LevCosts& costs, const AirlineLexicon& lex);

// Grammar-based stand-in for an NER callsign tagger. Finds the longest
// span (leftmost on ties) shaped like a spoken callsign: an optional
// telephony name, then at least two digit/NATO tokens starting with a
// digit, with at most one interior non-pattern token. A span without a
// telephony name must contain a NATO letter; a bare digit run (a flight
// level, a heading) is not a callsign. nullopt is the NO_CALLSIGN flag.
std::optional<std::vector<std::string>> SpotCallsign(
    std::span<const std::string> hypothesis, const AirlineLexicon& lex);

}  // namespace atcboost

#endif  // ATCBOOST_RERANK_H_
