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

#include "atcboost/rerank.h"

#include <algorithm>

#include "atcboost/errors.h"
#include "atcboost/rescore.h"

namespace atcboost {

double WeightedLevenshtein(std::span<const std::string> a,
                           std::span<const std::string> b, const LevCosts& costs,
                           const AirlineLexicon& lex) {
  if (costs.substitution < 0.0 || costs.insertion < 0.0 || costs.deletion < 0.0 ||
      costs.airline_deletion < 0.0) {
    throw ConfigError("Levenshtein costs must be non-negative");
  }
  const std::size_t n = a.size();
  const std::size_t m = b.size();

  std::vector<double> del_cost(m);
  for (std::size_t j = 0; j < m; ++j) {
    del_cost[j] = lex.IsTelephonyToken(b[j]) ? costs.airline_deletion
                                             : costs.deletion;
  }

  // row[j] = distance between a[0..i) and b[0..j).
  std::vector<double> row(m + 1, 0.0);
  for (std::size_t j = 1; j <= m; ++j) row[j] = row[j - 1] + del_cost[j - 1];
  std::vector<double> next(m + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    next[0] = row[0] + costs.insertion;
    for (std::size_t j = 1; j <= m; ++j) {
      double step = a[i - 1] == b[j - 1] ? 0.0 : costs.substitution;
      next[j] = std::min({row[j - 1] + step, row[j] + costs.insertion,
                          next[j - 1] + del_cost[j - 1]});
    }
    row.swap(next);
  }
  return row[m];
}

RerankResult Rerank(
    const std::optional<std::vector<std::string>>& candidate,
    const std::map<std::string, std::vector<Expansion>>& snapshot_expansions,
    const LevCosts& costs, const AirlineLexicon& lex) {
  RerankResult result;
  result.icao = kNoneMarker;
  if (!candidate.has_value()) {
    result.skipped = true;
    return result;
  }

  // Best expansion per code; the global winner ties toward the shorter
  // expansion, then the smaller code.
  std::size_t best_len = 0;
  std::map<std::string, double> best_per_code;
  for (const auto& [code, expansions] : snapshot_expansions) {
    for (const Expansion& e : expansions) {
      double d = WeightedLevenshtein(*candidate, e.words, costs, lex);
      ++result.examined;
      auto [it, inserted] = best_per_code.emplace(code, d);
      if (!inserted && d < it->second) it->second = d;
      bool better = d < result.distance ||
                    (d == result.distance &&
                     (result.icao == kNoneMarker || e.words.size() < best_len));
      if (better) {
        result.icao = code;
        result.distance = d;
        best_len = e.words.size();
      }
    }
  }
  if (result.icao == kNoneMarker) return result;  // empty snapshot

  result.margin = std::numeric_limits<double>::infinity();
  for (const auto& [code, d] : best_per_code) {
    if (code != result.icao) result.margin = std::min(result.margin, d - result.distance);
  }
  return result;
}

namespace {

struct RunMatch {
  std::size_t end = 0;    // one past the last pattern token
  int pattern_tokens = 0;
  int nato_tokens = 0;
};

// Maximal digit/NATO run from `start`, which must be a digit word. One
// interior non-pattern token is tolerated when a pattern token follows.
std::optional<RunMatch> MatchRun(std::span<const std::string> words,
                                 std::size_t start) {
  if (start >= words.size() || !DigitOfWord(words[start])) return std::nullopt;
  RunMatch run;
  bool garbage_used = false;
  std::size_t i = start;
  while (i < words.size()) {
    if (DigitOfWord(words[i])) {
      ++run.pattern_tokens;
      run.end = i + 1;
      ++i;
    } else if (LetterOfNatoWord(words[i])) {
      ++run.pattern_tokens;
      ++run.nato_tokens;
      run.end = i + 1;
      ++i;
    } else if (!garbage_used && i + 1 < words.size() &&
               IsCallsignToken(words[i + 1])) {
      garbage_used = true;
      ++i;
    } else {
      break;
    }
  }
  return run;
}

}  // namespace

std::optional<std::vector<std::string>> SpotCallsign(
    std::span<const std::string> hypothesis, const AirlineLexicon& lex) {
  std::size_t best_begin = 0;
  std::size_t best_len = 0;

  auto consider = [&](std::size_t begin, std::size_t end) {
    std::size_t len = end - begin;
    if (len > best_len) {
      best_begin = begin;
      best_len = len;
    }
  };

  for (std::size_t pos = 0; pos < hypothesis.size(); ++pos) {
    // Telephony name, then a digit-led run of two or more pattern tokens.
    for (std::size_t name_len : {std::size_t{2}, std::size_t{1}}) {
      if (pos + name_len >= hypothesis.size()) continue;
      std::string name = hypothesis[pos];
      if (name_len == 2) name += " " + hypothesis[pos + 1];
      if (!lex.DesignatorOfName(name)) continue;
      auto run = MatchRun(hypothesis, pos + name_len);
      if (run && run->pattern_tokens >= 2) consider(pos, run->end);
    }
    // Bare run: needs a NATO letter, or it is a value like a flight level.
    auto run = MatchRun(hypothesis, pos);
    if (run && run->pattern_tokens >= 2 && run->nato_tokens >= 1) {
      consider(pos, run->end);
    }
  }

  if (best_len == 0) return std::nullopt;
  return std::vector<std::string>(
      hypothesis.begin() + static_cast<std::ptrdiff_t>(best_begin),
      hypothesis.begin() + static_cast<std::ptrdiff_t>(best_begin + best_len));
}

}  // namespace atcboost
