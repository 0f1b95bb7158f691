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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "atcboost/context_bias.h"
#include "atcboost/errors.h"
#include "atcboost/rerank.h"
#include "atcboost/rescore.h"
#include "atcboost/strings.h"
#include "testutil.h"

using namespace atcboost;

namespace {

AirlineLexicon PaperLexicon() {
  AirlineLexicon lex;
  lex.Add("AUA", {"austrian"});
  lex.Add("SWR", {"swiss"});
  lex.Add("DLH", {"lufthansa", "hansa"});
  return lex;
}

std::vector<std::string> Sentence(std::string_view text) {
  return SplitWhitespace(text);
}

double Recurse(const std::vector<std::string>& a, const std::vector<std::string>& b,
               const AirlineLexicon& lex, const LevCosts& c) {
  std::vector<bool> airline(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) airline[j] = lex.IsTelephonyToken(b[j]);
  return testutil::RecursiveEditDistance(a, b, airline, 0, 0, c.substitution,
                                         c.insertion, c.deletion,
                                         c.airline_deletion);
}

}  // namespace

TEST_CASE("weighted levenshtein basics") {
  AirlineLexicon lex = PaperLexicon();
  LevCosts costs;

  auto same = Sentence("swiss two six eight nine");
  CHECK(WeightedLevenshtein(same, same, costs, lex) == 0.0);

  // Dropping the telephony name costs only the discounted deletion.
  CHECK(WeightedLevenshtein(Sentence("three nine two papa"),
                            Sentence("austrian three nine two papa"), costs,
                            lex) == doctest::Approx(0.25).epsilon(1e-12));

  // Plain tokens of b absent from a are full deletions.
  CHECK(WeightedLevenshtein({}, Sentence("climb flight level"), costs, lex) ==
        doctest::Approx(3.0).epsilon(1e-12));

  // Extra tokens of a are insertions.
  CHECK(WeightedLevenshtein(Sentence("good morning"), {}, costs, lex) ==
        doctest::Approx(2.0).epsilon(1e-12));

  LevCosts bad;
  bad.deletion = -0.5;
  CHECK_THROWS_AS(WeightedLevenshtein(same, same, bad, lex), ConfigError);
}

TEST_CASE("dp equals the recursive oracle on every short pair") {
  AirlineLexicon lex = PaperLexicon();
  LevCosts costs;
  const std::vector<std::string> alphabet = {"austrian", "swiss", "three",
                                             "nine",     "two",   "papa"};

  // Every sequence of length <= 3 over the 6-word alphabet.
  std::vector<std::vector<std::string>> sequences{{}};
  std::size_t prev_begin = 0;
  for (int len = 1; len <= 3; ++len) {
    std::size_t prev_end = sequences.size();
    for (std::size_t s = prev_begin; s < prev_end; ++s) {
      for (const std::string& word : alphabet) {
        std::vector<std::string> next = sequences[s];
        next.push_back(word);
        sequences.push_back(std::move(next));
      }
    }
    prev_begin = prev_end;
  }
  REQUIRE(sequences.size() == 1 + 6 + 36 + 216);

  for (const auto& a : sequences) {
    for (const auto& b : sequences) {
      double dp = WeightedLevenshtein(a, b, costs, lex);
      double oracle = Recurse(a, b, lex, costs);
      REQUIRE(dp == oracle);
    }
  }
}

TEST_CASE("dp equals the recursive oracle on random longer pairs") {
  AirlineLexicon lex = PaperLexicon();
  std::mt19937_64 rng(83);
  const std::vector<std::string> alphabet = {"austrian", "swiss", "three",
                                             "nine",     "two",   "papa"};
  for (int trial = 0; trial < 300; ++trial) {
    LevCosts costs;
    costs.substitution = 0.25 * static_cast<double>(rng() % 9);
    costs.insertion = 0.25 * static_cast<double>(rng() % 9);
    costs.deletion = 0.25 * static_cast<double>(rng() % 9);
    costs.airline_deletion = 0.25 * static_cast<double>(rng() % 9);
    auto draw = [&]() {
      std::vector<std::string> s(rng() % 6);
      for (auto& w : s) w = alphabet[rng() % alphabet.size()];
      return s;
    };
    std::vector<std::string> a = draw(), b = draw();
    CHECK(WeightedLevenshtein(a, b, costs, lex) == Recurse(a, b, lex, costs));
  }
}

TEST_CASE("rerank picks the closest snapshot callsign") {
  AirlineLexicon lex = PaperLexicon();
  BoostConfig cfg;
  auto expansions =
      SnapshotExpansions({"utt1", 0, {"DLH6LY", "SWR2689"}}, lex, cfg);

  RerankResult r = Rerank(Sentence("six lima yankee"), expansions, LevCosts{}, lex);
  CHECK(r.icao == "DLH6LY");
  CHECK_FALSE(r.skipped);
  CHECK(r.distance == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(r.margin == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(r.examined == 3);  // lufthansa, hansa, swiss variants
}

TEST_CASE("rerank skips on the no-callsign flag") {
  AirlineLexicon lex = PaperLexicon();
  auto expansions = SnapshotExpansions({"utt1", 0, {"SWR2689"}}, lex, BoostConfig{});
  RerankResult r = Rerank(std::nullopt, expansions, LevCosts{}, lex);
  CHECK(r.skipped);
  CHECK(r.icao == kNoneMarker);
  CHECK(r.examined == 0);
}

TEST_CASE("rerank with an empty snapshot is a no-match") {
  AirlineLexicon lex = PaperLexicon();
  RerankResult r = Rerank(Sentence("six lima yankee"), {}, LevCosts{}, lex);
  CHECK_FALSE(r.skipped);
  CHECK(r.icao == kNoneMarker);
  CHECK(std::isinf(r.distance));
}

TEST_CASE("exact candidate match wins with distance zero") {
  AirlineLexicon lex = PaperLexicon();
  auto expansions = SnapshotExpansions(
      {"utt1", 0, {"SWR2689", "DLH5KX", "AUA392P"}}, lex, BoostConfig{});
  RerankResult r =
      Rerank(Sentence("austrian three nine two papa"), expansions, LevCosts{}, lex);
  CHECK(r.icao == "AUA392P");
  CHECK(r.distance == 0.0);
  CHECK(r.margin > 0.0);
}

TEST_CASE("rerank tie-breaking prefers shorter expansion then smaller code") {
  AirlineLexicon lex = PaperLexicon();
  std::map<std::string, std::vector<Expansion>> expansions;
  expansions["ZZA9"] = {{Sentence("eight nine nine"), "ZZA9", VariantKind::kFull}};
  expansions["ZZB9"] = {{Sentence("eight nine"), "ZZB9", VariantKind::kFull}};

  // Both candidates sit at distance 1.0; the shorter expansion wins even
  // though its code sorts later.
  RerankResult shorter = Rerank(Sentence("nine nine"), expansions, LevCosts{}, lex);
  CHECK(shorter.distance == doctest::Approx(1.0));
  CHECK(shorter.icao == "ZZB9");
  CHECK(shorter.margin == doctest::Approx(0.0));

  // Equal distance and equal length fall back to the smaller code.
  expansions["ZZB9"] = {{Sentence("eight nine nine"), "ZZB9", VariantKind::kFull}};
  RerankResult lexical = Rerank(Sentence("nine nine"), expansions, LevCosts{}, lex);
  CHECK(lexical.icao == "ZZA9");
}

TEST_CASE("scaling all costs never changes the chosen code") {
  AirlineLexicon lex = PaperLexicon();
  auto expansions = SnapshotExpansions(
      {"utt1", 0, {"SWR2689", "DLH5KX", "AUA392P", "DLH6LY"}}, lex, BoostConfig{});
  std::mt19937_64 rng(89);
  const std::vector<std::string> candidates[] = {
      Sentence("six lima yankee"), Sentence("swiss two six eight niner"),
      Sentence("three nine two papa"), Sentence("five kilo x-ray")};
  for (const auto& candidate : candidates) {
    RerankResult base = Rerank(candidate, expansions, LevCosts{}, lex);
    for (double scale : {0.5, 2.0, 3.0}) {
      LevCosts scaled;
      scaled.substitution *= scale;
      scaled.insertion *= scale;
      scaled.deletion *= scale;
      scaled.airline_deletion *= scale;
      RerankResult r = Rerank(candidate, expansions, scaled, lex);
      CHECK(r.icao == base.icao);
      CHECK(r.distance == doctest::Approx(base.distance * scale).epsilon(1e-9));
    }
  }
}

TEST_CASE("one-token corruption is recovered from distinct snapshots") {
  AirlineLexicon lex = PaperLexicon();
  BoostConfig cfg;
  SurveillanceSnapshot snap{"utt1", 0,
                            {"SWR2689", "DLH5KX", "AUA392P", "QXZ77T"}};
  auto expansions = SnapshotExpansions(snap, lex, cfg);
  std::mt19937_64 rng(97);
  int recovered = 0, trials = 0;
  for (const auto& [code, exps] : expansions) {
    for (const Expansion& e : exps) {
      for (int k = 0; k < 5; ++k) {
        std::vector<std::string> corrupted = e.words;
        corrupted[rng() % corrupted.size()] = "garble";
        RerankResult r = Rerank(corrupted, expansions, LevCosts{}, lex);
        ++trials;
        if (r.icao == code) ++recovered;
      }
    }
  }
  CHECK(trials == recovered);  // codes here are pairwise far apart
}

TEST_CASE("spot callsign finds the full span inside an utterance") {
  AirlineLexicon lex = PaperLexicon();
  auto span =
      SpotCallsign(Sentence("good morning swiss two six eight nine descend"), lex);
  REQUIRE(span.has_value());
  CHECK(*span == Sentence("swiss two six eight nine"));
}

TEST_CASE("spot callsign rejects bare value runs") {
  AirlineLexicon lex = PaperLexicon();
  // A flight level is digits only: not a callsign without a telephony name.
  CHECK_FALSE(SpotCallsign(Sentence("descend flight level one zero zero"), lex)
                  .has_value());
  // With the name in front the same digits become a callsign span.
  auto span = SpotCallsign(Sentence("swiss one zero zero descend"), lex);
  REQUIRE(span.has_value());
  CHECK(*span == Sentence("swiss one zero zero"));
  // A bare run containing a NATO letter is a shortened callsign.
  auto bare = SpotCallsign(Sentence("six lima yankee contact tower"), lex);
  REQUIRE(bare.has_value());
  CHECK(*bare == Sentence("six lima yankee"));
  CHECK_FALSE(SpotCallsign({}, lex).has_value());
  CHECK_FALSE(SpotCallsign(Sentence("swiss climbing"), lex).has_value());
}

TEST_CASE("spot callsign needs at least two pattern tokens") {
  AirlineLexicon lex = PaperLexicon();
  CHECK_FALSE(SpotCallsign(Sentence("swiss five contact tower"), lex).has_value());
  auto span = SpotCallsign(Sentence("swiss five nine contact"), lex);
  REQUIRE(span.has_value());
  CHECK(*span == Sentence("swiss five nine"));
}

TEST_CASE("spot callsign tolerates one interior non-pattern token") {
  AirlineLexicon lex = PaperLexicon();
  auto span = SpotCallsign(Sentence("swiss two ah six eight nine climb"), lex);
  REQUIRE(span.has_value());
  CHECK(*span == Sentence("swiss two ah six eight nine"));

  // Two interruptions end the run at the second one.
  auto cut = SpotCallsign(Sentence("swiss two ah six er eight nine"), lex);
  REQUIRE(cut.has_value());
  CHECK(*cut == Sentence("swiss two ah six"));

  // A trailing non-pattern token is not part of the span.
  auto tail = SpotCallsign(Sentence("swiss two six eight climb"), lex);
  REQUIRE(tail.has_value());
  CHECK(*tail == Sentence("swiss two six eight"));
}

TEST_CASE("spot callsign takes the longest span, leftmost on ties") {
  AirlineLexicon lex = PaperLexicon();
  auto longest = SpotCallsign(
      Sentence("swiss one two and hansa three four five six"), lex);
  REQUIRE(longest.has_value());
  CHECK(*longest == Sentence("hansa three four five six"));

  auto leftmost =
      SpotCallsign(Sentence("swiss one two then hansa three four"), lex);
  REQUIRE(leftmost.has_value());
  CHECK(*leftmost == Sentence("swiss one two"));
}

TEST_CASE("spot callsign matches two-word telephony names") {
  AirlineLexicon lex;
  lex.Add("WZZ", {"wizz air"});
  auto span = SpotCallsign(Sentence("good day wizz air four one six"), lex);
  REQUIRE(span.has_value());
  CHECK(*span == Sentence("wizz air four one six"));
}
