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

#include "atcboost/synth.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>

#include "atcboost/errors.h"

namespace atcboost {

namespace {

// None of these words may be a telephony name, a NATO word, or start with a
// digit word: the callsign spotter must never latch onto carrier phrases.
const std::vector<std::vector<std::string>> kGreetings = {
    {},
    {"good", "morning"},
    {"good", "day"},
    {"hello"},
};

const std::vector<std::vector<std::string>> kCommands = {
    {"descend", "flight", "level", "one", "two", "zero"},
    {"climb", "flight", "level", "three", "four", "zero"},
    {"contact", "tower", "one", "one", "eight", "decimal", "three"},
    {"reduce", "speed", "two", "two", "zero", "knots"},
    {"turn", "left", "heading", "three", "one", "zero"},
    {"cleared", "for", "approach", "runway", "two", "five"},
    {"maintain", "altitude", "four", "thousand", "feet"},
    {"hold", "position", "until", "further", "advised"},
};

bool DrawRate(std::mt19937_64& rng, double rate) {
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(rate * 1000000.0 + 0.5);
  return rng() % 1000000 < threshold;
}

// Suffix of 2 to 4 characters, digit first, digits twice as likely as
// letters afterwards. Two pattern tokens minimum keeps the spoken form
// recognizable as a callsign run.
std::string RandomSuffix(std::mt19937_64& rng) {
  std::size_t len = 2 + rng() % 3;
  std::string suffix(1, static_cast<char>('0' + rng() % 10));
  while (suffix.size() < len) {
    if (rng() % 15 < 10) {
      suffix.push_back(static_cast<char>('0' + rng() % 10));
    } else {
      suffix.push_back(static_cast<char>('A' + rng() % 26));
    }
  }
  return suffix;
}

std::string RandomCode(std::mt19937_64& rng,
                       const std::vector<std::string>& designators) {
  std::string designator;
  if (rng() % 2 == 0) {
    designator = designators[rng() % designators.size()];
  } else {
    std::size_t len = 2 + rng() % 2;
    for (std::size_t i = 0; i < len; ++i) {
      designator.push_back(static_cast<char>('A' + rng() % 26));
    }
  }
  return designator + RandomSuffix(rng);
}

std::vector<std::string> Concat(const std::vector<std::string>& greeting,
                                const std::vector<std::string>& middle,
                                const std::vector<std::string>& command) {
  std::vector<std::string> out = greeting;
  out.insert(out.end(), middle.begin(), middle.end());
  out.insert(out.end(), command.begin(), command.end());
  return out;
}

void Validate(const SynthConfig& cfg, const AirlineLexicon& lex) {
  if (cfg.num_utterances < 1 || cfg.num_utterances > 99999) {
    throw ConfigError("synth: num_utterances must be in [1, 99999]");
  }
  if (cfg.noise_rate < 0.0 || cfg.noise_rate > 1.0 ||
      cfg.no_callsign_rate < 0.0 || cfg.no_callsign_rate > 1.0) {
    throw ConfigError("synth: rates must be in [0, 1]");
  }
  if (cfg.noisy_rank < 2 || cfg.noisy_rank > 4) {
    throw ConfigError("synth: noisy_rank must be in [2, 4]");
  }
  if (cfg.min_distractors < 0 ||
      cfg.min_distractors > cfg.max_distractors) {
    throw ConfigError("synth: bad distractor range");
  }
  if (lex.NumAirlines() < 2) {
    throw ConfigError("synth: lexicon needs at least two airlines");
  }
}

}  // namespace

SynthTestset SynthesizeTestset(const SynthConfig& cfg,
                               const AirlineLexicon& lex) {
  Validate(cfg, lex);
  std::mt19937_64 rng(cfg.seed);
  const std::vector<std::string> designators = lex.Designators();

  SynthTestset set;
  auto table = std::make_shared<SymbolTable>();
  set.archive.symbols = table;

  for (int i = 0; i < cfg.num_utterances; ++i) {
    std::string id = "utt" + std::to_string(i + 1);
    id.insert(3, 5 - (id.size() - 3), '0');

    const std::vector<std::string>& greeting = kGreetings[rng() % kGreetings.size()];
    const std::vector<std::string>& command = kCommands[rng() % kCommands.size()];

    SurveillanceSnapshot snap;
    snap.utterance_id = id;
    snap.timestamp = 1700000000 + 10 * static_cast<std::int64_t>(i);

    std::vector<Wfst> paths;
    std::vector<std::string> reference_words;
    std::string reference_icao(kNoneMarker);
    std::set<std::string> excluded;

    if (DrawRate(rng, cfg.no_callsign_rate)) {
      // No spoken callsign: the lattice competes over the command phrase.
      reference_words = Concat(greeting, {}, command);
      std::size_t other = rng() % kCommands.size();
      while (&kCommands[other] == &command) other = rng() % kCommands.size();
      paths.push_back(LinearAcceptor(reference_words, Weight(0.4), table));
      paths.push_back(LinearAcceptor(Concat(greeting, {}, kCommands[other]),
                                     Weight(0.9), table));
    } else {
      const std::string& designator = designators[rng() % designators.size()];
      std::string suffix = RandomSuffix(rng);
      reference_icao = designator + suffix;
      excluded.insert(reference_icao);

      std::vector<Expansion> exps = Expand(ParseIcao(reference_icao), lex);
      const Expansion& spoken = exps[rng() % exps.size()];
      reference_words = Concat(greeting, spoken.words, command);

      // Competitor 1: another carrier's name on the same flight number.
      std::string other = designators[rng() % designators.size()];
      while (other == designator) other = designators[rng() % designators.size()];
      std::string other_code = other + suffix;
      excluded.insert(other_code);
      std::vector<Expansion> other_exps = Expand(ParseIcao(other_code), lex);
      std::vector<std::string> sub_words =
          Concat(greeting, other_exps[rng() % other_exps.size()].words, command);

      // Competitor 2: one digit of the suffix misheard.
      std::vector<std::size_t> digit_positions;
      for (std::size_t p = 0; p < suffix.size(); ++p) {
        if (std::isdigit(static_cast<unsigned char>(suffix[p]))) {
          digit_positions.push_back(p);
        }
      }
      std::string swapped_suffix = suffix;
      std::size_t pos = digit_positions[rng() % digit_positions.size()];
      char replacement = static_cast<char>('0' + rng() % 10);
      while (replacement == suffix[pos]) {
        replacement = static_cast<char>('0' + rng() % 10);
      }
      swapped_suffix[pos] = replacement;
      std::string swapped_code = designator + swapped_suffix;
      excluded.insert(swapped_code);
      std::vector<Expansion> swapped_exps = Expand(ParseIcao(swapped_code), lex);
      std::vector<std::string> swap_words = Concat(
          greeting, swapped_exps[rng() % swapped_exps.size()].words, command);

      // Competitor 3: the airline name dropped, leaving the bare suffix.
      std::vector<std::string> bare(spoken.words.end() - suffix.size(),
                                    spoken.words.end());
      std::vector<std::string> drop_words = Concat(greeting, bare, command);

      const bool noisy = DrawRate(rng, cfg.noise_rate);
      double reference_cost = noisy ? 1.0 : 0.4;
      std::vector<std::vector<std::string>> competitors = {sub_words, swap_words,
                                                           drop_words};
      // Which competitors outrank the reference on a noisy utterance.
      std::vector<std::size_t> order = {0, 1, 2};
      for (std::size_t k = 2; k > 0; --k) {
        std::swap(order[k], order[rng() % (k + 1)]);
      }
      std::vector<double> costs(3, 0.0);
      int cheaper = noisy ? cfg.noisy_rank - 1 : 0;
      for (int k = 0; k < 3; ++k) {
        double jitter = 0.05 * static_cast<double>(rng() % 4);
        costs[order[k]] = k < cheaper ? 0.1 + 0.3 * k + jitter
                                      : reference_cost + 0.3 * (k + 1) + jitter;
      }
      paths.push_back(
          LinearAcceptor(reference_words, Weight(reference_cost), table));
      for (int k = 0; k < 3; ++k) {
        paths.push_back(LinearAcceptor(competitors[k], Weight(costs[k]), table));
      }
    }

    // Snapshot: the reference code (when present) plus unique distractors,
    // never a competitor's code.
    int span = cfg.max_distractors - cfg.min_distractors + 1;
    int distractors = cfg.min_distractors + static_cast<int>(rng() % span);
    std::set<std::string> drawn = excluded;
    for (int k = 0; k < distractors; ++k) {
      std::string code = RandomCode(rng, designators);
      int attempts = 0;
      while (!drawn.insert(code).second) {
        if (++attempts > 1000) {
          throw ContractError("synth: cannot draw a fresh distractor code");
        }
        code = RandomCode(rng, designators);
      }
      snap.callsigns.push_back(std::move(code));
    }
    if (reference_icao != kNoneMarker) {
      std::size_t at = rng() % (snap.callsigns.size() + 1);
      snap.callsigns.insert(snap.callsigns.begin() + at, reference_icao);
    }

    Utterance utterance;
    utterance.id = id;
    utterance.lattice = Union(paths);
    set.archive.utterances.push_back(std::move(utterance));
    set.snapshots.push_back(std::move(snap));
    set.references[id] = reference_icao;
    set.reference_transcripts[id] = std::move(reference_words);
  }
  return set;
}

}  // namespace atcboost
