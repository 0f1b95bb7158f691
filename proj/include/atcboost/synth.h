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
// Synthetic test-set generator: utterance lattices with a known reference
// callsign, confusable competitor paths, and per-utterance surveillance
// snapshots. Stands in for recorded ATC corpora in tests and demos.

#ifndef ATCBOOST_SYNTH_H_
#define ATCBOOST_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "atcboost/callsign.h"
#include "atcboost/context_bias.h"
#include "atcboost/rescore.h"

namespace atcboost {

struct SynthConfig {
  int num_utterances = 100;
  // Fraction of callsign-bearing utterances whose lattice ranks a corrupted
  // path above the reference path.
  double noise_rate = 0.0;
  // Rank of the reference path in a noisy lattice; 2 to 4 (the generator
  // emits three competitor paths per utterance).
  int noisy_rank = 2;
  // Fraction of utterances that carry no callsign at all.
  double no_callsign_rate = 0.0;
  // Snapshot distractor count is drawn uniformly from this inclusive range.
  int min_distractors = 5;
  int max_distractors = 50;
  std::uint64_t seed = 1;
};

struct SynthTestset {
  LatticeArchive archive;
  std::vector<SurveillanceSnapshot> snapshots;
  // Reference ICAO code per utterance id, or "NONE".
  std::map<std::string, std::string> references;
  std::map<std::string, std::vector<std::string>> reference_transcripts;
};

// Generates `cfg.num_utterances` utterances. Each callsign-bearing lattice
// holds the reference path plus three corruptions of it (another airline's
// name, a swapped digit, a dropped airline name); the snapshot holds the
// reference code, never a competitor's code, and the drawn distractors.
// Pure function of (cfg, lex). Throws ConfigError on out-of-range settings
// or a lexicon with fewer than two airlines.
SynthTestset SynthesizeTestset(const SynthConfig& cfg,
                               const AirlineLexicon& lex);

}  // namespace atcboost

#endif  // ATCBOOST_SYNTH_H_
