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
// Run the boosting pipeline over a test set and score it: per utterance,
// optionally extend the grammar, rescore the lattice, take the best
// hypothesis, spot (or inject) the callsign, optionally rerank it against
// the surveillance snapshot, and map it to an ICAO code. Reports callsign
// accuracy and word error rate.

#ifndef ATCBOOST_HARNESS_H_
#define ATCBOOST_HARNESS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atcboost/callsign.h"
#include "atcboost/context_bias.h"
#include "atcboost/rerank.h"
#include "atcboost/rescore.h"

namespace atcboost {

struct RunConfig {
  bool lattice_rescoring = false;
  bool g_extension = false;
  bool nlp_boosting = false;
  BoostConfig boost;
  LevCosts lev;

  // Exactly one of the two input sources may be set.
  std::string lattice_dir;       // lattice archive directory
  std::string transcripts_path;  // hypothesis transcripts, id<TAB>words

  std::string surveillance_path;  // required by any context-dependent switch
  std::string lexicon_path;       // airline lexicon, always required
  std::string grammar_path;       // optional grammar acceptor for g-extension
  std::string candidates_path;    // optional injected NER candidates
  std::string references_path;    // id<TAB>ICAO-or-NONE, required
  std::string reference_transcripts_path;  // optional, enables WER
  std::string report_path;        // optional report output file
  std::uint64_t seed = 0;
};

// `key = value` config file; '#' starts a comment. Unknown keys and
// malformed values raise ConfigError. Keys: lattice_rescoring, g_extension,
// nlp_boosting, discount, g_discount, include_shortened, substitution,
// insertion, deletion, airline_deletion, lattice_dir, transcripts,
// surveillance, lexicon, grammar, candidates, references,
// reference_transcripts, report, seed.
RunConfig ReadRunConfig(std::istream& in);
RunConfig ReadRunConfigFile(const std::string& path);

// Throws ConfigError when the switch/path combination cannot run.
void ValidateRunConfig(const RunConfig& cfg);

struct UtteranceDecision {
  std::string id;
  std::string predicted_icao;  // code or "NONE"
  std::string reference_icao;  // code or "NONE"
  bool correct = false;
  // Set when the utterance hit a recoverable error (for example a missing
  // surveillance snapshot); such utterances score as incorrect.
  std::string error;
  std::vector<std::string> hypothesis;  // final hypothesis words
};

struct EvalReport {
  RunConfig config;  // echoed, defaults included
  int total = 0;
  int with_callsign = 0;
  int without_callsign = 0;
  int correct = 0;
  double accuracy = 0.0;            // percent
  std::optional<double> wer;        // percent, with reference transcripts
  std::vector<UtteranceDecision> decisions;  // ordered by utterance id
};

// Header of config echoes, aggregate `key<TAB>value` lines, then one
// `id<TAB>predicted<TAB>reference<TAB>correct<TAB>error` line per utterance.
void WriteReport(const EvalReport& report, std::ostream& out);

// In-memory inputs; RunPipeline(cfg) fills this from the configured paths.
struct PipelineInputs {
  std::optional<LatticeArchive> archive;
  std::map<std::string, std::vector<std::string>> transcripts;
  std::vector<SurveillanceSnapshot> snapshots;
  AirlineLexicon lexicon;
  std::optional<Wfst> grammar;
  std::map<std::string, std::optional<std::vector<std::string>>> candidates;
  std::map<std::string, std::string> references;
  std::map<std::string, std::vector<std::string>> reference_transcripts;
};

PipelineInputs LoadInputs(const RunConfig& cfg);

// Scores every utterance in inputs.references, in id order. A missing
// snapshot under a context-dependent switch is recorded on the decision and
// scores as incorrect; the run continues. Deterministic for fixed inputs.
EvalReport RunPipeline(const RunConfig& cfg, const PipelineInputs& inputs);
EvalReport RunPipeline(const RunConfig& cfg);

// Percent of utterances whose predicted code equals the reference exactly
// ("NONE" on both sides counts as correct). Throws ConfigError when the id
// sets differ or are empty.
double EvaluateCallsigns(const std::map<std::string, std::string>& predictions,
                         const std::map<std::string, std::string>& references);

// Corpus word error rate, 100 * (S + D + I) / N under unit costs. Throws
// ConfigError when the id sets differ, are empty, or N is zero.
double WordErrorRate(
    const std::map<std::string, std::vector<std::string>>& hypotheses,
    const std::map<std::string, std::vector<std::string>>& references);

// Small tab-separated per-utterance files. Duplicate ids raise ParseError.
std::map<std::string, std::string> ReadReferenceIcaos(std::istream& in);
std::map<std::string, std::string> ReadReferenceIcaosFile(
    const std::string& path);
void WriteReferenceIcaos(const std::map<std::string, std::string>& refs,
                         std::ostream& out);

std::map<std::string, std::vector<std::string>> ReadTranscripts(
    std::istream& in);
std::map<std::string, std::vector<std::string>> ReadTranscriptsFile(
    const std::string& path);
void WriteTranscripts(
    const std::map<std::string, std::vector<std::string>>& transcripts,
    std::ostream& out);

// Candidate lines are `id<TAB>words` or `id<TAB>NO_CALLSIGN`.
std::map<std::string, std::optional<std::vector<std::string>>> ReadCandidates(
    std::istream& in);
std::map<std::string, std::optional<std::vector<std::string>>>
ReadCandidatesFile(const std::string& path);
void WriteCandidates(
    const std::map<std::string, std::optional<std::vector<std::string>>>&
        candidates,
    std::ostream& out);

}  // namespace atcboost

#endif  // ATCBOOST_HARNESS_H_
