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
// atcboost command line. One subcommand per stage of the callsign
// recognition pipeline; `pipeline` runs the whole evaluation from a
// `key = value` config file. Exit code 0 on success, 1 on any
// configuration, parse or contract error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "atcboost/augment.h"
#include "atcboost/callsign.h"
#include "atcboost/context_bias.h"
#include "atcboost/errors.h"
#include "atcboost/harness.h"
#include "atcboost/rerank.h"
#include "atcboost/rescore.h"
#include "atcboost/strings.h"
#include "atcboost/synth.h"
#include "atcboost/wfst.h"

namespace atcboost {
namespace {

// Writes to the path, or to stdout when the path is empty.
void WithOutput(const std::string& path,
                const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  fn(out);
}

const SurveillanceSnapshot& SnapshotFor(
    const std::vector<SurveillanceSnapshot>& snapshots, const std::string& id,
    const char* who) {
  for (const SurveillanceSnapshot& s : snapshots) {
    if (s.utterance_id == id) return s;
  }
  throw ConfigError(std::string(who) + ": no surveillance snapshot for \"" +
                    id + "\"");
}

std::vector<Expansion> PoolFromCodes(const std::vector<std::string>& codes,
                                     const AirlineLexicon& lex) {
  std::vector<Expansion> pool;
  for (const std::string& code : codes) {
    for (Expansion& e : Expand(ParseIcao(code), lex)) {
      pool.push_back(std::move(e));
    }
  }
  return pool;
}

void RunExpand(const std::string& code, const std::string& lexicon_path,
               bool shortened) {
  AirlineLexicon lex = AirlineLexicon::ReadFile(lexicon_path);
  for (const Expansion& full : Expand(ParseIcao(code), lex)) {
    std::cout << Join(full.words, " ") << "\n";
    if (!shortened) continue;
    for (const Expansion& tail : ShortenedVariants(full)) {
      std::cout << Join(tail.words, " ") << "\n";
    }
  }
}

void RunBias(const std::string& surveillance_path, const std::string& id,
             const std::string& lexicon_path, const BoostConfig& boost,
             const std::string& fst_path, const std::string& symbols_path) {
  AirlineLexicon lex = AirlineLexicon::ReadFile(lexicon_path);
  auto snapshots = ReadSurveillanceFile(surveillance_path);
  const SurveillanceSnapshot& snap = SnapshotFor(snapshots, id, "bias");
  auto table = std::make_shared<SymbolTable>();
  Wfst bias = BuildBiasingFst(snap, lex, boost, table);
  WithOutput(fst_path, [&](std::ostream& out) { WriteWfstText(bias, out); });
  if (!symbols_path.empty()) {
    WithOutput(symbols_path, [&](std::ostream& out) { table->Write(out); });
  }
}

void RunRescore(const std::string& lattice_dir,
                const std::string& surveillance_path,
                const std::string& lexicon_path, const BoostConfig& boost,
                const std::string& output_path) {
  AirlineLexicon lex = AirlineLexicon::ReadFile(lexicon_path);
  LatticeArchive archive = ReadLatticeArchive(lattice_dir);
  auto snapshots = ReadSurveillanceFile(surveillance_path);
  std::map<std::string, std::vector<std::string>> best;
  for (const Utterance& u : archive.utterances) {
    const SurveillanceSnapshot& snap =
        SnapshotFor(snapshots, u.id, "rescore");
    Wfst bias = BuildBiasingFst(snap, lex, boost, archive.symbols);
    auto hypothesis = BestHypothesis(RescoreLattice(u, bias));
    if (!hypothesis) {
      throw ContractError("rescore: no hypothesis for \"" + u.id + "\"");
    }
    best.emplace(u.id, std::move(*hypothesis));
  }
  WithOutput(output_path,
             [&](std::ostream& out) { WriteTranscripts(best, out); });
}

void RunRerank(const std::string& candidates_path,
               const std::string& surveillance_path,
               const std::string& lexicon_path, const BoostConfig& boost,
               const LevCosts& costs, const std::string& output_path) {
  AirlineLexicon lex = AirlineLexicon::ReadFile(lexicon_path);
  auto candidates = ReadCandidatesFile(candidates_path);
  auto snapshots = ReadSurveillanceFile(surveillance_path);
  std::map<std::string, std::string> predictions;
  for (const auto& [id, candidate] : candidates) {
    const SurveillanceSnapshot& snap = SnapshotFor(snapshots, id, "rerank");
    auto expansions = SnapshotExpansions(snap, lex, boost);
    predictions.emplace(id, Rerank(candidate, expansions, costs, lex).icao);
  }
  WithOutput(output_path,
             [&](std::ostream& out) { WriteReferenceIcaos(predictions, out); });
}

void RunAugment(const std::string& input_path, int target,
                const std::vector<std::string>& codes,
                const std::string& lexicon_path, std::uint64_t seed,
                const std::string& output_path) {
  AirlineLexicon lex = AirlineLexicon::ReadFile(lexicon_path);
  std::vector<TaggedUtterance> seeds = ReadTaggedCorpusFile(input_path);
  std::vector<TaggedUtterance> corpus =
      GenerateCorpus(seeds, target, PoolFromCodes(codes, lex), seed);
  WithOutput(output_path,
             [&](std::ostream& out) { WriteTaggedCorpus(corpus, out); });
}

void RunSynth(const SynthConfig& cfg, const std::string& lexicon_path,
              const std::string& output_dir) {
  namespace fs = std::filesystem;
  AirlineLexicon lex = AirlineLexicon::ReadFile(lexicon_path);
  SynthTestset set = SynthesizeTestset(cfg, lex);
  fs::create_directories(fs::path(output_dir) / "lats");
  WriteLatticeArchive(set.archive, (fs::path(output_dir) / "lats").string());
  WithOutput((fs::path(output_dir) / "radar.tsv").string(),
             [&](std::ostream& out) { WriteSurveillance(set.snapshots, out); });
  WithOutput((fs::path(output_dir) / "refs.tsv").string(),
             [&](std::ostream& out) { WriteReferenceIcaos(set.references, out); });
  WithOutput((fs::path(output_dir) / "gold.tsv").string(), [&](std::ostream& out) {
    WriteTranscripts(set.reference_transcripts, out);
  });
}

void RunEval(const std::string& predictions_path,
             const std::string& references_path,
             const std::string& hypotheses_path,
             const std::string& reference_transcripts_path) {
  auto predictions = ReadReferenceIcaosFile(predictions_path);
  auto references = ReadReferenceIcaosFile(references_path);
  std::cout << "accuracy\t"
            << FormatDouble(EvaluateCallsigns(predictions, references))
            << "\n";
  if (!hypotheses_path.empty()) {
    auto hypotheses = ReadTranscriptsFile(hypotheses_path);
    auto gold = ReadTranscriptsFile(reference_transcripts_path);
    std::cout << "wer\t" << FormatDouble(WordErrorRate(hypotheses, gold))
              << "\n";
  }
}

void RunPipelineCommand(const std::string& config_path) {
  RunConfig cfg = ReadRunConfigFile(config_path);
  EvalReport report = RunPipeline(cfg);
  WriteReport(report, std::cout);
}

int Main(int argc, char** argv) {
  CLI::App app{"Surveillance-boosted callsign recognition toolkit"};
  app.require_subcommand(1);

  BoostConfig boost;
  LevCosts costs;

  auto* expand = app.add_subcommand("expand", "Print spoken expansions of an ICAO callsign");
  std::string expand_code, expand_lexicon;
  bool expand_shortened = false;
  expand->add_option("code", expand_code, "ICAO callsign, e.g. SWR2689")->required();
  expand->add_option("--lexicon", expand_lexicon, "airline lexicon file")->required();
  expand->add_flag("--shortened", expand_shortened, "also print shortened variants");
  expand->callback([&] { RunExpand(expand_code, expand_lexicon, expand_shortened); });

  auto* bias = app.add_subcommand("bias", "Write the biasing FST for one utterance's snapshot");
  std::string bias_surveillance, bias_id, bias_lexicon, bias_fst, bias_symbols;
  bias->add_option("--surveillance", bias_surveillance, "surveillance snapshot file")->required();
  bias->add_option("--utterance", bias_id, "utterance id to look up")->required();
  bias->add_option("--lexicon", bias_lexicon, "airline lexicon file")->required();
  bias->add_option("--discount", boost.discount, "per-callsign discount");
  bias->add_flag("--include-shortened", boost.include_shortened, "boost shortened variants too");
  bias->add_option("--fst", bias_fst, "output FST path (default stdout)");
  bias->add_option("--symbols", bias_symbols, "also write the symbol table here");
  bias->callback([&] {
    RunBias(bias_surveillance, bias_id, bias_lexicon, boost, bias_fst, bias_symbols);
  });

  auto* rescore = app.add_subcommand("rescore", "Rescore a lattice archive and print boosted 1-best transcripts");
  std::string rescore_lats, rescore_surveillance, rescore_lexicon, rescore_out;
  rescore->add_option("--lattice-dir", rescore_lats, "lattice archive directory")->required();
  rescore->add_option("--surveillance", rescore_surveillance, "surveillance snapshot file")->required();
  rescore->add_option("--lexicon", rescore_lexicon, "airline lexicon file")->required();
  rescore->add_option("--discount", boost.discount, "per-callsign discount");
  rescore->add_flag("--include-shortened", boost.include_shortened, "boost shortened variants too");
  rescore->add_option("--output", rescore_out, "output transcripts path (default stdout)");
  rescore->callback([&] {
    RunRescore(rescore_lats, rescore_surveillance, rescore_lexicon, boost, rescore_out);
  });

  auto* rerank = app.add_subcommand("rerank", "Re-rank NER candidates against surveillance expansions");
  std::string rerank_candidates, rerank_surveillance, rerank_lexicon, rerank_out;
  rerank->add_option("--candidates", rerank_candidates, "candidate file, id<TAB>words or NO_CALLSIGN")->required();
  rerank->add_option("--surveillance", rerank_surveillance, "surveillance snapshot file")->required();
  rerank->add_option("--lexicon", rerank_lexicon, "airline lexicon file")->required();
  rerank->add_flag("--include-shortened", boost.include_shortened, "match shortened variants too");
  rerank->add_option("--substitution", costs.substitution, "substitution cost");
  rerank->add_option("--insertion", costs.insertion, "insertion cost");
  rerank->add_option("--deletion", costs.deletion, "deletion cost");
  rerank->add_option("--airline-deletion", costs.airline_deletion, "airline-token deletion cost");
  rerank->add_option("--output", rerank_out, "output predictions path (default stdout)");
  rerank->callback([&] {
    RunRerank(rerank_candidates, rerank_surveillance, rerank_lexicon, boost, costs, rerank_out);
  });

  auto* augment = app.add_subcommand("augment", "Grow a tagged corpus with callsign-centric edits");
  std::string augment_in, augment_lexicon, augment_out;
  std::vector<std::string> augment_codes;
  int augment_target = 0;
  std::uint64_t augment_seed = 1;
  augment->add_option("--input", augment_in, "seed corpus in tagged format")->required();
  augment->add_option("--target", augment_target, "total output size")->required();
  augment->add_option("--callsigns", augment_codes, "ICAO codes whose expansions form the swap/add pool")
      ->required()->delimiter(',');
  augment->add_option("--lexicon", augment_lexicon, "airline lexicon file")->required();
  augment->add_option("--seed", augment_seed, "RNG seed");
  augment->add_option("--output", augment_out, "output corpus path (default stdout)");
  augment->callback([&] {
    RunAugment(augment_in, augment_target, augment_codes, augment_lexicon,
               augment_seed, augment_out);
  });

  auto* synth = app.add_subcommand("synth", "Generate a synthetic test set (lattices, radar, references)");
  SynthConfig synth_cfg;
  std::string synth_lexicon, synth_dir;
  synth->add_option("--num", synth_cfg.num_utterances, "utterance count");
  synth->add_option("--noise-rate", synth_cfg.noise_rate, "fraction with the reference off the 1-best");
  synth->add_option("--noisy-rank", synth_cfg.noisy_rank, "reference rank in a noisy lattice (2-4)");
  synth->add_option("--no-callsign-rate", synth_cfg.no_callsign_rate, "fraction without any callsign");
  synth->add_option("--min-distractors", synth_cfg.min_distractors, "snapshot distractor minimum");
  synth->add_option("--max-distractors", synth_cfg.max_distractors, "snapshot distractor maximum");
  synth->add_option("--seed", synth_cfg.seed, "RNG seed");
  synth->add_option("--lexicon", synth_lexicon, "airline lexicon file")->required();
  synth->add_option("--output", synth_dir, "output directory")->required();
  synth->callback([&] { RunSynth(synth_cfg, synth_lexicon, synth_dir); });

  auto* eval = app.add_subcommand("eval", "Score predicted callsigns, and transcripts when given");
  std::string eval_pred, eval_refs, eval_hyp, eval_gold;
  eval->add_option("--predictions", eval_pred, "predictions, id<TAB>ICAO-or-NONE")->required();
  eval->add_option("--references", eval_refs, "references, id<TAB>ICAO-or-NONE")->required();
  auto* hyp_opt = eval->add_option("--hypotheses", eval_hyp, "hypothesis transcripts for WER");
  auto* gold_opt = eval->add_option("--reference-transcripts", eval_gold, "gold transcripts for WER");
  hyp_opt->needs(gold_opt);
  gold_opt->needs(hyp_opt);
  eval->callback([&] { RunEval(eval_pred, eval_refs, eval_hyp, eval_gold); });

  auto* pipeline = app.add_subcommand("pipeline", "Run the full evaluation from a config file");
  std::string pipeline_config;
  pipeline->add_option("--config", pipeline_config, "run config, key = value lines")->required();
  pipeline->callback([&] { RunPipelineCommand(pipeline_config); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "atcboost: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace atcboost

int main(int argc, char** argv) { return atcboost::Main(argc, argv); }
