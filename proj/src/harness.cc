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

#include "atcboost/harness.h"

#include <charconv>
#include <fstream>
#include <set>

#include "atcboost/errors.h"
#include "atcboost/strings.h"

namespace atcboost {

namespace {

bool ParseBoolValue(const std::string& value, const std::string& key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("config: bad boolean for " + key + ": \"" + value + "\"");
}

double ParseDoubleValue(const std::string& value, const std::string& key) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config: bad number for " + key + ": \"" + value + "\"");
  }
  return out;
}

std::uint64_t ParseSeedValue(const std::string& value) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("config: bad seed: \"" + value + "\"");
  }
  return out;
}

const char* BoolName(bool value) { return value ? "true" : "false"; }

template <typename Map>
void RequireSameIds(const Map& a, const Map& b, const char* what) {
  if (a.empty() || b.empty()) {
    throw ConfigError(std::string(what) + ": empty utterance set");
  }
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first != ib->first) {
      throw ConfigError(std::string(what) + ": utterance id sets differ at \"" +
                        (ia->first < ib->first ? ia->first : ib->first) + "\"");
    }
    ++ia;
    ++ib;
  }
  if (ia != a.end() || ib != b.end()) {
    throw ConfigError(std::string(what) + ": utterance id sets differ at \"" +
                      (ia != a.end() ? ia->first : ib->first) + "\"");
  }
}

struct TsvReader {
  std::istream& in;
  const char* what;
  std::string line = {};
  int line_no = 0;

  // Calls fn(id, value, line_no) for every payload line.
  template <typename Fn>
  void ForEach(Fn fn) {
    std::set<std::string> ids;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> fields = Split(line, '\t');
      if (fields.size() != 2 || fields[0].empty()) {
        throw ParseError(std::string(what) + " line " +
                         std::to_string(line_no) + ": expected id<TAB>value");
      }
      if (!ids.insert(fields[0]).second) {
        throw ParseError(std::string(what) + " line " +
                         std::to_string(line_no) + ": duplicate id \"" +
                         fields[0] + "\"");
      }
      fn(fields[0], fields[1], line_no);
    }
  }
};

template <typename Fn>
auto WithFile(const std::string& path, const char* what, Fn fn) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(std::string("cannot open ") + what + " file: " + path);
  }
  try {
    return fn(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

RunConfig ReadRunConfig(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view stripped = StripAscii(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value, got \"" + line + "\"");
    }
    std::string key(StripAscii(stripped.substr(0, eq)));
    std::string value(StripAscii(stripped.substr(eq + 1)));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key or value");
    }
    if (key == "lattice_rescoring") {
      cfg.lattice_rescoring = ParseBoolValue(value, key);
    } else if (key == "g_extension") {
      cfg.g_extension = ParseBoolValue(value, key);
    } else if (key == "nlp_boosting") {
      cfg.nlp_boosting = ParseBoolValue(value, key);
    } else if (key == "discount") {
      cfg.boost.discount = ParseDoubleValue(value, key);
    } else if (key == "g_discount") {
      cfg.boost.g_discount = ParseDoubleValue(value, key);
    } else if (key == "include_shortened") {
      cfg.boost.include_shortened = ParseBoolValue(value, key);
    } else if (key == "substitution") {
      cfg.lev.substitution = ParseDoubleValue(value, key);
    } else if (key == "insertion") {
      cfg.lev.insertion = ParseDoubleValue(value, key);
    } else if (key == "deletion") {
      cfg.lev.deletion = ParseDoubleValue(value, key);
    } else if (key == "airline_deletion") {
      cfg.lev.airline_deletion = ParseDoubleValue(value, key);
    } else if (key == "lattice_dir") {
      cfg.lattice_dir = value;
    } else if (key == "transcripts") {
      cfg.transcripts_path = value;
    } else if (key == "surveillance") {
      cfg.surveillance_path = value;
    } else if (key == "lexicon") {
      cfg.lexicon_path = value;
    } else if (key == "grammar") {
      cfg.grammar_path = value;
    } else if (key == "candidates") {
      cfg.candidates_path = value;
    } else if (key == "references") {
      cfg.references_path = value;
    } else if (key == "reference_transcripts") {
      cfg.reference_transcripts_path = value;
    } else if (key == "report") {
      cfg.report_path = value;
    } else if (key == "seed") {
      cfg.seed = ParseSeedValue(value);
    } else {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key \"" + key + "\"");
    }
  }
  return cfg;
}

RunConfig ReadRunConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return ReadRunConfig(in);
}

void ValidateRunConfig(const RunConfig& cfg) {
  const bool have_lattices = !cfg.lattice_dir.empty();
  const bool have_transcripts = !cfg.transcripts_path.empty();
  if (have_lattices == have_transcripts) {
    throw ConfigError(
        "config: exactly one input source required (lattice_dir or "
        "transcripts)");
  }
  if ((cfg.lattice_rescoring || cfg.g_extension) && !have_lattices) {
    throw ConfigError(
        "config: lattice_rescoring and g_extension need a lattice archive");
  }
  if ((cfg.lattice_rescoring || cfg.g_extension || cfg.nlp_boosting) &&
      cfg.surveillance_path.empty()) {
    throw ConfigError("config: context-dependent switches need surveillance");
  }
  if (!cfg.grammar_path.empty() && !cfg.g_extension) {
    throw ConfigError("config: grammar given but g_extension is off");
  }
  if (cfg.lexicon_path.empty()) {
    throw ConfigError("config: lexicon is required");
  }
  if (cfg.references_path.empty()) {
    throw ConfigError("config: references are required");
  }
}

PipelineInputs LoadInputs(const RunConfig& cfg) {
  PipelineInputs inputs;
  if (!cfg.lattice_dir.empty()) {
    inputs.archive = ReadLatticeArchive(cfg.lattice_dir);
  }
  if (!cfg.transcripts_path.empty()) {
    inputs.transcripts = ReadTranscriptsFile(cfg.transcripts_path);
  }
  if (!cfg.surveillance_path.empty()) {
    inputs.snapshots = ReadSurveillanceFile(cfg.surveillance_path);
  }
  inputs.lexicon = AirlineLexicon::ReadFile(cfg.lexicon_path);
  if (!cfg.grammar_path.empty()) {
    if (!inputs.archive) {
      throw ConfigError("config: a grammar needs a lattice archive");
    }
    std::ifstream in(cfg.grammar_path);
    if (!in) throw ConfigError("cannot open grammar file: " + cfg.grammar_path);
    try {
      inputs.grammar = ReadWfstText(in, inputs.archive->symbols);
    } catch (const ParseError& e) {
      throw ParseError(cfg.grammar_path + ": " + e.what());
    }
  }
  if (!cfg.candidates_path.empty()) {
    inputs.candidates = ReadCandidatesFile(cfg.candidates_path);
  }
  inputs.references = ReadReferenceIcaosFile(cfg.references_path);
  if (!cfg.reference_transcripts_path.empty()) {
    inputs.reference_transcripts =
        ReadTranscriptsFile(cfg.reference_transcripts_path);
  }
  return inputs;
}

EvalReport RunPipeline(const RunConfig& cfg, const PipelineInputs& inputs) {
  const bool archive_mode = inputs.archive.has_value();
  if (archive_mode == !inputs.transcripts.empty()) {
    throw ConfigError(
        "pipeline: exactly one input source required (archive or "
        "transcripts)");
  }
  if ((cfg.lattice_rescoring || cfg.g_extension) && !archive_mode) {
    throw ConfigError(
        "pipeline: lattice_rescoring and g_extension need a lattice archive");
  }
  if (inputs.references.empty()) {
    throw ConfigError("pipeline: no utterances to score");
  }

  std::map<std::string, const Utterance*> lattice_of;
  std::shared_ptr<SymbolTable> symbols;
  if (archive_mode) {
    symbols = inputs.archive->symbols;
    for (const Utterance& u : inputs.archive->utterances) {
      lattice_of.emplace(u.id, &u);
    }
  }
  std::map<std::string, const SurveillanceSnapshot*> snapshot_of;
  for (const SurveillanceSnapshot& s : inputs.snapshots) {
    snapshot_of.emplace(s.utterance_id, &s);
  }

  // The grammar-extension machine covers every code seen on radar.
  Wfst extended;
  if (cfg.g_extension) {
    std::set<std::string> codes;
    for (const SurveillanceSnapshot& s : inputs.snapshots) {
      codes.insert(s.callsigns.begin(), s.callsigns.end());
    }
    std::vector<std::string> all_codes(codes.begin(), codes.end());
    // Without a grammar file, g-extension runs against the trivial
    // accept-all grammar, whose extension is the hub machine itself.
    extended = inputs.grammar
                   ? ExtendGrammar(*inputs.grammar, all_codes, inputs.lexicon,
                                   cfg.boost, symbols)
                   : BuildBiasMachine(all_codes, inputs.lexicon,
                                      cfg.boost.g_discount,
                                      cfg.boost.include_shortened, symbols);
  }

  EvalReport report;
  report.config = cfg;
  int wer_errors = 0;
  int wer_length = 0;

  for (const auto& [id, reference] : inputs.references) {
    UtteranceDecision decision;
    decision.id = id;
    decision.reference_icao = reference;

    auto snap_it = snapshot_of.find(id);
    const SurveillanceSnapshot* snap =
        snap_it == snapshot_of.end() ? nullptr : snap_it->second;
    const bool snapshot_missing =
        (cfg.lattice_rescoring || cfg.nlp_boosting) && snap == nullptr;

    std::optional<std::vector<std::string>> hypothesis;
    if (archive_mode) {
      auto lat_it = lattice_of.find(id);
      if (lat_it == lattice_of.end()) {
        throw ConfigError("pipeline: no lattice for utterance \"" + id + "\"");
      }
      const Wfst* current = &lat_it->second->lattice;
      Wfst owned;
      if (!snapshot_missing) {
        if (cfg.g_extension) {
          owned = Compose(*current, extended);
          current = &owned;
        }
        if (cfg.lattice_rescoring) {
          Wfst bias = BuildBiasingFst(*snap, inputs.lexicon, cfg.boost, symbols);
          Utterance scratch;
          scratch.id = id;
          scratch.lattice = *current;
          owned = RescoreLattice(scratch, bias);
          current = &owned;
        }
      }
      hypothesis = BestHypothesis(*current);
      if (!hypothesis && decision.error.empty()) {
        decision.error = "no hypothesis";
      }
    } else {
      auto tr_it = inputs.transcripts.find(id);
      if (tr_it == inputs.transcripts.end()) {
        throw ConfigError("pipeline: no transcript for utterance \"" + id +
                          "\"");
      }
      hypothesis = tr_it->second;
    }
    if (hypothesis) decision.hypothesis = *hypothesis;

    std::optional<std::vector<std::string>> candidate;
    if (!inputs.candidates.empty()) {
      auto cand_it = inputs.candidates.find(id);
      if (cand_it == inputs.candidates.end()) {
        throw ConfigError("pipeline: no candidate for utterance \"" + id +
                          "\"");
      }
      candidate = cand_it->second;
    } else if (hypothesis) {
      candidate = SpotCallsign(*hypothesis, inputs.lexicon);
    }

    if (snapshot_missing) {
      decision.error = "missing surveillance snapshot";
      decision.predicted_icao = kNoneMarker;
      decision.correct = false;
    } else if (cfg.nlp_boosting) {
      auto expansions = SnapshotExpansions(*snap, inputs.lexicon, cfg.boost);
      RerankResult r = Rerank(candidate, expansions, cfg.lev, inputs.lexicon);
      decision.predicted_icao = r.icao;
      decision.correct = decision.predicted_icao == reference;
    } else {
      decision.predicted_icao =
          candidate ? ExtractIcao(*candidate, inputs.lexicon)
                          .value_or(std::string(kNoneMarker))
                    : std::string(kNoneMarker);
      decision.correct = decision.predicted_icao == reference;
    }

    ++report.total;
    if (reference == kNoneMarker) {
      ++report.without_callsign;
    } else {
      ++report.with_callsign;
    }
    if (decision.correct) ++report.correct;

    if (!inputs.reference_transcripts.empty()) {
      auto ref_it = inputs.reference_transcripts.find(id);
      if (ref_it == inputs.reference_transcripts.end()) {
        throw ConfigError("pipeline: no reference transcript for utterance \"" +
                          id + "\"");
      }
      static const AirlineLexicon kEmptyLexicon;
      LevCosts unit{1.0, 1.0, 1.0, 1.0};
      wer_errors += static_cast<int>(WeightedLevenshtein(
          decision.hypothesis, ref_it->second, unit, kEmptyLexicon));
      wer_length += static_cast<int>(ref_it->second.size());
    }
    report.decisions.push_back(std::move(decision));
  }

  report.accuracy = 100.0 * report.correct / report.total;
  if (!inputs.reference_transcripts.empty()) {
    if (wer_length == 0) {
      throw ConfigError("pipeline: empty reference transcripts");
    }
    report.wer = 100.0 * wer_errors / wer_length;
  }
  return report;
}

EvalReport RunPipeline(const RunConfig& cfg) {
  ValidateRunConfig(cfg);
  PipelineInputs inputs = LoadInputs(cfg);
  EvalReport report = RunPipeline(cfg, inputs);
  if (!cfg.report_path.empty()) {
    std::ofstream out(cfg.report_path);
    if (!out) {
      throw ConfigError("cannot open report file for writing: " +
                        cfg.report_path);
    }
    WriteReport(report, out);
  }
  return report;
}

void WriteReport(const EvalReport& report, std::ostream& out) {
  const RunConfig& cfg = report.config;
  out << "# atcboost evaluation report\n";
  out << "# lattice_rescoring = " << BoolName(cfg.lattice_rescoring) << "\n";
  out << "# g_extension = " << BoolName(cfg.g_extension) << "\n";
  out << "# nlp_boosting = " << BoolName(cfg.nlp_boosting) << "\n";
  out << "# discount = " << FormatDouble(cfg.boost.discount) << "\n";
  out << "# g_discount = " << FormatDouble(cfg.boost.g_discount) << "\n";
  out << "# include_shortened = " << BoolName(cfg.boost.include_shortened)
      << "\n";
  out << "# substitution = " << FormatDouble(cfg.lev.substitution) << "\n";
  out << "# insertion = " << FormatDouble(cfg.lev.insertion) << "\n";
  out << "# deletion = " << FormatDouble(cfg.lev.deletion) << "\n";
  out << "# airline_deletion = " << FormatDouble(cfg.lev.airline_deletion)
      << "\n";
  out << "# seed = " << cfg.seed << "\n";
  out << "# scoring: utterances without a reference callsign count correct "
         "iff the prediction is NONE\n";
  out << "utterances\t" << report.total << "\n";
  out << "with_callsign\t" << report.with_callsign << "\n";
  out << "without_callsign\t" << report.without_callsign << "\n";
  out << "correct\t" << report.correct << "\n";
  out << "accuracy\t" << FormatDouble(report.accuracy) << "\n";
  if (report.wer) {
    out << "wer\t" << FormatDouble(*report.wer) << "\n";
  }
  out << "\n";
  out << "id\tpredicted\treference\tcorrect\terror\n";
  for (const UtteranceDecision& d : report.decisions) {
    out << d.id << '\t' << d.predicted_icao << '\t' << d.reference_icao << '\t'
        << (d.correct ? 1 : 0) << '\t' << d.error << "\n";
  }
}

double EvaluateCallsigns(
    const std::map<std::string, std::string>& predictions,
    const std::map<std::string, std::string>& references) {
  RequireSameIds(predictions, references, "evaluate_callsigns");
  int correct = 0;
  auto ip = predictions.begin();
  auto ir = references.begin();
  for (; ip != predictions.end(); ++ip, ++ir) {
    if (ip->second == ir->second) ++correct;
  }
  return 100.0 * correct / static_cast<int>(predictions.size());
}

double WordErrorRate(
    const std::map<std::string, std::vector<std::string>>& hypotheses,
    const std::map<std::string, std::vector<std::string>>& references) {
  RequireSameIds(hypotheses, references, "word_error_rate");
  static const AirlineLexicon kEmptyLexicon;
  LevCosts unit{1.0, 1.0, 1.0, 1.0};
  double errors = 0.0;
  int length = 0;
  auto ih = hypotheses.begin();
  auto ir = references.begin();
  for (; ih != hypotheses.end(); ++ih, ++ir) {
    errors += WeightedLevenshtein(ih->second, ir->second, unit, kEmptyLexicon);
    length += static_cast<int>(ir->second.size());
  }
  if (length == 0) {
    throw ConfigError("word_error_rate: empty reference transcripts");
  }
  return 100.0 * errors / length;
}

std::map<std::string, std::string> ReadReferenceIcaos(std::istream& in) {
  std::map<std::string, std::string> out;
  TsvReader reader{in, "references"};
  reader.ForEach([&](const std::string& id, const std::string& value,
                     int line_no) {
    if (value != kNoneMarker) {
      try {
        ParseIcao(value);
      } catch (const ParseError& e) {
        throw ParseError("references line " + std::to_string(line_no) + ": " +
                         e.what());
      }
    }
    out.emplace(id, value);
  });
  return out;
}

std::map<std::string, std::string> ReadReferenceIcaosFile(
    const std::string& path) {
  return WithFile(path, "references",
                  [](std::istream& in) { return ReadReferenceIcaos(in); });
}

void WriteReferenceIcaos(const std::map<std::string, std::string>& refs,
                         std::ostream& out) {
  for (const auto& [id, code] : refs) {
    out << id << '\t' << code << "\n";
  }
}

std::map<std::string, std::vector<std::string>> ReadTranscripts(
    std::istream& in) {
  std::map<std::string, std::vector<std::string>> out;
  TsvReader reader{in, "transcripts"};
  reader.ForEach(
      [&](const std::string& id, const std::string& value, int) {
        out.emplace(id, SplitWhitespace(value));
      });
  return out;
}

std::map<std::string, std::vector<std::string>> ReadTranscriptsFile(
    const std::string& path) {
  return WithFile(path, "transcripts",
                  [](std::istream& in) { return ReadTranscripts(in); });
}

void WriteTranscripts(
    const std::map<std::string, std::vector<std::string>>& transcripts,
    std::ostream& out) {
  for (const auto& [id, words] : transcripts) {
    out << id << '\t' << Join(words, " ") << "\n";
  }
}

std::map<std::string, std::optional<std::vector<std::string>>> ReadCandidates(
    std::istream& in) {
  std::map<std::string, std::optional<std::vector<std::string>>> out;
  TsvReader reader{in, "candidates"};
  reader.ForEach([&](const std::string& id, const std::string& value,
                     int line_no) {
    if (value == kNoCallsignMarker) {
      out.emplace(id, std::nullopt);
      return;
    }
    std::vector<std::string> words = SplitWhitespace(value);
    if (words.empty()) {
      throw ParseError("candidates line " + std::to_string(line_no) +
                       ": empty candidate (use NO_CALLSIGN)");
    }
    out.emplace(id, std::move(words));
  });
  return out;
}

std::map<std::string, std::optional<std::vector<std::string>>>
ReadCandidatesFile(const std::string& path) {
  return WithFile(path, "candidates",
                  [](std::istream& in) { return ReadCandidates(in); });
}

void WriteCandidates(
    const std::map<std::string, std::optional<std::vector<std::string>>>&
        candidates,
    std::ostream& out) {
  for (const auto& [id, words] : candidates) {
    out << id << '\t'
        << (words ? Join(*words, " ") : std::string(kNoCallsignMarker))
        << "\n";
  }
}

}  // namespace atcboost
