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
// Per-utterance lattice rescoring: compose the decoding lattice with the
// surveillance biasing machine and read off the boosted best hypothesis.

#ifndef ATCBOOST_RESCORE_H_
#define ATCBOOST_RESCORE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "atcboost/wfst.h"

namespace atcboost {

// File marker for "explicitly no callsign" in reference and prediction
// listings; an empty reference_icao means "not provided".
inline constexpr std::string_view kNoneMarker = "NONE";

struct Utterance {
  std::string id;
  Wfst lattice;  // acyclic and trim
  std::optional<std::vector<std::string>> reference_transcript;
  std::string reference_icao;  // ICAO code, kNoneMarker, or empty
};

// Returns trim(compose(lattice, bias)). The path label-set is preserved
// whenever `bias` carries the hub sigma loop. Throws ContractError on a
// cyclic lattice.
Wfst RescoreLattice(const Utterance& u, const Wfst& bias);

// Words of the lowest-cost path, via the machine's symbol table; epsilon
// and sigma are never emitted. nullopt when the machine has no successful
// path (the NO_HYPOTHESIS outcome).
std::optional<std::vector<std::string>> BestHypothesis(const Wfst& l);

// A lattice archive is a directory of `<utterance_id>.fst` text machines
// sharing one `words.txt` symbol table.
struct LatticeArchive {
  std::shared_ptr<SymbolTable> symbols;
  std::vector<Utterance> utterances;  // sorted by id
};

LatticeArchive ReadLatticeArchive(const std::string& dir);
void WriteLatticeArchive(const LatticeArchive& archive, const std::string& dir);

}  // namespace atcboost

#endif  // ATCBOOST_RESCORE_H_
