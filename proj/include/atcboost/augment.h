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
// Tag-preserving data augmentation for entity-tagged utterances. The four
// actions add, delete, swap and move manipulate the callsign span only;
// command, value, unit and greeting spans are never split or reordered.

#ifndef ATCBOOST_AUGMENT_H_
#define ATCBOOST_AUGMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "atcboost/callsign.h"

namespace atcboost {

enum class EntityTag { kCallsign, kCommand, kValue, kUnit, kGreeting, kNone };

// Per-token label. `begin` is true on the first token of a span and lets two
// adjacent spans of the same entity stay distinct. kNone tokens never set it.
struct TokenTag {
  EntityTag entity = EntityTag::kNone;
  bool begin = false;

  friend bool operator==(const TokenTag&, const TokenTag&) = default;
};

struct TaggedUtterance {
  std::string id;
  std::vector<std::string> tokens;
  std::vector<TokenTag> tags;

  friend bool operator==(const TaggedUtterance&, const TaggedUtterance&) =
      default;
};

// A maximal tagged span [begin, end) of one entity.
struct TagSpan {
  EntityTag entity = EntityTag::kNone;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const TagSpan&, const TagSpan&) = default;
};

enum class AugmentAction { kAdd, kDelete, kSwap, kMove };

// Returns a description of the first violated invariant, or nullopt if the
// utterance is well formed: token/tag alignment, no orphan inside tags, no
// begin flag on untagged tokens, at most one callsign span, printable
// whitespace-free tokens.
std::optional<std::string> InvariantViolation(const TaggedUtterance& u);

// All maximal non-kNone spans in order of appearance.
std::vector<TagSpan> Spans(const TaggedUtterance& u);

// The unique callsign span, or nullopt if the utterance has none.
std::optional<TagSpan> CallsignSpan(const TaggedUtterance& u);

// Positions where a new span may be inserted: every index in [0, |tokens|]
// that does not fall strictly inside an existing span.
std::vector<std::size_t> InsertionPoints(const TaggedUtterance& u);

// Removes the callsign span. Throws ContractError if there is none.
TaggedUtterance DeleteCallsign(const TaggedUtterance& u);

// Inserts `words` as a callsign span starting at `boundary`. Throws
// ContractError if the utterance already has a callsign span, `words` is
// empty, or `boundary` is not an insertion point.
TaggedUtterance InsertCallsign(const TaggedUtterance& u,
                               const std::vector<std::string>& words,
                               std::size_t boundary);

// Applies one action. delete/swap/move require a callsign span and add
// requires its absence; otherwise InapplicableActionError. add/swap draw an
// expansion from `pool` (ConfigError if empty), add/move draw an insertion
// point. All draws come from `rng`, so a fixed engine state fixes the output.
TaggedUtterance ApplyAction(const TaggedUtterance& u, AugmentAction action,
                            const std::vector<Expansion>& pool,
                            std::mt19937_64& rng);

// Grows `seed_corpus` to exactly `target` utterances: the originals first,
// then augmented copies generated by cycling over the seeds and sampling
// uniformly among the actions applicable to each. Augmented ids get a
// "-aug<n>" suffix with a corpus-wide counter. Pure function of its
// arguments. Throws ConfigError on an empty seed corpus, target below the
// seed count, or an empty pool, and ContractError on an invalid seed
// utterance.
std::vector<TaggedUtterance> GenerateCorpus(
    const std::vector<TaggedUtterance>& seed_corpus, std::size_t target,
    const std::vector<Expansion>& pool, std::uint64_t seed);

// Tagged corpus text format: one `token<TAB>tag` line per token with tags
// from {B,I}-{CAL,CMD,VAL,UNIT,GREET} plus O, a `# id=<utterance_id>` line
// before each utterance, and a blank line after it.
std::string TagName(TokenTag tag);
TokenTag ParseTagName(const std::string& name);

std::vector<TaggedUtterance> ReadTaggedCorpus(std::istream& in);
std::vector<TaggedUtterance> ReadTaggedCorpusFile(const std::string& path);
void WriteTaggedCorpus(const std::vector<TaggedUtterance>& corpus,
                       std::ostream& out);
void WriteTaggedCorpusFile(const std::vector<TaggedUtterance>& corpus,
                           const std::string& path);

}  // namespace atcboost

#endif  // ATCBOOST_AUGMENT_H_
