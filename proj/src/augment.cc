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

#include "atcboost/augment.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "atcboost/errors.h"
#include "atcboost/strings.h"

namespace atcboost {

namespace {

const char* EntityName(EntityTag entity) {
  switch (entity) {
    case EntityTag::kCallsign: return "CAL";
    case EntityTag::kCommand: return "CMD";
    case EntityTag::kValue: return "VAL";
    case EntityTag::kUnit: return "UNIT";
    case EntityTag::kGreeting: return "GREET";
    case EntityTag::kNone: return "O";
  }
  return "O";
}

std::optional<EntityTag> EntityOfName(std::string_view name) {
  if (name == "CAL") return EntityTag::kCallsign;
  if (name == "CMD") return EntityTag::kCommand;
  if (name == "VAL") return EntityTag::kValue;
  if (name == "UNIT") return EntityTag::kUnit;
  if (name == "GREET") return EntityTag::kGreeting;
  return std::nullopt;
}

bool HasWhitespace(const std::string& token) {
  return std::any_of(token.begin(), token.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

void RequireValid(const TaggedUtterance& u, const char* who) {
  if (auto violation = InvariantViolation(u)) {
    throw ContractError(std::string(who) + ": utterance \"" + u.id +
                        "\": " + *violation);
  }
}

}  // namespace

std::optional<std::string> InvariantViolation(const TaggedUtterance& u) {
  if (u.tokens.size() != u.tags.size()) {
    return "token/tag length mismatch: " + std::to_string(u.tokens.size()) +
           " tokens, " + std::to_string(u.tags.size()) + " tags";
  }
  int callsign_spans = 0;
  for (std::size_t i = 0; i < u.tokens.size(); ++i) {
    if (u.tokens[i].empty() || HasWhitespace(u.tokens[i])) {
      return "token " + std::to_string(i) + " is empty or has whitespace";
    }
    const TokenTag& tag = u.tags[i];
    if (tag.entity == EntityTag::kNone) {
      if (tag.begin) {
        return "begin flag on untagged token " + std::to_string(i);
      }
      continue;
    }
    if (!tag.begin &&
        (i == 0 || u.tags[i - 1].entity != tag.entity)) {
      return "inside tag without a span start at token " + std::to_string(i);
    }
    if (tag.begin && tag.entity == EntityTag::kCallsign) ++callsign_spans;
  }
  if (callsign_spans > 1) {
    return "multiple callsign spans (" + std::to_string(callsign_spans) + ")";
  }
  return std::nullopt;
}

std::vector<TagSpan> Spans(const TaggedUtterance& u) {
  std::vector<TagSpan> spans;
  const std::size_t n = std::min(u.tokens.size(), u.tags.size());
  for (std::size_t i = 0; i < n; ++i) {
    const TokenTag& tag = u.tags[i];
    if (tag.entity == EntityTag::kNone) continue;
    if (tag.begin || spans.empty() || spans.back().entity != tag.entity ||
        spans.back().end != i) {
      spans.push_back({tag.entity, i, i + 1});
    } else {
      spans.back().end = i + 1;
    }
  }
  return spans;
}

std::optional<TagSpan> CallsignSpan(const TaggedUtterance& u) {
  for (const TagSpan& span : Spans(u)) {
    if (span.entity == EntityTag::kCallsign) return span;
  }
  return std::nullopt;
}

std::vector<std::size_t> InsertionPoints(const TaggedUtterance& u) {
  const std::size_t n = u.tokens.size();
  std::vector<bool> interior(n + 1, false);
  for (const TagSpan& span : Spans(u)) {
    for (std::size_t p = span.begin + 1; p < span.end; ++p) interior[p] = true;
  }
  std::vector<std::size_t> points;
  for (std::size_t p = 0; p <= n; ++p) {
    if (!interior[p]) points.push_back(p);
  }
  return points;
}

TaggedUtterance DeleteCallsign(const TaggedUtterance& u) {
  auto span = CallsignSpan(u);
  if (!span) {
    throw ContractError("DeleteCallsign: utterance \"" + u.id +
                        "\" has no callsign span");
  }
  TaggedUtterance out = u;
  out.tokens.erase(out.tokens.begin() + span->begin,
                   out.tokens.begin() + span->end);
  out.tags.erase(out.tags.begin() + span->begin, out.tags.begin() + span->end);
  return out;
}

TaggedUtterance InsertCallsign(const TaggedUtterance& u,
                               const std::vector<std::string>& words,
                               std::size_t boundary) {
  if (CallsignSpan(u)) {
    throw ContractError("InsertCallsign: utterance \"" + u.id +
                        "\" already has a callsign span");
  }
  if (words.empty()) {
    throw ContractError("InsertCallsign: empty callsign word sequence");
  }
  std::vector<std::size_t> points = InsertionPoints(u);
  if (std::find(points.begin(), points.end(), boundary) == points.end()) {
    throw ContractError("InsertCallsign: position " + std::to_string(boundary) +
                        " is not an insertion point");
  }
  TaggedUtterance out = u;
  std::vector<TokenTag> tags(words.size(), {EntityTag::kCallsign, false});
  tags.front().begin = true;
  out.tokens.insert(out.tokens.begin() + boundary, words.begin(), words.end());
  out.tags.insert(out.tags.begin() + boundary, tags.begin(), tags.end());
  return out;
}

TaggedUtterance ApplyAction(const TaggedUtterance& u, AugmentAction action,
                            const std::vector<Expansion>& pool,
                            std::mt19937_64& rng) {
  RequireValid(u, "ApplyAction");
  auto span = CallsignSpan(u);
  auto need_span = [&](const char* name) {
    if (!span) {
      throw InapplicableActionError(std::string(name) + ": utterance \"" +
                                    u.id + "\" has no callsign span");
    }
  };
  auto draw_expansion = [&]() -> const Expansion& {
    if (pool.empty()) throw ConfigError("empty callsign pool");
    return pool[rng() % pool.size()];
  };
  switch (action) {
    case AugmentAction::kDelete: {
      need_span("delete");
      return DeleteCallsign(u);
    }
    case AugmentAction::kMove: {
      need_span("move");
      std::vector<std::string> words(u.tokens.begin() + span->begin,
                                     u.tokens.begin() + span->end);
      TaggedUtterance stripped = DeleteCallsign(u);
      std::vector<std::size_t> points = InsertionPoints(stripped);
      return InsertCallsign(stripped, words, points[rng() % points.size()]);
    }
    case AugmentAction::kSwap: {
      need_span("swap");
      const Expansion& e = draw_expansion();
      return InsertCallsign(DeleteCallsign(u), e.words, span->begin);
    }
    case AugmentAction::kAdd: {
      if (span) {
        throw InapplicableActionError("add: utterance \"" + u.id +
                                      "\" already has a callsign span");
      }
      const Expansion& e = draw_expansion();
      std::vector<std::size_t> points = InsertionPoints(u);
      return InsertCallsign(u, e.words, points[rng() % points.size()]);
    }
  }
  throw ContractError("ApplyAction: unknown action");
}

std::vector<TaggedUtterance> GenerateCorpus(
    const std::vector<TaggedUtterance>& seed_corpus, std::size_t target,
    const std::vector<Expansion>& pool, std::uint64_t seed) {
  if (seed_corpus.empty()) {
    throw ConfigError("generate_corpus: empty seed corpus");
  }
  if (target < seed_corpus.size()) {
    throw ConfigError("generate_corpus: target " + std::to_string(target) +
                      " is below the seed corpus size " +
                      std::to_string(seed_corpus.size()));
  }
  if (pool.empty()) {
    throw ConfigError("generate_corpus: empty callsign pool");
  }
  for (const TaggedUtterance& u : seed_corpus) {
    RequireValid(u, "generate_corpus");
  }
  std::vector<TaggedUtterance> out = seed_corpus;
  out.reserve(target);
  std::mt19937_64 rng(seed);
  std::size_t cursor = 0;
  std::size_t counter = 0;
  while (out.size() < target) {
    const TaggedUtterance& u = seed_corpus[cursor % seed_corpus.size()];
    ++cursor;
    std::vector<AugmentAction> applicable;
    if (CallsignSpan(u)) {
      applicable = {AugmentAction::kDelete, AugmentAction::kSwap,
                    AugmentAction::kMove};
    } else {
      applicable = {AugmentAction::kAdd};
    }
    AugmentAction action = applicable[rng() % applicable.size()];
    TaggedUtterance v = ApplyAction(u, action, pool, rng);
    ++counter;
    v.id = u.id + "-aug" + std::to_string(counter);
    out.push_back(std::move(v));
  }
  return out;
}

std::string TagName(TokenTag tag) {
  if (tag.entity == EntityTag::kNone) return "O";
  return std::string(tag.begin ? "B-" : "I-") + EntityName(tag.entity);
}

TokenTag ParseTagName(const std::string& name) {
  if (name == "O") return {EntityTag::kNone, false};
  if (name.size() > 2 && (name[0] == 'B' || name[0] == 'I') && name[1] == '-') {
    if (auto entity = EntityOfName(std::string_view(name).substr(2))) {
      return {*entity, name[0] == 'B'};
    }
  }
  throw ParseError("unknown tag \"" + name + "\"");
}

std::vector<TaggedUtterance> ReadTaggedCorpus(std::istream& in) {
  std::vector<TaggedUtterance> corpus;
  std::unordered_set<std::string> ids;
  TaggedUtterance current;
  bool open = false;
  std::string line;
  int line_no = 0;

  auto flush = [&]() {
    if (!open) return;
    if (current.tokens.empty()) {
      throw ParseError("tagged corpus: utterance \"" + current.id +
                       "\" has no tokens");
    }
    if (auto violation = InvariantViolation(current)) {
      throw ParseError("tagged corpus: utterance \"" + current.id +
                       "\": " + *violation);
    }
    if (!ids.insert(current.id).second) {
      throw ParseError("tagged corpus: duplicate utterance id \"" +
                       current.id + "\"");
    }
    corpus.push_back(std::move(current));
    current = TaggedUtterance{};
    open = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view stripped = StripAscii(line);
    if (stripped.empty()) {
      flush();
      continue;
    }
    if (stripped.front() == '#') {
      constexpr std::string_view kIdPrefix = "# id=";
      if (stripped.substr(0, kIdPrefix.size()) != kIdPrefix) continue;
      if (open) {
        throw ParseError("tagged corpus line " + std::to_string(line_no) +
                         ": missing blank line before new utterance id");
      }
      std::string id(StripAscii(stripped.substr(kIdPrefix.size())));
      if (id.empty()) {
        throw ParseError("tagged corpus line " + std::to_string(line_no) +
                         ": empty utterance id");
      }
      current.id = std::move(id);
      open = true;
      continue;
    }
    if (!open) {
      throw ParseError("tagged corpus line " + std::to_string(line_no) +
                       ": token before any \"# id=\" line");
    }
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      throw ParseError("tagged corpus line " + std::to_string(line_no) +
                       ": expected token<TAB>tag, got \"" + line + "\"");
    }
    current.tokens.push_back(fields[0]);
    try {
      current.tags.push_back(ParseTagName(fields[1]));
    } catch (const ParseError& e) {
      throw ParseError("tagged corpus line " + std::to_string(line_no) + ": " +
                       e.what());
    }
  }
  flush();
  return corpus;
}

std::vector<TaggedUtterance> ReadTaggedCorpusFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tagged corpus file: " + path);
  try {
    return ReadTaggedCorpus(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void WriteTaggedCorpus(const std::vector<TaggedUtterance>& corpus,
                       std::ostream& out) {
  for (const TaggedUtterance& u : corpus) {
    RequireValid(u, "WriteTaggedCorpus");
    if (u.id.empty() || HasWhitespace(u.id)) {
      throw ContractError("WriteTaggedCorpus: bad utterance id \"" + u.id +
                          "\"");
    }
    out << "# id=" << u.id << "\n";
    for (std::size_t i = 0; i < u.tokens.size(); ++i) {
      out << u.tokens[i] << '\t' << TagName(u.tags[i]) << "\n";
    }
    out << "\n";
  }
}

void WriteTaggedCorpusFile(const std::vector<TaggedUtterance>& corpus,
                           const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open tagged corpus file for writing: " + path);
  WriteTaggedCorpus(corpus, out);
}

}  // namespace atcboost
