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

#include "atcboost/callsign.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <istream>

#include "atcboost/errors.h"
#include "atcboost/strings.h"

namespace atcboost {

namespace {

constexpr std::array<std::string_view, 26> kNatoWords = {
    "alfa",   "bravo", "charlie", "delta",  "echo",    "foxtrot", "golf",
    "hotel",  "india", "juliett", "kilo",   "lima",    "mike",    "november",
    "oscar",  "papa",  "quebec",  "romeo",  "sierra",  "tango",   "uniform",
    "victor", "whiskey", "x-ray", "yankee", "zulu"};

constexpr std::array<std::string_view, 10> kDigitWords = {
    "zero", "one", "two", "three", "four", "five",
    "six",  "seven", "eight", "nine"};

bool IsUpperLetter(char c) { return c >= 'A' && c <= 'Z'; }
bool IsDigitChar(char c) { return c >= '0' && c <= '9'; }

std::string Quoted(std::string_view span) {
  return "\"" + std::string(span) + "\"";
}

}  // namespace

std::string_view NatoWordOf(char letter) {
  if (!IsUpperLetter(letter)) {
    throw ContractError(std::string("NatoWordOf: not an uppercase letter: '") +
                        letter + "'");
  }
  return kNatoWords[static_cast<std::size_t>(letter - 'A')];
}

std::string_view DigitWordOf(char digit) {
  if (!IsDigitChar(digit)) {
    throw ContractError(std::string("DigitWordOf: not a digit: '") + digit + "'");
  }
  return kDigitWords[static_cast<std::size_t>(digit - '0')];
}

std::optional<char> LetterOfNatoWord(std::string_view word) {
  for (std::size_t i = 0; i < kNatoWords.size(); ++i) {
    if (word == kNatoWords[i]) return static_cast<char>('A' + i);
  }
  if (word == "alpha") return 'A';
  if (word == "juliet") return 'J';
  if (word == "whisky") return 'W';
  if (word == "xray") return 'X';
  return std::nullopt;
}

std::optional<char> DigitOfWord(std::string_view word) {
  for (std::size_t i = 0; i < kDigitWords.size(); ++i) {
    if (word == kDigitWords[i]) return static_cast<char>('0' + i);
  }
  return std::nullopt;
}

bool IsCallsignToken(std::string_view word) {
  return DigitOfWord(word).has_value() || LetterOfNatoWord(word).has_value();
}

ParsedCallsign ParseIcao(std::string_view code) {
  if (code.empty()) throw ParseError("empty callsign code");
  std::size_t letters = 0;
  while (letters < code.size() && IsUpperLetter(code[letters])) ++letters;
  if (letters < 2 || letters > 3) {
    throw ParseError("callsign " + Quoted(code) + ": designator " +
                     Quoted(code.substr(0, letters)) +
                     " must be 2-3 uppercase letters");
  }
  std::string_view suffix = code.substr(letters);
  if (suffix.empty() || !IsDigitChar(suffix[0])) {
    throw ParseError("callsign " + Quoted(code) + ": suffix " + Quoted(suffix) +
                     " must start with a digit");
  }
  for (char c : suffix) {
    if (!IsDigitChar(c) && !IsUpperLetter(c)) {
      throw ParseError("callsign " + Quoted(code) + ": suffix " + Quoted(suffix) +
                       " has invalid character '" + std::string(1, c) + "'");
    }
  }
  return {std::string(code), std::string(code.substr(0, letters)),
          std::string(suffix)};
}

// ---------------------------------------------------------------------------
// AirlineLexicon

void AirlineLexicon::Add(std::string_view designator, std::vector<std::string> names) {
  std::string key = ToUpperAscii(designator);
  if (key.size() < 2 || key.size() > 3 ||
      !std::all_of(key.begin(), key.end(), IsUpperLetter)) {
    throw ParseError("airline lexicon: bad designator " + Quoted(designator));
  }
  if (names.empty()) {
    throw ParseError("airline lexicon: " + key + " has no telephony names");
  }
  for (const std::string& name : names) {
    std::vector<std::string> words = SplitWhitespace(name);
    if (words.empty() || words.size() > 2) {
      throw ParseError("airline lexicon: " + key + ": telephony name " +
                       Quoted(name) + " must be 1 or 2 words");
    }
    for (const std::string& word : words) {
      for (char c : word) {
        if (std::isupper(static_cast<unsigned char>(c))) {
          throw ParseError("airline lexicon: " + key + ": telephony name " +
                           Quoted(name) + " must be lowercase");
        }
      }
    }
  }

  entries_[key] = std::move(names);

  // Rebuild the inverse maps so replaced entries leave no stale names.
  name_to_designator_.clear();
  telephony_tokens_.clear();
  for (const auto& [des, list] : entries_) {
    for (const std::string& name : list) {
      auto it = name_to_designator_.find(name);
      if (it == name_to_designator_.end() || des < it->second) {
        name_to_designator_[name] = des;
      }
      for (const std::string& word : SplitWhitespace(name)) {
        telephony_tokens_.insert(word);
      }
    }
  }
}

const std::vector<std::string>* AirlineLexicon::Find(
    std::string_view designator) const {
  auto it = entries_.find(ToUpperAscii(designator));
  if (it == entries_.end()) return nullptr;
  return &it->second;
}

std::optional<std::string> AirlineLexicon::DesignatorOfName(
    std::string_view name) const {
  auto it = name_to_designator_.find(std::string(name));
  if (it == name_to_designator_.end()) return std::nullopt;
  return it->second;
}

bool AirlineLexicon::IsTelephonyToken(std::string_view word) const {
  return telephony_tokens_.contains(std::string(word));
}

std::vector<std::string> AirlineLexicon::Designators() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [des, names] : entries_) out.push_back(des);
  return out;
}

AirlineLexicon AirlineLexicon::Read(std::istream& is) {
  AirlineLexicon lex;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::string_view stripped = StripAscii(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::vector<std::string> fields = Split(stripped, '\t');
    if (fields.size() != 2) {
      throw ParseError("airline lexicon line " + std::to_string(line_no) +
                       ": expected DESIGNATOR<TAB>name1|name2, got " +
                       Quoted(stripped));
    }
    std::vector<std::string> names;
    for (const std::string& raw : Split(fields[1], '|')) {
      std::string name(StripAscii(raw));
      if (name.empty()) {
        throw ParseError("airline lexicon line " + std::to_string(line_no) +
                         ": empty telephony name");
      }
      names.push_back(std::move(name));
    }
    lex.Add(fields[0], std::move(names));
  }
  return lex;
}

AirlineLexicon AirlineLexicon::ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open airline lexicon: " + path);
  return Read(in);
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

std::vector<std::string> SuffixWords(std::string_view suffix) {
  std::vector<std::string> words;
  words.reserve(suffix.size());
  for (char c : suffix) {
    words.emplace_back(IsDigitChar(c) ? DigitWordOf(c) : NatoWordOf(c));
  }
  return words;
}

void PushUnique(std::vector<Expansion>* out, Expansion e) {
  if (std::find(out->begin(), out->end(), e) == out->end()) {
    out->push_back(std::move(e));
  }
}

}  // namespace

std::vector<Expansion> Expand(const ParsedCallsign& c, const AirlineLexicon& lex) {
  std::vector<std::vector<std::string>> name_variants;
  if (const std::vector<std::string>* names = lex.Find(c.designator)) {
    for (const std::string& name : *names) {
      name_variants.push_back(SplitWhitespace(name));
    }
  } else {
    std::vector<std::string> nato;
    for (char letter : c.designator) nato.emplace_back(NatoWordOf(letter));
    name_variants.push_back(std::move(nato));
  }

  const std::vector<std::string> suffix_words = SuffixWords(c.suffix);
  std::vector<Expansion> out;
  for (const std::vector<std::string>& name_words : name_variants) {
    Expansion e;
    e.words = name_words;
    e.words.insert(e.words.end(), suffix_words.begin(), suffix_words.end());
    e.icao = c.icao;
    e.kind = VariantKind::kFull;
    PushUnique(&out, std::move(e));
  }
  return out;
}

std::vector<Expansion> ShortenedVariants(const Expansion& full) {
  if (full.kind != VariantKind::kFull) {
    throw ContractError("ShortenedVariants: input is not a full variant");
  }
  ParsedCallsign parsed = ParseIcao(full.icao);
  const std::vector<std::string> suffix_words = SuffixWords(parsed.suffix);

  // Every tail of the suffix rendering with >= 2 tokens; the longest tail
  // is the full variant with its telephony name dropped.
  std::vector<Expansion> out;
  for (std::size_t i = 0; i + 2 <= suffix_words.size(); ++i) {
    Expansion e;
    e.words.assign(suffix_words.begin() + static_cast<std::ptrdiff_t>(i),
                   suffix_words.end());
    e.icao = full.icao;
    e.kind = VariantKind::kShortened;
    PushUnique(&out, std::move(e));
  }
  return out;
}

// ---------------------------------------------------------------------------
// ExtractIcao

namespace {

// Longest run of digit/NATO tokens from `start`, rendered back to code
// characters. The run is nonempty and starts with a digit by construction.
std::string ConsumeSuffixRun(std::span<const std::string> words, std::size_t start) {
  std::string suffix;
  for (std::size_t i = start; i < words.size(); ++i) {
    if (auto digit = DigitOfWord(words[i])) {
      suffix += *digit;
    } else if (auto letter = LetterOfNatoWord(words[i])) {
      suffix += *letter;
    } else {
      break;
    }
  }
  return suffix;
}

}  // namespace

std::optional<std::string> ExtractIcao(std::span<const std::string> words,
                                       const AirlineLexicon& lex) {
  for (std::size_t pos = 0; pos < words.size(); ++pos) {
    // Telephony-name match, longer names first.
    for (std::size_t len : {std::size_t{2}, std::size_t{1}}) {
      if (pos + len >= words.size()) continue;  // a digit token must follow
      std::string name = words[pos];
      if (len == 2) name += " " + words[pos + 1];
      std::optional<std::string> designator = lex.DesignatorOfName(name);
      if (!designator) continue;
      if (!DigitOfWord(words[pos + len])) continue;
      return *designator + ConsumeSuffixRun(words, pos + len);
    }
    // NATO-spelled designator fallback, 3 letters before 2.
    for (std::size_t len : {std::size_t{3}, std::size_t{2}}) {
      if (pos + len >= words.size()) continue;
      std::string designator;
      for (std::size_t i = pos; i < pos + len; ++i) {
        auto letter = LetterOfNatoWord(words[i]);
        if (!letter) break;
        designator += *letter;
      }
      if (designator.size() != len) continue;
      if (!DigitOfWord(words[pos + len])) continue;
      return designator + ConsumeSuffixRun(words, pos + len);
    }
  }
  return std::nullopt;
}

}  // namespace atcboost
