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
// ICAO callsign grammar: parse compressed codes (SWR2689), expand them to
// spoken word sequences ("swiss two six eight nine") and invert spoken
// sequences back to codes.

#ifndef ATCBOOST_CALLSIGN_H_
#define ATCBOOST_CALLSIGN_H_

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace atcboost {

// Spoken-word tables. Emission uses the official ICAO spellings ("alfa",
// "juliett", "x-ray"); recognition additionally accepts the common
// alternates ("alpha", "juliet", "xray", "whisky").
std::string_view NatoWordOf(char letter);  // 'A'..'Z'; throws ContractError
std::string_view DigitWordOf(char digit);  // '0'..'9'; throws ContractError
std::optional<char> LetterOfNatoWord(std::string_view word);
std::optional<char> DigitOfWord(std::string_view word);
// True for any word a suffix rendering can contain (digit or NATO letter).
bool IsCallsignToken(std::string_view word);

// Compressed code split into its two grammatical parts.
struct ParsedCallsign {
  std::string icao;        // designator + suffix, e.g. "SWR2689"
  std::string designator;  // [A-Z]{2,3}
  std::string suffix;      // [0-9][0-9A-Z]*
};

// Splits the longest leading letter run as the designator. Throws
// ParseError naming the offending span on ill-formed codes.
ParsedCallsign ParseIcao(std::string_view code);

enum class VariantKind { kFull, kShortened };

// One spoken rendering of a callsign.
struct Expansion {
  std::vector<std::string> words;
  std::string icao;
  VariantKind kind = VariantKind::kFull;

  friend bool operator==(const Expansion& a, const Expansion& b) {
    return a.words == b.words && a.icao == b.icao && a.kind == b.kind;
  }
};

// Designator -> telephony names ("DLH" -> {"lufthansa", "hansa"}). Names
// are 1 or 2 lowercase words; designator lookups are case-insensitive.
class AirlineLexicon {
 public:
  AirlineLexicon() = default;

  // Validates and stores one entry; re-adding a designator replaces it.
  void Add(std::string_view designator, std::vector<std::string> names);

  // Telephony names for a designator, or nullptr when absent.
  const std::vector<std::string>* Find(std::string_view designator) const;

  // Inverse lookup on a full telephony name. When two designators share a
  // name, the lexicographically smallest designator wins.
  std::optional<std::string> DesignatorOfName(std::string_view name) const;

  // True when `word` occurs in any telephony name; drives the discounted
  // airline-token deletion cost in re-ranking.
  bool IsTelephonyToken(std::string_view word) const;

  int NumAirlines() const { return static_cast<int>(entries_.size()); }
  std::vector<std::string> Designators() const;  // sorted

  // File format: `DESIGNATOR<TAB>name1|name2|...`, '#' starts a comment.
  static AirlineLexicon Read(std::istream& is);
  static AirlineLexicon ReadFile(const std::string& path);

 private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::unordered_map<std::string, std::string> name_to_designator_;
  std::unordered_set<std::string> telephony_tokens_;
};

// All full spoken variants: one per telephony name, or one from the NATO
// spelling of the designator when the lexicon lacks an entry. Digits are
// rendered digit by digit, suffix letters as NATO words. No duplicates.
std::vector<Expansion> Expand(const ParsedCallsign& c, const AirlineLexicon& lex);

// Shortened forms speakers use: the suffix with the telephony name dropped
// and every shorter suffix tail, all at least 2 tokens long. Requires a
// full variant; throws ContractError otherwise.
std::vector<Expansion> ShortenedVariants(const Expansion& full);

// Greedy left-to-right scan for the first span shaped like a full spoken
// callsign: a telephony name (or a 2-3 NATO-letter designator spelling)
// followed by a digit word, then the longest run of digit/NATO tokens.
// Returns the reconstructed code, or nullopt when no span matches.
std::optional<std::string> ExtractIcao(std::span<const std::string> words,
                                       const AirlineLexicon& lex);

}  // namespace atcboost

#endif  // ATCBOOST_CALLSIGN_H_
