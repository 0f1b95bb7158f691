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
// Minimal weighted finite-state machinery over the tropical semiring,
// sufficient for biasing-FST construction, composition-based rescoring
// and n-best extraction from acyclic lattices.

#ifndef ATCBOOST_WFST_H_
#define ATCBOOST_WFST_H_

#include <cmath>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atcboost {

// Reserved label ids. 0 is epsilon (the empty move), 1 is sigma, a wildcard
// that matches any concrete label during composition.
inline constexpr int kEpsilonLabel = 0;
inline constexpr int kSigmaLabel = 1;

inline constexpr std::string_view kEpsilonSymbol = "<eps>";
inline constexpr std::string_view kSigmaSymbol = "<sigma>";

// Tropical semiring weight: plus = min, times = +, zero = +inf, one = 0.
// Lower value means a better path.
class Weight {
 public:
  Weight() : value_(0.0) {}
  explicit Weight(double value) : value_(value) {}

  static Weight Zero() { return Weight(std::numeric_limits<double>::infinity()); }
  static Weight One() { return Weight(0.0); }

  double Value() const { return value_; }
  bool IsZero() const { return std::isinf(value_) && value_ > 0.0; }

  friend Weight Plus(Weight a, Weight b) {
    return a.value_ <= b.value_ ? a : b;
  }
  friend Weight Times(Weight a, Weight b) {
    if (a.IsZero() || b.IsZero()) return Zero();
    return Weight(a.value_ + b.value_);
  }
  friend bool operator==(Weight a, Weight b) { return a.value_ == b.value_; }
  friend bool operator!=(Weight a, Weight b) { return !(a == b); }

 private:
  double value_;
};

// Bijective word <-> label-id mapping. Ids 0 and 1 are reserved for
// "<eps>" and "<sigma>" and never map to user words.
class SymbolTable {
 public:
  SymbolTable();

  // Returns the id of `word`, inserting it if absent.
  int AddWord(std::string_view word);
  std::optional<int> Find(std::string_view word) const;
  const std::string& WordOf(int id) const;
  int NumSymbols() const { return static_cast<int>(id_to_word_.size()); }

  // Text format: one `word<TAB>id` per line; the reserved entries are
  // mandatory in files.
  void Write(std::ostream& os) const;
  static SymbolTable Read(std::istream& is);

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.id_to_word_ == b.id_to_word_;
  }
  friend bool operator!=(const SymbolTable& a, const SymbolTable& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> id_to_word_;
  std::unordered_map<std::string, int> word_to_id_;
};

struct Arc {
  int ilabel = kEpsilonLabel;
  int olabel = kEpsilonLabel;
  Weight weight = Weight::One();
  int next_state = -1;
};

// Weighted finite-state transducer; also used for acceptors (ilabel ==
// olabel on every arc), lattices and grammar machines. Immutable once
// built: every operation below is a pure function returning a new machine.
class Wfst {
 public:
  static constexpr int kNoStateId = -1;

  Wfst() = default;
  explicit Wfst(std::shared_ptr<const SymbolTable> symbols)
      : symbols_(std::move(symbols)) {}

  int AddState();
  void SetStart(int state);
  void SetFinal(int state, Weight weight);
  void AddArc(int state, const Arc& arc);

  int Start() const { return start_; }
  int NumStates() const { return static_cast<int>(arcs_.size()); }
  int NumArcs() const;
  const std::vector<Arc>& Arcs(int state) const;
  Weight Final(int state) const;
  bool IsFinal(int state) const { return !Final(state).IsZero(); }

  // True when the machine has no start state (and therefore no path).
  bool IsEmpty() const { return arcs_.empty() || start_ == kNoStateId; }

  bool IsAcyclic() const;
  // Topological order over all states, or nullopt if the machine is cyclic.
  std::optional<std::vector<int>> TopologicalOrder() const;

  const std::shared_ptr<const SymbolTable>& Symbols() const { return symbols_; }
  void SetSymbols(std::shared_ptr<const SymbolTable> symbols) {
    symbols_ = std::move(symbols);
  }

 private:
  void CheckState(int state) const;

  std::vector<std::vector<Arc>> arcs_;
  std::vector<Weight> finals_;
  int start_ = kNoStateId;
  std::shared_ptr<const SymbolTable> symbols_;
};

// One extracted hypothesis: label-id sequence (epsilons dropped) plus the
// total path cost including the final weight.
struct ScoredPath {
  std::vector<int> labels;
  double cost = 0.0;

  friend bool operator==(const ScoredPath& a, const ScoredPath& b) {
    return a.labels == b.labels && a.cost == b.cost;
  }
};

// Composes two machines whose shared alphabet lives in one SymbolTable.
// Epsilons are resolved with the standard epsilon-matching filter, so each
// matched path pair contributes exactly one composed path. A sigma arc
// matches any concrete label of the other machine and the composed arc
// carries the matched concrete label; sigma never matches sigma or epsilon.
// The result is trimmed. Throws ConfigError on mismatched symbol tables.
Wfst Compose(const Wfst& a, const Wfst& b);

// Up to `nbest` distinct paths of an acyclic machine, ordered by ascending
// total cost, ties broken by lexicographic label-id sequence. Throws
// ContractError when the machine is cyclic or nbest < 1.
std::vector<ScoredPath> ShortestPath(const Wfst& f, int nbest);

// Path-set union. Inputs must share one symbol table (nulls are ignored).
Wfst Union(std::span<const Wfst> machines);

// Single-path acceptor for `words`; all arcs carry weight one except the
// last, which carries the full `weight`. Words are inserted into `table`
// on demand. An empty sequence yields one state that is both start and
// final with `weight` as its final weight.
Wfst LinearAcceptor(std::span<const std::string> words, Weight weight,
                    const std::shared_ptr<SymbolTable>& table);

// Drops states that are not on any successful path. Path set and weights
// are unchanged.
Wfst Trim(const Wfst& f);

// Text format, one record per line:
//   arc lines    src<TAB>dst<TAB>in_label<TAB>out_label<TAB>weight
//   final lines  state<TAB>weight
// The first line's src (or state) is the start state. Weights keep full
// precision on a round trip.
void WriteWfstText(const Wfst& f, std::ostream& os);
Wfst ReadWfstText(std::istream& is,
                  std::shared_ptr<const SymbolTable> symbols = nullptr);

// Shortest round-trip decimal rendering used by all text formats.
std::string FormatDouble(double value);

}  // namespace atcboost

#endif  // ATCBOOST_WFST_H_
