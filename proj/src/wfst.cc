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

#include "atcboost/wfst.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <deque>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>

#include "atcboost/errors.h"

namespace atcboost {

namespace {

std::vector<std::string> SplitTabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

int ParseInt(const std::string& field, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad ") + what + ": \"" + field + "\"");
  }
  return value;
}

double ParseDouble(const std::string& field, const char* what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(std::string("bad ") + what + ": \"" + field + "\"");
  }
  return value;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("unformattable double");
  return std::string(buf, ptr);
}

// ---------------------------------------------------------------------------
// SymbolTable

SymbolTable::SymbolTable() {
  id_to_word_.emplace_back(kEpsilonSymbol);
  id_to_word_.emplace_back(kSigmaSymbol);
  word_to_id_.emplace(kEpsilonSymbol, kEpsilonLabel);
  word_to_id_.emplace(kSigmaSymbol, kSigmaLabel);
}

int SymbolTable::AddWord(std::string_view word) {
  auto it = word_to_id_.find(std::string(word));
  if (it != word_to_id_.end()) return it->second;
  int id = static_cast<int>(id_to_word_.size());
  id_to_word_.emplace_back(word);
  word_to_id_.emplace(id_to_word_.back(), id);
  return id;
}

std::optional<int> SymbolTable::Find(std::string_view word) const {
  auto it = word_to_id_.find(std::string(word));
  if (it == word_to_id_.end()) return std::nullopt;
  return it->second;
}

const std::string& SymbolTable::WordOf(int id) const {
  if (id < 0 || id >= NumSymbols()) {
    throw ContractError("unknown label id " + std::to_string(id));
  }
  return id_to_word_[id];
}

void SymbolTable::Write(std::ostream& os) const {
  for (int id = 0; id < NumSymbols(); ++id) {
    os << id_to_word_[id] << '\t' << id << '\n';
  }
}

SymbolTable SymbolTable::Read(std::istream& is) {
  SymbolTable table;
  std::vector<std::pair<std::string, int>> entries;
  std::string line;
  int line_no = 0;
  int max_id = -1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() != 2) {
      throw ParseError("symbol table line " + std::to_string(line_no) +
                       ": expected word<TAB>id, got \"" + line + "\"");
    }
    int id = ParseInt(fields[1], "symbol id");
    if (id < 0) throw ParseError("symbol table: negative id in \"" + line + "\"");
    entries.emplace_back(fields[0], id);
    max_id = std::max(max_id, id);
  }
  std::vector<std::string> words(static_cast<std::size_t>(max_id + 1));
  std::vector<bool> seen(static_cast<std::size_t>(max_id + 1), false);
  for (const auto& [word, id] : entries) {
    if (seen[id]) throw ParseError("symbol table: duplicate id " + std::to_string(id));
    seen[id] = true;
    words[id] = word;
  }
  if (max_id < 1 || words[0] != kEpsilonSymbol || words[1] != kSigmaSymbol) {
    throw ParseError("symbol table: mandatory \"<eps>\t0\" and \"<sigma>\t1\" entries missing");
  }
  for (int id = 2; id <= max_id; ++id) {
    if (!seen[id]) throw ParseError("symbol table: id gap at " + std::to_string(id));
    if (table.AddWord(words[id]) != id) {
      throw ParseError("symbol table: duplicate word \"" + words[id] + "\"");
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Wfst

void Wfst::CheckState(int state) const {
  if (state < 0 || state >= NumStates()) {
    throw ContractError("invalid state id " + std::to_string(state));
  }
}

int Wfst::AddState() {
  arcs_.emplace_back();
  finals_.push_back(Weight::Zero());
  return NumStates() - 1;
}

void Wfst::SetStart(int state) {
  CheckState(state);
  start_ = state;
}

void Wfst::SetFinal(int state, Weight weight) {
  CheckState(state);
  finals_[state] = weight;
}

void Wfst::AddArc(int state, const Arc& arc) {
  CheckState(state);
  CheckState(arc.next_state);
  if (arc.ilabel < 0 || arc.olabel < 0) {
    throw ContractError("negative arc label");
  }
  arcs_[state].push_back(arc);
}

int Wfst::NumArcs() const {
  int n = 0;
  for (const auto& a : arcs_) n += static_cast<int>(a.size());
  return n;
}

const std::vector<Arc>& Wfst::Arcs(int state) const {
  CheckState(state);
  return arcs_[state];
}

Weight Wfst::Final(int state) const {
  CheckState(state);
  return finals_[state];
}

std::optional<std::vector<int>> Wfst::TopologicalOrder() const {
  const int n = NumStates();
  std::vector<int> indegree(n, 0);
  for (int s = 0; s < n; ++s) {
    for (const Arc& arc : arcs_[s]) ++indegree[arc.next_state];
  }
  std::vector<int> order;
  order.reserve(n);
  std::deque<int> ready;
  for (int s = 0; s < n; ++s) {
    if (indegree[s] == 0) ready.push_back(s);
  }
  while (!ready.empty()) {
    int s = ready.front();
    ready.pop_front();
    order.push_back(s);
    for (const Arc& arc : arcs_[s]) {
      if (--indegree[arc.next_state] == 0) ready.push_back(arc.next_state);
    }
  }
  if (static_cast<int>(order.size()) != n) return std::nullopt;
  return order;
}

bool Wfst::IsAcyclic() const { return TopologicalOrder().has_value(); }

// ---------------------------------------------------------------------------
// Compose

namespace {

void CheckSharedSymbols(const Wfst& a, const Wfst& b, const char* op) {
  const auto& sa = a.Symbols();
  const auto& sb = b.Symbols();
  if (sa && sb && sa != sb && *sa != *sb) {
    throw ConfigError(std::string(op) + ": operands use mismatched symbol tables");
  }
}

std::shared_ptr<const SymbolTable> PickSymbols(const Wfst& a, const Wfst& b) {
  return a.Symbols() ? a.Symbols() : b.Symbols();
}

// Arcs of one right-hand state split by input-label kind, with the concrete
// arcs sorted by ilabel for binary search.
struct RhsStateIndex {
  std::vector<Arc> concrete;  // ilabel >= 2, sorted
  std::vector<Arc> sigma;
  std::vector<Arc> epsilon;
};

const RhsStateIndex& IndexRhsState(
    const Wfst& b, int state, std::unordered_map<int, RhsStateIndex>* cache) {
  auto it = cache->find(state);
  if (it != cache->end()) return it->second;
  RhsStateIndex index;
  for (const Arc& arc : b.Arcs(state)) {
    if (arc.ilabel == kEpsilonLabel) {
      index.epsilon.push_back(arc);
    } else if (arc.ilabel == kSigmaLabel) {
      index.sigma.push_back(arc);
    } else {
      index.concrete.push_back(arc);
    }
  }
  std::sort(index.concrete.begin(), index.concrete.end(),
            [](const Arc& x, const Arc& y) { return x.ilabel < y.ilabel; });
  return cache->emplace(state, std::move(index)).first->second;
}

// Composite state key: (left state, right state, filter state).
std::uint64_t CompositeKey(int sa, int sb, int filter) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(sa)) << 34) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(sb)) << 2) |
         static_cast<std::uint64_t>(filter);
}

}  // namespace

// Composition with the three-state epsilon-matching filter: between two
// concrete matches, a run of left-only epsilon moves locks the filter in
// state 2, a run of right-only moves locks it in state 1, and a
// simultaneous epsilon move is allowed only from state 0. This admits
// exactly one interleaving per matched path pair.
Wfst Compose(const Wfst& a, const Wfst& b) {
  CheckSharedSymbols(a, b, "Compose");
  Wfst result(PickSymbols(a, b));
  if (a.IsEmpty() || b.IsEmpty()) return result;
  if (a.NumStates() >= (1 << 30) || b.NumStates() >= (1 << 30)) {
    throw ContractError("Compose: operand too large");
  }

  std::unordered_map<int, RhsStateIndex> rhs_cache;
  std::unordered_map<std::uint64_t, int> state_ids;
  struct Pending {
    int sa, sb, filter;
  };
  std::deque<Pending> queue;

  auto intern = [&](int sa, int sb, int filter) {
    std::uint64_t key = CompositeKey(sa, sb, filter);
    auto [it, inserted] = state_ids.emplace(key, result.NumStates());
    if (inserted) {
      result.AddState();
      queue.push_back({sa, sb, filter});
    }
    return it->second;
  };

  int start = intern(a.Start(), b.Start(), 0);
  result.SetStart(start);

  while (!queue.empty()) {
    auto [sa, sb, filter] = queue.front();
    queue.pop_front();
    int src = state_ids.at(CompositeKey(sa, sb, filter));

    Weight fin = Times(a.Final(sa), b.Final(sb));
    if (!fin.IsZero()) result.SetFinal(src, fin);

    const RhsStateIndex& rhs = IndexRhsState(b, sb, &rhs_cache);
    const auto& arcs_a = a.Arcs(sa);

    // Right-only epsilon moves, blocked while a left-only run is open.
    if (filter == 0 || filter == 1) {
      for (const Arc& arc_b : rhs.epsilon) {
        int dst = intern(sa, arc_b.next_state, 1);
        result.AddArc(src, {kEpsilonLabel, arc_b.olabel, arc_b.weight, dst});
      }
    }

    for (const Arc& arc_a : arcs_a) {
      if (arc_a.olabel == kEpsilonLabel) {
        // Left-only move, blocked while a right-only run is open.
        if (filter == 0 || filter == 2) {
          int dst = intern(arc_a.next_state, sb, 2);
          result.AddArc(src, {arc_a.ilabel, kEpsilonLabel, arc_a.weight, dst});
        }
        // Simultaneous epsilon move.
        if (filter == 0) {
          for (const Arc& arc_b : rhs.epsilon) {
            int dst = intern(arc_a.next_state, arc_b.next_state, 0);
            result.AddArc(src, {arc_a.ilabel, arc_b.olabel,
                                Times(arc_a.weight, arc_b.weight), dst});
          }
        }
        continue;
      }

      if (arc_a.olabel == kSigmaLabel) {
        // Left sigma binds to every concrete right label.
        for (const Arc& arc_b : rhs.concrete) {
          int bound = arc_b.ilabel;
          int dst = intern(arc_a.next_state, arc_b.next_state, 0);
          int ilabel = arc_a.ilabel == kSigmaLabel ? bound : arc_a.ilabel;
          int olabel = arc_b.olabel == kSigmaLabel ? bound : arc_b.olabel;
          result.AddArc(src, {ilabel, olabel,
                              Times(arc_a.weight, arc_b.weight), dst});
        }
        continue;
      }

      // Concrete output label: exact matches, then right-side sigma.
      const int label = arc_a.olabel;
      auto lo = std::lower_bound(
          rhs.concrete.begin(), rhs.concrete.end(), label,
          [](const Arc& arc, int value) { return arc.ilabel < value; });
      for (auto it = lo; it != rhs.concrete.end() && it->ilabel == label; ++it) {
        int dst = intern(arc_a.next_state, it->next_state, 0);
        int olabel = it->olabel == kSigmaLabel ? label : it->olabel;
        result.AddArc(src, {arc_a.ilabel, olabel,
                            Times(arc_a.weight, it->weight), dst});
      }
      for (const Arc& arc_b : rhs.sigma) {
        int dst = intern(arc_a.next_state, arc_b.next_state, 0);
        int ilabel = arc_a.ilabel == kSigmaLabel ? label : arc_a.ilabel;
        int olabel = arc_b.olabel == kSigmaLabel ? label : arc_b.olabel;
        result.AddArc(src, {ilabel, olabel,
                            Times(arc_a.weight, arc_b.weight), dst});
      }
    }
  }

  return Trim(result);
}

// ---------------------------------------------------------------------------
// ShortestPath

namespace {

struct SearchItem {
  double f = 0.0;        // exact total cost of the best completion
  bool complete = false;
  int state = -1;
  double g = 0.0;        // cost accumulated so far
  std::vector<int> labels;
  std::uint64_t order = 0;  // heap tie-breaker for reproducibility
};

struct SearchItemGreater {
  bool operator()(const SearchItem& x, const SearchItem& y) const {
    if (x.f != y.f) return x.f > y.f;
    return x.order > y.order;
  }
};

}  // namespace

std::vector<ScoredPath> ShortestPath(const Wfst& f, int nbest) {
  if (nbest < 1) throw ContractError("ShortestPath: nbest must be >= 1");
  if (f.IsEmpty()) return {};
  auto topo = f.TopologicalOrder();
  if (!topo) throw ContractError("ShortestPath: input machine is cyclic");

  // Exact cost-to-finish per state, by reverse topological sweep.
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> beta(static_cast<std::size_t>(f.NumStates()), kInf);
  for (auto it = topo->rbegin(); it != topo->rend(); ++it) {
    int s = *it;
    double best = f.Final(s).IsZero() ? kInf : f.Final(s).Value();
    for (const Arc& arc : f.Arcs(s)) {
      if (arc.weight.IsZero()) continue;
      best = std::min(best, arc.weight.Value() + beta[arc.next_state]);
    }
    beta[s] = best;
  }
  if (beta[f.Start()] == kInf) return {};

  // A* over partial paths; the heuristic is exact, so complete paths pop in
  // ascending cost order. Paths tied with the nbest-th cost are all popped,
  // then the lexicographic rule decides which survive.
  std::priority_queue<SearchItem, std::vector<SearchItem>, SearchItemGreater> heap;
  std::uint64_t next_order = 0;
  heap.push({beta[f.Start()], false, f.Start(), 0.0, {}, next_order++});

  std::vector<ScoredPath> done;
  const std::uint64_t kPopCap = 500000 + static_cast<std::uint64_t>(nbest);
  std::uint64_t pops = 0;

  while (!heap.empty() && pops < kPopCap) {
    if (static_cast<int>(done.size()) >= nbest &&
        heap.top().f > done[static_cast<std::size_t>(nbest) - 1].cost) {
      break;
    }
    SearchItem item = heap.top();
    heap.pop();
    ++pops;
    if (item.complete) {
      done.push_back({std::move(item.labels), item.g});
      continue;
    }
    Weight fin = f.Final(item.state);
    if (!fin.IsZero()) {
      SearchItem end;
      end.g = item.g + fin.Value();
      end.f = end.g;
      end.complete = true;
      end.labels = item.labels;
      end.order = next_order++;
      heap.push(std::move(end));
    }
    for (const Arc& arc : f.Arcs(item.state)) {
      if (arc.weight.IsZero()) continue;
      double g = item.g + arc.weight.Value();
      if (g + beta[arc.next_state] == kInf) continue;
      SearchItem next;
      next.g = g;
      next.f = g + beta[arc.next_state];
      next.state = arc.next_state;
      next.labels = item.labels;
      if (arc.ilabel != kEpsilonLabel) next.labels.push_back(arc.ilabel);
      next.order = next_order++;
      heap.push(std::move(next));
    }
  }

  std::sort(done.begin(), done.end(), [](const ScoredPath& x, const ScoredPath& y) {
    if (x.cost != y.cost) return x.cost < y.cost;
    return x.labels < y.labels;
  });
  if (static_cast<int>(done.size()) > nbest) done.resize(static_cast<std::size_t>(nbest));
  return done;
}

// ---------------------------------------------------------------------------
// Union / LinearAcceptor / Trim

Wfst Union(std::span<const Wfst> machines) {
  std::shared_ptr<const SymbolTable> symbols;
  for (const Wfst& m : machines) {
    if (!m.Symbols()) continue;
    if (!symbols) {
      symbols = m.Symbols();
    } else if (symbols != m.Symbols() && *symbols != *m.Symbols()) {
      throw ConfigError("Union: operands use mismatched symbol tables");
    }
  }

  Wfst result(symbols);
  bool any = false;
  for (const Wfst& m : machines) {
    if (!m.IsEmpty()) any = true;
  }
  if (!any) return result;

  int start = result.AddState();
  result.SetStart(start);
  for (const Wfst& m : machines) {
    if (m.IsEmpty()) continue;
    int base = result.NumStates();
    for (int s = 0; s < m.NumStates(); ++s) result.AddState();
    for (int s = 0; s < m.NumStates(); ++s) {
      for (const Arc& arc : m.Arcs(s)) {
        result.AddArc(base + s, {arc.ilabel, arc.olabel, arc.weight,
                                 base + arc.next_state});
      }
      Weight fin = m.Final(s);
      if (!fin.IsZero()) result.SetFinal(base + s, fin);
    }
    result.AddArc(start, {kEpsilonLabel, kEpsilonLabel, Weight::One(),
                          base + m.Start()});
  }
  return result;
}

Wfst LinearAcceptor(std::span<const std::string> words, Weight weight,
                    const std::shared_ptr<SymbolTable>& table) {
  if (!table) throw ContractError("LinearAcceptor: null symbol table");
  Wfst result(table);
  int state = result.AddState();
  result.SetStart(state);
  if (words.empty()) {
    result.SetFinal(state, weight);
    return result;
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    int label = table->AddWord(words[i]);
    int next = result.AddState();
    Weight w = (i + 1 == words.size()) ? weight : Weight::One();
    result.AddArc(state, {label, label, w, next});
    state = next;
  }
  result.SetFinal(state, Weight::One());
  return result;
}

Wfst Trim(const Wfst& f) {
  Wfst result(f.Symbols());
  if (f.IsEmpty()) return result;
  const int n = f.NumStates();

  std::vector<bool> reachable(n, false);
  std::deque<int> queue{f.Start()};
  reachable[f.Start()] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (const Arc& arc : f.Arcs(s)) {
      if (!reachable[arc.next_state]) {
        reachable[arc.next_state] = true;
        queue.push_back(arc.next_state);
      }
    }
  }

  std::vector<std::vector<int>> reverse(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    for (const Arc& arc : f.Arcs(s)) reverse[arc.next_state].push_back(s);
  }
  std::vector<bool> coreachable(n, false);
  for (int s = 0; s < n; ++s) {
    if (!f.Final(s).IsZero()) {
      coreachable[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : reverse[s]) {
      if (!coreachable[p]) {
        coreachable[p] = true;
        queue.push_back(p);
      }
    }
  }

  std::vector<int> remap(n, Wfst::kNoStateId);
  for (int s = 0; s < n; ++s) {
    if (reachable[s] && coreachable[s]) remap[s] = result.AddState();
  }
  if (remap[f.Start()] == Wfst::kNoStateId) return Wfst(f.Symbols());
  result.SetStart(remap[f.Start()]);
  for (int s = 0; s < n; ++s) {
    if (remap[s] == Wfst::kNoStateId) continue;
    for (const Arc& arc : f.Arcs(s)) {
      if (remap[arc.next_state] == Wfst::kNoStateId) continue;
      result.AddArc(remap[s], {arc.ilabel, arc.olabel, arc.weight,
                               remap[arc.next_state]});
    }
    Weight fin = f.Final(s);
    if (!fin.IsZero()) result.SetFinal(remap[s], fin);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Text I/O

void WriteWfstText(const Wfst& f, std::ostream& os) {
  if (f.IsEmpty()) return;

  auto write_state = [&](int s) {
    for (const Arc& arc : f.Arcs(s)) {
      os << s << '\t' << arc.next_state << '\t' << arc.ilabel << '\t'
         << arc.olabel << '\t' << FormatDouble(arc.weight.Value()) << '\n';
    }
    Weight fin = f.Final(s);
    if (!fin.IsZero()) os << s << '\t' << FormatDouble(fin.Value()) << '\n';
  };

  write_state(f.Start());
  for (int s = 0; s < f.NumStates(); ++s) {
    if (s != f.Start()) write_state(s);
  }
}

Wfst ReadWfstText(std::istream& is, std::shared_ptr<const SymbolTable> symbols) {
  struct ArcRecord {
    int src, dst, ilabel, olabel;
    double weight;
  };
  std::vector<ArcRecord> arc_records;
  std::vector<std::pair<int, double>> final_records;
  int start = Wfst::kNoStateId;
  int max_state = -1;

  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitTabs(line);
    if (fields.size() == 5) {
      ArcRecord rec{ParseInt(fields[0], "state id"), ParseInt(fields[1], "state id"),
                    ParseInt(fields[2], "label id"), ParseInt(fields[3], "label id"),
                    ParseDouble(fields[4], "weight")};
      if (rec.src < 0 || rec.dst < 0 || rec.ilabel < 0 || rec.olabel < 0) {
        throw ParseError("fst line " + std::to_string(line_no) + ": negative field");
      }
      if (start == Wfst::kNoStateId) start = rec.src;
      max_state = std::max({max_state, rec.src, rec.dst});
      arc_records.push_back(rec);
    } else if (fields.size() == 2) {
      int state = ParseInt(fields[0], "state id");
      if (state < 0) {
        throw ParseError("fst line " + std::to_string(line_no) + ": negative state");
      }
      if (start == Wfst::kNoStateId) start = state;
      max_state = std::max(max_state, state);
      final_records.emplace_back(state, ParseDouble(fields[1], "weight"));
    } else {
      throw ParseError("fst line " + std::to_string(line_no) +
                       ": expected 5 fields (arc) or 2 fields (final), got \"" +
                       line + "\"");
    }
  }

  Wfst result(std::move(symbols));
  if (start == Wfst::kNoStateId) return result;
  for (int s = 0; s <= max_state; ++s) result.AddState();
  result.SetStart(start);
  for (const ArcRecord& rec : arc_records) {
    result.AddArc(rec.src, {rec.ilabel, rec.olabel, Weight(rec.weight), rec.dst});
  }
  for (const auto& [state, weight] : final_records) {
    result.SetFinal(state, Weight(weight));
  }
  return result;
}

}  // namespace atcboost
