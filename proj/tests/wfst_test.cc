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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "atcboost/errors.h"
#include "atcboost/wfst.h"
#include "testutil.h"

using namespace atcboost;
using testutil::EnumerateAllPaths;
using testutil::PathRecord;

namespace {

std::shared_ptr<SymbolTable> AbcTable() {
  auto table = std::make_shared<SymbolTable>();
  table->AddWord("a");  // id 2
  table->AddWord("b");  // id 3
  table->AddWord("c");  // id 4
  return table;
}

std::vector<std::string> Words(std::initializer_list<const char*> words) {
  return {words.begin(), words.end()};
}

}  // namespace

TEST_CASE("tropical weight algebra") {
  Weight a(1.5), b(-0.5), zero = Weight::Zero(), one = Weight::One();

  CHECK(Plus(a, b) == b);
  CHECK(Times(a, b) == Weight(1.0));
  CHECK(Plus(a, zero) == a);
  CHECK(Times(a, one) == a);
  CHECK(Times(a, zero).IsZero());
  CHECK(Times(zero, b).IsZero());
  CHECK(one == Weight(0.0));
  CHECK_FALSE(one.IsZero());

  // times distributes over plus: a + min(b, c) == min(a+b, a+c).
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Weight x(0.25 * static_cast<double>(rng() % 41) - 5.0);
    Weight y(0.25 * static_cast<double>(rng() % 41) - 5.0);
    Weight z(0.25 * static_cast<double>(rng() % 41) - 5.0);
    CHECK(Times(x, Plus(y, z)) == Plus(Times(x, y), Times(x, z)));
  }
}

TEST_CASE("symbol table reserves eps and sigma") {
  SymbolTable table;
  CHECK(table.NumSymbols() == 2);
  CHECK(table.WordOf(kEpsilonLabel) == kEpsilonSymbol);
  CHECK(table.WordOf(kSigmaLabel) == kSigmaSymbol);
  CHECK(table.AddWord("swiss") == 2);
  CHECK(table.AddWord("two") == 3);
  CHECK(table.AddWord("swiss") == 2);
  CHECK(table.Find("two") == 3);
  CHECK_FALSE(table.Find("nine").has_value());
  CHECK_THROWS_AS(table.WordOf(99), ContractError);
}

TEST_CASE("symbol table io round trip and validation") {
  SymbolTable table;
  table.AddWord("swiss");
  table.AddWord("two");
  std::stringstream ss;
  table.Write(ss);
  CHECK(ss.str() == "<eps>\t0\n<sigma>\t1\nswiss\t2\ntwo\t3\n");
  SymbolTable back = SymbolTable::Read(ss);
  CHECK(back == table);

  std::stringstream missing("<eps>\t0\nswiss\t2\n");
  CHECK_THROWS_AS(SymbolTable::Read(missing), ParseError);
  std::stringstream gap("<eps>\t0\n<sigma>\t1\nswiss\t3\n");
  CHECK_THROWS_AS(SymbolTable::Read(gap), ParseError);
  std::stringstream dup("<eps>\t0\n<sigma>\t1\nswiss\t2\nswiss\t3\n");
  CHECK_THROWS_AS(SymbolTable::Read(dup), ParseError);
  std::stringstream bad_id("<eps>\t0\n<sigma>\t1\nswiss\tx\n");
  CHECK_THROWS_AS(SymbolTable::Read(bad_id), ParseError);
}

TEST_CASE("linear acceptor places the weight on the last arc") {
  auto table = std::make_shared<SymbolTable>();
  auto words = Words({"swiss", "two", "six", "eight", "nine"});
  Wfst f = LinearAcceptor(words, Weight(-2.0), table);

  CHECK(f.NumStates() == 6);
  CHECK(f.NumArcs() == 5);
  for (int s = 0; s < 4; ++s) {
    REQUIRE(f.Arcs(s).size() == 1);
    CHECK(f.Arcs(s)[0].weight == Weight::One());
  }
  CHECK(f.Arcs(4)[0].weight == Weight(-2.0));
  CHECK(f.Final(5) == Weight::One());

  auto paths = ShortestPath(f, 2);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].cost == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(paths[0].labels == std::vector<int>{2, 3, 4, 5, 6});
}

TEST_CASE("linear acceptor of the empty sequence") {
  auto table = std::make_shared<SymbolTable>();
  Wfst f = LinearAcceptor({}, Weight(0.5), table);
  CHECK(f.NumStates() == 1);
  CHECK(f.Start() == 0);
  CHECK(f.Final(0) == Weight(0.5));
  auto paths = ShortestPath(f, 1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].labels.empty());
  CHECK(paths[0].cost == doctest::Approx(0.5));
}

TEST_CASE("union accepts both expansions of one callsign") {
  auto table = std::make_shared<SymbolTable>();
  Wfst lufthansa = LinearAcceptor(Words({"lufthansa", "five", "kilo", "x-ray"}),
                                  Weight::One(), table);
  Wfst hansa =
      LinearAcceptor(Words({"hansa", "five", "kilo", "x-ray"}), Weight::One(), table);
  std::vector<Wfst> parts{lufthansa, hansa};
  Wfst u = Union(parts);

  auto oracle = EnumerateAllPaths(lufthansa);
  auto more = EnumerateAllPaths(hansa);
  oracle.insert(oracle.end(), more.begin(), more.end());
  CHECK(testutil::PathSetsMatch(EnumerateAllPaths(u), oracle));

  // Union with an empty machine keeps the path set.
  std::vector<Wfst> with_empty{u, Wfst(table)};
  CHECK(testutil::PathSetsMatch(EnumerateAllPaths(Union(with_empty)),
                                EnumerateAllPaths(u)));

  CHECK(Union(std::span<const Wfst>{}).IsEmpty());
}

TEST_CASE("trim drops states off successful paths") {
  auto table = AbcTable();
  Wfst f(table);
  for (int i = 0; i < 4; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {2, 2, Weight(1.0), 1});
  f.AddArc(0, {3, 3, Weight(1.0), 2});  // dead end, state 2 never final
  f.AddArc(1, {4, 4, Weight(0.5), 3});
  f.SetFinal(3, Weight::One());

  Wfst t = Trim(f);
  CHECK(t.NumStates() == 3);
  CHECK(testutil::PathSetsMatch(EnumerateAllPaths(t), EnumerateAllPaths(f)));

  Wfst again = Trim(t);
  CHECK(again.NumStates() == t.NumStates());
  CHECK(again.NumArcs() == t.NumArcs());

  CHECK(Trim(Wfst(table)).IsEmpty());
}

TEST_CASE("compose with an identity acceptor preserves paths") {
  auto table = AbcTable();
  std::mt19937_64 rng(11);
  Wfst ident(table);
  ident.AddState();
  ident.SetStart(0);
  ident.SetFinal(0, Weight::One());
  for (int label = 2; label <= 4; ++label) {
    ident.AddArc(0, {label, label, Weight::One(), 0});
  }
  for (int trial = 0; trial < 30; ++trial) {
    Wfst a = testutil::RandomAcyclicWfst(rng, table, /*allow_epsilon=*/false);
    Wfst c = Compose(a, ident);
    CHECK(testutil::PathSetsMatch(EnumerateAllPaths(c), EnumerateAllPaths(a)));
  }
}

TEST_CASE("compose applies a sigma-loop discount machine") {
  auto table = std::make_shared<SymbolTable>();
  int swiss = table->AddWord("swiss");
  int miss = table->AddWord("miss");
  int two = table->AddWord("two");

  // 2-path lattice: "swiss two" cost 1.0, "miss two" cost 0.5.
  Wfst lattice(table);
  for (int i = 0; i < 3; ++i) lattice.AddState();
  lattice.SetStart(0);
  lattice.AddArc(0, {swiss, swiss, Weight(1.0), 1});
  lattice.AddArc(0, {miss, miss, Weight(0.5), 1});
  lattice.AddArc(1, {two, two, Weight::One(), 2});
  lattice.SetFinal(2, Weight::One());

  // Hub machine: sigma loop plus a "swiss two" detour, last arc -2.0.
  Wfst bias(table);
  bias.AddState();
  bias.AddState();
  bias.SetStart(0);
  bias.SetFinal(0, Weight::One());
  bias.AddArc(0, {kSigmaLabel, kSigmaLabel, Weight::One(), 0});
  bias.AddArc(0, {swiss, swiss, Weight::One(), 1});
  bias.AddArc(1, {two, two, Weight(-2.0), 0});

  Wfst boosted = Compose(lattice, bias);
  auto paths = ShortestPath(boosted, 10);
  REQUIRE(paths.size() == 3);  // "swiss two" twice (loop and detour), "miss two" once
  CHECK(paths[0].labels == std::vector<int>{swiss, two});
  CHECK(paths[0].cost == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(paths[1].labels == std::vector<int>{miss, two});
  CHECK(paths[1].cost == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(paths[2].labels == std::vector<int>{swiss, two});
  CHECK(paths[2].cost == doctest::Approx(1.0).epsilon(1e-12));

  // Sigma resolved into concrete labels: no sigma survives composition.
  for (int s = 0; s < boosted.NumStates(); ++s) {
    for (const Arc& arc : boosted.Arcs(s)) {
      CHECK(arc.ilabel != kSigmaLabel);
      CHECK(arc.olabel != kSigmaLabel);
    }
  }
}

TEST_CASE("pure sigma self-loop machine is an identity under composition") {
  auto table = AbcTable();
  Wfst sigma_loop(table);
  sigma_loop.AddState();
  sigma_loop.SetStart(0);
  sigma_loop.SetFinal(0, Weight::One());
  sigma_loop.AddArc(0, {kSigmaLabel, kSigmaLabel, Weight::One(), 0});

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Wfst a = testutil::RandomAcyclicWfst(rng, table, /*allow_epsilon=*/true);
    Wfst c = Compose(a, sigma_loop);
    CHECK(testutil::PathSetsMatch(EnumerateAllPaths(c), EnumerateAllPaths(a)));
  }
}

TEST_CASE("compose with an empty machine yields an empty machine") {
  auto table = AbcTable();
  Wfst a = LinearAcceptor(Words({"a", "b"}), Weight::One(), table);
  Wfst empty(table);
  CHECK(Compose(a, empty).IsEmpty());
  CHECK(Compose(empty, a).IsEmpty());
}

TEST_CASE("compose rejects mismatched symbol tables") {
  auto t1 = std::make_shared<SymbolTable>();
  t1->AddWord("swiss");
  auto t2 = std::make_shared<SymbolTable>();
  t2->AddWord("ryanair");
  Wfst a = LinearAcceptor(Words({"swiss"}), Weight::One(), t1);
  Wfst b = LinearAcceptor(Words({"ryanair"}), Weight::One(), t2);
  CHECK_THROWS_AS(Compose(a, b), ConfigError);
}

TEST_CASE("compose matches the cross-product oracle on random pairs") {
  auto table = AbcTable();
  std::mt19937_64 rng(101);
  int nonempty = 0;
  for (int trial = 0; trial < 80; ++trial) {
    Wfst a = testutil::RandomAcyclicWfst(rng, table, /*allow_epsilon=*/true);
    Wfst b = testutil::RandomAcyclicWfst(rng, table, /*allow_epsilon=*/true);
    Wfst c = Compose(a, b);
    auto oracle = testutil::CrossComposeOracle(a, b);
    REQUIRE(testutil::PathSetsMatch(EnumerateAllPaths(c), oracle));
    if (!oracle.empty()) ++nonempty;
  }
  CHECK(nonempty > 10);  // the generator must exercise real matches
}

TEST_CASE("shortest path on a single-path machine") {
  auto table = std::make_shared<SymbolTable>();
  Wfst f = LinearAcceptor(Words({"alpha", "bravo"}), Weight(0.7), table);
  auto paths = ShortestPath(f, 1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].labels == std::vector<int>{2, 3});
  CHECK(paths[0].cost == doctest::Approx(0.7));
}

TEST_CASE("shortest path breaks cost ties lexicographically") {
  auto table = AbcTable();
  Wfst f(table);
  for (int i = 0; i < 2; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {4, 4, Weight(1.0), 1});  // "c"
  f.AddArc(0, {2, 2, Weight(1.0), 1});  // "a"
  f.AddArc(0, {3, 3, Weight(1.0), 1});  // "b"
  f.SetFinal(1, Weight::One());

  auto paths = ShortestPath(f, 2);
  REQUIRE(paths.size() == 2);
  CHECK(paths[0].labels == std::vector<int>{2});
  CHECK(paths[1].labels == std::vector<int>{3});

  // n beyond the path count returns everything, still sorted.
  auto all = ShortestPath(f, 10);
  REQUIRE(all.size() == 3);
  CHECK(all[2].labels == std::vector<int>{4});
}

TEST_CASE("shortest path drops epsilon labels and keeps final weights") {
  auto table = AbcTable();
  Wfst f(table);
  for (int i = 0; i < 3; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {kEpsilonLabel, kEpsilonLabel, Weight(0.25), 1});
  f.AddArc(1, {2, 2, Weight(0.5), 2});
  f.SetFinal(2, Weight(0.125));
  auto paths = ShortestPath(f, 1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].labels == std::vector<int>{2});
  CHECK(paths[0].cost == doctest::Approx(0.875).epsilon(1e-12));
}

TEST_CASE("shortest path contract violations") {
  auto table = AbcTable();
  Wfst cyclic(table);
  cyclic.AddState();
  cyclic.SetStart(0);
  cyclic.SetFinal(0, Weight::One());
  cyclic.AddArc(0, {2, 2, Weight(1.0), 0});
  CHECK_THROWS_AS(ShortestPath(cyclic, 1), ContractError);

  Wfst line = LinearAcceptor(Words({"a"}), Weight::One(),
                             std::make_shared<SymbolTable>());
  CHECK_THROWS_AS(ShortestPath(line, 0), ContractError);
  CHECK(ShortestPath(Wfst(), 1).empty());
}

TEST_CASE("shortest path matches the enumeration oracle on random machines") {
  auto table = AbcTable();
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 60; ++trial) {
    Wfst f = testutil::RandomAcyclicWfst(rng, table, /*allow_epsilon=*/true);
    for (int nbest : {1, 2, 5}) {
      auto got = ShortestPath(f, nbest);
      auto want = testutil::NBestOracle(f, nbest);
      REQUIRE(got.size() == want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].labels == want[i].labels);
        CHECK(got[i].cost == doctest::Approx(want[i].cost).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("topological order exists exactly for acyclic machines") {
  auto table = AbcTable();
  Wfst dag(table);
  for (int i = 0; i < 3; ++i) dag.AddState();
  dag.SetStart(0);
  dag.AddArc(0, {2, 2, Weight::One(), 1});
  dag.AddArc(1, {3, 3, Weight::One(), 2});
  dag.AddArc(0, {4, 4, Weight::One(), 2});
  dag.SetFinal(2, Weight::One());
  CHECK(dag.IsAcyclic());
  auto order = dag.TopologicalOrder();
  REQUIRE(order.has_value());
  CHECK(order->size() == 3);

  Wfst loop(table);
  loop.AddState();
  loop.AddState();
  loop.SetStart(0);
  loop.AddArc(0, {2, 2, Weight::One(), 1});
  loop.AddArc(1, {2, 2, Weight::One(), 0});
  CHECK_FALSE(loop.IsAcyclic());
}

TEST_CASE("fst text io round trips exactly") {
  auto table = AbcTable();
  Wfst f(table);
  for (int i = 0; i < 3; ++i) f.AddState();
  f.SetStart(0);
  f.AddArc(0, {2, 3, Weight(0.1), 1});
  f.AddArc(0, {3, 2, Weight(-2.5), 2});
  f.AddArc(1, {4, 4, Weight(1e-17), 2});
  f.SetFinal(1, Weight(0.3));
  f.SetFinal(2, Weight::One());

  std::stringstream first;
  WriteWfstText(f, first);
  std::stringstream input(first.str());
  Wfst back = ReadWfstText(input, table);
  CHECK(back.Start() == f.Start());
  CHECK(back.NumStates() == f.NumStates());
  CHECK(testutil::PathSetsMatch(EnumerateAllPaths(back), EnumerateAllPaths(f), 0.0));

  std::stringstream second;
  WriteWfstText(back, second);
  CHECK(first.str() == second.str());
}

TEST_CASE("fst text reader infers the start state from the first line") {
  std::stringstream ss("2\t0\t3\t3\t1.5\n0\t0.25\n");
  Wfst f = ReadWfstText(ss);
  CHECK(f.Start() == 2);
  CHECK(f.NumStates() == 3);
  auto paths = ShortestPath(f, 1);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].cost == doctest::Approx(1.75));
}

TEST_CASE("fst text reader rejects malformed lines") {
  std::stringstream three_fields("0\t1\t2\n");
  CHECK_THROWS_AS(ReadWfstText(three_fields), ParseError);
  std::stringstream bad_weight("0\t1\t2\t2\tnotanumber\n");
  CHECK_THROWS_AS(ReadWfstText(bad_weight), ParseError);
  std::stringstream negative("0\t-1\t2\t2\t0.5\n");
  CHECK_THROWS_AS(ReadWfstText(negative), ParseError);
  std::stringstream empty("");
  CHECK(ReadWfstText(empty).IsEmpty());
}

TEST_CASE("format double renders shortest exact decimal") {
  CHECK(FormatDouble(0.5) == "0.5");
  CHECK(FormatDouble(-2.0) == "-2");
  CHECK(FormatDouble(0.1) == "0.1");
  std::stringstream ss(FormatDouble(1.0 / 3.0));
  double back = 0.0;
  ss >> back;
  CHECK(back == 1.0 / 3.0);
}
