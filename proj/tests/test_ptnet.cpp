#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "slw/canon.hpp"
#include "slw/ptnet.hpp"

using namespace slw;

namespace {

PtNet load(const std::string& name) {
  std::ifstream in(std::string(SLW_TEST_DATA) + "/nets/" + name + ".net");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return PtNet::parse(ss.str());
}

const std::vector<std::string> kFixtures{"N0", "N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8"};

}  // namespace

TEST_CASE("token game") {
  auto n1 = load("N1");
  auto m0 = initial_marking(n1);
  CHECK(enabled(n1, m0, 0));
  CHECK_FALSE(enabled(n1, m0, 1));
  CHECK(fire(n1, m0, 0) == Marking{0, 1});
  CHECK_THROWS_AS(fire(n1, m0, 1), InputError);
  auto n0 = load("N0");
  CHECK(fire(n0, initial_marking(n0), 0) == initial_marking(n0));
}

TEST_CASE("boundedness") {
  CHECK(check_bounded(load("N0"), 1).bounded);
  CHECK(check_bounded(load("N1"), 1).bounded);
  CHECK(check_bounded(load("N2"), 2).bounded);
  CHECK_FALSE(check_bounded(load("N2"), 1).bounded);
  auto grow = PtNet::parse("net G bound=1\ntransitions t\nplace p init=1 take(t)=1 put(t)=2\n");
  auto r = check_bounded(grow, 1);
  CHECK_FALSE(r.bounded);
  REQUIRE_FALSE(r.witness.empty());
  auto m = initial_marking(grow);
  for (int t : r.witness) m = fire(grow, m, t);
  CHECK(m[0] > 1);
  for (auto& f : kFixtures) {
    auto n = load(f);
    CHECK(check_bounded(n, n.bound()).bounded);
  }
}

TEST_CASE("net files") {
  auto n = load("N6");
  CHECK(n.place_count() == 3);
  CHECK(PtNet::parse(n.to_text()).to_text() == n.to_text());
  CHECK(n.to_text().find("mult=2") != std::string::npos);
  auto expect_error = [](const std::string& text, const std::string& where) {
    try {
      PtNet::parse(text);
      FAIL("accepted: " << text);
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find(where) != std::string::npos);
    }
  };
  expect_error("net X bound=1\ntransitions a\nplace p init=1 take(b)=1\n", "line 3, column 16");
  expect_error("net X bound=1\ntransitions a\nplace p init=x\n", "line 3, column 14");
  expect_error("net X\n", "line 1");
  expect_error("net X bound=1\ntransitions a\nplace p init=1 take(a)=1\n", "no output place");
  expect_error("net X bound=1\ntransitions a a\n", "duplicate");
  expect_error("transitions a\n", "missing net header");
  expect_error("net X bound=1\ntransitions a\nblah\n", "line 3, column 1");
}

TEST_CASE("net union adds multiplicities") {
  auto n1 = load("N1");
  auto u = net_union(n1, n1);
  CHECK(u.place_count() == 4);
  auto probe = PtNet::probe(n1.transitions(), {}, 1);
  CHECK(net_union(n1, probe).place_count() == 2);
  CHECK_THROWS_AS(net_union(n1, load("N0")), InputError);
  // repeating every place keeps the executions
  for (int c = 1; c <= 2; ++c) CHECK(executions(u, 4, c) == executions(n1, 4, c));
}

TEST_CASE("processes and their orders") {
  auto n1 = load("N1");
  auto ps = processes(n1, 2);
  CHECK(ps.size() == 3);
  auto n0 = load("N0");
  auto ps0 = processes(n0, 2);
  CHECK(ps0.size() == 6);
  CHECK(processes(n0, 0).size() == 1);
  for (auto& f : kFixtures) {
    auto n = load(f);
    for (auto& p : processes(n, 3)) CHECK(process_violations(n, p).empty());
  }
  // a broken process is reported
  ProcessNet bad = ps[1];
  bad.conditions.push_back({0, -1, -1});
  CHECK_FALSE(process_violations(n1, bad).empty());

  // alternator: causal orders are chains a b a b
  std::set<std::string> chains;
  for (int k = 1; k <= 4; ++k) {
    std::vector<int> labels;
    for (int i = 0; i < k; ++i) labels.push_back(i % 2);
    chains.insert(canonical_key(oracle::closure(oracle::chain(labels))));
  }
  CHECK(causal_orders(n1, 4, 1) == chains);
  CHECK(executions(n1, 4, 2) == chains);

  const auto anti = canonical_key(oracle::closure(oracle::antichain({0, 1})));
  CHECK(executions(n0, 2, 2).count(anti) == 1);
  CHECK(executions(n0, 2, 1).count(anti) == 0);
  for (auto& f : kFixtures) {
    auto n = load(f);
    for (int c = 1; c <= 2; ++c) {
      auto ex = executions(n, 3, c);
      for (auto& k : causal_orders(n, 3, c)) CHECK(ex.count(k) == 1);
    }
  }
  Caps tiny;
  tiny.max_enum_vertices = 2;
  CHECK_THROWS_AS(processes(n0, 3, tiny), ResourceError);
}

TEST_CASE("net automata match the process oracle") {
  for (auto& f : kFixtures) {
    auto n = load(f);
    for (int c = 1; c <= 2; ++c) {
      auto ex = net_automaton(n, c, Semantics::Execution);
      auto cau = net_automaton(n, c, Semantics::Causal);
      INFO(f, " c=", c);
      CHECK(po_members_up_to(ex, 3) == executions(n, 3, c));
      CHECK(po_members_up_to(cau, 3) == causal_orders(n, 3, c));
      CHECK(validate(ex).empty());
      CHECK_FALSE(non_hasse_witness(ex));
      CHECK_FALSE(non_hasse_witness(cau));
      CHECK_FALSE(saturation_gap(ex, 3));
      CHECK_FALSE(saturation_gap(cau, 3));
    }
  }
  // sequential behaviour at width one
  auto n0 = load("N0");
  std::set<std::string> words;
  for (int k = 1; k <= 4; ++k)
    for (int code = 0; code < (1 << k); ++code) {
      std::vector<int> labels;
      for (int i = 0; i < k; ++i) labels.push_back((code >> i) & 1);
      words.insert(canonical_key(oracle::closure(oracle::chain(labels))));
    }
  CHECK(po_members_up_to(net_automaton(n0, 1, Semantics::Execution), 4) == words);
  CHECK_THROWS_AS(net_automaton(n0, make_alphabet(1, LabelSet({"a", "b"})), Semantics::Execution), InputError);
  BuildOptions tiny;
  tiny.max_states = 2;
  CHECK_THROWS_AS(net_automaton(n0, 2, Semantics::Execution, tiny), ResourceError);
}
