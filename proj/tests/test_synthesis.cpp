#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "slw/canon.hpp"
#include "slw/synthesis.hpp"

using namespace slw;

namespace {

PtNet load(const std::string& name) {
  std::ifstream in(std::string(SLW_TEST_DATA) + "/nets/" + name + ".net");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return PtNet::parse(ss.str());
}

using Keys = std::set<std::string>;

// every c-partial order up to k vertices satisfying phi
Keys formula_members(const FormulaPtr& phi, const LabelSet& T, int c, int k) {
  Keys out;
  for (int n = 1; n <= k; ++n)
    for (const auto& h : oracle::all_hasse(n, static_cast<int>(T.size()), c)) {
      auto p = transitive_closure(h);
      if (evaluate_po(p, T, phi)) out.insert(canonical_key(p));
    }
  return out;
}

Keys net_members(const PtNet& n, int c, Semantics sem, int k) {
  return sem == Semantics::Causal ? causal_orders(n, k, c) : executions(n, k, c);
}

bool subset(const Keys& a, const Keys& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool meets(const Keys& a, const Keys& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& k) { return b.count(k) > 0; });
}

FormulaPtr P(const std::string& s) { return parse_formula(s); }

const char* kTotal = "ALL x. ALL y. (x < y | y < x | x = y)";
const char* kCover = "(x < y & !EX z. (x < z & z < y))";

std::string chain_parity(bool even) {
  return std::string("EX X. (ALL x. ALL y. (") + kCover + " -> (x in X <-> !y in X))) & (ALL x. ((!EX w. w < x) -> x in X)) & " +
         "(ALL x. ((!EX w. x < w) -> " + (even ? "!" : "") + "x in X))";
}

const std::string kAlternating = std::string("(ALL x. ((!EX w. w < x) -> l(x,a))) & ALL x. ALL y. (") + kCover +
                                 " -> !((l(x,a) & l(y,a)) | (l(x,b) & l(y,b))))";
const std::string kDoubleA = std::string("EX x. EX y. (") + kCover + " & l(x,a) & l(y,a))";

const LabelSet kA({"a"});
const LabelSet kAB({"a", "b"});

}  // namespace

TEST_CASE("candidate places") {
  auto cs = candidate_places(kA, 1);
  CHECK(cs.size() == 6);
  for (const auto& p : cs) CHECK((p.takes[0] + p.puts[0]) > 0);
  CHECK(candidate_places(kAB, 2).size() == 243 - 3);
  Caps tiny;
  tiny.max_candidates = 100;
  try {
    candidate_places(kAB, 2, tiny);
    FAIL("no cap");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("243") != std::string::npos);
  }
}

TEST_CASE("feasible places") {
  auto chains = po_automaton(fm::truth(), 1, kA);
  SynthesisSpec spec{chains, 1, 1, Semantics::Execution};
  CHECK(feasible_place({"p", 1, {1}, {1}}, spec));
  CHECK_FALSE(feasible_place({"p", 0, {0}, {1}}, spec));
  CHECK_FALSE(feasible_place({"p", 0, {1}, {0}}, spec));

  auto n1 = load("N1");
  SynthesisSpec alt{net_automaton(n1, 1, Semantics::Execution), 1, 1, Semantics::Execution};
  CHECK(feasible_place({"p2", 0, {1, 0}, {0, 1}}, alt));
  CHECK(feasible_place({"p1", 1, {0, 1}, {1, 0}}, alt));
  CHECK_FALSE(feasible_place({"q", 0, {0, 1}, {1, 0}}, alt));
}

TEST_CASE("synthesis examples") {
  auto chains = po_automaton(fm::truth(), 1, kA);
  auto r = synthesize({chains, 1, 1, Semantics::Execution});
  REQUIRE(r.status == SynthesisResult::Status::Synthesized);
  CHECK(executions(*r.net, 4, 1) == po_members_up_to(chains, 4));
  CHECK_FALSE(r.log.empty());

  // empty specification: every candidate is feasible, nothing can fire
  auto none = synthesize({empty_automaton(make_alphabet(1, kAB)), 1, 1, Semantics::Execution});
  REQUIRE(none.status == SynthesisResult::Status::Synthesized);
  CHECK(none.net->place_count() == candidate_places(kAB, 1).size());
  CHECK(executions(*none.net, 3, 2).empty());

  Caps tiny;
  tiny.max_candidates = 5;
  CHECK_THROWS_AS(synthesize({chains, 1, 1, Semantics::Execution}, tiny), ResourceError);
}

TEST_CASE("round trip and minimality") {
  for (auto f : {"N0", "N1", "N3", "N4", "N8"}) {
    INFO(f);
    auto n = load(f);
    auto spec = net_automaton(n, 1, Semantics::Execution);
    auto r = synthesize({spec, 1, 1, Semantics::Execution});
    REQUIRE(r.status == SynthesisResult::Status::Synthesized);
    const auto mine = executions(*r.net, 4, 1);
    CHECK(mine == executions(n, 4, 1));
    // the result lies inside every single-place net that contains the spec
    if (std::string(f) == "N1") {
      const auto target = po_members_up_to(spec, 4);
      for (const auto& p : candidate_places(n.transitions(), 1)) {
        auto probe = PtNet::probe(n.transitions(), {p}, 1);
        const auto theirs = executions(probe, 4, 1);
        if (subset(target, theirs)) CHECK(subset(mine, theirs));
      }
    }
  }
}

TEST_CASE("separation") {
  CompileOptions co;
  auto even = po_automaton(P(chain_parity(true)), 1, kA, co);
  auto odd = po_automaton(P(chain_parity(false)), 1, kA, co);
  CHECK(po_members_up_to(even, 4) == Keys{canonical_key(oracle::closure(oracle::chain({0, 0}))),
                                           canonical_key(oracle::closure(oracle::chain({0, 0, 0, 0})))});
  auto r = separate(even, odd, 1, 1, Semantics::Execution);
  CHECK(r.status == SynthesisResult::Status::NoNet);
  REQUIRE(r.witness);
  CHECK(r.witness->size() % 2 == 1);

  auto alt = po_automaton(P(kAlternating), 1, kAB);
  auto dbl = po_automaton(P(kDoubleA), 1, kAB);
  auto s = separate(alt, dbl, 1, 1, Semantics::Execution);
  REQUIRE(s.status == SynthesisResult::Status::Synthesized);
  CHECK(executions(*s.net, 4, 1) == executions(load("N1"), 4, 1));

  auto plain = separate(alt, empty_automaton(alt.alphabet_ptr()), 1, 1, Semantics::Execution);
  auto direct = synthesize({alt, 1, 1, Semantics::Execution});
  CHECK(plain.net->to_text() == direct.net->to_text());
}

TEST_CASE("verification agrees with the oracles") {
  auto n1 = load("N1");
  auto a_chain = P("ALL x. ALL y. ((l(x,a) & l(y,a)) -> (x = y | x < y | y < x))");
  auto v = verify(n1, a_chain, 2, Semantics::Causal);
  CHECK(v.net_subset_of_spec);
  CHECK(v.witnesses_checked);

  auto n0 = load("N0");
  auto w = verify(n0, P(kTotal), 2, Semantics::Execution);
  CHECK_FALSE(w.net_subset_of_spec);
  REQUIRE(w.net_only);
  CHECK(w.net_only->size() == 2);
  CHECK(w.net_only->edges.empty());

  auto t = verify(n0, fm::truth(), 2, Semantics::Execution);
  CHECK_FALSE(t.disjoint);
  CHECK(t.net_subset_of_spec);

  const std::vector<std::string> formulas{kTotal, "EX x. EX y. (x < y & l(x,a))", "ALL x. l(x,a)", "EX x. EX y. !(x < y | y < x | x = y)"};
  for (auto f : {"N1", "N4", "N8"}) {
    auto n = load(f);
    for (int c = 1; c <= 2; ++c)
      for (auto sem : {Semantics::Execution, Semantics::Causal})
        for (const auto& s : formulas) {
          INFO(f, " c=", c, " ", semantics_name(sem), " ", s);
          auto phi = P(s);
          auto rep = verify(n, phi, c, sem);
          const auto nk = net_members(n, c, sem, 4);
          const auto fk = formula_members(phi, n.transitions(), c, 4);
          // small members decide each answer here
          CHECK(rep.disjoint == !meets(nk, fk));
          CHECK(rep.net_subset_of_spec == subset(nk, fk));
          CHECK(rep.spec_subset_of_net == subset(fk, nk));
          CHECK(rep.witnesses_checked);
        }
  }
}

TEST_CASE("top-level procedures") {
  auto alt = synth_from_mso(P(kAlternating), kAB, 1, 1, 1, Semantics::Execution);
  REQUIRE(alt.status == SynthesisResult::Status::Synthesized);
  CHECK(executions(*alt.net, 4, 1) == executions(load("N1"), 4, 1));
  CHECK(alt.log.front().op == "build");

  // unsatisfiable at width one: vacuous containment
  auto anti = synth_from_mso(P("EX x. EX y. (l(x,a) & l(y,a) & !(x < y | y < x | x = y))"), kA, 1, 1, 1, Semantics::Execution);
  REQUIRE(anti.status == SynthesisResult::Status::Synthesized);
  CHECK(executions(*anti.net, 3, 1).empty());

  auto n1 = load("N1");
  auto safe = safest_subsystem(n1, P(kTotal), 1, 1, 2, Semantics::Causal);
  REQUIRE(safe.status == SynthesisResult::Status::Synthesized);
  CHECK(causal_orders(*safe.net, 4, 2) == causal_orders(n1, 4, 2));

  auto n0 = load("N0");
  // a mutex keeps the interleavings of N0 and drops its concurrency
  auto mutex = safest_subsystem(n0, P(kTotal), 1, 1, 2, Semantics::Execution);
  REQUIRE(mutex.status == SynthesisResult::Status::Synthesized);
  CHECK(executions(*mutex.net, 4, 2) == formula_members(P(kTotal), n0.transitions(), 2, 4));

  auto fixed = repair(n1, fm::truth(), P(kTotal), 1, 1, 2, Semantics::Execution);
  REQUIRE(fixed.status == SynthesisResult::Status::Synthesized);
  CHECK(subset(executions(*fixed.net, 4, 2), formula_members(P(kTotal), kAB, 2, 4)));

  auto ok = synth_from_contract(P(kAlternating), P(kDoubleA), kAB, 1, 1, 1, Semantics::Execution);
  REQUIRE(ok.status == SynthesisResult::Status::Synthesized);
  CHECK(executions(*ok.net, 4, 1) == executions(n1, 4, 1));

  auto bad = synth_from_contract(fm::truth(), P(chain_parity(true)), kA, 1, 1, 1, Semantics::Execution);
  CHECK(bad.status == SynthesisResult::Status::Rejected);
  REQUIRE(bad.witness);
  CHECK(bad.witness->size() == 2);

  auto plain = synth_from_contract(P(kAlternating), fm::falsity(), kAB, 1, 1, 1, Semantics::Execution);
  CHECK(plain.net->to_text() == alt.net->to_text());
}

TEST_CASE("reports") {
  auto n0 = load("N0");
  auto w = verify(n0, P(kTotal), 2, Semantics::Execution);
  auto j = report_json(w, n0.transitions());
  CHECK(j.find("\"schema\": \"slw-report/1\"") != std::string::npos);
  CHECK(j.find("\"net_subset_of_spec\": false") != std::string::npos);
  CHECK(report_text(w, n0.transitions()).find("net within formula: no") != std::string::npos);
  CHECK(proof_log_json(w.log).find("disjointness") != std::string::npos);
}
