// Acceptance suite: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "oracles.hpp"
#include "slw/canon.hpp"
#include "slw/synthesis.hpp"

using namespace slw;

namespace {

using Keys = std::set<std::string>;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && pass) {
      pass = false;
      detail << "first failure: " << what;
    }
  }
};

std::string data(const std::string& rel) { return std::string(SLW_TEST_DATA) + "/" + rel; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PtNet load(const std::string& name) { return PtNet::parse(slurp(data("nets/" + name + ".net"))); }
FormulaPtr formula(const std::string& name) { return parse_formula(slurp(data("formulas/" + name))); }

const std::vector<std::string> kFixtures{"N0", "N1", "N2", "N3", "N4", "N5", "N6", "N7", "N8"};
const LabelSet kA({"a"});
const LabelSet kAB({"a", "b"});

bool subset(const Keys& a, const Keys& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }
bool meets(const Keys& a, const Keys& b) {
  return std::any_of(a.begin(), a.end(), [&](const std::string& k) { return b.count(k) > 0; });
}
Keys unite_keys(Keys a, const Keys& b) {
  a.insert(b.begin(), b.end());
  return a;
}
Keys meet_keys(const Keys& a, const Keys& b) {
  Keys out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}
Keys minus_keys(const Keys& a, const Keys& b) {
  Keys out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

// every c-partial order over T up to k vertices, optionally filtered by a formula
Keys orders(const LabelSet& T, int c, int k, const FormulaPtr& phi = nullptr) {
  Keys out;
  for (int n = 1; n <= k; ++n)
    for (const auto& h : oracle::all_hasse(n, static_cast<int>(T.size()), c)) {
      auto p = transitive_closure(h);
      if (!phi || evaluate_po(p, T, phi)) out.insert(canonical_key(p));
    }
  return out;
}

Keys net_orders(const PtNet& n, int c, Semantics sem, int k) {
  return sem == Semantics::Causal ? causal_orders(n, k, c) : executions(n, k, c);
}

std::string key_of(const SliceAutomaton& a, const std::vector<int>& w) {
  return canonical_key(transitive_closure(dag_of(a.alphabet(), w)));
}

// accepted words with at most n letters, by a subset walk
void for_each_word(const SliceAutomaton& a, int n, const std::function<void(const std::vector<int>&)>& fn) {
  const Nfa& m = a.nfa();
  std::vector<int> word;
  std::function<void(const std::vector<int>&)> walk = [&](const std::vector<int>& states) {
    if (std::any_of(states.begin(), states.end(), [&](int s) { return m.final[static_cast<std::size_t>(s)]; })) fn(word);
    if (static_cast<int>(word.size()) == n) return;
    std::map<Letter, std::set<int>> next;
    for (int s : states)
      for (auto [l, t] : m.out[static_cast<std::size_t>(s)]) next[l].insert(t);
    for (auto& [l, ts] : next) {
      word.push_back(static_cast<int>(l));
      walk(std::vector<int>(ts.begin(), ts.end()));
      word.pop_back();
    }
  };
  walk({m.initial});
}

// ---------------------------------------------------------------------------

void compiler_agreement(Outcome& o) {
  const std::vector<std::string> corpus{
      "ALL x. ALL y. (x < y | y < x | x = y)",
      "EX x. EX y. (x < y & l(x,a) & l(y,b))",
      "ALL x. (l(x,a) -> EX y. (x < y & l(y,b)))",
      "EX X. ALL x. (x in X <-> l(x,a))",
      "EX x. EX y. !(x < y | y < x | x = y)",
      "ALL x. l(x,a)",
      "EX y:e. EX x. (s(y,x) & l(x,b))",
      "ALL y:e. EX x. EX z. (s(y,x) & t(y,z) & l(x,a) & l(z,b))",
      "EX x. EX z. EX X. EX Y:e. (path(x,X,Y,z) & l(x,b))",
      "EX Y:e. ALL y:e. y in Y",
      "EX X. (ALL x. (x in X <-> l(x,a)) & EX z. z in X)",
      "ALL x. ALL y:e. (t(y,x) -> EX z. (s(y,z) & l(z,a)))",
      "rho & gamma(1)",
  };
  for (int c = 1; c <= 2; ++c) {
    auto sigma = make_alphabet(c, kAB);
    std::vector<LabeledDag> dags;
    for (int n = 1; n <= 4; ++n)
      for (auto& h : oracle::all_hasse(n, 2, c)) dags.push_back(h);
    for (const auto& s : corpus) {
      auto phi = parse_formula(s);
      auto a = compile(phi, sigma);
      for (const auto& h : dags) {
        const bool truth = evaluate_dag(h, kAB, phi);
        bool all = true;
        std::size_t count = 0;
        for_each_decomposition(h, *sigma, [&](const std::vector<int>& w) {
          ++count;
          all = all && accepts_word(a, w) == truth;
        });
        o.expect(count > 0 && all, "c=" + std::to_string(c) + " " + s + " on " + dag_to_text(h, kAB));
      }
    }
    if (o.pass) o.detail << "c=" << c << ": " << dags.size() << " DAGs; ";
  }
  if (o.pass) o.detail << corpus.size() << " formulas over {a,b}, all c-coverable Hasse DAGs up to 4 vertices";
}

void net_agreement(Outcome& o) {
  for (const auto& f : kFixtures) {
    auto n = load(f);
    for (int c = 1; c <= 2; ++c)
      for (auto sem : {Semantics::Execution, Semantics::Causal}) {
        auto a = net_automaton(n, c, sem);
        o.expect(po_members_up_to(a, 4) == net_orders(n, c, sem, 4),
                 f + " c=" + std::to_string(c) + " " + semantics_name(sem));
      }
  }
  if (o.pass) o.detail << kFixtures.size() << " nets x 2 semantics x c in {1,2}, up to 4 events";
}

void hierarchy(Outcome& o) {
  auto n0 = load("N0");
  const auto anti = canonical_key(oracle::closure(oracle::antichain({0, 1})));
  auto m2 = po_members_up_to(net_automaton(n0, 2, Semantics::Execution), 4);
  auto m1 = po_members_up_to(net_automaton(n0, 1, Semantics::Execution), 4);
  o.expect(m2.count(anti) == 1, "antichain t1,t2 at c=2");
  o.expect(m1.count(anti) == 0, "antichain t1,t2 absent at c=1");
  Keys chains;
  for (int k = 1; k <= 4; ++k)
    for (int code = 0; code < (1 << k); ++code) {
      std::vector<int> labels;
      for (int i = 0; i < k; ++i) labels.push_back((code >> i) & 1);
      chains.insert(canonical_key(oracle::closure(oracle::chain(labels))));
    }
  o.expect(m1 == chains, "width one gives all chains up to 4");
  if (o.pass) o.detail << "antichain at c=2 only; " << chains.size() << " chains at c=1";
}

void stabilization(Outcome& o) {
  for (const auto& f : kFixtures) {
    auto n = load(f);
    const int c = n.bound() * static_cast<int>(n.place_count());
    BuildOptions opt;
    opt.max_depth = 4;
    auto at = po_members_up_to(net_automaton(n, c, Semantics::Causal, opt), 4);
    auto above = po_members_up_to(net_automaton(n, c + 1, Semantics::Causal, opt), 4);
    o.expect(at == above, f + " c=" + std::to_string(c));
    o.expect(at == causal_orders(n, 4, c), f + " oracle at c=" + std::to_string(c));
    o.detail << f << ":c=" << c << " ";
  }
}

std::vector<std::pair<std::string, SliceAutomaton>> saturated_pool() {
  std::vector<std::pair<std::string, SliceAutomaton>> pool;
  auto sigma = make_alphabet(2, kAB);
  for (auto f : {"N1", "N2", "N5", "N7"})
    for (auto sem : {Semantics::Execution, Semantics::Causal})
      pool.emplace_back(std::string(f) + "/" + semantics_name(sem), net_automaton(load(f), sigma, sem));
  for (auto s : {"ALL x. ALL y. (x < y | y < x | x = y)", "EX x. EX y. (x < y & l(x,a) & l(y,b))", "ALL x. l(x,a)",
                 "EX x. EX y. !(x < y | y < x | x = y)"})
    pool.emplace_back(s, po_automaton(parse_formula(s), sigma));
  return pool;
}

void boolean_ops(Outcome& o) {
  const int k = 5;
  auto pool = saturated_pool();
  auto sigma = pool.front().second.alphabet_ptr();
  auto uni = universal(sigma);
  const Keys all = orders(kAB, 2, k);
  std::map<std::string, Keys> members;
  for (auto& [name, a] : pool) {
    members[name] = po_members_up_to(a, k);
    o.expect(!saturation_gap(a, 4), name + " saturated");
    o.expect(!non_hasse_witness(a), name + " transitively reduced");
    // c-complement by difference with the universal automaton
    o.expect(po_members_up_to(difference(uni, a), k) == minus_keys(all, members[name]), name + " complement");
  }
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); j += 3) {
      ++pairs;
      const auto& [na, a] = pool[i];
      const auto& [nb, b] = pool[j];
      const std::string tag = na + " vs " + nb;
      const Keys& ma = members[na];
      const Keys& mb = members[nb];
      auto u = unite(a, b);
      auto m = intersect(a, b);
      o.expect(po_members_up_to(u, k) == unite_keys(ma, mb), tag + " union");
      o.expect(po_members_up_to(m, k) == meet_keys(ma, mb), tag + " intersection");
      // inclusion: syntactic answer against the semantic one, witnesses checked exactly
      for (auto [x, y, mx, my] : {std::tuple{&a, &b, &ma, &mb}, std::tuple{&b, &a, &mb, &ma}}) {
        auto w = inclusion_witness(*x, *y);
        if (!w) {
          o.expect(subset(*mx, *my), tag + " inclusion");
        } else {
          const auto key = key_of(*x, *w);
          const int size = static_cast<int>(w->size());
          o.expect(po_members_up_to(*y, size).count(key) == 0, tag + " inclusion witness");
        }
      }
      if (is_empty(m)) {
        o.expect(!meets(ma, mb), tag + " disjoint");
      } else {
        auto w = shortest_member(m);
        const auto key = key_of(m, *w);
        const int size = static_cast<int>(w->size());
        o.expect(po_members_up_to(a, size).count(key) && po_members_up_to(b, size).count(key), tag + " common member");
      }
      o.expect(!saturation_gap(u, k) && !saturation_gap(m, k), tag + " saturation kept");
    }
  // without saturation the complement identity breaks
  auto anti = oracle::antichain({0, 1});
  std::vector<UnitDecomposition> one;
  for_each_decomposition(anti, *sigma, [&](const std::vector<int>& w) {
    if (one.empty()) one.push_back(decomposition_of(*sigma, w));
  });
  auto partial = from_decompositions(sigma, one);
  const auto key = canonical_key(transitive_closure(anti));
  const bool broken = po_members_up_to(difference(uni, partial), 2).count(key) == 1 && po_members_up_to(partial, 2).count(key) == 1;
  o.expect(broken, "unsaturated operand should break the complement identity");
  o.expect(saturation_gap(partial, 2).has_value(), "unsaturated operand detected");
  if (o.pass) o.detail << pairs << " pairs, " << pool.size() << " automata, members up to " << k << " vertices; unsaturated counterexample found";
}

void reduction(Outcome& o) {
  std::vector<std::pair<std::string, SliceAutomaton>> tests;
  for (int c = 1; c <= 2; ++c) {
    tests.emplace_back("all decompositions c=" + std::to_string(c) + " {a}", well_formed(make_alphabet(c, kA)));
    tests.emplace_back("all decompositions c=" + std::to_string(c) + " {a,b}", well_formed(make_alphabet(c, kAB)));
  }
  auto sigma = make_alphabet(2, kAB);
  for (auto s : {"EX x. EX y. x < y", "EX y:e. EX x. (s(y,x) & l(x,b))", "ALL x. l(x,a)",
                 "ALL y:e. EX x. EX z. (s(y,x) & t(y,z) & l(x,a) & l(z,b))", "!rho", "EX Y:e. ALL y:e. y in Y"})
    tests.emplace_back(s, compile(parse_formula(s), sigma));
  std::vector<UnitDecomposition> words;
  for (auto h : {oracle::make_dag({0, 1, 0}, {{0, 1}, {1, 2}, {0, 2}}), oracle::make_dag({0, 0, 1, 1}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}})})
    for_each_decomposition(h, *sigma, [&](const std::vector<int>& w) { words.push_back(decomposition_of(*sigma, w)); });
  tests.emplace_back("decompositions of DAGs with shortcuts", from_decompositions(sigma, words));
  tests.emplace_back("net N1 ex", net_automaton(load("N1"), sigma, Semantics::Execution));

  for (auto& [name, a] : tests) {
    auto t = transitive_reduce_automaton(a);
    o.expect(po_members_up_to(t, 5) == po_members_up_to(a, 5), name + " same partial orders");
    bool reduced = true;
    std::size_t seen = 0;
    for_each_word(t, 5, [&](const std::vector<int>& w) {
      ++seen;
      reduced = reduced && oracle::is_hasse(dag_of(t.alphabet(), w));
    });
    o.expect(reduced, name + " reduced members");
    o.expect(!non_hasse_witness(t), name + " exact reducedness test");
  }
  if (o.pass) o.detail << tests.size() << " automata, members up to 5 vertices";
}

void path_covers(Outcome& o) {
  std::size_t dags = 0, orderings = 0, decomps = 0;
  for (int n = 1; n <= 5; ++n)
    for (const auto& h : oracle::all_dags(n, 1)) {
      ++dags;
      const int pc = oracle::path_cover(h);
      const auto flow = min_path_cover(h);
      o.expect(flow.count == pc, "cover of " + dag_to_text(h, kA));
      // the reported paths really cover
      std::set<int> vs;
      std::set<std::pair<int, int>> es;
      for (const auto& p : flow.paths)
        for (std::size_t i = 0; i < p.size(); ++i) {
          vs.insert(p[i]);
          if (i + 1 < p.size()) es.insert({p[i], p[i + 1]});
        }
      o.expect(static_cast<int>(vs.size()) == h.size() && es == std::set<std::pair<int, int>>(h.edges.begin(), h.edges.end()),
               "paths of " + dag_to_text(h, kA));
      // every ordering, i.e. every decomposition up to port numbering, has width <= cover
      for (const auto& ord : topological_orderings(h)) {
        ++orderings;
        std::vector<int> pos(static_cast<std::size_t>(h.size()));
        for (int i = 0; i < h.size(); ++i) pos[static_cast<std::size_t>(ord[static_cast<std::size_t>(i)])] = i;
        int width = 0;
        for (int cut = 0; cut < h.size(); ++cut) {
          int crossing = 0;
          for (auto [a, b] : h.edges) crossing += pos[static_cast<std::size_t>(a)] <= cut && pos[static_cast<std::size_t>(b)] > cut;
          width = std::max(width, crossing);
        }
        o.expect(width == cut_width(h, ord) && width <= pc, "ordering width of " + dag_to_text(h, kA));
      }
      // all port numberings, for Hasse diagrams
      if (!oracle::is_hasse(h)) continue;
      for (const auto& u : unit_decompositions(h, std::max(1, static_cast<int>(h.edges.size())))) {
        ++decomps;
        o.expect(u.width() <= pc, "width of a decomposition of " + dag_to_text(h, kA));
      }
    }
  if (o.pass)
    o.detail << dags << " DAGs up to 5 vertices, " << orderings << " orderings, " << decomps << " unit decompositions of the Hasse ones";
}

void round_trip(Outcome& o) {
  for (const auto& f : kFixtures) {
    auto n = load(f);
    if (n.bound() != 1) continue;
    auto r = synthesize({net_automaton(n, 1, Semantics::Execution), 1, 1, Semantics::Execution});
    o.expect(r.status == SynthesisResult::Status::Synthesized && executions(*r.net, 4, 1) == executions(n, 4, 1), f);
    o.detail << f << ' ';
  }
}

// ---------------------------------------------------------------------------

bool update_goldens() { return std::getenv("SLW_UPDATE_GOLDEN") != nullptr; }

void golden(Outcome& o, const std::string& name, const std::string& text) {
  const std::string path = data("golden/" + name + ".json");
  if (update_goldens()) {
    std::filesystem::create_directories(data("golden"));
    std::ofstream(path) << text << '\n';
    return;
  }
  std::ifstream in(path);
  if (!in) {
    o.expect(false, "missing golden " + path);
    return;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  o.expect(ss.str() == text + "\n", "golden " + name);
}

// every feasible single place (by the oracle) contains the net's executions
void check_minimal(Outcome& o, const PtNet& net, const Keys& target, int b, int c, const std::string& tag) {
  const auto mine = executions(net, 4, c);
  for (const auto& p : candidate_places(net.transitions(), b)) {
    const auto theirs = executions(PtNet::probe(net.transitions(), {p}, b), 4, c);
    if (subset(target, theirs)) o.expect(subset(mine, theirs), tag + " minimal");
  }
}

void scenarios(Outcome& o) {
  // verification
  {
    auto n0 = load("N0");
    auto phi = formula("total.mso");
    auto rep = verify(n0, phi, 2, Semantics::Execution);
    const auto nk = executions(n0, 4, 2);
    const auto fk = orders(n0.transitions(), 2, 4, phi);
    o.expect(rep.disjoint == !meets(nk, fk) && rep.net_subset_of_spec == subset(nk, fk) && rep.spec_subset_of_net == subset(fk, nk),
             "verify answers");
    o.expect(rep.net_only && nk.count(canonical_key(transitive_closure(*rep.net_only))) && !fk.count(canonical_key(transitive_closure(*rep.net_only))),
             "verify witness");
    golden(o, "verify", report_json(rep, n0.transitions()));
  }
  // synthesis from a formula
  {
    auto phi = formula("alternating.mso");
    auto r = synth_from_mso(phi, kAB, 1, 1, 1, Semantics::Execution);
    o.expect(r.status == SynthesisResult::Status::Synthesized, "synth status");
    if (r.net) {
      const auto target = orders(kAB, 1, 4, phi);
      o.expect(subset(target, executions(*r.net, 4, 1)), "synth contains the formula");
      check_minimal(o, *r.net, target, 1, 1, "synth");
    }
    golden(o, "synth", report_json(r, kAB));
  }
  // safest subsystem
  {
    auto n0 = load("N0");
    auto phi = formula("total.mso");
    auto r = safest_subsystem(n0, phi, 1, 1, 2, Semantics::Execution);
    o.expect(r.status == SynthesisResult::Status::Synthesized, "safest status");
    if (r.net) {
      const auto behaviour = executions(*r.net, 4, 2);
      const auto original = executions(n0, 4, 2);
      const auto target = meet_keys(orders(n0.transitions(), 2, 4, phi), original);
      o.expect(subset(target, behaviour) && subset(behaviour, original), "safest conditions");
      check_minimal(o, *r.net, target, 1, 2, "safest");
    }
    golden(o, "safest", report_json(r, n0.transitions()));
  }
  // repair: a free a/b net, keep the alternating runs, allow only runs where each b follows some a
  {
    auto free = PtNet::parse(slurp(data("scenarios/free_ab.net")));
    auto keep = formula("alternating.mso");
    auto allow = formula("b_after_a.mso");
    auto r = repair(free, keep, allow, 1, 1, 1, Semantics::Execution);
    o.expect(r.status == SynthesisResult::Status::Synthesized, "repair status");
    if (r.net) {
      const auto behaviour = executions(*r.net, 4, 1);
      const auto target = meet_keys(orders(kAB, 1, 4, keep), executions(free, 4, 1));
      o.expect(subset(target, behaviour) && subset(behaviour, orders(kAB, 1, 4, allow)), "repair conditions");
      check_minimal(o, *r.net, target, 1, 1, "repair");
    }
    golden(o, "repair", report_json(r, kAB));
  }
  // contracts
  {
    auto yes = formula("alternating.mso");
    auto no = formula("double_a.mso");
    auto r = synth_from_contract(yes, no, kAB, 1, 1, 1, Semantics::Execution);
    o.expect(r.status == SynthesisResult::Status::Synthesized, "contract status");
    if (r.net) {
      const auto behaviour = executions(*r.net, 4, 1);
      o.expect(subset(orders(kAB, 1, 4, yes), behaviour) && !meets(behaviour, orders(kAB, 1, 4, no)), "contract conditions");
    }
    golden(o, "contract", report_json(r, kAB));
    auto bad = synth_from_contract(formula("true.mso"), no, kAB, 1, 1, 1, Semantics::Execution);
    o.expect(bad.status == SynthesisResult::Status::Rejected && bad.witness &&
                 orders(kAB, 1, 4, no).count(canonical_key(transitive_closure(*bad.witness))),
             "contract overlap");
    golden(o, "contract_rejected", report_json(bad, kAB));
  }
  if (o.pass) o.detail << "verify, synth, safest, repair, contract; outputs oracle-checked and matching goldens";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"compiled formulas agree with brute-force evaluation", compiler_agreement},
      {"net automata agree with process enumeration", net_agreement},
      {"width hierarchy on two independent loops", hierarchy},
      {"causal behaviour stabilizes at c = b * places", stabilization},
      {"boolean operations on saturated automata", boolean_ops},
      {"transitive reduction of automata", reduction},
      {"minimum path cover and decomposition width", path_covers},
      {"synthesis round trip", round_trip},
      {"end-to-end procedures", scenarios},
  };
  int failed = 0;
  int id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.str(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << id << ' ' << name << " (" << o.checks << " checks, " << std::fixed
              << std::setprecision(1) << secs << "s): " << o.detail.str() << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
