#include "slw/synthesis.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "slw/canon.hpp"

namespace slw {

namespace {

BuildOptions build_opts(const Caps& caps, const std::string& what) {
  BuildOptions o;
  o.max_states = caps.max_states;
  o.what = what;
  return o;
}

void note(ProofLog& log, std::string op, std::string subject, std::string outcome) {
  log.push_back({std::move(op), std::move(subject), std::move(outcome)});
}

std::string holds(bool b) { return b ? "holds" : "fails"; }

std::string states(const SliceAutomaton& a) { return std::to_string(a.state_count()) + " states"; }

std::optional<LabeledDag> member_dag(const SliceAutomaton& a) {
  auto w = shortest_member(a);
  if (!w) return std::nullopt;
  return dag_of(a.alphabet(), *w);
}

std::string word_text(const PtNet& n, const std::vector<int>& seq) {
  std::string s;
  for (int t : seq) s += (s.empty() ? "" : " ") + n.transitions().name(t);
  return s;
}

}  // namespace

std::vector<Place> candidate_places(const LabelSet& transitions, int b, const Caps& caps) {
  if (b < 1) throw InputError("bound must be at least 1");
  const std::size_t t = transitions.size();
  const std::size_t digits = 2 * t + 1;
  double total = 1;
  for (std::size_t i = 0; i < digits; ++i) total *= b + 1;
  if (total > static_cast<double>(caps.max_candidates))
    throw ResourceError(std::to_string(static_cast<long long>(total)) + " candidate places exceed the cap of " +
                        std::to_string(caps.max_candidates));
  std::vector<Place> out;
  std::vector<int> code(digits, 0);
  while (true) {
    Place p;
    p.initial = code[0];
    p.takes.assign(code.begin() + 1, code.begin() + 1 + static_cast<std::ptrdiff_t>(t));
    p.puts.assign(code.begin() + 1 + static_cast<std::ptrdiff_t>(t), code.end());
    const bool arcs = std::any_of(code.begin() + 1, code.end(), [](int x) { return x > 0; });
    if (arcs) out.push_back(p);
    std::size_t i = 0;
    while (i < digits && code[i] == b) code[i++] = 0;
    if (i == digits) break;
    ++code[i];
  }
  return out;
}

bool feasible_place(const Place& p, const SynthesisSpec& spec, const Caps& caps) {
  auto probe = PtNet::probe(spec.target.labels(), {p}, spec.b);
  const auto opt = build_opts(caps, "probe automaton");
  auto a = net_automaton(probe, spec.target.alphabet_ptr(), Semantics::Execution, opt);
  return includes(spec.target, a, opt);
}

SynthesisResult synthesize(const SynthesisSpec& spec, const Caps& caps) {
  if (spec.r < 1) throw InputError("multiplicity bound r must be at least 1");
  SynthesisResult res;
  const LabelSet& T = spec.target.labels();
  const auto cands = candidate_places(T, spec.b, caps);
  note(res.log, "enumerate", "candidate places with counts <= " + std::to_string(spec.b), std::to_string(cands.size()) + " candidates");

  std::vector<char> ok(cands.size(), 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < cands.size();) {
      try {
        ok[i] = feasible_place(cands[i], spec, caps);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        next = cands.size();
      }
    }
  };
  const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < hw; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::vector<Place> places;
  int id = 0;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!ok[i]) continue;
    Place p = cands[i];
    p.name = "p" + std::to_string(++id);
    const int copies = spec.sem == Semantics::Causal ? spec.r : 1;
    for (int k = 0; k < copies; ++k) places.push_back(p);
  }
  note(res.log, "feasibility", "probe inclusion of the target in each single-place net", std::to_string(id) + " feasible");

  for (std::size_t t = 0; t < T.size(); ++t) {
    bool in = false, out = false;
    for (const auto& p : places) {
      in = in || p.takes[t] > 0;
      out = out || p.puts[t] > 0;
    }
    if (!in || !out) {
      res.diagnostic = "no feasible " + std::string(in ? "output" : "input") + " place for transition " + T.name(static_cast<int>(t));
      note(res.log, "check", "every transition has an input and an output place", "fails");
      return res;
    }
  }
  PtNet net("synthesized", T, places, spec.b);
  auto bc = check_bounded(net, spec.b, caps.max_states);
  note(res.log, "check", "assembled net is " + std::to_string(spec.b) + "-bounded", holds(bc.bounded));
  if (!bc.bounded) {
    res.diagnostic = "the net of all feasible places exceeds the bound after: " + word_text(net, bc.witness);
    return res;
  }
  const auto opt = build_opts(caps, "net automaton");
  auto a = net_automaton(net, spec.target.alphabet_ptr(), spec.sem, opt);
  note(res.log, "build", std::string("net automaton (") + semantics_name(spec.sem) + ")", states(a));
  auto miss = inclusion_witness(spec.target, a, opt);
  note(res.log, "inclusion", "target in net behaviour", holds(!miss));
  if (miss) {
    res.diagnostic = "the target has a member outside the behaviour of every bounded net built from feasible places";
    res.witness = dag_of(spec.target.alphabet(), *miss);
    return res;
  }
  res.status = SynthesisResult::Status::Synthesized;
  res.net = std::move(net);
  return res;
}

SynthesisResult separate(const SliceAutomaton& target, const SliceAutomaton& forbidden, int b, int r, Semantics sem, const Caps& caps) {
  SynthesisResult res = synthesize({target, b, r, sem}, caps);
  if (res.status != SynthesisResult::Status::Synthesized) return res;
  const auto opt = build_opts(caps, "net automaton");
  auto a = net_automaton(*res.net, target.alphabet_ptr(), sem, opt);
  auto both = intersect(a, forbidden, opt);
  const bool disjoint = is_empty(both);
  note(res.log, "disjointness", "minimal net behaviour and forbidden language", holds(disjoint));
  if (!disjoint) {
    res.status = SynthesisResult::Status::NoNet;
    res.witness = member_dag(both);
    res.net.reset();
    res.diagnostic = "the minimal net already has a forbidden run, so every net containing the target does";
  }
  return res;
}

bool oracle_member(const PtNet& n, const LabeledPoset& p, int c, Semantics sem, const Caps& caps) {
  const auto key = canonical_key(p);
  const auto set = sem == Semantics::Causal ? causal_orders(n, p.size(), c, caps) : executions(n, p.size(), c, caps);
  return set.count(key) > 0;
}

VerificationReport verify(const PtNet& n, const FormulaPtr& phi, int c, Semantics sem, const Caps& caps) {
  VerificationReport rep;
  const auto opt = build_opts(caps, "net automaton");
  auto sigma = make_alphabet(c, n.transitions());
  CompileOptions co;
  co.max_states = caps.max_states;
  auto an = net_automaton(n, sigma, sem, opt);
  note(rep.log, "build", std::string("net automaton (") + semantics_name(sem) + ")", states(an));
  auto ap = po_automaton(phi, sigma, co);
  note(rep.log, "build", "formula automaton", states(ap));
  auto anot = po_automaton(fm::neg(phi), sigma, co);
  note(rep.log, "build", "negated formula automaton", states(anot));

  auto shared = intersect(an, ap, opt);
  rep.disjoint = is_empty(shared);
  note(rep.log, "disjointness", "net behaviour and formula", holds(rep.disjoint));
  if (!rep.disjoint) rep.shared = member_dag(shared);

  auto bad = intersect(an, anot, opt);
  rep.net_subset_of_spec = is_empty(bad);
  note(rep.log, "disjointness", "net behaviour and negated formula", holds(rep.net_subset_of_spec));
  if (!rep.net_subset_of_spec) rep.net_only = member_dag(bad);

  auto miss = inclusion_witness(ap, an, opt);
  rep.spec_subset_of_net = !miss;
  note(rep.log, "inclusion", "formula in net behaviour", holds(rep.spec_subset_of_net));
  if (miss) rep.spec_only = dag_of(*sigma, *miss);

  // confirm witnesses independently
  auto confirm = [&](const std::optional<LabeledDag>& h, bool in_net, bool in_spec, const char* what) {
    if (!h) return;
    if (static_cast<std::size_t>(h->size()) > caps.max_enum_vertices) {
      rep.witnesses_checked = false;
      return;
    }
    const auto p = transitive_closure(*h);
    const bool net_ok = oracle_member(n, p, c, sem, caps) == in_net;
    const bool spec_ok = evaluate_po(p, n.transitions(), phi) == in_spec;
    if (!net_ok || !spec_ok) throw Error(std::string("internal error: ") + what + " witness rejected by the oracle");
    note(rep.log, "oracle", std::string(what) + " witness", "confirmed");
  };
  confirm(rep.shared, true, true, "shared");
  confirm(rep.net_only, true, false, "net-only");
  confirm(rep.spec_only, false, true, "formula-only");
  return rep;
}

SynthesisResult synth_from_mso(const FormulaPtr& phi, const LabelSet& transitions, int b, int r, int c, Semantics sem, const Caps& caps) {
  CompileOptions co;
  co.max_states = caps.max_states;
  auto a = po_automaton(phi, c, transitions, co);
  ProofLog log{{"build", "formula automaton", states(a)}};
  auto res = synthesize({a, b, r, sem}, caps);
  res.log.insert(res.log.begin(), log.begin(), log.end());
  return res;
}

SynthesisResult safest_subsystem(const PtNet& n, const FormulaPtr& phi, int b, int r, int c, Semantics sem, const Caps& caps) {
  const auto opt = build_opts(caps, "net automaton");
  CompileOptions co;
  co.max_states = caps.max_states;
  auto sigma = make_alphabet(c, n.transitions());
  ProofLog log;
  auto an = net_automaton(n, sigma, sem, opt);
  note(log, "build", std::string("net automaton (") + semantics_name(sem) + ")", states(an));
  auto ap = po_automaton(phi, sigma, co);
  note(log, "build", "formula automaton", states(ap));
  auto target = intersect(ap, an, opt);
  note(log, "build", "formula runs of the net", states(target));
  auto forbidden = c_complement(an, opt);
  note(log, "build", "c-complement of the net behaviour", states(forbidden));
  auto res = separate(target, forbidden, b, r, sem, caps);
  res.log.insert(res.log.begin(), log.begin(), log.end());
  return res;
}

SynthesisResult repair(const PtNet& n, const FormulaPtr& phi, const FormulaPtr& psi, int b, int r, int c, Semantics sem, const Caps& caps) {
  const auto opt = build_opts(caps, "net automaton");
  CompileOptions co;
  co.max_states = caps.max_states;
  auto sigma = make_alphabet(c, n.transitions());
  ProofLog log;
  auto an = net_automaton(n, sigma, sem, opt);
  note(log, "build", std::string("net automaton (") + semantics_name(sem) + ")", states(an));
  auto target = intersect(po_automaton(phi, sigma, co), an, opt);
  note(log, "build", "kept runs of the net", states(target));
  auto forbidden = po_automaton(fm::neg(psi), sigma, co);
  note(log, "build", "runs violating the allowed formula", states(forbidden));
  auto res = separate(target, forbidden, b, r, sem, caps);
  res.log.insert(res.log.begin(), log.begin(), log.end());
  return res;
}

SynthesisResult synth_from_contract(const FormulaPtr& yes, const FormulaPtr& no, const LabelSet& transitions, int b, int r, int c,
                                    Semantics sem, const Caps& caps) {
  const auto opt = build_opts(caps, "formula automaton");
  CompileOptions co;
  co.max_states = caps.max_states;
  auto sigma = make_alphabet(c, transitions);
  ProofLog log;
  auto ay = po_automaton(yes, sigma, co);
  note(log, "build", "required formula automaton", states(ay));
  auto an = po_automaton(no, sigma, co);
  note(log, "build", "forbidden formula automaton", states(an));
  auto overlap = intersect(ay, an, opt);
  const bool disjoint = is_empty(overlap);
  note(log, "disjointness", "required and forbidden formulas", holds(disjoint));
  if (!disjoint) {
    SynthesisResult res;
    res.status = SynthesisResult::Status::Rejected;
    res.diagnostic = "the required and forbidden formulas share a partial order";
    res.witness = member_dag(overlap);
    res.log = log;
    return res;
  }
  auto res = separate(ay, an, b, r, sem, caps);
  res.log.insert(res.log.begin(), log.begin(), log.end());
  return res;
}

}  // namespace slw
