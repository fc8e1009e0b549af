#include "slw/slw.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "slw/canon.hpp"
#include "slw/synthesis.hpp"

struct slw_net {
  slw::PtNet net;
};
struct slw_formula {
  slw::FormulaPtr f;
};
struct slw_automaton {
  slw::SliceAutomaton a;
};

namespace {

thread_local std::string last_error;

template <class F>
slw_status guard(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const slw::ResourceError& e) {
    last_error = e.what();
    return SLW_RESOURCE;
  } catch (const slw::InputError& e) {
    last_error = e.what();
    return SLW_INPUT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SLW_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SLW_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return SLW_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) throw slw::InputError(std::string("null ") + what);
}

slw::Caps caps_of(const slw_caps* c) {
  slw::Caps k;
  if (c) {
    if (c->max_states == 0 || c->max_enum_vertices == 0 || c->max_candidates == 0) throw slw::InputError("caps must be positive");
    k.max_states = c->max_states;
    k.max_enum_vertices = c->max_enum_vertices;
    k.max_candidates = c->max_candidates;
  }
  return k;
}

slw::BuildOptions build_of(const slw_caps* c) {
  slw::BuildOptions o;
  o.max_states = caps_of(c).max_states;
  return o;
}

slw::CompileOptions compile_of(const slw_caps* c) {
  slw::CompileOptions o;
  o.max_states = caps_of(c).max_states;
  return o;
}

slw::Semantics sem_of(slw_semantics s) {
  if (s != SLW_EXECUTION && s != SLW_CAUSAL) throw slw::InputError("unknown semantics");
  return s == SLW_CAUSAL ? slw::Semantics::Causal : slw::Semantics::Execution;
}

void check_width(int c) {
  if (c < 1) throw slw::InputError("width c must be at least 1");
}

slw::LabelSet labels_of(const char* csv) {
  need(csv, "labels");
  return slw::LabelSet::parse(csv);
}

slw_automaton* wrap(slw::SliceAutomaton a) { return new slw_automaton{std::move(a)}; }

void same_alphabet(const slw_automaton* a, const slw_automaton* b) {
  need(a, "automaton");
  need(b, "automaton");
  if (!a->a.alphabet().same_as(b->a.alphabet())) throw slw::InputError("automata use different slice alphabets");
}

std::string dag_text(const slw::SliceAutomaton& a, const std::vector<int>& w) {
  return slw::dag_to_text(slw::dag_of(a.alphabet(), w), a.labels());
}

template <class R>
void emit(const slw_output& out, const R& r, const slw::LabelSet& labels) {
  if (out.report) *out.report = dup(out.format == SLW_JSON ? slw::report_json(r, labels) : slw::report_text(r, labels));
  if (out.proof_log) *out.proof_log = dup(slw::proof_log_json(r.log));
}

slw_status finish(const slw::SynthesisResult& r, const slw::LabelSet& labels, const slw_output& out, slw_net** net) {
  emit(out, r, labels);
  if (net) *net = r.net ? new slw_net{*r.net} : nullptr;
  return r.status == slw::SynthesisResult::Status::Synthesized ? SLW_OK : SLW_FALSE;
}

}  // namespace

extern "C" {

const char* slw_version(void) { return SLW_VERSION; }
const char* slw_last_error(void) { return last_error.c_str(); }

slw_caps slw_default_caps(void) {
  slw::Caps k;
  return {k.max_states, k.max_enum_vertices, k.max_candidates};
}

void slw_string_free(char* s) { std::free(s); }

slw_status slw_net_parse(const char* text, slw_net** out) {
  return guard([&] {
    need(text, "text");
    need(out, "output");
    *out = new slw_net{slw::PtNet::parse(text)};
    return SLW_OK;
  });
}

slw_status slw_net_to_text(const slw_net* n, char** out) {
  return guard([&] {
    need(n, "net");
    need(out, "output");
    *out = dup(n->net.to_text());
    return SLW_OK;
  });
}

slw_status slw_net_transitions(const slw_net* n, char** out) {
  return guard([&] {
    need(n, "net");
    need(out, "output");
    *out = dup(n->net.transitions().to_string());
    return SLW_OK;
  });
}

void slw_net_free(slw_net* n) { delete n; }

slw_status slw_formula_parse(const char* text, slw_formula** out) {
  return guard([&] {
    need(text, "text");
    need(out, "output");
    *out = new slw_formula{slw::parse_formula(text)};
    return SLW_OK;
  });
}

slw_status slw_formula_to_text(const slw_formula* f, char** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "output");
    *out = dup(slw::to_string(f->f));
    return SLW_OK;
  });
}

void slw_formula_free(slw_formula* f) { delete f; }

slw_status slw_compile(const slw_formula* f, int c, const char* labels, const slw_caps* caps, slw_automaton** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "output");
    check_width(c);
    *out = wrap(slw::compile(f->f, c, labels_of(labels), compile_of(caps)));
    return SLW_OK;
  });
}

slw_status slw_po_automaton(const slw_formula* f, int c, const char* labels, const slw_caps* caps, slw_automaton** out) {
  return guard([&] {
    need(f, "formula");
    need(out, "output");
    check_width(c);
    *out = wrap(slw::po_automaton(f->f, c, labels_of(labels), compile_of(caps)));
    return SLW_OK;
  });
}

slw_status slw_net_automaton(const slw_net* n, int c, slw_semantics sem, const slw_caps* caps, slw_automaton** out) {
  return guard([&] {
    need(n, "net");
    need(out, "output");
    check_width(c);
    *out = wrap(slw::net_automaton(n->net, c, sem_of(sem), build_of(caps)));
    return SLW_OK;
  });
}

slw_status slw_automaton_parse(const char* text, slw_automaton** out) {
  return guard([&] {
    need(text, "text");
    need(out, "output");
    *out = wrap(slw::automaton_from_text(text));
    return SLW_OK;
  });
}

slw_status slw_automaton_to_text(const slw_automaton* a, char** out) {
  return guard([&] {
    need(a, "automaton");
    need(out, "output");
    *out = dup(slw::to_text(a->a));
    return SLW_OK;
  });
}

size_t slw_automaton_states(const slw_automaton* a) { return a ? a->a.state_count() : 0; }

void slw_automaton_free(slw_automaton* a) { delete a; }

slw_status slw_union(const slw_automaton* a, const slw_automaton* b, slw_automaton** out) {
  return guard([&] {
    same_alphabet(a, b);
    need(out, "output");
    *out = wrap(slw::unite(a->a, b->a));
    return SLW_OK;
  });
}

slw_status slw_intersect(const slw_automaton* a, const slw_automaton* b, const slw_caps* caps, slw_automaton** out) {
  return guard([&] {
    same_alphabet(a, b);
    need(out, "output");
    *out = wrap(slw::intersect(a->a, b->a, build_of(caps)));
    return SLW_OK;
  });
}

slw_status slw_difference(const slw_automaton* a, const slw_automaton* b, const slw_caps* caps, slw_automaton** out) {
  return guard([&] {
    same_alphabet(a, b);
    need(out, "output");
    *out = wrap(slw::difference(a->a, b->a, build_of(caps)));
    return SLW_OK;
  });
}

slw_status slw_c_complement(const slw_automaton* a, const slw_caps* caps, slw_automaton** out) {
  return guard([&] {
    need(a, "automaton");
    need(out, "output");
    *out = wrap(slw::c_complement(a->a, build_of(caps)));
    return SLW_OK;
  });
}

slw_status slw_includes(const slw_automaton* a, const slw_automaton* b, const slw_caps* caps, char** witness) {
  return guard([&] {
    same_alphabet(a, b);
    auto w = slw::inclusion_witness(b->a, a->a, build_of(caps));
    if (!w) return SLW_OK;
    if (witness) *witness = dup(dag_text(b->a, *w));
    return SLW_FALSE;
  });
}

slw_status slw_is_empty(const slw_automaton* a) {
  return guard([&] {
    need(a, "automaton");
    return slw::is_empty(a->a) ? SLW_OK : SLW_FALSE;
  });
}

slw_status slw_members(const slw_automaton* a, int k, const slw_caps* caps, char** out) {
  return guard([&] {
    need(a, "automaton");
    need(out, "output");
    if (k < 0) throw slw::InputError("negative member size");
    const auto cp = caps_of(caps);
    if (static_cast<std::size_t>(k) > cp.max_enum_vertices)
      throw slw::ResourceError("member size " + std::to_string(k) + " exceeds the enumeration cap of " +
                               std::to_string(cp.max_enum_vertices));
    std::string s;
    for (const auto& key : slw::po_members_up_to(a->a, k, cp)) {
      if (!s.empty()) s += '\n';
      s += slw::poset_to_text(slw::poset_from_key(key), a->a.labels());
    }
    *out = dup(s);
    return SLW_OK;
  });
}

slw_status slw_verify(const slw_net* n, const slw_formula* phi, int c, slw_semantics sem, const slw_caps* caps,
                      slw_output out) {
  return guard([&] {
    need(n, "net");
    need(phi, "formula");
    check_width(c);
    auto r = slw::verify(n->net, phi->f, c, sem_of(sem), caps_of(caps));
    emit(out, r, n->net.transitions());
    return r.net_subset_of_spec ? SLW_OK : SLW_FALSE;
  });
}

slw_status slw_synthesize(const slw_formula* phi, const char* labels, int b, int r, int c, slw_semantics sem,
                          const slw_caps* caps, slw_output out, slw_net** net) {
  return guard([&] {
    need(phi, "formula");
    check_width(c);
    const auto T = labels_of(labels);
    return finish(slw::synth_from_mso(phi->f, T, b, r, c, sem_of(sem), caps_of(caps)), T, out, net);
  });
}

slw_status slw_safest(const slw_net* n, const slw_formula* phi, int b, int r, int c, slw_semantics sem,
                      const slw_caps* caps, slw_output out, slw_net** net) {
  return guard([&] {
    need(n, "net");
    need(phi, "formula");
    check_width(c);
    return finish(slw::safest_subsystem(n->net, phi->f, b, r, c, sem_of(sem), caps_of(caps)), n->net.transitions(), out, net);
  });
}

slw_status slw_repair(const slw_net* n, const slw_formula* keep, const slw_formula* allow, int b, int r, int c,
                      slw_semantics sem, const slw_caps* caps, slw_output out, slw_net** net) {
  return guard([&] {
    need(n, "net");
    need(keep, "formula");
    need(allow, "formula");
    check_width(c);
    return finish(slw::repair(n->net, keep->f, allow->f, b, r, c, sem_of(sem), caps_of(caps)), n->net.transitions(), out, net);
  });
}

slw_status slw_contract(const slw_formula* yes, const slw_formula* no, const char* labels, int b, int r, int c,
                        slw_semantics sem, const slw_caps* caps, slw_output out, slw_net** net) {
  return guard([&] {
    need(yes, "formula");
    need(no, "formula");
    check_width(c);
    const auto T = labels_of(labels);
    return finish(slw::synth_from_contract(yes->f, no->f, T, b, r, c, sem_of(sem), caps_of(caps)), T, out, net);
  });
}

}  // extern "C"
