// slw command line front end; talks to the library through the C interface only.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "slw/slw.h"

namespace {

struct Failure {
  int code;
  std::string message;
};

struct Config {
  std::size_t max_states = 0;
  std::size_t max_enum = 0;
  std::size_t max_candidates = 0;
  std::string format = "text";
  std::string proof_log;
  std::string out;

  slw_caps caps() const {
    slw_caps c = slw_default_caps();
    if (max_states) c.max_states = max_states;
    if (max_enum) c.max_enum_vertices = max_enum;
    if (max_candidates) c.max_candidates = max_candidates;
    return c;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{SLW_INPUT, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw Failure{SLW_INPUT, "cannot write " + path};
}

void check(slw_status s, const std::string& context) {
  if (s == SLW_OK || s == SLW_FALSE) return;
  throw Failure{s, context + ": " + slw_last_error()};
}

struct Str {
  char* p = nullptr;
  ~Str() { slw_string_free(p); }
  std::string get() const { return p ? p : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  ~Handle() { Free(p); }
};
using Net = Handle<slw_net, slw_net_free>;
using Formula = Handle<slw_formula, slw_formula_free>;
using Aut = Handle<slw_automaton, slw_automaton_free>;

void load_net(const std::string& path, Net& n) { check(slw_net_parse(read_file(path).c_str(), &n.p), path); }
void load_formula(const std::string& path, Formula& f) { check(slw_formula_parse(read_file(path).c_str(), &f.p), path); }
void load_aut(const std::string& path, Aut& a) { check(slw_automaton_parse(read_file(path).c_str(), &a.p), path); }

slw_semantics sem_of(const std::string& s) { return s == "cau" ? SLW_CAUSAL : SLW_EXECUTION; }

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) std::cout << text;
  else write_file(path, text);
}

// Runs a report-producing call and prints the report.
template <class F>
int report(const Config& cfg, F&& call) {
  Str rep, log;
  slw_output out{cfg.format == "json" ? SLW_JSON : SLW_TEXT, &rep.p, cfg.proof_log.empty() ? nullptr : &log.p};
  const slw_status s = call(out);
  check(s, "error");
  std::cout << rep.get();
  if (cfg.format == "json") std::cout << '\n';
  if (!cfg.proof_log.empty()) write_file(cfg.proof_log, log.get() + "\n");
  return s;
}

template <class F>
int synthesis(const Config& cfg, F&& call) {
  Net result;
  const int code = report(cfg, [&](slw_output out) { return call(out, &result.p); });
  if (result.p && !cfg.out.empty()) {
    Str s;
    check(slw_net_to_text(result.p, &s.p), "net");
    write_file(cfg.out, s.get());
  }
  return code;
}

void add_caps(CLI::App* app, Config& cfg) {
  app->add_option("--max-states", cfg.max_states, "cap on automaton states")->check(CLI::PositiveNumber);
  app->add_option("--max-enum", cfg.max_enum, "cap on enumerated vertices")->check(CLI::PositiveNumber);
  app->add_option("--max-candidates", cfg.max_candidates, "cap on candidate places")->check(CLI::PositiveNumber);
  app->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--emit-proof-log", cfg.proof_log, "write the proof log (JSON) to this file");
}

struct Bounds {
  int b = 1, r = 1, c = 1;
  std::string sem = "ex";
};

void add_bounds(CLI::App* app, Bounds& k) {
  app->add_option("--b", k.b, "token bound")->required()->check(CLI::PositiveNumber);
  app->add_option("--r", k.r, "place multiplicity bound")->check(CLI::PositiveNumber);
  app->add_option("--c", k.c, "path cover width")->required()->check(CLI::PositiveNumber);
  app->add_option("--sem", k.sem, "semantics")->check(CLI::IsMember({"ex", "cau"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slice automata for partial-order behaviour of bounded Petri nets"};
  app.set_version_flag("--version", std::string("slw ") + slw_version());
  app.require_subcommand(1);
  Config cfg;
  Bounds k;
  std::string net, mso, keep, allow, yes, no, alphabet;
  std::function<int()> run;

  auto* verify = app.add_subcommand("verify", "check a net against an order formula");
  verify->add_option("--net", net)->required();
  verify->add_option("--mso", mso)->required();
  verify->add_option("--c", k.c)->required()->check(CLI::PositiveNumber);
  verify->add_option("--sem", k.sem)->check(CLI::IsMember({"ex", "cau"}));
  add_caps(verify, cfg);
  verify->callback([&] {
    run = [&] {
      Net n;
      Formula f;
      load_net(net, n);
      load_formula(mso, f);
      const slw_caps caps = cfg.caps();
      return report(cfg, [&](slw_output out) { return slw_verify(n.p, f.p, k.c, sem_of(k.sem), &caps, out); });
    };
  });

  auto* synth = app.add_subcommand("synth", "minimal net for the partial orders of a formula");
  synth->add_option("--mso", mso)->required();
  synth->add_option("--alphabet", alphabet, "comma separated transitions")->required();
  add_bounds(synth, k);
  add_caps(synth, cfg);
  synth->add_option("--out", cfg.out, "write the net here");
  synth->callback([&] {
    run = [&] {
      Formula f;
      load_formula(mso, f);
      const slw_caps caps = cfg.caps();
      return synthesis(cfg, [&](slw_output out, slw_net** res) {
        return slw_synthesize(f.p, alphabet.c_str(), k.b, k.r, k.c, sem_of(k.sem), &caps, out, res);
      });
    };
  });

  auto* safest = app.add_subcommand("safest", "safest subsystem of a net for a formula");
  safest->add_option("--net", net)->required();
  safest->add_option("--mso", mso)->required();
  add_bounds(safest, k);
  add_caps(safest, cfg);
  safest->add_option("--out", cfg.out, "write the net here");
  safest->callback([&] {
    run = [&] {
      Net n;
      Formula f;
      load_net(net, n);
      load_formula(mso, f);
      const slw_caps caps = cfg.caps();
      return synthesis(cfg, [&](slw_output out, slw_net** res) {
        return slw_safest(n.p, f.p, k.b, k.r, k.c, sem_of(k.sem), &caps, out, res);
      });
    };
  });

  auto* rep = app.add_subcommand("repair", "keep the runs satisfying one formula, allow only runs satisfying another");
  rep->add_option("--net", net)->required();
  rep->add_option("--keep", keep)->required();
  rep->add_option("--allow", allow)->required();
  add_bounds(rep, k);
  add_caps(rep, cfg);
  rep->add_option("--out", cfg.out, "write the net here");
  rep->callback([&] {
    run = [&] {
      Net n;
      Formula fk, fa;
      load_net(net, n);
      load_formula(keep, fk);
      load_formula(allow, fa);
      const slw_caps caps = cfg.caps();
      return synthesis(cfg, [&](slw_output out, slw_net** res) {
        return slw_repair(n.p, fk.p, fa.p, k.b, k.r, k.c, sem_of(k.sem), &caps, out, res);
      });
    };
  });

  auto* contract = app.add_subcommand("contract", "net containing the yes runs and avoiding the no runs");
  contract->add_option("--yes", yes)->required();
  contract->add_option("--no", no)->required();
  contract->add_option("--alphabet", alphabet, "comma separated transitions")->required();
  add_bounds(contract, k);
  add_caps(contract, cfg);
  contract->add_option("--out", cfg.out, "write the net here");
  contract->callback([&] {
    run = [&] {
      Formula fy, fn;
      load_formula(yes, fy);
      load_formula(no, fn);
      const slw_caps caps = cfg.caps();
      return synthesis(cfg, [&](slw_output out, slw_net** res) {
        return slw_contract(fy.p, fn.p, alphabet.c_str(), k.b, k.r, k.c, sem_of(k.sem), &caps, out, res);
      });
    };
  });

  auto* compile = app.add_subcommand("compile", "slice automaton of a formula");
  auto* graph = compile->add_option("--mso2", mso, "graph formula over DAG decompositions");
  auto* order = compile->add_option("--mso", mso, "order formula over partial orders");
  graph->excludes(order);
  compile->add_option("--alphabet", alphabet, "comma separated labels")->required();
  compile->add_option("--c", k.c)->required()->check(CLI::PositiveNumber);
  compile->add_option("--out", cfg.out, "automaton file (default stdout)");
  add_caps(compile, cfg);
  compile->callback([&] {
    if (graph->count() + order->count() != 1) throw CLI::ValidationError("compile", "give --mso2 or --mso");
    run = [&, use_graph = graph->count() > 0] {
      Formula f;
      load_formula(mso, f);
      Aut a;
      const slw_caps caps = cfg.caps();
      check(use_graph ? slw_compile(f.p, k.c, alphabet.c_str(), &caps, &a.p) : slw_po_automaton(f.p, k.c, alphabet.c_str(), &caps, &a.p),
            mso);
      Str s;
      check(slw_automaton_to_text(a.p, &s.p), "automaton");
      emit(s.get(), cfg.out);
      return 0;
    };
  });

  auto* na = app.add_subcommand("net-automaton", "slice automaton of the behaviour of a net");
  na->add_option("--net", net)->required();
  na->add_option("--c", k.c)->required()->check(CLI::PositiveNumber);
  na->add_option("--sem", k.sem)->check(CLI::IsMember({"ex", "cau"}));
  na->add_option("--out", cfg.out, "automaton file (default stdout)");
  add_caps(na, cfg);
  na->callback([&] {
    run = [&] {
      Net n;
      load_net(net, n);
      Aut a;
      const slw_caps caps = cfg.caps();
      check(slw_net_automaton(n.p, k.c, sem_of(k.sem), &caps, &a.p), net);
      Str s;
      check(slw_automaton_to_text(a.p, &s.p), "automaton");
      emit(s.get(), cfg.out);
      return 0;
    };
  });

  auto* aut = app.add_subcommand("aut", "operations on automaton files");
  aut->require_subcommand(1);
  std::string fa, fb;
  int members_k = 4;
  auto binary = [&](const char* name, const char* help, auto op) {
    auto* s = aut->add_subcommand(name, help);
    s->add_option("A", fa)->required();
    s->add_option("B", fb)->required();
    s->add_option("--out", cfg.out, "automaton file (default stdout)");
    add_caps(s, cfg);
    s->callback([&, op, name] {
      run = [&, op, name] {
        Aut a, b, r;
        load_aut(fa, a);
        load_aut(fb, b);
        const slw_caps caps = cfg.caps();
        check(op(a.p, b.p, &caps, &r.p), name);
        Str s;
        check(slw_automaton_to_text(r.p, &s.p), "automaton");
        emit(s.get(), cfg.out);
        return 0;
      };
    });
  };
  binary("union", "union", [](const slw_automaton* a, const slw_automaton* b, const slw_caps*, slw_automaton** r) {
    return slw_union(a, b, r);
  });
  binary("intersect", "intersection", slw_intersect);
  binary("diff", "difference A minus B", slw_difference);

  auto* comp = aut->add_subcommand("complement", "partial orders of width c missing from A");
  comp->add_option("A", fa)->required();
  comp->add_option("--out", cfg.out, "automaton file (default stdout)");
  add_caps(comp, cfg);
  comp->callback([&] {
    run = [&] {
      Aut a, r;
      load_aut(fa, a);
      const slw_caps caps = cfg.caps();
      check(slw_c_complement(a.p, &caps, &r.p), "complement");
      Str s;
      check(slw_automaton_to_text(r.p, &s.p), "automaton");
      emit(s.get(), cfg.out);
      return 0;
    };
  });

  auto* inc = aut->add_subcommand("includes", "is L(B) inside L(A); prints a missing member otherwise");
  inc->add_option("A", fa)->required();
  inc->add_option("B", fb)->required();
  add_caps(inc, cfg);
  inc->callback([&] {
    run = [&] {
      Aut a, b;
      load_aut(fa, a);
      load_aut(fb, b);
      const slw_caps caps = cfg.caps();
      Str w;
      const slw_status s = slw_includes(a.p, b.p, &caps, &w.p);
      check(s, "includes");
      std::cout << (s == SLW_OK ? "included\n" : "not included; missing member:\n" + w.get());
      return static_cast<int>(s);
    };
  });

  auto* empty = aut->add_subcommand("empty", "is L(A) empty");
  empty->add_option("A", fa)->required();
  empty->callback([&] {
    run = [&] {
      Aut a;
      load_aut(fa, a);
      const slw_status s = slw_is_empty(a.p);
      check(s, "empty");
      std::cout << (s == SLW_OK ? "empty\n" : "nonempty\n");
      return static_cast<int>(s);
    };
  });

  auto* mem = aut->add_subcommand("members", "partial orders of L(A) with at most k vertices");
  mem->add_option("A", fa)->required();
  mem->add_option("--k", members_k, "vertex bound")->check(CLI::NonNegativeNumber);
  add_caps(mem, cfg);
  mem->callback([&] {
    run = [&] {
      Aut a;
      load_aut(fa, a);
      const slw_caps caps = cfg.caps();
      Str s;
      check(slw_members(a.p, members_k, &caps, &s.p), "members");
      std::cout << s.get();
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return SLW_INPUT;
  }
  try {
    return run ? run() : SLW_INPUT;
  } catch (const Failure& f) {
    std::cerr << "slw: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "slw: " << e.what() << '\n';
    return SLW_INTERNAL;
  }
}
