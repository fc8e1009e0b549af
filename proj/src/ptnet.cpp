#include "slw/ptnet.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "slw/canon.hpp"

namespace slw {

namespace {

void check_counts(const LabelSet& t, const std::vector<Place>& places, int bound) {
  if (t.size() == 0) throw InputError("a net needs at least one transition");
  if (bound < 1) throw InputError("bound must be at least 1");
  for (const auto& p : places) {
    if (p.puts.size() != t.size() || p.takes.size() != t.size())
      throw InputError("place " + p.name + " does not list every transition");
    if (p.initial < 0) throw InputError("place " + p.name + " has negative initial tokens");
    for (std::size_t i = 0; i < t.size(); ++i)
      if (p.puts[i] < 0 || p.takes[i] < 0) throw InputError("place " + p.name + " has a negative arc weight");
  }
}

}  // namespace

PtNet::PtNet(std::string name, LabelSet transitions, std::vector<Place> places, int bound)
    : name_(std::move(name)), transitions_(std::move(transitions)), places_(std::move(places)), bound_(bound) {
  check_counts(transitions_, places_, bound_);
  for (std::size_t t = 0; t < transitions_.size(); ++t) {
    bool in = false, out = false;
    for (const auto& p : places_) {
      in = in || p.takes[t] > 0;
      out = out || p.puts[t] > 0;
    }
    if (!in || !out)
      throw InputError("transition " + transitions_.name(static_cast<int>(t)) + " has no " + (in ? "output" : "input") + " place");
  }
}

PtNet PtNet::probe(LabelSet transitions, std::vector<Place> places, int bound) {
  PtNet n;
  n.name_ = "probe";
  n.transitions_ = std::move(transitions);
  n.places_ = std::move(places);
  n.bound_ = bound;
  check_counts(n.transitions_, n.places_, n.bound_);
  return n;
}

std::string PtNet::to_text() const {
  std::ostringstream os;
  os << "net " << (name_.empty() ? "N" : name_) << " bound=" << bound_ << "\n";
  os << "transitions";
  for (auto& t : transitions_.names()) os << ' ' << t;
  os << "\n";
  for (std::size_t i = 0; i < places_.size();) {
    std::size_t j = i + 1;
    while (j < places_.size() && places_[j].name == places_[i].name && places_[j].same_arcs(places_[i])) ++j;
    const Place& p = places_[i];
    os << "place " << p.name << " init=" << p.initial;
    for (std::size_t t = 0; t < transitions_.size(); ++t)
      if (p.takes[t]) os << " take(" << transitions_.name(static_cast<int>(t)) << ")=" << p.takes[t];
    for (std::size_t t = 0; t < transitions_.size(); ++t)
      if (p.puts[t]) os << " put(" << transitions_.name(static_cast<int>(t)) << ")=" << p.puts[t];
    if (j - i > 1) os << " mult=" << (j - i);
    os << "\n";
    i = j;
  }
  return os.str();
}

PtNet PtNet::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::string name;
  int bound = -1;
  std::optional<LabelSet> ts;
  std::vector<Place> places;
  auto fail = [&](std::size_t col, const std::string& msg) -> InputError {
    return InputError("line " + std::to_string(lineno) + ", column " + std::to_string(col) + ": " + msg);
  };
  auto number = [&](const std::string& s, std::size_t col) {
    if (s.empty() || s.size() > 6 || !std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      throw fail(col, "expected a nonnegative number, got '" + s + "'");
    return std::stoi(s);
  };
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    // words with their 1-based columns
    std::vector<std::pair<std::string, std::size_t>> words;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      words.emplace_back(line.substr(i, j - i), i + 1);
      i = j;
    }
    if (words.empty()) continue;
    const std::string& kw = words[0].first;
    if (kw == "net") {
      if (header) throw fail(1, "second net header");
      header = true;
      for (std::size_t w = 1; w < words.size(); ++w) {
        auto& [tok, col] = words[w];
        if (tok.rfind("bound=", 0) == 0) bound = number(tok.substr(6), col + 6);
        else if (name.empty() && tok.find('=') == std::string::npos) name = tok;
        else throw fail(col, "unexpected '" + tok + "' in net header");
      }
      if (bound < 0) throw fail(1, "net header needs bound=B");
      if (bound < 1) throw fail(words[0].second, "bound must be at least 1");
    } else if (kw == "transitions") {
      if (!header) throw fail(1, "missing net header");
      if (ts) throw fail(1, "transitions declared twice");
      std::vector<std::string> names;
      for (std::size_t w = 1; w < words.size(); ++w) {
        const auto& tok = words[w].first;
        if (std::find(names.begin(), names.end(), tok) != names.end()) throw fail(words[w].second, "duplicate transition '" + tok + "'");
        names.push_back(tok);
      }
      if (names.empty()) throw fail(1, "no transitions listed");
      ts = LabelSet(names);
    } else if (kw == "place") {
      if (!ts) throw fail(1, "place before transitions");
      Place p;
      p.puts.assign(ts->size(), 0);
      p.takes.assign(ts->size(), 0);
      int mult = 1;
      for (std::size_t w = 1; w < words.size(); ++w) {
        auto& [tok, col] = words[w];
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
          if (w != 1) throw fail(col, "expected key=value, got '" + tok + "'");
          p.name = tok;
          continue;
        }
        const std::string key = tok.substr(0, eq);
        const int value = number(tok.substr(eq + 1), col + eq + 1);
        if (key == "init") {
          p.initial = value;
        } else if (key == "mult") {
          if (value < 1) throw fail(col, "mult must be at least 1");
          mult = value;
        } else if ((key.rfind("take(", 0) == 0 || key.rfind("put(", 0) == 0) && key.back() == ')') {
          const bool take = key[0] == 't';
          const std::string t = key.substr(take ? 5 : 4, key.size() - (take ? 6 : 5));
          const int ti = ts->find(t);
          if (ti < 0) throw fail(col, "unknown transition '" + t + "'");
          (take ? p.takes : p.puts)[static_cast<std::size_t>(ti)] = value;
        } else {
          throw fail(col, "unknown place attribute '" + key + "'");
        }
      }
      if (p.name.empty()) p.name = "p" + std::to_string(places.size() + 1);
      for (int i = 0; i < mult; ++i) places.push_back(p);
    } else {
      throw fail(words[0].second, "unknown keyword '" + kw + "'");
    }
  }
  if (!header) throw InputError("line 1, column 1: missing net header");
  if (!ts) throw InputError("line " + std::to_string(lineno) + ", column 1: missing transitions line");
  return PtNet(name, *ts, places, bound);
}

PtNet net_union(const PtNet& a, const PtNet& b) {
  if (!(a.transitions() == b.transitions()))
    throw InputError("net union needs the same transitions: " + a.transitions().to_string() + " vs " + b.transitions().to_string());
  std::vector<Place> ps = a.places();
  ps.insert(ps.end(), b.places().begin(), b.places().end());
  return PtNet(a.name() + "+" + b.name(), a.transitions(), ps, std::max(a.bound(), b.bound()));
}

Marking initial_marking(const PtNet& n) {
  Marking m;
  for (const auto& p : n.places()) m.push_back(p.initial);
  return m;
}

bool enabled(const PtNet& n, const Marking& m, int t) {
  if (t < 0 || static_cast<std::size_t>(t) >= n.transitions().size()) throw InputError("no transition " + std::to_string(t));
  for (std::size_t i = 0; i < n.place_count(); ++i)
    if (m[i] < n.places()[i].takes[static_cast<std::size_t>(t)]) return false;
  return true;
}

Marking fire(const PtNet& n, const Marking& m, int t) {
  if (!enabled(n, m, t)) throw InputError("transition " + n.transitions().name(t) + " is not enabled");
  Marking r = m;
  for (std::size_t i = 0; i < n.place_count(); ++i)
    r[i] += n.places()[i].puts[static_cast<std::size_t>(t)] - n.places()[i].takes[static_cast<std::size_t>(t)];
  return r;
}

BoundCheck check_bounded(const PtNet& n, int b, std::size_t max_markings) {
  std::map<Marking, std::pair<Marking, int>> parent;  // marking -> (previous, transition)
  const Marking m0 = initial_marking(n);
  auto witness = [&](Marking m) {
    std::vector<int> seq;
    while (m != m0) {
      auto [prev, t] = parent.at(m);
      seq.push_back(t);
      m = prev;
    }
    std::reverse(seq.begin(), seq.end());
    return seq;
  };
  auto over = [b](const Marking& m) { return std::any_of(m.begin(), m.end(), [b](int x) { return x > b; }); };
  if (over(m0)) return {false, {}};
  parent[m0] = {m0, -1};
  std::deque<Marking> q{m0};
  while (!q.empty()) {
    Marking m = q.front();
    q.pop_front();
    for (int t = 0; t < static_cast<int>(n.transitions().size()); ++t) {
      if (!enabled(n, m, t)) continue;
      Marking x = fire(n, m, t);
      if (parent.count(x)) continue;
      parent[x] = {m, t};
      if (over(x)) return {false, witness(x)};
      if (parent.size() > max_markings) throw ResourceError("boundedness check exceeded " + std::to_string(max_markings) + " markings");
      q.push_back(x);
    }
  }
  return {true, {}};
}

// ---------------------------------------------------------------------------
// processes
// ---------------------------------------------------------------------------

LabeledDag ProcessNet::flow_dag(int transition_count) const {
  LabeledDag h;
  const int nc = static_cast<int>(conditions.size());
  for (const auto& c : conditions) h.labels.push_back(transition_count + c.place);
  for (int t : events) h.labels.push_back(t);
  for (int i = 0; i < nc; ++i) {
    const auto& c = conditions[static_cast<std::size_t>(i)];
    if (c.producer >= 0) h.edges.emplace_back(nc + c.producer, i);
    if (c.consumer >= 0) h.edges.emplace_back(i, nc + c.consumer);
  }
  return h;
}

std::vector<std::string> process_violations(const PtNet& n, const ProcessNet& p) {
  std::vector<std::string> out;
  const int ne = static_cast<int>(p.events.size());
  const std::size_t np = n.place_count();
  for (int t : p.events)
    if (t < 0 || static_cast<std::size_t>(t) >= n.transitions().size()) out.push_back("event labeled by an unknown transition");
  std::vector<std::vector<int>> pre(static_cast<std::size_t>(ne), std::vector<int>(np, 0)), post = pre;
  std::vector<int> initial(np, 0);
  for (const auto& c : p.conditions) {
    if (c.place < 0 || static_cast<std::size_t>(c.place) >= np) {
      out.push_back("condition labeled by an unknown place");
      continue;
    }
    if (c.producer >= ne || c.consumer >= ne) out.push_back("condition attached to a missing event");
    if (c.producer >= 0 && c.producer < ne) ++post[static_cast<std::size_t>(c.producer)][static_cast<std::size_t>(c.place)];
    else if (c.producer < 0) ++initial[static_cast<std::size_t>(c.place)];
    if (c.consumer >= 0 && c.consumer < ne) ++pre[static_cast<std::size_t>(c.consumer)][static_cast<std::size_t>(c.place)];
  }
  if (!out.empty()) return out;
  if (!p.flow_dag(static_cast<int>(n.transitions().size())).is_acyclic()) out.push_back("flow relation has a cycle");
  for (int v = 0; v < ne; ++v)
    for (std::size_t q = 0; q < np; ++q) {
      const auto t = static_cast<std::size_t>(p.events[static_cast<std::size_t>(v)]);
      if (pre[static_cast<std::size_t>(v)][q] != n.places()[q].takes[t])
        out.push_back("event " + std::to_string(v) + " consumes the wrong number of tokens from " + n.places()[q].name);
      if (post[static_cast<std::size_t>(v)][q] != n.places()[q].puts[t])
        out.push_back("event " + std::to_string(v) + " produces the wrong number of tokens on " + n.places()[q].name);
    }
  for (std::size_t q = 0; q < np; ++q)
    if (initial[q] != n.places()[q].initial) out.push_back("initial conditions of " + n.places()[q].name + " do not match");
  return out;
}

std::vector<ProcessNet> processes(const PtNet& n, int k, const Caps& caps) {
  if (k < 0) throw InputError("event bound must be nonnegative");
  if (static_cast<std::size_t>(k) > caps.max_enum_vertices)
    throw ResourceError("process enumeration to " + std::to_string(k) + " events exceeds the cap of " + std::to_string(caps.max_enum_vertices));
  const int nt = static_cast<int>(n.transitions().size());
  const int np = static_cast<int>(n.place_count());
  ProcessNet start;
  for (int q = 0; q < np; ++q)
    for (int i = 0; i < n.places()[static_cast<std::size_t>(q)].initial; ++i) start.conditions.push_back({q});
  std::vector<ProcessNet> all{start};
  std::vector<ProcessNet> level{start};
  std::set<std::string> seen{canonical_key(start.flow_dag(nt))};
  for (int depth = 0; depth < k; ++depth) {
    std::vector<ProcessNet> next;
    for (const auto& p : level) {
      std::vector<std::vector<int>> avail(static_cast<std::size_t>(np));
      for (int i = 0; i < static_cast<int>(p.conditions.size()); ++i)
        if (p.conditions[static_cast<std::size_t>(i)].consumer < 0) avail[static_cast<std::size_t>(p.conditions[static_cast<std::size_t>(i)].place)].push_back(i);
      for (int t = 0; t < nt; ++t) {
        const auto ut = static_cast<std::size_t>(t);
        bool ok = true;
        for (int q = 0; q < np; ++q) ok = ok && static_cast<int>(avail[static_cast<std::size_t>(q)].size()) >= n.places()[static_cast<std::size_t>(q)].takes[ut];
        if (!ok) continue;
        // marking after firing respects the bound
        for (int q = 0; q < np; ++q) {
          const auto& pl = n.places()[static_cast<std::size_t>(q)];
          if (static_cast<int>(avail[static_cast<std::size_t>(q)].size()) - pl.takes[ut] + pl.puts[ut] > n.bound()) ok = false;
        }
        if (!ok) continue;
        std::vector<int> chosen;
        std::function<void(int, int, std::size_t)> pick = [&](int q, int need, std::size_t from) {
          if (q == np) {
            ProcessNet x = p;
            const int v = static_cast<int>(x.events.size());
            x.events.push_back(t);
            for (int c : chosen) x.conditions[static_cast<std::size_t>(c)].consumer = v;
            for (int r = 0; r < np; ++r)
              for (int i = 0; i < n.places()[static_cast<std::size_t>(r)].puts[ut]; ++i) x.conditions.push_back({r, v, -1});
            if (seen.insert(canonical_key(x.flow_dag(nt))).second) {
              if (seen.size() > caps.max_candidates) throw ResourceError("process enumeration exceeded " + std::to_string(caps.max_candidates) + " processes");
              next.push_back(std::move(x));
            }
            return;
          }
          const auto& av = avail[static_cast<std::size_t>(q)];
          if (need == 0) {
            const int nq = q + 1;
            pick(nq, nq < np ? n.places()[static_cast<std::size_t>(nq)].takes[ut] : 0, 0);
            return;
          }
          for (std::size_t i = from; i < av.size(); ++i) {
            chosen.push_back(av[i]);
            pick(q, need - 1, i + 1);
            chosen.pop_back();
          }
        };
        pick(0, np > 0 ? n.places()[0].takes[ut] : 0, 0);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

LabeledPoset causal_order(const ProcessNet& p) {
  const int nc = static_cast<int>(p.conditions.size());
  const auto flow = transitive_closure(p.flow_dag(0));
  LabeledPoset r;
  const int ne = static_cast<int>(p.events.size());
  r.labels = p.events;
  r.less.assign(static_cast<std::size_t>(ne), 0);
  for (int a = 0; a < ne; ++a)
    for (int b = 0; b < ne; ++b)
      if (flow.lt(nc + a, nc + b)) r.less[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
  return r;
}

namespace {

bool coverable(const LabeledPoset& p, int c) { return min_path_cover(hasse_diagram(p)).count <= c; }

std::map<std::string, LabeledPoset> distinct_orders(const PtNet& n, int k, const Caps& caps) {
  std::map<std::string, LabeledPoset> out;
  for (const auto& p : processes(n, k, caps)) {
    if (p.events.empty()) continue;
    auto o = causal_order(p);
    out.emplace(canonical_key(o), o);
  }
  return out;
}

}  // namespace

std::set<std::string> causal_orders(const PtNet& n, int k, int c, const Caps& caps) {
  std::set<std::string> out;
  for (auto& [key, o] : distinct_orders(n, k, caps))
    if (coverable(o, c)) out.insert(key);
  return out;
}

std::set<std::string> executions(const PtNet& n, int k, int c, const Caps& caps) {
  std::set<std::string> out;
  for (auto& [key, o] : distinct_orders(n, k, caps)) {
    const int m = o.size();
    std::vector<std::pair<int, int>> free;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        if (!o.lt(a, b) && !o.lt(b, a)) free.emplace_back(a, b);
    std::size_t total = 1;
    for (std::size_t i = 0; i < free.size(); ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      LabeledPoset x = o;
      std::size_t rest = code;
      for (auto [a, b] : free) {
        const std::size_t choice = rest % 3;
        rest /= 3;
        if (choice == 1) x.less[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
        if (choice == 2) x.less[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
      }
      if (!x.is_strict_order()) continue;
      if (coverable(x, c)) out.insert(canonical_key(x));
    }
  }
  return out;
}

const char* semantics_name(Semantics s) { return s == Semantics::Execution ? "ex" : "cau"; }

Semantics parse_semantics(const std::string& s) {
  if (s == "ex") return Semantics::Execution;
  if (s == "cau") return Semantics::Causal;
  throw InputError("semantics must be ex or cau, got '" + s + "'");
}

}  // namespace slw
