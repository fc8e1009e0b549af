#include "slw/slice.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace slw {

// ---------------------------------------------------------------------------
// LabelSet
// ---------------------------------------------------------------------------

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("empty label name");
    if (!seen.insert(n).second) throw InputError("duplicate label '" + n + "'");
  }
}

int LabelSet::find(const std::string& n) const {
  auto it = std::find(names_.begin(), names_.end(), n);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int LabelSet::at(const std::string& n) const {
  const int i = find(n);
  if (i < 0) throw InputError("unknown label '" + n + "'");
  return i;
}

std::string LabelSet::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) s += ',';
    s += names_[i];
  }
  return s;
}

LabelSet LabelSet::parse(const std::string& csv) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : csv + ",") {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (out.empty()) throw InputError("empty label list");
  return LabelSet(std::move(out));
}

// ---------------------------------------------------------------------------
// DAGs and posets
// ---------------------------------------------------------------------------

namespace {

std::vector<int> topo_order(const LabeledDag& h) {
  const int n = h.size();
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
  for (auto [a, b] : h.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) throw InputError("edge endpoint out of range");
    succ[a].push_back(b);
    ++indeg[b];
  }
  std::vector<int> order;
  std::deque<int> ready;
  for (int v = 0; v < n; ++v)
    if (!indeg[v]) ready.push_back(v);
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) ready.push_back(w);
  }
  return order;
}

void require_small(int n) {
  if (n > 64) throw ResourceError("structures above 64 vertices are not supported");
}

}  // namespace

bool LabeledDag::is_acyclic() const { return static_cast<int>(topo_order(*this).size()) == size(); }

bool LabeledDag::has_parallel_edges() const {
  auto e = edges;
  std::sort(e.begin(), e.end());
  return std::adjacent_find(e.begin(), e.end()) != e.end();
}

LabeledDag LabeledDag::normalized() const {
  LabeledDag d = *this;
  std::sort(d.edges.begin(), d.edges.end());
  return d;
}

bool LabeledPoset::is_strict_order() const {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (lt(i, i)) return false;
    for (int j = 0; j < n; ++j)
      if (lt(i, j) && (less[j] & ~less[i])) return false;
  }
  return true;
}

std::size_t LabeledPoset::relation_size() const {
  std::size_t s = 0;
  for (auto row : less) s += static_cast<std::size_t>(__builtin_popcountll(row));
  return s;
}

LabeledPoset transitive_closure(const LabeledDag& h) {
  require_small(h.size());
  const auto order = topo_order(h);
  if (static_cast<int>(order.size()) != h.size()) throw InputError("transitive_closure: graph has a cycle");
  LabeledPoset p;
  p.labels = h.labels;
  p.less.assign(static_cast<std::size_t>(h.size()), 0);
  std::vector<std::vector<int>> succ(static_cast<std::size_t>(h.size()));
  for (auto [a, b] : h.edges) succ[a].push_back(b);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int v = *it;
    for (int w : succ[v]) p.less[v] |= (std::uint64_t{1} << w) | p.less[w];
  }
  return p;
}

LabeledDag hasse_diagram(const LabeledPoset& p) {
  LabeledDag h;
  h.labels = p.labels;
  const int n = p.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!p.lt(i, j)) continue;
      bool covered = true;
      for (int k = 0; k < n && covered; ++k)
        if (p.lt(i, k) && p.lt(k, j)) covered = false;
      if (covered) h.edges.emplace_back(i, j);
    }
  return h;
}

LabeledDag transitive_reduction(const LabeledDag& h) {
  if (h.has_parallel_edges()) throw InputError("transitive_reduction: parallel edges (reduction is unique only for simple DAGs)");
  const auto tc = transitive_closure(h);
  const int n = h.size();
  std::vector<std::uint64_t> below(static_cast<std::size_t>(n), 0);  // bit k of below[b] <=> k < b
  for (int k = 0; k < n; ++k)
    for (int b = 0; b < n; ++b)
      if (tc.lt(k, b)) below[b] |= std::uint64_t{1} << k;
  LabeledDag r;
  r.labels = h.labels;
  for (auto [a, b] : h.edges)
    if ((tc.less[a] & below[b]) == 0) r.edges.emplace_back(a, b);
  return r;
}

bool is_transitively_reduced(const LabeledDag& h) {
  if (h.has_parallel_edges()) return false;
  return transitive_reduction(h).edges.size() == h.edges.size();
}

// Minimum flow with unit lower bounds, via the standard circulation reduction
// followed by a max-flow in the reverse direction.
namespace {

class FlowNetwork {
 public:
  explicit FlowNetwork(int n) : adj_(static_cast<std::size_t>(n)) {}
  int add(int u, int v, long long cap) {
    adj_[u].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, cap});
    adj_[v].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, 0});
    return static_cast<int>(arcs_.size()) - 2;
  }
  long long flow_on(int arc) const { return arcs_[arc ^ 1].cap; }
  void disable(int arc) {
    arcs_[arc].cap = 0;
    arcs_[arc ^ 1].cap = 0;
  }
  long long max_flow(int s, int t) {
    long long total = 0;
    for (;;) {
      std::vector<int> via(adj_.size(), -1);
      std::deque<int> q{s};
      std::vector<bool> seen(adj_.size(), false);
      seen[s] = true;
      while (!q.empty() && !seen[t]) {
        int u = q.front();
        q.pop_front();
        for (int a : adj_[u])
          if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
            seen[arcs_[a].to] = true;
            via[arcs_[a].to] = a;
            q.push_back(arcs_[a].to);
          }
      }
      if (!seen[t]) return total;
      long long push = LLONG_MAX;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].cap);
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      total += push;
    }
  }

 private:
  struct Arc {
    int to;
    long long cap;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace

PathCover min_path_cover(const LabeledDag& h) {
  if (!h.is_acyclic()) throw InputError("min_path_cover: graph has a cycle");
  const int n = h.size();
  constexpr long long kInf = 1LL << 40;
  const int s = n, t = n + 1, ss = n + 2, tt = n + 3;
  FlowNetwork net(n + 4);
  std::vector<int> indeg(static_cast<std::size_t>(n), 0), outdeg(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : h.edges) {
    ++outdeg[a];
    ++indeg[b];
  }
  std::vector<long long> excess(static_cast<std::size_t>(n + 2), 0);
  std::vector<int> edge_arc;
  for (auto [a, b] : h.edges) {
    edge_arc.push_back(net.add(a, b, kInf));
    excess[b] += 1;
    excess[a] -= 1;
  }
  for (int v = 0; v < n; ++v) {
    if (!indeg[v] && outdeg[v]) net.add(s, v, kInf);
    if (!outdeg[v] && indeg[v]) net.add(v, t, kInf);
  }
  const int back = net.add(t, s, kInf);
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) net.add(ss, v, excess[v]);
    if (excess[v] < 0) net.add(v, tt, -excess[v]);
  }
  net.max_flow(ss, tt);
  const long long feasible = net.flow_on(back);
  net.disable(back);
  const long long reduced = net.max_flow(t, s);
  const long long value = feasible - reduced;

  PathCover cover;
  // decompose: f(e) = 1 + flow on the transformed arc
  std::vector<long long> rem(h.edges.size());
  for (std::size_t e = 0; e < h.edges.size(); ++e) rem[e] = 1 + net.flow_on(edge_arc[e]);
  std::vector<long long> bal(static_cast<std::size_t>(n), 0);  // out - in
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    bal[h.edges[e].first] += rem[e];
    bal[h.edges[e].second] -= rem[e];
  }
  for (int v = 0; v < n; ++v) {
    while (bal[v] > 0) {
      std::vector<int> path{v};
      --bal[v];
      int cur = v;
      for (;;) {
        if (bal[cur] < 0 && cur != v) break;
        std::size_t pick = h.edges.size();
        for (std::size_t e = 0; e < h.edges.size(); ++e)
          if (h.edges[e].first == cur && rem[e] > 0) {
            pick = e;
            break;
          }
        if (pick == h.edges.size()) break;
        --rem[pick];
        cur = h.edges[pick].second;
        path.push_back(cur);
      }
      ++bal[cur];
      cover.paths.push_back(std::move(path));
    }
  }
  for (int v = 0; v < n; ++v)
    if (!indeg[v] && !outdeg[v]) cover.paths.push_back({v});
  cover.count = static_cast<int>(cover.paths.size());
  if (cover.count != static_cast<int>(value) + static_cast<int>(std::count_if(
                         cover.paths.begin(), cover.paths.end(), [](const auto& p) { return p.size() == 1; })))
    throw Error("min_path_cover: flow decomposition mismatch");
  return cover;
}

std::vector<std::vector<int>> topological_orderings(const LabeledDag& h) {
  const int n = h.size();
  require_small(n);
  std::vector<std::uint64_t> preds(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : h.edges) preds[b] |= std::uint64_t{1} << a;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(std::uint64_t)> rec = [&](std::uint64_t placed) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if ((placed >> v) & 1u) continue;
      if ((preds[v] & ~placed) != 0) continue;
      cur.push_back(v);
      rec(placed | (std::uint64_t{1} << v));
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

int cut_width(const LabeledDag& h, const std::vector<int>& ordering) {
  std::vector<int> pos(ordering.size());
  for (std::size_t i = 0; i < ordering.size(); ++i) pos[ordering[i]] = static_cast<int>(i);
  int best = 0;
  for (std::size_t i = 0; i < ordering.size(); ++i) {
    int crossing = 0;
    for (auto [a, b] : h.edges)
      if (pos[a] <= static_cast<int>(i) && pos[b] > static_cast<int>(i)) ++crossing;
    best = std::max(best, crossing);
  }
  return best;
}

std::string dag_to_text(const LabeledDag& h, const LabelSet& labels) {
  std::ostringstream os;
  for (int v = 0; v < h.size(); ++v) os << "vertex " << v << ' ' << labels.name(h.labels[v]) << '\n';
  auto edges = h.edges;
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) os << "edge " << a << ' ' << b << '\n';
  return os.str();
}

std::string poset_to_text(const LabeledPoset& p, const LabelSet& labels) {
  std::ostringstream os;
  for (int v = 0; v < p.size(); ++v) os << "vertex " << v << ' ' << labels.name(p.labels[v]) << '\n';
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (p.lt(a, b)) os << "less " << a << ' ' << b << '\n';
  return os.str();
}

LabeledDag dag_from_text(const std::string& text, LabelSet& labels) {
  LabeledDag h;
  std::map<std::string, int> ids;
  std::vector<std::string> names = labels.names();
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "vertex") {
      std::string id, lab;
      if (!(ls >> id >> lab)) throw InputError("line " + std::to_string(lineno) + ": expected 'vertex ID LABEL'");
      if (ids.count(id)) throw InputError("line " + std::to_string(lineno) + ": duplicate vertex " + id);
      auto it = std::find(names.begin(), names.end(), lab);
      if (it == names.end()) {
        names.push_back(lab);
        it = names.end() - 1;
      }
      ids[id] = h.size();
      h.labels.push_back(static_cast<int>(it - names.begin()));
    } else if (kw == "edge") {
      std::string a, b;
      if (!(ls >> a >> b)) throw InputError("line " + std::to_string(lineno) + ": expected 'edge SRC DST'");
      if (!ids.count(a) || !ids.count(b)) throw InputError("line " + std::to_string(lineno) + ": unknown vertex");
      h.edges.emplace_back(ids[a], ids[b]);
    } else {
      throw InputError("line " + std::to_string(lineno) + ": unknown keyword '" + kw + "'");
    }
  }
  if (!h.is_acyclic()) throw InputError("graph has a cycle");
  labels = LabelSet(names);
  return h;
}

// ---------------------------------------------------------------------------
// Slices
// ---------------------------------------------------------------------------

Slice::Slice(int in_ports, int out_ports, std::vector<int> center_labels, std::vector<SliceEdge> edges)
    : in_(in_ports), out_(out_ports), centers_(std::move(center_labels)), edges_(std::move(edges)) {
  if (in_ < 0 || out_ < 0) throw InputError("slice: negative frontier size");
  const int nc = static_cast<int>(centers_.size());
  std::vector<int> in_use(static_cast<std::size_t>(in_), 0), out_use(static_cast<std::size_t>(out_), 0);
  LabeledDag inner;  // centers only, for the acyclicity check
  inner.labels = centers_;
  for (const auto& e : edges_) {
    auto check = [&](const Endpoint& p) {
      const int lim = p.kind == Endpoint::In ? in_ : p.kind == Endpoint::Out ? out_ : nc;
      if (p.index < 0 || p.index >= lim) throw InputError("slice: endpoint index out of range");
    };
    check(e.src);
    check(e.dst);
    if (e.src.kind == Endpoint::Out || e.dst.kind == Endpoint::In)
      throw InputError("slice: edges must run from the in-frontier towards the out-frontier");
    if (e.src.kind == Endpoint::In) ++in_use[e.src.index];
    if (e.dst.kind == Endpoint::Out) ++out_use[e.dst.index];
    if (e.src.kind == Endpoint::Center && e.dst.kind == Endpoint::Center) inner.edges.emplace_back(e.src.index, e.dst.index);
  }
  for (int i = 0; i < in_; ++i)
    if (in_use[i] != 1) throw InputError("slice: in-port " + std::to_string(i + 1) + " must be the endpoint of exactly one edge");
  for (int i = 0; i < out_; ++i)
    if (out_use[i] != 1) throw InputError("slice: out-port " + std::to_string(i + 1) + " must be the endpoint of exactly one edge");
  if (!inner.is_acyclic()) throw InputError("slice: center edges form a cycle");
  std::sort(edges_.begin(), edges_.end());
}

namespace {

std::string endpoint_name(const Endpoint& p, bool unit) {
  switch (p.kind) {
    case Endpoint::In:
      return "i" + std::to_string(p.index + 1);
    case Endpoint::Out:
      return "o" + std::to_string(p.index + 1);
    default:
      return unit ? std::string("c") : "c" + std::to_string(p.index + 1);
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string Slice::to_string(const LabelSet& labels) const {
  std::ostringstream os;
  os << "slice{in:" << in_ << "; out:" << out_ << "; ";
  if (is_unit()) {
    os << "center:" << labels.name(centers_[0]);
  } else {
    os << "centers:";
    for (std::size_t i = 0; i < centers_.size(); ++i) os << (i ? "," : "") << labels.name(centers_[i]);
  }
  os << "; edges:";
  for (std::size_t i = 0; i < edges_.size(); ++i)
    os << (i ? ", " : " ") << endpoint_name(edges_[i].src, is_unit()) << "->" << endpoint_name(edges_[i].dst, is_unit());
  os << '}';
  return os.str();
}

Slice Slice::parse(const std::string& text, const LabelSet& labels) {
  std::string t = trim(text);
  if (t.rfind("slice{", 0) != 0 || t.back() != '}') throw InputError("slice literal must look like slice{...}: " + text);
  t = t.substr(6, t.size() - 7);
  int in = -1, out = -1;
  std::vector<int> centers;
  std::string edge_text;
  bool have_edges = false;
  std::istringstream fields(t);
  std::string field;
  while (std::getline(fields, field, ';')) {
    field = trim(field);
    if (field.empty()) continue;
    auto colon = field.find(':');
    if (colon == std::string::npos) throw InputError("slice literal: field without ':' in " + text);
    std::string key = trim(field.substr(0, colon)), val = trim(field.substr(colon + 1));
    try {
      if (key == "in") {
        in = std::stoi(val);
      } else if (key == "out") {
        out = std::stoi(val);
      } else if (key == "center" || key == "centers") {
        std::istringstream cs(val);
        std::string lab;
        while (std::getline(cs, lab, ',')) centers.push_back(labels.at(trim(lab)));
      } else if (key == "edges") {
        edge_text = val;
        have_edges = true;
      } else {
        throw InputError("slice literal: unknown field '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw InputError("slice literal: bad number in " + text);
    }
  }
  if (in < 0 || out < 0 || centers.empty() || !have_edges) throw InputError("slice literal: missing field in " + text);
  const bool unit = centers.size() == 1;
  auto endpoint = [&](const std::string& s) -> Endpoint {
    if (s.empty()) throw InputError("slice literal: empty endpoint");
    if (s == "c" && unit) return {Endpoint::Center, 0};
    Endpoint::Kind k;
    if (s[0] == 'i') k = Endpoint::In;
    else if (s[0] == 'o') k = Endpoint::Out;
    else if (s[0] == 'c') k = Endpoint::Center;
    else throw InputError("slice literal: bad endpoint '" + s + "'");
    try {
      return {k, std::stoi(s.substr(1)) - 1};
    } catch (const std::exception&) {
      throw InputError("slice literal: bad endpoint '" + s + "'");
    }
  };
  std::vector<SliceEdge> edges;
  std::istringstream es(edge_text);
  std::string e;
  while (std::getline(es, e, ',')) {
    e = trim(e);
    if (e.empty()) continue;
    auto arrow = e.find("->");
    if (arrow == std::string::npos) throw InputError("slice literal: edge without '->': " + e);
    edges.push_back({endpoint(trim(e.substr(0, arrow))), endpoint(trim(e.substr(arrow + 2)))});
  }
  return Slice(in, out, std::move(centers), std::move(edges));
}

bool can_glue(const Slice& s1, const Slice& s2) { return s1.out_ports() == s2.in_ports(); }

Slice glue(const Slice& s1, const Slice& s2) {
  if (!can_glue(s1, s2))
    throw InputError("glue: out-frontier of size " + std::to_string(s1.out_ports()) + " does not match in-frontier of size " +
                     std::to_string(s2.in_ports()));
  const int shift = static_cast<int>(s1.centers().size());
  std::vector<int> centers = s1.centers();
  centers.insert(centers.end(), s2.centers().begin(), s2.centers().end());
  auto lift = [&](Endpoint p) {
    if (p.kind == Endpoint::Center) p.index += shift;
    return p;
  };
  // s2 edge leaving in-port i
  std::vector<Endpoint> continuation(static_cast<std::size_t>(s2.in_ports()));
  for (const auto& e : s2.edges())
    if (e.src.kind == Endpoint::In) continuation[e.src.index] = lift(e.dst);
  std::vector<SliceEdge> edges;
  for (const auto& e : s1.edges()) {
    if (e.dst.kind == Endpoint::Out) edges.push_back({e.src, continuation[e.dst.index]});
    else edges.push_back(e);
  }
  for (const auto& e : s2.edges())
    if (e.src.kind != Endpoint::In) edges.push_back({lift(e.src), lift(e.dst)});
  return Slice(s1.in_ports(), s2.out_ports(), std::move(centers), std::move(edges));
}

void validate_sequence(const std::vector<Slice>& slices) {
  if (slices.empty()) throw InputError("unit decomposition must be nonempty");
  for (std::size_t i = 0; i < slices.size(); ++i)
    if (!slices[i].is_unit()) throw InputError("slice " + std::to_string(i + 1) + " is not a unit slice");
  if (!slices.front().is_initial()) throw InputError("first slice is not initial");
  if (!slices.back().is_final()) throw InputError("last slice is not final");
  for (std::size_t i = 0; i + 1 < slices.size(); ++i)
    if (!can_glue(slices[i], slices[i + 1]))
      throw InputError("slice " + std::to_string(i + 1) + " cannot be glued to slice " + std::to_string(i + 2));
}

UnitDecomposition::UnitDecomposition(std::vector<Slice> slices) : slices_(std::move(slices)) { validate_sequence(slices_); }

int UnitDecomposition::width() const {
  int w = 0;
  for (const auto& s : slices_) w = std::max(w, s.width());
  return w;
}

LabeledDag compose(const UnitDecomposition& u) {
  LabeledDag h;
  std::vector<int> frontier;  // source vertex of each open edge
  for (std::size_t i = 0; i < u.size(); ++i) {
    const Slice& s = u.slices()[i];
    const int v = static_cast<int>(i);
    h.labels.push_back(s.centers()[0]);
    std::vector<int> next(static_cast<std::size_t>(s.out_ports()), -1);
    for (const auto& e : s.edges()) {
      const int src = e.src.kind == Endpoint::In ? frontier[e.src.index] : v;
      if (e.dst.kind == Endpoint::Out) next[e.dst.index] = src;
      else h.edges.emplace_back(src, v);
    }
    frontier = std::move(next);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Unit shapes and alphabets
// ---------------------------------------------------------------------------

std::uint8_t UnitShape::closed_mask() const {
  std::uint8_t m = 0;
  for (int i = 0; i < in; ++i)
    if (in_to[i] == kToCenter) m |= static_cast<std::uint8_t>(1u << i);
  return m;
}

std::uint8_t UnitShape::born_mask() const {
  std::uint8_t m = 0;
  for (int q = 0; q < out; ++q)
    if (out_from[q] == kToCenter) m |= static_cast<std::uint8_t>(1u << q);
  return m;
}

std::uint64_t UnitShape::key() const {
  std::uint64_t k = (static_cast<std::uint64_t>(label) << 40) | (static_cast<std::uint64_t>(in) << 36) |
                    (static_cast<std::uint64_t>(out) << 32);
  for (int i = 0; i < in; ++i) k |= static_cast<std::uint64_t>((in_to[i] + 1) & 0xF) << (4 * i);
  return k;
}

Slice UnitShape::to_slice() const {
  std::vector<SliceEdge> edges;
  for (int i = 0; i < in; ++i)
    edges.push_back({{Endpoint::In, i}, in_to[i] == kToCenter ? Endpoint{Endpoint::Center, 0} : Endpoint{Endpoint::Out, in_to[i]}});
  for (int q = 0; q < out; ++q)
    if (out_from[q] == kToCenter) edges.push_back({{Endpoint::Center, 0}, {Endpoint::Out, q}});
  return Slice(in, out, {label}, std::move(edges));
}

std::optional<UnitShape> UnitShape::from_slice(const Slice& s) {
  if (!s.is_unit() || s.in_ports() > kMaxPorts || s.out_ports() > kMaxPorts) return std::nullopt;
  UnitShape u;
  u.label = s.centers()[0];
  u.in = s.in_ports();
  u.out = s.out_ports();
  for (const auto& e : s.edges()) {
    if (e.src.kind == Endpoint::In) {
      u.in_to[e.src.index] = e.dst.kind == Endpoint::Center ? kToCenter : static_cast<std::int8_t>(e.dst.index);
      if (e.dst.kind == Endpoint::Out) u.out_from[e.dst.index] = static_cast<std::int8_t>(e.src.index);
    } else if (e.dst.kind == Endpoint::Out) {
      u.out_from[e.dst.index] = kToCenter;
    }
  }
  return u;
}

SliceAlphabet::SliceAlphabet(int c, LabelSet labels) : c_(c), labels_(std::move(labels)) {
  if (c < 0 || c > UnitShape::kMaxPorts) throw InputError("width bound must lie in 0.." + std::to_string(UnitShape::kMaxPorts));
  if (labels_.size() == 0) throw InputError("empty label set");
  by_in_.resize(static_cast<std::size_t>(c + 1));
  for (int lab = 0; lab < static_cast<int>(labels_.size()); ++lab)
    for (int in = 0; in <= c; ++in)
      for (int out = 0; out <= c; ++out) {
        UnitShape u;
        u.label = lab;
        u.in = in;
        u.out = out;
        std::vector<bool> used(static_cast<std::size_t>(out), false);
        std::function<void(int)> rec = [&](int i) {
          if (i == in) {
            UnitShape w = u;
            for (int q = 0; q < out; ++q) w.out_from[q] = UnitShape::kToCenter;
            for (int p = 0; p < in; ++p)
              if (w.in_to[p] != UnitShape::kToCenter) w.out_from[w.in_to[p]] = static_cast<std::int8_t>(p);
            const int id = static_cast<int>(shapes_.size());
            index_[w.key()] = id;
            shapes_.push_back(w);
            slices_.push_back(w.to_slice());
            by_in_[in].push_back(id);
            return;
          }
          u.in_to[i] = UnitShape::kToCenter;
          rec(i + 1);
          for (int q = 0; q < out; ++q) {
            if (used[q]) continue;
            used[q] = true;
            u.in_to[i] = static_cast<std::int8_t>(q);
            rec(i + 1);
            used[q] = false;
          }
          u.in_to[i] = 0;
        };
        rec(0);
      }
}

int SliceAlphabet::index_of(const UnitShape& s) const {
  if (s.in > c_ || s.out > c_) return -1;
  auto it = index_.find(s.key());
  return it == index_.end() ? -1 : it->second;
}

int SliceAlphabet::index_of(const Slice& s) const {
  auto u = UnitShape::from_slice(s);
  return u ? index_of(*u) : -1;
}

std::vector<Slice> unit_alphabet(int c, const LabelSet& labels) {
  SliceAlphabet a(c, labels);
  std::vector<Slice> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.slice(static_cast<int>(i)));
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition enumeration
// ---------------------------------------------------------------------------

namespace {

// Visits every sequence of unit shapes whose composition is h, one topological
// ordering at a time, with every ordering of each frontier.
void enumerate_shapes(const LabeledDag& h, int c, const std::optional<std::vector<int>>& ordering,
                      const std::function<void(const std::vector<UnitShape>&)>& fn) {
  const int n = h.size();
  require_small(n);
  if (!h.is_acyclic()) throw InputError("unit decompositions: graph has a cycle");
  if (n == 0) return;
  std::vector<std::uint64_t> preds(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    preds[h.edges[e].second] |= std::uint64_t{1} << h.edges[e].first;
    out_edges[h.edges[e].first].push_back(static_cast<int>(e));
  }
  if (ordering) {
    if (static_cast<int>(ordering->size()) != n) throw InputError("ordering does not list every vertex");
    std::uint64_t placed = 0;
    for (int v : *ordering) {
      if (v < 0 || v >= n || ((placed >> v) & 1u) || (preds[v] & ~placed)) throw InputError("ordering is not topological");
      placed |= std::uint64_t{1} << v;
    }
  }
  std::vector<UnitShape> word;
  std::function<void(std::uint64_t, const std::vector<int>&)> rec = [&](std::uint64_t placed, const std::vector<int>& frontier) {
    const int depth = static_cast<int>(word.size());
    if (depth == n) {
      fn(word);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (ordering && (*ordering)[depth] != v) continue;
      if (((placed >> v) & 1u) || (preds[v] & ~placed)) continue;
      std::vector<int> next;
      for (int e : frontier)
        if (h.edges[e].second != v) next.push_back(e);
      for (int e : out_edges[v]) next.push_back(e);
      if (static_cast<int>(next.size()) > c) continue;
      std::sort(next.begin(), next.end());
      do {
        UnitShape u;
        u.label = h.labels[v];
        u.in = static_cast<int>(frontier.size());
        u.out = static_cast<int>(next.size());
        for (int q = 0; q < u.out; ++q) u.out_from[q] = UnitShape::kToCenter;
        for (int i = 0; i < u.in; ++i) {
          auto it = std::find(next.begin(), next.end(), frontier[i]);
          if (it == next.end()) {
            u.in_to[i] = UnitShape::kToCenter;
          } else {
            u.in_to[i] = static_cast<std::int8_t>(it - next.begin());
            u.out_from[u.in_to[i]] = static_cast<std::int8_t>(i);
          }
        }
        word.push_back(u);
        rec(placed | (std::uint64_t{1} << v), next);
        word.pop_back();
      } while (std::next_permutation(next.begin(), next.end()));
    }
  };
  rec(0, {});
}

}  // namespace

std::vector<UnitDecomposition> unit_decompositions(const LabeledDag& h, int c, const std::optional<std::vector<int>>& ordering,
                                                   const Caps& caps) {
  if (static_cast<std::size_t>(h.size()) > caps.max_enum_vertices || h.edges.size() > caps.max_enum_edges)
    throw ResourceError("unit_decompositions: graph with " + std::to_string(h.size()) + " vertices / " +
                        std::to_string(h.edges.size()) + " edges exceeds the enumeration cap (" +
                        std::to_string(caps.max_enum_vertices) + " / " + std::to_string(caps.max_enum_edges) + ")");
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<UnitDecomposition> out;
  enumerate_shapes(h, c, ordering, [&](const std::vector<UnitShape>& word) {
    std::vector<std::uint64_t> key;
    for (const auto& u : word) key.push_back(u.key());
    if (!seen.insert(key).second) return;
    std::vector<Slice> slices;
    for (const auto& u : word) slices.push_back(u.to_slice());
    out.emplace_back(std::move(slices));
  });
  std::sort(out.begin(), out.end());
  return out;
}

void for_each_decomposition(const LabeledDag& h, const SliceAlphabet& alphabet,
                            const std::function<void(const std::vector<int>&)>& fn,
                            const std::optional<std::vector<int>>& ordering) {
  std::vector<int> ids;
  enumerate_shapes(h, alphabet.width(), ordering, [&](const std::vector<UnitShape>& word) {
    ids.clear();
    for (const auto& u : word) {
      const int id = alphabet.index_of(u);
      if (id < 0) return;
      ids.push_back(id);
    }
    fn(ids);
  });
}

}  // namespace slw
