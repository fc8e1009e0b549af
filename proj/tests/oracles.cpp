#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>

#include "slw/canon.hpp"

namespace oracle {

std::vector<LabeledDag> all_dags(int n, int labels) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
  std::map<std::string, LabeledDag> out;
  int label_codes = 1;
  for (int i = 0; i < n; ++i) label_codes *= labels;
  for (int code = 0; code < label_codes; ++code) {
    LabeledDag h;
    for (int i = 0, x = code; i < n; ++i, x /= labels) h.labels.push_back(x % labels);
    for (unsigned m = 0; m < (1u << pairs.size()); ++m) {
      h.edges.clear();
      for (std::size_t e = 0; e < pairs.size(); ++e)
        if ((m >> e) & 1u) h.edges.push_back(pairs[e]);
      out.emplace(slw::canonical_key(h), h);
    }
  }
  std::vector<LabeledDag> r;
  for (auto& [k, h] : out) r.push_back(h);
  return r;
}

std::vector<LabeledDag> all_hasse(int n, int labels, int c) {
  std::vector<LabeledDag> r;
  for (auto& h : all_dags(n, labels))
    if (is_hasse(h) && (c <= 0 || path_cover(h) <= c)) r.push_back(h);
  return r;
}

LabeledPoset closure(const LabeledDag& h) {
  const int n = h.size();
  std::vector<std::vector<bool>> m(n, std::vector<bool>(n, false));
  for (auto [a, b] : h.edges) m[a][b] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  LabeledPoset p;
  p.labels = h.labels;
  p.less.assign(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m[i][j]) p.less[i] |= std::uint64_t{1} << j;
  return p;
}

bool is_hasse(const LabeledDag& h) {
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    LabeledDag g = h;
    g.edges.erase(g.edges.begin() + static_cast<long>(e));
    if (closure(g).lt(h.edges[e].first, h.edges[e].second)) return false;
  }
  return true;
}

LabeledDag reduction(const LabeledDag& h) {
  const auto target = closure(h);
  const std::size_t m = h.edges.size();
  LabeledDag best = h;
  for (unsigned s = 0; s < (1u << m); ++s) {
    if (static_cast<std::size_t>(__builtin_popcount(s)) >= best.edges.size()) continue;
    LabeledDag g;
    g.labels = h.labels;
    for (std::size_t e = 0; e < m; ++e)
      if ((s >> e) & 1u) g.edges.push_back(h.edges[e]);
    if (closure(g) == target) best = g;
  }
  return best;
}

int path_cover(const LabeledDag& h) {
  const int n = h.size();
  const int m = static_cast<int>(h.edges.size());
  // all directed paths as (vertex mask, edge mask)
  std::vector<std::pair<unsigned, unsigned>> paths;
  std::function<void(int, unsigned, unsigned)> walk = [&](int v, unsigned vm, unsigned em) {
    paths.emplace_back(vm, em);
    for (int e = 0; e < m; ++e)
      if (h.edges[e].first == v) walk(h.edges[e].second, vm | (1u << h.edges[e].second), em | (1u << e));
  };
  for (int v = 0; v < n; ++v) walk(v, 1u << v, 0);
  const unsigned full_v = (1u << n) - 1, full_e = (1u << m) - 1;
  std::map<std::pair<unsigned, unsigned>, int> dist;
  std::deque<std::pair<unsigned, unsigned>> q{{0u, 0u}};
  dist[{0u, 0u}] = 0;
  while (!q.empty()) {
    auto cur = q.front();
    q.pop_front();
    if (cur.first == full_v && cur.second == full_e) return dist[cur];
    for (auto [vm, em] : paths) {
      std::pair<unsigned, unsigned> nx{cur.first | vm, cur.second | em};
      if (!dist.count(nx)) {
        dist[nx] = dist[cur] + 1;
        q.push_back(nx);
      }
    }
  }
  return -1;
}

std::vector<slw::Slice> unit_slices(int c, int labels) {
  using slw::Endpoint;
  std::vector<slw::Slice> out;
  for (int lab = 0; lab < labels; ++lab)
    for (int in = 0; in <= c; ++in)
      for (int o = 0; o <= c; ++o) {
        std::vector<slw::SliceEdge> cand;
        for (int i = 0; i < in; ++i) cand.push_back({{Endpoint::In, i}, {Endpoint::Center, 0}});
        for (int i = 0; i < in; ++i)
          for (int j = 0; j < o; ++j) cand.push_back({{Endpoint::In, i}, {Endpoint::Out, j}});
        for (int j = 0; j < o; ++j) cand.push_back({{Endpoint::Center, 0}, {Endpoint::Out, j}});
        for (unsigned s = 0; s < (1u << cand.size()); ++s) {
          std::vector<slw::SliceEdge> es;
          for (std::size_t k = 0; k < cand.size(); ++k)
            if ((s >> k) & 1u) es.push_back(cand[k]);
          try {
            out.emplace_back(in, o, std::vector<int>{lab}, es);
          } catch (const slw::InputError&) {
          }
        }
      }
  return out;
}

LabeledDag chain(const std::vector<int>& labels) {
  LabeledDag h;
  h.labels = labels;
  for (int i = 0; i + 1 < static_cast<int>(labels.size()); ++i) h.edges.emplace_back(i, i + 1);
  return h;
}

LabeledDag antichain(const std::vector<int>& labels) {
  LabeledDag h;
  h.labels = labels;
  return h;
}

LabeledDag make_dag(const std::vector<int>& labels, const std::vector<std::pair<int, int>>& edges) {
  LabeledDag h;
  h.labels = labels;
  h.edges = edges;
  return h;
}

std::set<std::string> all_posets(int n, int labels) {
  std::set<std::string> out;
  for (auto& h : all_dags(n, labels)) out.insert(slw::canonical_key(closure(h)));
  return out;
}

}  // namespace oracle
