#include "slw/canon.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>
#include <vector>

namespace slw {
namespace {

// Count matrix of a small directed structure.
struct Matrix {
  int n = 0;
  std::vector<int> labels;
  std::vector<int> m;  // n*n
  int at(int i, int j) const { return m[static_cast<std::size_t>(i * n + j)]; }
};

std::vector<int> refine(const Matrix& g) {
  const int n = g.n;
  std::vector<int> color(static_cast<std::size_t>(n));
  {
    std::vector<std::tuple<int, int, int>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      int out = 0, in = 0;
      for (int w = 0; w < n; ++w) {
        out += g.at(v, w);
        in += g.at(w, v);
      }
      sig[v] = {g.labels[v], out, in};
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
  }
  for (;;) {
    using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
    std::vector<Sig> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      sig[v].first = color[v];
      for (int w = 0; w < n; ++w) {
        if (g.at(v, w)) sig[v].second.emplace_back(color[w], g.at(v, w));
        if (g.at(w, v)) sig[v].second.emplace_back(-1 - color[w], g.at(w, v));
      }
      std::sort(sig[v].second.begin(), sig[v].second.end());
    }
    auto sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> next(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      next[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    const int before = color.empty() ? 0 : *std::max_element(color.begin(), color.end());
    const int after = next.empty() ? 0 : *std::max_element(next.begin(), next.end());
    color = std::move(next);
    if (after == before) break;
  }
  return color;
}

std::string encode(const Matrix& g, const std::vector<int>& order) {
  std::string s;
  s.reserve(static_cast<std::size_t>(2 + g.n + g.n * g.n));
  s.push_back(static_cast<char>(g.n));
  for (int v : order) s.push_back(static_cast<char>(g.labels[v] + 1));
  for (int a : order)
    for (int b : order) s.push_back(static_cast<char>(g.at(a, b)));
  return s;
}

std::string canonical(const Matrix& g) {
  const auto color = refine(g);
  std::vector<int> order(static_cast<std::size_t>(g.n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return color[a] < color[b] || (color[a] == color[b] && a < b); });
  // blocks of equal colour
  std::vector<std::pair<int, int>> blocks;
  for (int i = 0; i < g.n;) {
    int j = i;
    while (j < g.n && color[order[j]] == color[order[i]]) ++j;
    if (j - i > 1) blocks.emplace_back(i, j);
    i = j;
  }
  std::string best = encode(g, order);
  // odometer over per-block permutations
  std::vector<int> cur = order;
  std::function<void(std::size_t)> rec = [&](std::size_t b) {
    if (b == blocks.size()) {
      auto e = encode(g, cur);
      if (e < best) best = std::move(e);
      return;
    }
    auto [lo, hi] = blocks[b];
    std::sort(cur.begin() + lo, cur.begin() + hi);
    do {
      rec(b + 1);
    } while (std::next_permutation(cur.begin() + lo, cur.begin() + hi));
  };
  if (!blocks.empty()) rec(0);
  return best;
}

}  // namespace

std::string canonical_key(const LabeledPoset& p) {
  Matrix g;
  g.n = p.size();
  g.labels = p.labels;
  g.m.assign(static_cast<std::size_t>(g.n * g.n), 0);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) g.m[static_cast<std::size_t>(i * g.n + j)] = p.lt(i, j) ? 1 : 0;
  return canonical(g);
}

std::string canonical_key(const LabeledDag& h) {
  Matrix g;
  g.n = h.size();
  g.labels = h.labels;
  g.m.assign(static_cast<std::size_t>(g.n * g.n), 0);
  for (auto [a, b] : h.edges) ++g.m[static_cast<std::size_t>(a * g.n + b)];
  return canonical(g);
}

LabeledPoset poset_from_key(const std::string& key) {
  LabeledPoset p;
  const int n = key.empty() ? 0 : static_cast<int>(key[0]);
  p.labels.resize(static_cast<std::size_t>(n));
  p.less.assign(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) p.labels[i] = static_cast<int>(key[1 + i]) - 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (key[static_cast<std::size_t>(1 + n + i * n + j)]) p.less[i] |= std::uint64_t{1} << j;
  return p;
}

}  // namespace slw
