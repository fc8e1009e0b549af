#include "slw/nfa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

namespace slw {

std::size_t Nfa::transition_count() const {
  std::size_t n = 0;
  for (const auto& o : out) n += o.size();
  return n;
}

int Nfa::add_state(bool is_final) {
  out.emplace_back();
  final.push_back(is_final ? 1 : 0);
  return static_cast<int>(out.size()) - 1;
}

void Nfa::normalize() {
  for (auto& o : out) {
    std::sort(o.begin(), o.end());
    o.erase(std::unique(o.begin(), o.end()), o.end());
  }
}

bool Nfa::is_deterministic() const {
  for (const auto& o : out)
    for (std::size_t i = 1; i < o.size(); ++i)
      if (o[i].first == o[i - 1].first) return false;
  return true;
}

Nfa empty_nfa() {
  Nfa a;
  a.add_state(false);
  return a;
}

namespace {

void check_cap(std::size_t n, const BuildOptions& opt) {
  if (n > opt.max_states)
    throw ResourceError(opt.what + ": state cap of " + std::to_string(opt.max_states) + " exceeded");
}

std::string encode_set(const std::vector<int>& s) {
  std::string k(s.size() * sizeof(int), '\0');
  if (!s.empty()) std::copy_n(reinterpret_cast<const char*>(s.data()), k.size(), k.data());
  return k;
}

std::string encode_pair(int a, int b) {
  std::string k(2 * sizeof(int), '\0');
  std::copy_n(reinterpret_cast<const char*>(&a), sizeof(int), k.data());
  std::copy_n(reinterpret_cast<const char*>(&b), sizeof(int), k.data() + sizeof(int));
  return k;
}

// transitions of a sorted list labelled `l`
std::pair<std::size_t, std::size_t> letter_range(const std::vector<std::pair<Letter, int>>& o, Letter l) {
  auto lo = std::lower_bound(o.begin(), o.end(), std::make_pair(l, -1));
  auto hi = lo;
  while (hi != o.end() && hi->first == l) ++hi;
  return {static_cast<std::size_t>(lo - o.begin()), static_cast<std::size_t>(hi - o.begin())};
}

// Interns subsets of b's states; used by the on-the-fly subset constructions.
class SubsetTable {
 public:
  explicit SubsetTable(const Nfa& b) : b_(b) {}
  int intern(std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto [it, fresh] = ids_.emplace(encode_set(s), static_cast<int>(sets_.size()));
    if (fresh) {
      bool f = false;
      for (int q : s) f = f || b_.final[q];
      sets_.push_back(std::move(s));
      final_.push_back(f);
    }
    return it->second;
  }
  int step(int id, Letter l) {
    auto key = std::make_pair(id, l);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<int> next;
    for (int q : sets_[id]) {
      const auto& o = b_.out[q];
      auto [lo, hi] = letter_range(o, l);
      for (std::size_t i = lo; i < hi; ++i) next.push_back(o[i].second);
    }
    const int r = intern(std::move(next));
    memo_.emplace(key, r);
    return r;
  }
  bool is_final(int id) const { return final_[id]; }
  std::size_t size() const { return sets_.size(); }

 private:
  const Nfa& b_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<int>> sets_;
  std::vector<bool> final_;
  std::map<std::pair<int, Letter>, int> memo_;
};

}  // namespace

Nfa explore(const std::string& init, const std::function<void(const std::string&, const Emit&)>& expand,
            const std::function<bool(const std::string&)>& is_final, const BuildOptions& opt) {
  Nfa a;
  std::unordered_map<std::string, int> ids;
  std::vector<std::string> keys;
  std::vector<std::size_t> depth;
  auto intern = [&](const std::string& k, std::size_t d) {
    auto [it, fresh] = ids.emplace(k, static_cast<int>(keys.size()));
    if (fresh) {
      check_cap(keys.size() + 1, opt);
      keys.push_back(k);
      depth.push_back(d);
      a.add_state(is_final(k));
    }
    return it->second;
  };
  a.initial = intern(init, 0);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (depth[i] >= opt.max_depth) continue;
    const std::string k = keys[i];
    const std::size_t d = depth[i] + 1;
    expand(k, [&](Letter l, const std::string& succ) {
      const int t = intern(succ, d);
      a.add(static_cast<int>(i), l, t);
    });
  }
  a.normalize();
  return a;
}

Nfa trim(const Nfa& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<int>> rev(n);
  for (std::size_t s = 0; s < n; ++s)
    for (auto [l, t] : a.out[s]) rev[t].push_back(static_cast<int>(s));
  std::vector<char> co(n, 0);
  std::deque<int> q;
  for (std::size_t s = 0; s < n; ++s)
    if (a.final[s]) {
      co[s] = 1;
      q.push_back(static_cast<int>(s));
    }
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    for (int p : rev[s])
      if (!co[p]) {
        co[p] = 1;
        q.push_back(p);
      }
  }
  Nfa r;
  std::vector<int> id(n, -1);
  std::vector<int> order{a.initial};
  id[a.initial] = r.add_state(a.final[a.initial]);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int s = order[i];
    if (!co[s]) continue;
    for (auto [l, t] : a.out[s]) {
      if (!co[t]) continue;
      if (id[t] < 0) {
        id[t] = r.add_state(a.final[t]);
        order.push_back(t);
      }
      r.add(id[s], l, id[t]);
    }
  }
  r.initial = 0;
  r.normalize();
  return r;
}

Nfa product(const Nfa& a, const Nfa& b, const BuildOptions& opt) {
  Nfa r;
  std::unordered_map<std::string, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int x, int y) {
    auto [it, fresh] = ids.emplace(encode_pair(x, y), static_cast<int>(pairs.size()));
    if (fresh) {
      check_cap(pairs.size() + 1, opt);
      pairs.emplace_back(x, y);
      r.add_state(a.final[x] && b.final[y]);
    }
    return it->second;
  };
  r.initial = intern(a.initial, b.initial);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    const auto& ox = a.out[x];
    const auto& oy = b.out[y];
    std::size_t j = 0, k = 0;
    while (j < ox.size() && k < oy.size()) {
      if (ox[j].first < oy[k].first) {
        ++j;
      } else if (oy[k].first < ox[j].first) {
        ++k;
      } else {
        const Letter l = ox[j].first;
        std::size_t j2 = j, k2 = k;
        while (j2 < ox.size() && ox[j2].first == l) ++j2;
        while (k2 < oy.size() && oy[k2].first == l) ++k2;
        for (std::size_t u = j; u < j2; ++u)
          for (std::size_t v = k; v < k2; ++v) {
            const int t = intern(ox[u].second, oy[v].second);
            r.add(static_cast<int>(i), l, t);
          }
        j = j2;
        k = k2;
      }
    }
  }
  r.normalize();
  return trim(r);
}

Nfa disjoint_union(const Nfa& a, const Nfa& b) {
  Nfa r;
  r.initial = r.add_state(a.final[a.initial] || b.final[b.initial]);
  const int oa = static_cast<int>(r.size());
  for (std::size_t s = 0; s < a.size(); ++s) r.add_state(a.final[s]);
  const int ob = static_cast<int>(r.size());
  for (std::size_t s = 0; s < b.size(); ++s) r.add_state(b.final[s]);
  for (std::size_t s = 0; s < a.size(); ++s)
    for (auto [l, t] : a.out[s]) r.add(oa + static_cast<int>(s), l, oa + t);
  for (std::size_t s = 0; s < b.size(); ++s)
    for (auto [l, t] : b.out[s]) r.add(ob + static_cast<int>(s), l, ob + t);
  for (auto [l, t] : a.out[a.initial]) r.add(r.initial, l, oa + t);
  for (auto [l, t] : b.out[b.initial]) r.add(r.initial, l, ob + t);
  r.normalize();
  return trim(r);
}

Nfa map_letters(const Nfa& a, const std::function<Letter(Letter)>& f) {
  Nfa r = a;
  for (auto& o : r.out)
    for (auto& tr : o) tr.first = f(tr.first);
  r.normalize();
  return r;
}

Nfa determinize(const Nfa& a, const BuildOptions& opt) {
  Nfa r;
  std::unordered_map<std::string, int> ids;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    auto [it, fresh] = ids.emplace(encode_set(s), static_cast<int>(sets.size()));
    if (fresh) {
      check_cap(sets.size() + 1, opt);
      bool f = false;
      for (int q : s) f = f || a.final[q];
      sets.push_back(std::move(s));
      r.add_state(f);
    }
    return it->second;
  };
  r.initial = intern({a.initial});
  std::vector<std::pair<Letter, int>> moves;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    moves.clear();
    for (int q : sets[i]) moves.insert(moves.end(), a.out[q].begin(), a.out[q].end());
    std::sort(moves.begin(), moves.end());
    for (std::size_t j = 0; j < moves.size();) {
      std::size_t k = j;
      std::vector<int> tgt;
      while (k < moves.size() && moves[k].first == moves[j].first) tgt.push_back(moves[k++].second);
      const Letter l = moves[j].first;
      const int t = intern(std::move(tgt));
      r.add(static_cast<int>(i), l, t);
      j = k;
    }
  }
  r.normalize();
  return r;
}

Nfa complement_within(const Nfa& dfa, const Nfa& universe, const BuildOptions& opt) {
  if (!dfa.is_deterministic()) throw Error("complement_within: automaton is not deterministic");
  constexpr int kSink = -1;
  Nfa r;
  std::unordered_map<std::string, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int u, int d) {
    auto [it, fresh] = ids.emplace(encode_pair(u, d), static_cast<int>(pairs.size()));
    if (fresh) {
      check_cap(pairs.size() + 1, opt);
      pairs.emplace_back(u, d);
      r.add_state(universe.final[u] && (d == kSink || !dfa.final[d]));
    }
    return it->second;
  };
  r.initial = intern(universe.initial, dfa.initial);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [u, d] = pairs[i];
    for (auto [l, ut] : universe.out[u]) {
      int dt = kSink;
      if (d != kSink) {
        auto [lo, hi] = letter_range(dfa.out[d], l);
        if (lo < hi) dt = dfa.out[d][lo].second;
      }
      const int t = intern(ut, dt);
      r.add(static_cast<int>(i), l, t);
    }
  }
  r.normalize();
  return trim(r);
}

Nfa difference(const Nfa& a, const Nfa& b, const BuildOptions& opt) {
  SubsetTable sub(b);
  Nfa r;
  std::unordered_map<std::string, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int x, int s) {
    auto [it, fresh] = ids.emplace(encode_pair(x, s), static_cast<int>(pairs.size()));
    if (fresh) {
      check_cap(pairs.size() + 1, opt);
      pairs.emplace_back(x, s);
      r.add_state(a.final[x] && !sub.is_final(s));
    }
    return it->second;
  };
  r.initial = intern(a.initial, sub.intern({b.initial}));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, s] = pairs[i];
    for (auto [l, xt] : a.out[x]) {
      const int t = intern(xt, sub.step(s, l));
      r.add(static_cast<int>(i), l, t);
    }
  }
  r.normalize();
  return trim(r);
}

Nfa minimize(const Nfa& dfa) {
  if (!dfa.is_deterministic()) throw Error("minimize: automaton is not deterministic");
  const Nfa a = trim(dfa);
  const std::size_t n = a.size();
  std::vector<int> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = a.final[s] ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::pair<int, std::vector<std::pair<Letter, int>>>, int> sig_ids;
    std::vector<int> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::pair<Letter, int>> sig;
      sig.reserve(a.out[s].size());
      for (auto [l, t] : a.out[s]) sig.emplace_back(l, cls[t]);
      auto [it, fresh] = sig_ids.emplace(std::make_pair(cls[s], std::move(sig)), static_cast<int>(sig_ids.size()));
      next[s] = it->second;
    }
    const std::size_t c = sig_ids.size();
    cls = std::move(next);
    if (c == count) break;
    count = c;
  }
  Nfa r;
  for (std::size_t k = 0; k < count; ++k) r.add_state(false);
  for (std::size_t s = 0; s < n; ++s) {
    r.final[cls[s]] = a.final[s];
    if (r.out[cls[s]].empty())
      for (auto [l, t] : a.out[s]) r.add(cls[s], l, cls[t]);
  }
  r.initial = cls[a.initial];
  r.normalize();
  return trim(r);
}

bool is_empty(const Nfa& a) {
  std::vector<char> seen(a.size(), 0);
  std::vector<int> st{a.initial};
  seen[a.initial] = 1;
  while (!st.empty()) {
    int s = st.back();
    st.pop_back();
    if (a.final[s]) return false;
    for (auto [l, t] : a.out[s])
      if (!seen[t]) {
        seen[t] = 1;
        st.push_back(t);
      }
  }
  return true;
}

bool accepts(const Nfa& a, const std::vector<Letter>& word) {
  std::vector<int> cur{a.initial};
  for (Letter l : word) {
    std::vector<int> next;
    for (int s : cur) {
      auto [lo, hi] = letter_range(a.out[s], l);
      for (std::size_t i = lo; i < hi; ++i) next.push_back(a.out[s][i].second);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return false;
    cur = std::move(next);
  }
  for (int s : cur)
    if (a.final[s]) return true;
  return false;
}

std::optional<std::vector<Letter>> shortest_word(const Nfa& a) {
  std::vector<int> parent(a.size(), -2);
  std::vector<Letter> via(a.size(), 0);
  std::deque<int> q{a.initial};
  parent[a.initial] = -1;
  while (!q.empty()) {
    int s = q.front();
    q.pop_front();
    if (a.final[s]) {
      std::vector<Letter> w;
      for (int x = s; parent[x] >= 0; x = parent[x]) w.push_back(via[x]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (auto [l, t] : a.out[s])
      if (parent[t] == -2) {
        parent[t] = s;
        via[t] = l;
        q.push_back(t);
      }
  }
  return std::nullopt;
}

std::optional<std::vector<Letter>> inclusion_counterexample(const Nfa& a, const Nfa& b, const BuildOptions& opt) {
  SubsetTable sub(b);
  std::unordered_map<std::string, int> ids;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> parent;
  std::vector<Letter> via;
  auto intern = [&](int x, int s, int par, Letter l) {
    auto [it, fresh] = ids.emplace(encode_pair(x, s), static_cast<int>(pairs.size()));
    if (fresh) {
      check_cap(pairs.size() + 1, opt);
      pairs.emplace_back(x, s);
      parent.push_back(par);
      via.push_back(l);
    }
    return fresh;
  };
  intern(a.initial, sub.intern({b.initial}), -1, 0);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, s] = pairs[i];
    if (a.final[x] && !sub.is_final(s)) {
      std::vector<Letter> w;
      for (int k = static_cast<int>(i); parent[k] >= 0; k = parent[k]) w.push_back(via[k]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (auto [l, xt] : a.out[x]) intern(xt, sub.step(s, l), static_cast<int>(i), l);
  }
  return std::nullopt;
}

}  // namespace slw
