#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slw/common.hpp"

namespace slw {

using Letter = std::uint64_t;

/// Explicit nondeterministic automaton over 64-bit letters. State 0..n-1,
/// one initial state, transition lists kept sorted by (letter, target).
struct Nfa {
  int initial = 0;
  std::vector<std::vector<std::pair<Letter, int>>> out;
  std::vector<char> final;

  std::size_t size() const { return out.size(); }
  std::size_t transition_count() const;
  int add_state(bool is_final = false);
  void add(int src, Letter l, int dst) { out[static_cast<std::size_t>(src)].emplace_back(l, dst); }
  /// Sorts and deduplicates transition lists.
  void normalize();
  bool is_deterministic() const;
};

/// Automaton with a single non-final state and no transitions.
Nfa empty_nfa();

/// Limits for explicit constructions. max_depth bounds BFS depth from the
/// initial state (states at that depth are kept but not expanded).
struct BuildOptions {
  std::size_t max_states = 1000000;
  std::size_t max_depth = static_cast<std::size_t>(-1);
  std::string what = "automaton";
};

/// Breadth-first construction from byte-string states. `expand` reports the
/// successors of a state through `emit(letter, successor)`.
using Emit = std::function<void(Letter, const std::string&)>;
Nfa explore(const std::string& init, const std::function<void(const std::string&, const Emit&)>& expand,
            const std::function<bool(const std::string&)>& is_final, const BuildOptions& opt);

/// Keeps the initial state and every state both reachable and co-reachable;
/// renumbers in BFS order so the result is canonical for a given input.
Nfa trim(const Nfa& a);
Nfa product(const Nfa& a, const Nfa& b, const BuildOptions& opt);
Nfa disjoint_union(const Nfa& a, const Nfa& b);
Nfa map_letters(const Nfa& a, const std::function<Letter(Letter)>& f);
Nfa determinize(const Nfa& a, const BuildOptions& opt);
/// Words of `universe` not accepted by the deterministic automaton `dfa`.
Nfa complement_within(const Nfa& dfa, const Nfa& universe, const BuildOptions& opt);
/// L(a) minus L(b), via an on-the-fly subset construction of b.
Nfa difference(const Nfa& a, const Nfa& b, const BuildOptions& opt);
/// Moore partition refinement; input must be deterministic.
Nfa minimize(const Nfa& dfa);

bool is_empty(const Nfa& a);
bool accepts(const Nfa& a, const std::vector<Letter>& word);
std::optional<std::vector<Letter>> shortest_word(const Nfa& a);
/// nullopt iff L(a) is included in L(b); otherwise a shortest word of L(a) \ L(b).
std::optional<std::vector<Letter>> inclusion_counterexample(const Nfa& a, const Nfa& b, const BuildOptions& opt);

}  // namespace slw
