#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slw/nfa.hpp"
#include "slw/slice.hpp"

namespace slw {

/// Finite automaton over a slice alphabet. Letters of the underlying Nfa are
/// letter ids of the alphabet. Immutable; the determinized form is computed
/// once on demand and shared between copies.
class SliceAutomaton {
 public:
  SliceAutomaton(std::shared_ptr<const SliceAlphabet> alphabet, Nfa nfa);

  const SliceAlphabet& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const SliceAlphabet>& alphabet_ptr() const { return alphabet_; }
  int width() const { return alphabet_->width(); }
  const LabelSet& labels() const { return alphabet_->labels(); }
  const Nfa& nfa() const { return nfa_; }
  std::size_t state_count() const { return nfa_.size(); }
  std::size_t transition_count() const { return nfa_.transition_count(); }

  /// Memoized subset construction (thread-safe).
  const Nfa& deterministic(const BuildOptions& opt = {}) const;

 private:
  struct Cache {
    std::mutex mu;
    std::shared_ptr<const Nfa> dfa;
  };
  std::shared_ptr<const SliceAlphabet> alphabet_;
  Nfa nfa_;
  std::shared_ptr<Cache> cache_;
};

std::shared_ptr<const SliceAlphabet> make_alphabet(int c, const LabelSet& labels);

/// One entry per violated well-formedness condition; empty iff valid.
struct ValidationIssue {
  int condition;  // 1 initial letters, 2 final letters, 3 gluability
  std::string message;
};
std::vector<ValidationIssue> validate(const SliceAutomaton& a);

bool accepts(const SliceAutomaton& a, const UnitDecomposition& u);
bool accepts_word(const SliceAutomaton& a, const std::vector<int>& letters);

/// All valid letter sequences over the alphabet.
SliceAutomaton well_formed(std::shared_ptr<const SliceAlphabet> alphabet);
SliceAutomaton empty_automaton(std::shared_ptr<const SliceAlphabet> alphabet);
/// Accepts exactly the given decompositions (each must fit the alphabet).
SliceAutomaton from_decompositions(std::shared_ptr<const SliceAlphabet> alphabet, const std::vector<UnitDecomposition>& words);

SliceAutomaton intersect(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt = {});
SliceAutomaton unite(const SliceAutomaton& a, const SliceAutomaton& b);
SliceAutomaton difference(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt = {});
/// Valid sequences not accepted by a, minimized.
SliceAutomaton complement(const SliceAutomaton& a, const BuildOptions& opt = {});
SliceAutomaton trimmed(const SliceAutomaton& a);

bool is_empty(const SliceAutomaton& a);
bool includes(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt = {});
/// nullopt iff L(a) is included in L(b); else a shortest word of L(a) \ L(b).
std::optional<std::vector<int>> inclusion_witness(const SliceAutomaton& a, const SliceAutomaton& b,
                                                  const BuildOptions& opt = {});
std::optional<std::vector<int>> shortest_member(const SliceAutomaton& a);

/// Decomposition spelled by a letter-id word.
UnitDecomposition decomposition_of(const SliceAlphabet& alphabet, const std::vector<int>& word);
LabeledDag dag_of(const SliceAlphabet& alphabet, const std::vector<int>& word);

/// Hasse diagrams of all T-labeled partial orders coverable by c paths, every
/// decomposition of each.
SliceAutomaton universal(int c, const LabelSet& labels, const BuildOptions& opt = {});
SliceAutomaton universal(std::shared_ptr<const SliceAlphabet> alphabet, const BuildOptions& opt = {});

/// Same partial orders as a; every accepted DAG is transitively reduced.
SliceAutomaton transitive_reduce_automaton(const SliceAutomaton& a, const BuildOptions& opt = {});

/// Exact test: does some accepted decomposition compose to a DAG that is not a
/// Hasse diagram (transitive or parallel edge)? Returns such a word.
std::optional<std::vector<int>> non_hasse_witness(const SliceAutomaton& a, const BuildOptions& opt = {});

/// Bounded saturation test: for every accepted DAG with at most n vertices,
/// every unit decomposition of width at most c must be accepted. Returns a
/// missing decomposition.
std::optional<std::vector<int>> saturation_gap(const SliceAutomaton& a, int n, const Caps& caps = {});

/// Partial orders of width-c coverable Hasse diagrams not represented by a.
/// Throws InputError when a accepts a non-Hasse DAG or a saturation gap is
/// found among members up to `check_vertices` vertices.
SliceAutomaton c_complement(const SliceAutomaton& a, const BuildOptions& opt = {}, int check_vertices = 4);

/// { tc(compose(u)) : u in L(a), |u| <= n } as canonical poset keys.
std::set<std::string> po_members_up_to(const SliceAutomaton& a, int n, const Caps& caps = {});
/// Positional DAG keys of accepted decompositions up to n letters, deduplicated up to isomorphism.
std::set<std::string> dag_members_up_to(const SliceAutomaton& a, int n, const Caps& caps = {});

std::string to_text(const SliceAutomaton& a);
SliceAutomaton automaton_from_text(const std::string& text);

}  // namespace slw
