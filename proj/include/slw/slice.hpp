#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "slw/common.hpp"

namespace slw {

// ---------------------------------------------------------------------------
// DAGs and posets
// ---------------------------------------------------------------------------

/// Vertex-labeled directed multigraph; vertices are 0..n-1, labels index a LabelSet.
struct LabeledDag {
  std::vector<int> labels;
  std::vector<std::pair<int, int>> edges;

  int size() const { return static_cast<int>(labels.size()); }
  bool is_acyclic() const;
  bool has_parallel_edges() const;
  /// Edges sorted, for structural comparison.
  LabeledDag normalized() const;
  bool operator==(const LabeledDag&) const = default;
};

/// Strict partial order on 0..n-1 stored as one bit row per vertex (n <= 64).
struct LabeledPoset {
  std::vector<int> labels;
  std::vector<std::uint64_t> less;  // bit j of less[i]  <=>  i < j

  int size() const { return static_cast<int>(labels.size()); }
  bool lt(int i, int j) const { return (less[i] >> j) & 1u; }
  bool is_strict_order() const;
  std::size_t relation_size() const;
  bool operator==(const LabeledPoset&) const = default;
};

LabeledPoset transitive_closure(const LabeledDag& h);
/// Hasse diagram of a poset.
LabeledDag hasse_diagram(const LabeledPoset& p);
/// Unique minimal sub-DAG with the same closure. Throws InputError on parallel edges or cycles.
LabeledDag transitive_reduction(const LabeledDag& h);
bool is_transitively_reduced(const LabeledDag& h);

struct PathCover {
  int count = 0;
  std::vector<std::vector<int>> paths;  // vertex sequences
};

/// Minimum number of (possibly overlapping) paths covering every vertex and edge.
/// Computed as a minimum flow with unit lower bounds on every edge.
PathCover min_path_cover(const LabeledDag& h);

/// All topological orderings of `h`.
std::vector<std::vector<int>> topological_orderings(const LabeledDag& h);
/// max over prefixes of the number of edges leaving the prefix.
int cut_width(const LabeledDag& h, const std::vector<int>& ordering);

std::string dag_to_text(const LabeledDag& h, const LabelSet& labels);
LabeledDag dag_from_text(const std::string& text, LabelSet& labels);
std::string poset_to_text(const LabeledPoset& p, const LabelSet& labels);

// ---------------------------------------------------------------------------
// Slices
// ---------------------------------------------------------------------------

struct Endpoint {
  enum Kind : std::uint8_t { In = 0, Center = 1, Out = 2 };
  Kind kind;
  int index;  // port number (0-based) or center index
  auto operator<=>(const Endpoint&) const = default;
};

struct SliceEdge {
  Endpoint src;
  Endpoint dst;
  auto operator<=>(const SliceEdge&) const = default;
};

/// A DAG fragment with numbered in/out frontiers. Immutable once built; the
/// constructor validates every frontier invariant and stores edges sorted.
class Slice {
 public:
  Slice(int in_ports, int out_ports, std::vector<int> center_labels, std::vector<SliceEdge> edges);

  int in_ports() const { return in_; }
  int out_ports() const { return out_; }
  int width() const { return in_ > out_ ? in_ : out_; }
  const std::vector<int>& centers() const { return centers_; }
  const std::vector<SliceEdge>& edges() const { return edges_; }
  bool is_unit() const { return centers_.size() == 1; }
  bool is_initial() const { return in_ == 0; }
  bool is_final() const { return out_ == 0; }

  bool operator==(const Slice&) const = default;
  auto operator<=>(const Slice&) const = default;

  /// `slice{in:1; out:1; center:a; edges: i1->c, c->o1}`; multi-center slices
  /// use `centers:a,b` and endpoints `c1`, `c2`.
  std::string to_string(const LabelSet& labels) const;
  static Slice parse(const std::string& text, const LabelSet& labels);

 private:
  int in_;
  int out_;
  std::vector<int> centers_;
  std::vector<SliceEdge> edges_;
};

bool can_glue(const Slice& s1, const Slice& s2);
/// Fuses out-port i of s1 with in-port i of s2. Throws InputError on size mismatch.
Slice glue(const Slice& s1, const Slice& s2);

/// Nonempty sequence of unit slices, initial first, final last, consecutive gluable.
class UnitDecomposition {
 public:
  explicit UnitDecomposition(std::vector<Slice> slices);
  const std::vector<Slice>& slices() const { return slices_; }
  std::size_t size() const { return slices_.size(); }
  int width() const;
  bool operator==(const UnitDecomposition&) const = default;
  auto operator<=>(const UnitDecomposition&) const = default;

 private:
  std::vector<Slice> slices_;
};

/// Throws InputError describing the first violated condition.
void validate_sequence(const std::vector<Slice>& slices);

/// Composition of all slices; vertex i is the center of slice i.
LabeledDag compose(const UnitDecomposition& u);

/// Compact description of a unit slice used by the automaton constructions.
/// in_to[i] = out-port reached by a bypass from in-port i, or kToCenter.
struct UnitShape {
  static constexpr std::int8_t kToCenter = -1;
  static constexpr int kMaxPorts = 8;
  int label = 0;
  int in = 0;
  int out = 0;
  std::array<std::int8_t, kMaxPorts> in_to{};
  std::array<std::int8_t, kMaxPorts> out_from{};  // in-port or kToCenter (born at center)

  std::uint8_t closed_mask() const;  // in-ports ending at the center
  std::uint8_t born_mask() const;    // out-ports starting at the center
  std::uint64_t key() const;
  Slice to_slice() const;
  static std::optional<UnitShape> from_slice(const Slice& s);
};

/// The finite set of unit slices of width <= c over T, one letter per shape.
class SliceAlphabet {
 public:
  SliceAlphabet(int c, LabelSet labels);

  int width() const { return c_; }
  const LabelSet& labels() const { return labels_; }
  std::size_t size() const { return shapes_.size(); }
  const UnitShape& shape(int id) const { return shapes_[static_cast<std::size_t>(id)]; }
  const Slice& slice(int id) const { return slices_[static_cast<std::size_t>(id)]; }
  /// Letters whose in-frontier has exactly k ports.
  const std::vector<int>& letters_with_in(int k) const { return by_in_[static_cast<std::size_t>(k)]; }
  int index_of(const Slice& s) const;
  int index_of(const UnitShape& s) const;
  bool same_as(const SliceAlphabet& o) const { return c_ == o.c_ && labels_ == o.labels_; }

 private:
  int c_;
  LabelSet labels_;
  std::vector<UnitShape> shapes_;
  std::vector<Slice> slices_;
  std::vector<std::vector<int>> by_in_;
  std::unordered_map<std::uint64_t, int> index_;
};

/// Every unit slice of width <= c with a center label in T.
std::vector<Slice> unit_alphabet(int c, const LabelSet& labels);

/// All unit decompositions of `h` of width <= c, optionally restricted to one
/// topological ordering. Throws ResourceError above the enumeration caps.
std::vector<UnitDecomposition> unit_decompositions(const LabeledDag& h, int c,
                                                   const std::optional<std::vector<int>>& ordering = std::nullopt,
                                                   const Caps& caps = {});

/// Calls `fn` with the letter-id sequence of every decomposition of h over
/// `alphabet` (width bounded by the alphabet). Multigraphs may repeat sequences.
void for_each_decomposition(const LabeledDag& h, const SliceAlphabet& alphabet,
                            const std::function<void(const std::vector<int>&)>& fn,
                            const std::optional<std::vector<int>>& ordering = std::nullopt);

}  // namespace slw
