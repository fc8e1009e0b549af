#pragma once

// Brute-force reference implementations used to check the library.

#include <set>
#include <string>
#include <vector>

#include "slw/slice.hpp"

namespace oracle {

using slw::LabeledDag;
using slw::LabeledPoset;

/// All DAGs on exactly n vertices over `labels` labels, one per isomorphism class.
std::vector<LabeledDag> all_dags(int n, int labels);
/// Same, restricted to Hasse diagrams whose min path cover is <= c (c <= 0: no restriction).
std::vector<LabeledDag> all_hasse(int n, int labels, int c);

/// Floyd-Warshall closure.
LabeledPoset closure(const LabeledDag& h);
/// Edge (a,b) kept iff no other a-b path exists; checked by deleting the edge.
bool is_hasse(const LabeledDag& h);
/// Smallest edge subset with the same closure, by subset search.
LabeledDag reduction(const LabeledDag& h);
/// Fewest paths covering all vertices and edges, by breadth-first search over covered sets.
int path_cover(const LabeledDag& h);

/// Unit slices of width <= c obtained by filtering every edge subset through
/// the slice invariants.
std::vector<slw::Slice> unit_slices(int c, int labels);

LabeledDag chain(const std::vector<int>& labels);
LabeledDag antichain(const std::vector<int>& labels);
LabeledDag make_dag(const std::vector<int>& labels, const std::vector<std::pair<int, int>>& edges);

/// Every strict partial order on n labeled vertices, up to isomorphism, as canonical keys.
std::set<std::string> all_posets(int n, int labels);

}  // namespace oracle
