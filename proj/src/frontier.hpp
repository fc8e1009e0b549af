#pragma once

// Finite summaries of the open edges between a decomposition prefix and the
// rest of the DAG. Shared by the universal automaton, the reduction
// construction, the rho/gamma primitives and the net automata.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slw/slice.hpp"

namespace slw::detail {

/// Open ports grouped by source vertex. cls[p] is the class of port p,
/// classes are numbered by first occurrence; reach[a] has bit b iff the source
/// of class a lies strictly below the source of class b.
struct Frontier {
  std::vector<std::uint8_t> cls;
  std::vector<std::uint8_t> reach;

  int ports() const { return static_cast<int>(cls.size()); }
  void encode(std::string& out) const;
  /// Reads a frontier written by encode() starting at pos; advances pos.
  static Frontier decode(const std::string& s, std::size_t& pos);
};

struct FrontierStep {
  Frontier next;
  std::uint8_t closed = 0;      // in-ports ending at the center
  std::uint8_t transitive = 0;  // closed in-ports whose source lies strictly below another closed source
  bool parallel = false;        // two closed in-ports share a source
  bool hasse_ok() const { return transitive == 0 && !parallel; }
};

FrontierStep step(const Frontier& f, const UnitShape& u);

/// Path slots: 0 unstarted, 1 finished, 2+p riding open port p. Kept sorted.
constexpr std::uint8_t kUnstarted = 0;
constexpr std::uint8_t kFinished = 1;
constexpr std::uint8_t kRiding = 2;

/// Every way the slots can traverse the unit slice `u` so that the center is
/// visited and every edge born at the center is ridden.
void slot_moves(const std::vector<std::uint8_t>& slots, const UnitShape& u,
                const std::function<void(const std::vector<std::uint8_t>&)>& fn);

bool slots_idle(const std::vector<std::uint8_t>& slots);   // none riding
bool slots_fresh(const std::vector<std::uint8_t>& slots);  // all unstarted

/// Port renumbering across a unit slice: new index of each surviving in-port.
inline int forward_port(const UnitShape& u, int p) { return u.in_to[p]; }

/// Remaps a set of in-ports to out-ports, dropping closed ones.
std::uint8_t forward_mask(const UnitShape& u, std::uint8_t in_mask);

}  // namespace slw::detail
