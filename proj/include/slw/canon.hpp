#pragma once

#include <string>

#include "slw/slice.hpp"

namespace slw {

// Canonical keys: two structures get the same key iff they are isomorphic
// (label- and edge-preserving). Colour refinement seeded with labels and
// degrees, then exhaustive search inside the remaining colour classes.

std::string canonical_key(const LabeledPoset& p);
std::string canonical_key(const LabeledDag& h);

/// Rebuilds the canonical representative of a poset from its key.
LabeledPoset poset_from_key(const std::string& key);

}  // namespace slw
