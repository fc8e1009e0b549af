#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slw/automaton.hpp"

namespace slw {

/// One place instance: initial tokens, tokens put by / taken by each transition.
struct Place {
  std::string name;
  int initial = 0;
  std::vector<int> puts;   // indexed by transition
  std::vector<int> takes;  // indexed by transition
  bool same_arcs(const Place& o) const { return initial == o.initial && puts == o.puts && takes == o.takes; }
};

/// Place/transition net with a declared token bound. Places form a multiset;
/// each instance is stored separately.
class PtNet {
 public:
  /// Checks counts and that every transition has an input and an output place.
  PtNet(std::string name, LabelSet transitions, std::vector<Place> places, int bound);
  /// A net that skips the input/output place check (single-place probes).
  static PtNet probe(LabelSet transitions, std::vector<Place> places, int bound);

  const std::string& name() const { return name_; }
  const LabelSet& transitions() const { return transitions_; }
  const std::vector<Place>& places() const { return places_; }
  int bound() const { return bound_; }
  std::size_t place_count() const { return places_.size(); }

  /// `net NAME bound=B`, `transitions a b`, one `place` line per distinct place with mult=R.
  std::string to_text() const;
  static PtNet parse(const std::string& text);

 private:
  PtNet() = default;
  std::string name_;
  LabelSet transitions_;
  std::vector<Place> places_;
  int bound_ = 1;
};

/// Multiset union of places; transition sets must agree.
PtNet net_union(const PtNet& a, const PtNet& b);

using Marking = std::vector<int>;  // tokens per place instance

Marking initial_marking(const PtNet& n);
bool enabled(const PtNet& n, const Marking& m, int t);
/// Throws InputError when t is not enabled.
Marking fire(const PtNet& n, const Marking& m, int t);

struct BoundCheck {
  bool bounded = true;
  std::vector<int> witness;  // occurrence sequence reaching a marking above the bound
};
/// Breadth-first over reachable markings; stops at the first marking above b.
BoundCheck check_bounded(const PtNet& n, int b, std::size_t max_markings = 1000000);

/// Occurrence net: conditions labeled by place instances, events by transitions.
/// Each condition has at most one producer and one consumer (-1 for none).
struct ProcessNet {
  struct Condition {
    int place;
    int producer = -1;
    int consumer = -1;
  };
  std::vector<Condition> conditions;
  std::vector<int> events;  // transition of each event

  /// Condition and event DAG: conditions first, then events.
  LabeledDag flow_dag(int transition_count) const;
};

/// Empty iff the process satisfies every occurrence-net condition for n.
std::vector<std::string> process_violations(const PtNet& n, const ProcessNet& p);

/// Processes with at most k events, built forward and deduplicated up to isomorphism.
std::vector<ProcessNet> processes(const PtNet& n, int k, const Caps& caps = {});
LabeledPoset causal_order(const ProcessNet& p);

/// Canonical keys of the causal orders with 1..k events whose Hasse diagram has path cover <= c.
std::set<std::string> causal_orders(const PtNet& n, int k, int c, const Caps& caps = {});
/// Canonical keys of all order extensions of causal orders, filtered the same way.
std::set<std::string> executions(const PtNet& n, int k, int c, const Caps& caps = {});

enum class Semantics { Execution, Causal };
const char* semantics_name(Semantics s);
Semantics parse_semantics(const std::string& s);

/// Saturated, transitively reduced automaton whose partial orders are the
/// c-partial orders of the net under the chosen semantics. Token counts above
/// the declared bound are cut off.
SliceAutomaton net_automaton(const PtNet& n, int c, Semantics sem, const BuildOptions& opt = {});
SliceAutomaton net_automaton(const PtNet& n, std::shared_ptr<const SliceAlphabet> alphabet, Semantics sem,
                             const BuildOptions& opt = {});

}  // namespace slw
