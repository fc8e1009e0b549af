#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slw/mso.hpp"
#include "slw/ptnet.hpp"

namespace slw {

/// One entry of the machine-readable trace of a top-level procedure.
struct ProofStep {
  std::string op;       // build, inclusion, disjointness, synthesis, check, ...
  std::string subject;  // what was built or compared
  std::string outcome;  // holds / fails / sizes
};
using ProofLog = std::vector<ProofStep>;

/// Target language plus the net bounds. c and T come from the automaton.
struct SynthesisSpec {
  SliceAutomaton target;
  int b = 1;
  int r = 1;
  Semantics sem = Semantics::Execution;
};

struct SynthesisResult {
  enum class Status { Synthesized, NoNet, Rejected };
  Status status = Status::NoNet;
  std::optional<PtNet> net;
  std::string diagnostic;
  std::optional<LabeledDag> witness;  // Hasse diagram explaining NoNet / Rejected when available
  ProofLog log;
};

/// Every place with initial marking and arc weights at most b.
std::vector<Place> candidate_places(const LabelSet& transitions, int b, const Caps& caps = {});

/// The single-place probe net accepts every member of the target (execution semantics).
bool feasible_place(const Place& p, const SynthesisSpec& spec, const Caps& caps = {});

/// Net built from all feasible places; none when a transition would lack an
/// input or output place, when that net is not b-bounded, or when it misses
/// part of the target.
SynthesisResult synthesize(const SynthesisSpec& spec, const Caps& caps = {});

/// Synthesizes for `target` and keeps the net only if its behaviour avoids `forbidden`.
SynthesisResult separate(const SliceAutomaton& target, const SliceAutomaton& forbidden, int b, int r, Semantics sem,
                         const Caps& caps = {});

struct VerificationReport {
  bool disjoint = false;
  bool net_subset_of_spec = false;
  bool spec_subset_of_net = false;
  // Hasse diagrams of smallest witnesses: shared member, net member violating
  // the formula, formula member missing from the net.
  std::optional<LabeledDag> shared, net_only, spec_only;
  bool witnesses_checked = true;  // every witness confirmed by the oracles
  ProofLog log;
};

VerificationReport verify(const PtNet& n, const FormulaPtr& phi, int c, Semantics sem, const Caps& caps = {});

SynthesisResult synth_from_mso(const FormulaPtr& phi, const LabelSet& transitions, int b, int r, int c, Semantics sem,
                               const Caps& caps = {});
SynthesisResult safest_subsystem(const PtNet& n, const FormulaPtr& phi, int b, int r, int c, Semantics sem,
                                 const Caps& caps = {});
/// Net containing the runs of n satisfying phi whose every run satisfies psi.
SynthesisResult repair(const PtNet& n, const FormulaPtr& phi, const FormulaPtr& psi, int b, int r, int c, Semantics sem,
                       const Caps& caps = {});
/// Rejected with a witness when yes and no overlap.
SynthesisResult synth_from_contract(const FormulaPtr& yes, const FormulaPtr& no, const LabelSet& transitions, int b, int r,
                                    int c, Semantics sem, const Caps& caps = {});

/// Oracle membership of a poset in the c-behaviour of n (process enumeration).
bool oracle_member(const PtNet& n, const LabeledPoset& p, int c, Semantics sem, const Caps& caps = {});

// JSON renderings, schema "slw-report/1".
std::string report_json(const VerificationReport& r, const LabelSet& labels);
std::string report_json(const SynthesisResult& r, const LabelSet& labels);
std::string proof_log_json(const ProofLog& log);
std::string report_text(const VerificationReport& r, const LabelSet& labels);
std::string report_text(const SynthesisResult& r, const LabelSet& labels);

}  // namespace slw
