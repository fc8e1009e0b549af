#include <sstream>

#include "json.hpp"
#include "slw/synthesis.hpp"

namespace slw {

namespace {

using nlohmann::json;

json dag_json(const LabeledDag& h, const LabelSet& labels) {
  json v = json::array(), e = json::array();
  for (int l : h.labels) v.push_back(labels.name(l));
  for (auto [a, b] : h.normalized().edges) e.push_back({a, b});
  return {{"vertices", v}, {"edges", e}};
}

json log_json(const ProofLog& log) {
  json out = json::array();
  for (const auto& s : log) out.push_back({{"op", s.op}, {"subject", s.subject}, {"outcome", s.outcome}});
  return out;
}

json opt_dag(const std::optional<LabeledDag>& h, const LabelSet& labels) { return h ? dag_json(*h, labels) : json(nullptr); }

const char* status_name(SynthesisResult::Status s) {
  switch (s) {
    case SynthesisResult::Status::Synthesized: return "synthesized";
    case SynthesisResult::Status::NoNet: return "no-net";
    case SynthesisResult::Status::Rejected: return "rejected";
  }
  return "?";
}

std::string dag_line(const LabeledDag& h, const LabelSet& labels) {
  std::ostringstream os;
  os << "vertices";
  for (int v = 0; v < h.size(); ++v) os << ' ' << v << ':' << labels.name(h.labels[static_cast<std::size_t>(v)]);
  os << "; edges";
  if (h.edges.empty()) os << " none";
  for (auto [a, b] : h.normalized().edges) os << ' ' << a << "->" << b;
  return os.str();
}

}  // namespace

std::string proof_log_json(const ProofLog& log) { return log_json(log).dump(2); }

std::string report_json(const VerificationReport& r, const LabelSet& labels) {
  json j{{"schema", "slw-report/1"},
         {"kind", "verification"},
         {"disjoint", r.disjoint},
         {"net_subset_of_spec", r.net_subset_of_spec},
         {"spec_subset_of_net", r.spec_subset_of_net},
         {"witnesses", {{"shared", opt_dag(r.shared, labels)},
                        {"net_only", opt_dag(r.net_only, labels)},
                        {"spec_only", opt_dag(r.spec_only, labels)}}},
         {"witnesses_checked", r.witnesses_checked},
         {"proof_log", log_json(r.log)}};
  return j.dump(2);
}

std::string report_json(const SynthesisResult& r, const LabelSet& labels) {
  json j{{"schema", "slw-report/1"},
         {"kind", "synthesis"},
         {"status", status_name(r.status)},
         {"net", r.net ? json(r.net->to_text()) : json(nullptr)},
         {"diagnostic", r.diagnostic},
         {"witness", opt_dag(r.witness, labels)},
         {"proof_log", log_json(r.log)}};
  return j.dump(2);
}

std::string report_text(const VerificationReport& r, const LabelSet& labels) {
  std::ostringstream os;
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  os << "disjoint: " << yn(r.disjoint) << '\n';
  os << "net within formula: " << yn(r.net_subset_of_spec) << '\n';
  os << "formula within net: " << yn(r.spec_subset_of_net) << '\n';
  if (r.shared) os << "shared run: " << dag_line(*r.shared, labels) << '\n';
  if (r.net_only) os << "net run violating the formula: " << dag_line(*r.net_only, labels) << '\n';
  if (r.spec_only) os << "formula run missing from the net: " << dag_line(*r.spec_only, labels) << '\n';
  if (!r.witnesses_checked) os << "some witnesses were too large for the oracle\n";
  return os.str();
}

std::string report_text(const SynthesisResult& r, const LabelSet& labels) {
  std::ostringstream os;
  os << "status: " << status_name(r.status) << '\n';
  if (!r.diagnostic.empty()) os << "diagnostic: " << r.diagnostic << '\n';
  if (r.witness) os << "witness: " << dag_line(*r.witness, labels) << '\n';
  if (r.net) os << r.net->to_text();
  return os.str();
}

}  // namespace slw
