#include <functional>

#include "slw/mso.hpp"

namespace slw {

namespace {

struct Binding {
  std::string name;
  Sort sort;
  std::uint64_t value;
};

class Evaluator {
 public:
  Evaluator(const LabeledDag& h, const LabelSet& labels, int max_set_domain)
      : h_(h), labels_(labels), order_(transitive_closure(h)), max_set_(max_set_domain) {}

  bool run(const FormulaPtr& f, const Assignment& env) {
    for (auto& [n, v] : env) env_.push_back({n, Sort::Vertex, v});
    return eval(f);
  }

 private:
  const LabeledDag& h_;
  const LabelSet& labels_;
  LabeledPoset order_;
  int max_set_;
  std::vector<Binding> env_;

  std::uint64_t get(const std::string& n) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->name == n) return it->value;
    throw InputError("unbound variable '" + n + "'");
  }

  bool has(std::uint64_t set, std::uint64_t elem) const { return elem < 64 && ((set >> elem) & 1u); }

  bool path(int x1, std::uint64_t X, std::uint64_t Y, int x2) const {
    if (x1 == x2) return false;
    std::uint64_t used = 0, inner = 0;
    int cur = x1;
    while (cur != x2) {
      int next = -1, count = 0;
      for (std::size_t e = 0; e < h_.edges.size(); ++e)
        if (has(Y, e) && h_.edges[e].first == cur) {
          ++count;
          next = static_cast<int>(e);
        }
      if (count != 1) return false;
      used |= std::uint64_t{1} << next;
      cur = h_.edges[static_cast<std::size_t>(next)].second;
      if (cur != x2) inner |= std::uint64_t{1} << cur;
    }
    return used == Y && inner == X;
  }

  bool eval(const FormulaPtr& f) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::True:
        return true;
      case K::False:
        return false;
      case K::Not:
        return !eval(f->left);
      case K::And:
        return eval(f->left) && eval(f->right);
      case K::Or:
        return eval(f->left) || eval(f->right);
      case K::Exists: {
        const std::uint64_t domain = is_edge_sorted(f->sort) ? h_.edges.size() : static_cast<std::uint64_t>(h_.size());
        if (is_set(f->sort) && (domain > static_cast<std::uint64_t>(max_set_) || domain > 62))
          throw ResourceError("set quantifier over " + std::to_string(domain) + " elements exceeds the limit of " +
                              std::to_string(max_set_));
        const std::uint64_t count = is_set(f->sort) ? (std::uint64_t{1} << domain) : domain;
        env_.push_back({f->var, f->sort, 0});
        bool found = false;
        for (std::uint64_t v = 0; v < count && !found; ++v) {
          env_.back().value = v;
          found = eval(f->left);
        }
        env_.pop_back();
        return found;
      }
      case K::Less:
        return order_.lt(static_cast<int>(get(f->args[0])), static_cast<int>(get(f->args[1])));
      case K::In:
        return has(get(f->args[1]), get(f->args[0]));
      case K::Label: {
        const int l = labels_.find(f->label);
        if (l < 0) throw InputError("unknown label '" + f->label + "'");
        return h_.labels[get(f->args[0])] == l;
      }
      case K::Src:
        return h_.edges[get(f->args[0])].first == static_cast<int>(get(f->args[1]));
      case K::Tgt:
        return h_.edges[get(f->args[0])].second == static_cast<int>(get(f->args[1]));
      case K::Path:
        return path(static_cast<int>(get(f->args[0])), get(f->args[1]), get(f->args[2]), static_cast<int>(get(f->args[3])));
      case K::Rho:
        return is_transitively_reduced(h_);
      case K::Gamma:
        return min_path_cover(h_).count <= f->paths;
    }
    return false;
  }
};

}  // namespace

bool evaluate_dag(const LabeledDag& h, const LabelSet& labels, const FormulaPtr& f, const Assignment& env, int max_set_domain) {
  if (h.edges.size() > 64 || h.size() > 64) throw ResourceError("evaluation supports at most 64 vertices and edges");
  return Evaluator(h, labels, max_set_domain).run(f, env);
}

bool evaluate_po(const LabeledPoset& p, const LabelSet& labels, const FormulaPtr& f, const Assignment& env, int max_set_domain) {
  return evaluate_dag(hasse_diagram(p), labels, f, env, max_set_domain);
}

}  // namespace slw
