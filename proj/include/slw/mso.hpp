#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "slw/automaton.hpp"

namespace slw {

enum class Sort { Vertex, Edge, VertexSet, EdgeSet };

inline bool is_set(Sort s) { return s == Sort::VertexSet || s == Sort::EdgeSet; }
inline bool is_edge_sorted(Sort s) { return s == Sort::Edge || s == Sort::EdgeSet; }
const char* sort_name(Sort s);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Core syntax after macro expansion: forall, implication, equivalence and
/// equality are rewritten by the parser.
struct Formula {
  enum class Kind { True, False, Not, And, Or, Exists, Less, In, Label, Src, Tgt, Path, Rho, Gamma };
  Kind kind = Kind::True;
  std::string var;                // Exists
  Sort sort = Sort::Vertex;       // Exists
  std::vector<std::string> args;  // atoms
  std::string label;              // Label
  int paths = 0;                  // Gamma
  FormulaPtr left, right;
};

namespace fm {
FormulaPtr truth();
FormulaPtr falsity();
FormulaPtr neg(FormulaPtr a);
FormulaPtr conj(FormulaPtr a, FormulaPtr b);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr implies(FormulaPtr a, FormulaPtr b);
FormulaPtr iff(FormulaPtr a, FormulaPtr b);
FormulaPtr exists(const std::string& v, Sort s, FormulaPtr body);
FormulaPtr forall(const std::string& v, Sort s, FormulaPtr body);
FormulaPtr less(const std::string& x, const std::string& y);
FormulaPtr member(const std::string& x, const std::string& X);
FormulaPtr label(const std::string& x, const std::string& a);
FormulaPtr src(const std::string& y, const std::string& x);
FormulaPtr tgt(const std::string& y, const std::string& x);
FormulaPtr path(const std::string& x1, const std::string& X, const std::string& Y, const std::string& x2);
FormulaPtr rho();
FormulaPtr gamma(int c);
/// x = y as ALL Z. (x in Z <-> y in Z); `fresh` must not occur in the context.
FormulaPtr equal(const std::string& x, const std::string& y, Sort element, const std::string& fresh);
}  // namespace fm

/// Syntax error with a 1-based column.
class ParseError : public InputError {
 public:
  ParseError(std::size_t column, const std::string& msg);
  std::size_t column() const { return column_; }

 private:
  std::size_t column_;
};

/// In closed mode every variable must be bound. Open formulas infer the sort
/// of free variables from their use.
FormulaPtr parse_formula(const std::string& text, bool closed = true);
std::string to_string(const FormulaPtr& f);
bool same_formula(const FormulaPtr& a, const FormulaPtr& b);

using VarContext = std::vector<std::pair<std::string, Sort>>;
VarContext free_variables(const FormulaPtr& f);
/// No edge variables and no graph atoms.
bool is_order_formula(const FormulaPtr& f);

/// Variable assignment for open formulas: element index, or bit set for set variables.
using Assignment = std::vector<std::pair<std::string, std::uint64_t>>;

/// Exhaustive evaluation; throws ResourceError when a set quantifier ranges
/// over more than `max_set_domain` elements.
bool evaluate_po(const LabeledPoset& p, const LabelSet& labels, const FormulaPtr& f, const Assignment& env = {},
                 int max_set_domain = 16);
bool evaluate_dag(const LabeledDag& h, const LabelSet& labels, const FormulaPtr& f, const Assignment& env = {},
                  int max_set_domain = 16);

/// x < y becomes EX X. EX Y:e. path(x,X,Y,y).
FormulaPtr to_graph_formula(const FormulaPtr& f);

/// Builtins written with the plain atoms only.
FormulaPtr path_formula(const std::string& x1, const std::string& X, const std::string& Y, const std::string& x2);
FormulaPtr rho_formula();
FormulaPtr gamma_formula(int c);
/// Replaces every builtin atom by its plain encoding.
FormulaPtr expand_builtins(const FormulaPtr& f);

struct CompileOptions {
  std::size_t max_states = 1000000;  // per determinization / product
};

/// Unit decompositions of width <= c whose composed DAG satisfies the closed graph formula.
SliceAutomaton compile(const FormulaPtr& f, int c, const LabelSet& labels, const CompileOptions& opt = {});
SliceAutomaton compile(const FormulaPtr& f, std::shared_ptr<const SliceAlphabet> alphabet, const CompileOptions& opt = {});

/// Saturated, transitively reduced automaton whose partial orders are the
/// c-partial orders over `labels` satisfying the closed order formula.
SliceAutomaton po_automaton(const FormulaPtr& f, int c, const LabelSet& labels, const CompileOptions& opt = {});
SliceAutomaton po_automaton(const FormulaPtr& f, std::shared_ptr<const SliceAlphabet> alphabet, const CompileOptions& opt = {});

}  // namespace slw
