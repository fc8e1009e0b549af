#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "slw/canon.hpp"
#include "slw/mso.hpp"

using namespace slw;

namespace {

const LabelSet kT{{"t"}};
const LabelSet kAB{{"a", "b"}};

FormulaPtr P(const std::string& s) { return parse_formula(s); }

// every decomposition of h of width <= c accepted iff the formula holds
void check_against_evaluator(const SliceAutomaton& a, const FormulaPtr& f, int max_n, int labels) {
  const LabelSet& ls = a.labels();
  for (int n = 1; n <= max_n; ++n)
    for (auto& h : oracle::all_dags(n, labels)) {
      const bool truth = evaluate_dag(h, ls, f);
      int words = 0;
      for_each_decomposition(h, a.alphabet(), [&](const std::vector<int>& w) {
        ++words;
        INFO(to_string(f), " on ", dag_to_text(h, ls));
        CHECK(accepts_word(a, w) == truth);
      });
    }
}

}  // namespace

TEST_CASE("parser, macros and printer") {
  auto f = P("ALL x. EX y. (x < y | l(x,b))");
  CHECK(to_string(f) == "!EX x. !EX y. (x < y | l(x,b))");
  CHECK(same_formula(P(to_string(f)), f));
  CHECK(to_string(P("EX x. EX y. x = y")) == "EX x. EX y. !EX EQ. !((!x in EQ | y in EQ) & (!y in EQ | x in EQ))");
  CHECK(to_string(P("EX Y:e. EX y:e. y in Y")) == "EX Y:e. EX y:e. y in Y");
  CHECK(to_string(P("EX x. l(x,a) -> rho")) == "EX x. (!l(x,a) | rho)");
  CHECK(to_string(P("(EX x. l(x,a)) & gamma(2)")) == "((EX x. l(x,a)) & gamma(2))");
  for (const char* s : {"EX x. EX X. EX Y:e. EX z. path(x,X,Y,z)", "!(rho & gamma(1))", "EX y:e. EX x. (s(y,x) | t(y,x))",
                        "ALL x. ALL y. (x < y <-> !(y < x))", "(EX x. true) & (EX x. false)", "EX x. (l(x,a) & EX y. x < y) | rho"}) {
    auto g = P(s);
    CHECK(same_formula(P(to_string(g)), g));
  }
  // precedence: & binds tighter than |, -> is right associative
  CHECK(to_string(P("rho | rho & true")) == "(rho | (rho & true))");
  CHECK(to_string(P("rho -> true -> false")) == "(!rho | (!true | false))");

  // errors carry a column
  try {
    P("EX x. x < y");
    FAIL("unbound");
  } catch (const ParseError& e) {
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(P("EX x. l(x,a) &"), ParseError);
  CHECK_THROWS_AS(P("EX x. x in x"), ParseError);
  CHECK_THROWS_AS(P("EX x:e. l(x,a)"), ParseError);
  CHECK_THROWS_AS(P("EX x. s(x,x)"), ParseError);
  CHECK_THROWS_AS(P("EX x. foo(x)"), ParseError);
  CHECK_THROWS_AS(P("EX x. x # x"), ParseError);
  CHECK_THROWS_AS(P("EX x:f. true"), ParseError);

  // open formulas infer sorts
  auto open = parse_formula("s(y,x) & x in X", false);
  auto fv = free_variables(open);
  REQUIRE(fv.size() == 3);
  CHECK(fv[0] == std::make_pair(std::string("y"), Sort::Edge));
  CHECK(fv[1] == std::make_pair(std::string("x"), Sort::Vertex));
  CHECK(fv[2] == std::make_pair(std::string("X"), Sort::VertexSet));
  CHECK_THROWS_AS(parse_formula("s(y,x) & l(y,a)", false), ParseError);

  CHECK(is_order_formula(P("ALL x. EX y. x < y")));
  CHECK_FALSE(is_order_formula(P("EX y:e. true")));
  CHECK_FALSE(is_order_formula(P("rho")));
}

TEST_CASE("evaluation on posets and DAGs") {
  auto ab = oracle::chain({0, 1});
  auto p = transitive_closure(ab);
  CHECK(evaluate_po(p, kAB, P("EX x. EX y. (x < y & l(x,a) & l(y,b))")));
  CHECK_FALSE(evaluate_po(p, kAB, P("EX x. EX y. (x < y & l(x,b))")));
  CHECK(evaluate_po(p, kAB, P("ALL x. ALL y. (x = y | x < y | y < x)")));
  CHECK_FALSE(evaluate_po(transitive_closure(oracle::antichain({0, 0})), kAB, P("ALL x. ALL y. (x = y | x < y | y < x)")));
  auto chord = oracle::make_dag({0, 0, 0}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK_FALSE(evaluate_dag(chord, kT, P("rho")));
  CHECK(evaluate_dag(oracle::chain({0, 0, 0}), kT, P("rho & gamma(1)")));
  CHECK_FALSE(evaluate_dag(oracle::antichain({0, 0}), kT, P("gamma(1)")));
  CHECK(evaluate_dag(chord, kT, P("EX y:e. EX x. EX z. (s(y,x) & t(y,z) & EX X. EX Y:e. (path(x,X,Y,z) & !y in Y))")));
  // open formula with an assignment
  CHECK(evaluate_dag(ab, kAB, parse_formula("l(x,b)", false), {{"x", 1}}));
  CHECK_THROWS_AS(evaluate_dag(ab, kAB, P("EX x. l(x,zz)")), InputError);
  Assignment none;
  CHECK_THROWS_AS(evaluate_dag(oracle::antichain(std::vector<int>(5, 0)), kT, P("EX X. true"), none, 4), ResourceError);
}

TEST_CASE("order formulas agree with their graph translation") {
  const std::vector<std::string> corpus{"ALL x. ALL y. (x < y | y < x | x = y)",
                                        "EX x. EX y. (x < y & l(x,a) & l(y,b))",
                                        "ALL x. (l(x,a) -> EX y. (x < y & l(y,b)))",
                                        "EX X. ALL x. (x in X <-> l(x,a))",
                                        "ALL x. ALL y. ALL z. ((x < y & y < z) -> x < z)",
                                        "!EX x. EX y. EX z. (x < y & x < z & !(y < z | z < y | y = z))"};
  for (auto& s : corpus) {
    auto f = P(s);
    auto g = to_graph_formula(f);
    for (int n = 1; n <= 4; ++n)
      for (auto& h : oracle::all_dags(n, 2)) {
        if (!oracle::is_hasse(h)) continue;
        CHECK(evaluate_po(oracle::closure(h), kAB, f) == evaluate_dag(h, kAB, g));
      }
  }
}

TEST_CASE("builtins match their plain encodings") {
  auto rho = rho_formula();
  for (int n = 1; n <= 4; ++n)
    for (auto& h : oracle::all_dags(n, 1)) CHECK(evaluate_dag(h, kT, rho) == oracle::is_hasse(h));
  for (int c = 0; c <= 2; ++c) {
    auto g = gamma_formula(c);
    for (int n = 1; n <= 3; ++n)
      for (auto& h : oracle::all_dags(n, 1)) CHECK(evaluate_dag(h, kT, g) == (oracle::path_cover(h) <= c));
  }
  // path against its encoding under every assignment
  auto open = parse_formula("path(x,X,Y,z)", false);
  auto plain = path_formula("x", "X", "Y", "z");
  for (int n = 1; n <= 3; ++n)
    for (auto& h : oracle::all_dags(n, 1)) {
      const std::uint64_t m = h.edges.size();
      for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z)
          for (std::uint64_t X = 0; X < (1u << n); ++X)
            for (std::uint64_t Y = 0; Y < (std::uint64_t{1} << m); ++Y) {
              Assignment env{{"x", std::uint64_t(x)}, {"X", X}, {"Y", Y}, {"z", std::uint64_t(z)}};
              CHECK(evaluate_dag(h, kT, open, env) == evaluate_dag(h, kT, plain, env));
            }
    }
  auto e = expand_builtins(P("rho & gamma(1)"));
  CHECK(to_string(e).find("rho") == std::string::npos);
}

TEST_CASE("compiled graph formulas accept exactly the satisfying decompositions") {
  const std::vector<std::string> corpus{"true",
                                        "false",
                                        "rho",
                                        "gamma(1)",
                                        "rho & gamma(2)",
                                        "EX x. EX y. x < y",
                                        "ALL x. l(x,a)",
                                        "EX y:e. EX x. (s(y,x) & l(x,b))",
                                        "ALL y:e. EX x. EX z. (s(y,x) & t(y,z) & l(x,a) & l(z,b))",
                                        "EX x. EX z. EX X. EX Y:e. (path(x,X,Y,z) & l(x,b))",
                                        "EX Y:e. ALL y:e. y in Y",
                                        "!EX x. EX y. (x < y & l(x,b) & l(y,a))",
                                        "EX X. (ALL x. (x in X <-> l(x,a)) & EX z. z in X)"};
  for (auto& s : corpus) {
    auto f = P(s);
    auto a = compile(f, 2, kAB);
    CHECK(validate(a).empty());
    check_against_evaluator(a, f, 3, 2);
  }
  // width 1 over a single label, longer words
  for (auto s : {"gamma(1)", "ALL x. EX y. (x < y | !EX z. x < z)", "!rho"}) {
    auto f = P(s);
    check_against_evaluator(compile(f, 1, kT), f, 5, 1);
  }
}

TEST_CASE("negation and the universal automaton") {
  auto sigma = make_alphabet(2, kT);
  auto f = P("EX x. EX y. x < y");
  auto a = compile(f, sigma);
  auto na = compile(fm::neg(f), sigma);
  CHECK(is_empty(intersect(a, na)));
  CHECK(includes(well_formed(sigma), unite(a, na)));
  // rho & gamma(c) is the universal automaton
  for (int c = 1; c <= 2; ++c) {
    auto s = make_alphabet(c, kAB);
    auto u = universal(s);
    auto g = compile(P("rho & gamma(" + std::to_string(c) + ")"), s);
    CHECK(includes(u, g));
    CHECK(includes(g, u));
  }
  // the plain encodings compile to the same languages as the builtin atoms
  for (auto s : {"rho", "gamma(1)", "EX x. EX X. EX Y:e. EX z. path(x,X,Y,z)"}) {
    auto s1 = make_alphabet(1, kT);
    auto lhs = compile(P(s), s1), rhs = compile(expand_builtins(P(s)), s1);
    CHECK(includes(lhs, rhs));
    CHECK(includes(rhs, lhs));
  }
  CHECK_THROWS_AS(compile(parse_formula("l(x,a)", false), sigma), InputError);
  CHECK_THROWS_AS(compile(P("EX x. l(x,q)"), sigma), InputError);
  CompileOptions tiny;
  tiny.max_states = 3;
  try {
    compile(P("rho & EX x. EX y. x < y"), sigma, tiny);
    FAIL("expected a resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("while compiling") != std::string::npos);
  }
}

TEST_CASE("partial order automata") {
  const std::vector<std::string> corpus{"ALL x. ALL y. (x < y | y < x | x = y)", "EX x. EX y. (x < y & l(x,a) & l(y,b))",
                                        "ALL x. (l(x,a) -> EX y. (x < y & l(y,b)))", "!EX x. l(x,b)", "true"};
  for (int c = 1; c <= 2; ++c)
    for (auto& s : corpus) {
      auto f = P(s);
      auto a = po_automaton(f, c, kAB);
      std::set<std::string> want;
      for (int n = 1; n <= 4; ++n)
        for (auto& h : oracle::all_hasse(n, 2, c)) {
          auto p = oracle::closure(h);
          if (evaluate_po(p, kAB, f)) want.insert(canonical_key(p));
        }
      INFO(s, " c=", c);
      CHECK(po_members_up_to(a, 4) == want);
      CHECK_FALSE(non_hasse_witness(a));
      CHECK_FALSE(saturation_gap(a, 4));
    }
  CHECK_THROWS_AS(po_automaton(P("rho"), 1, kT), InputError);
}
