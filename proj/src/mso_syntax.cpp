#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "slw/mso.hpp"

namespace slw {

const char* sort_name(Sort s) {
  switch (s) {
    case Sort::Vertex:
      return "vertex";
    case Sort::Edge:
      return "edge";
    case Sort::VertexSet:
      return "vertex-set";
    default:
      return "edge-set";
  }
}

namespace fm {

namespace {
FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }
FormulaPtr atom(Formula::Kind k, std::vector<std::string> args) {
  Formula f;
  f.kind = k;
  f.args = std::move(args);
  return make(std::move(f));
}
}  // namespace

FormulaPtr truth() { return atom(Formula::Kind::True, {}); }
FormulaPtr falsity() { return atom(Formula::Kind::False, {}); }
FormulaPtr neg(FormulaPtr a) {
  Formula f;
  f.kind = Formula::Kind::Not;
  f.left = std::move(a);
  return make(std::move(f));
}
FormulaPtr conj(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Formula::Kind::And;
  f.left = std::move(a);
  f.right = std::move(b);
  return make(std::move(f));
}
FormulaPtr disj(FormulaPtr a, FormulaPtr b) {
  Formula f;
  f.kind = Formula::Kind::Or;
  f.left = std::move(a);
  f.right = std::move(b);
  return make(std::move(f));
}
FormulaPtr implies(FormulaPtr a, FormulaPtr b) { return disj(neg(std::move(a)), std::move(b)); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return conj(implies(a, b), implies(b, a)); }
FormulaPtr exists(const std::string& v, Sort s, FormulaPtr body) {
  Formula f;
  f.kind = Formula::Kind::Exists;
  f.var = v;
  f.sort = s;
  f.left = std::move(body);
  return make(std::move(f));
}
FormulaPtr forall(const std::string& v, Sort s, FormulaPtr body) { return neg(exists(v, s, neg(std::move(body)))); }
FormulaPtr less(const std::string& x, const std::string& y) { return atom(Formula::Kind::Less, {x, y}); }
FormulaPtr member(const std::string& x, const std::string& X) { return atom(Formula::Kind::In, {x, X}); }
FormulaPtr label(const std::string& x, const std::string& a) {
  Formula f;
  f.kind = Formula::Kind::Label;
  f.args = {x};
  f.label = a;
  return make(std::move(f));
}
FormulaPtr src(const std::string& y, const std::string& x) { return atom(Formula::Kind::Src, {y, x}); }
FormulaPtr tgt(const std::string& y, const std::string& x) { return atom(Formula::Kind::Tgt, {y, x}); }
FormulaPtr path(const std::string& x1, const std::string& X, const std::string& Y, const std::string& x2) {
  return atom(Formula::Kind::Path, {x1, X, Y, x2});
}
FormulaPtr rho() { return atom(Formula::Kind::Rho, {}); }
FormulaPtr gamma(int c) {
  Formula f;
  f.kind = Formula::Kind::Gamma;
  f.paths = c;
  return make(std::move(f));
}
FormulaPtr equal(const std::string& x, const std::string& y, Sort element, const std::string& fresh) {
  const Sort set = element == Sort::Edge ? Sort::EdgeSet : Sort::VertexSet;
  return forall(fresh, set, iff(member(x, fresh), member(y, fresh)));
}

}  // namespace fm

ParseError::ParseError(std::size_t column, const std::string& msg)
    : InputError("column " + std::to_string(column) + ": " + msg), column_(column) {}

// ---------------------------------------------------------------------------
// parser
// ---------------------------------------------------------------------------

namespace {

struct Token {
  enum Type { Ident, Int, Sym, End } type;
  std::string text;
  std::size_t col;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Int, s.substr(i, j - i), col});
      i = j;
    } else if (s.compare(i, 3, "<->") == 0) {
      out.push_back({Token::Sym, "<->", col});
      i += 3;
    } else if (s.compare(i, 2, "->") == 0) {
      out.push_back({Token::Sym, "->", col});
      i += 2;
    } else if (std::string("()&|!<=.,:").find(ch) != std::string::npos) {
      out.push_back({Token::Sym, std::string(1, ch), col});
      ++i;
    } else {
      throw ParseError(col, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Token::End, "", s.size() + 1});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, bool closed) : toks_(tokenize(text)), closed_(closed) {}

  FormulaPtr run() {
    auto f = formula();
    if (peek().type != Token::End) throw ParseError(peek().col, "unexpected '" + peek().text + "'");
    return f;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  bool closed_;
  std::vector<std::pair<std::string, Sort>> scope_;
  std::map<std::string, Sort> free_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(const std::string& sym) const { return peek().type == Token::Sym && peek().text == sym; }
  bool at_word(const std::string& w) const { return peek().type == Token::Ident && peek().text == w; }
  Token take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  void expect(const std::string& sym) {
    if (!at(sym)) throw ParseError(peek().col, "expected '" + sym + "'" + (peek().type == Token::End ? " at end of input" : " before '" + peek().text + "'"));
    ++pos_;
  }
  Token ident(const char* what) {
    if (peek().type != Token::Ident) throw ParseError(peek().col, std::string("expected ") + what);
    return take();
  }

  static bool upper(const std::string& n) { return std::isupper(static_cast<unsigned char>(n[0])) != 0; }

  std::optional<Sort> lookup(const std::string& n) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == n) return it->second;
    auto f = free_.find(n);
    if (f != free_.end()) return f->second;
    return std::nullopt;
  }

  // Resolves a use of `t` that must have one of the allowed sorts; the first
  // allowed sort is the default for a new free variable.
  Sort use(const Token& t, std::initializer_list<Sort> allowed) {
    auto s = lookup(t.text);
    if (!s) {
      if (closed_) throw ParseError(t.col, "unbound variable '" + t.text + "'");
      Sort d = *allowed.begin();
      if (upper(t.text) != is_set(d)) {
        for (Sort a : allowed)
          if (upper(t.text) == is_set(a)) {
            d = a;
            break;
          }
        if (upper(t.text) != is_set(d))
          throw ParseError(t.col, "'" + t.text + "': " + (upper(t.text) ? "set variables are uppercase" : "element variables are lowercase") +
                                      " and this position needs " + (is_set(d) ? "a set" : "an element"));
      }
      free_[t.text] = d;
      return d;
    }
    for (Sort a : allowed)
      if (a == *s) return *s;
    std::string want;
    for (Sort a : allowed) want += std::string(want.empty() ? "" : " or ") + sort_name(a);
    throw ParseError(t.col, "sort error: '" + t.text + "' is a " + sort_name(*s) + " variable, expected " + want);
  }

  FormulaPtr formula() { return equivalence(); }

  FormulaPtr equivalence() {
    auto l = implication();
    while (at("<->")) {
      ++pos_;
      l = fm::iff(l, implication());
    }
    return l;
  }

  FormulaPtr implication() {
    auto l = disjunction();
    if (at("->")) {
      ++pos_;
      return fm::implies(l, implication());
    }
    return l;
  }

  FormulaPtr disjunction() {
    auto l = conjunction();
    while (at("|")) {
      ++pos_;
      l = fm::disj(l, conjunction());
    }
    return l;
  }

  FormulaPtr conjunction() {
    auto l = unary();
    while (at("&")) {
      ++pos_;
      l = fm::conj(l, unary());
    }
    return l;
  }

  FormulaPtr unary() {
    if (at("!")) {
      ++pos_;
      return fm::neg(unary());
    }
    if (at("(")) {
      ++pos_;
      auto f = formula();
      expect(")");
      return f;
    }
    if (at_word("EX") || at_word("ALL")) return quantifier();
    return atom();
  }

  FormulaPtr quantifier() {
    const bool ex = take().text == "EX";
    const Token v = ident("a variable after the quantifier");
    if (v.text == "EX" || v.text == "ALL") throw ParseError(v.col, "expected a variable name");
    bool edge = false;
    if (at(":")) {
      ++pos_;
      const Token e = ident("'e' after ':'");
      if (e.text != "e") throw ParseError(e.col, "only ':e' (edge sort) may follow a variable");
      edge = true;
    }
    expect(".");
    const Sort s = upper(v.text) ? (edge ? Sort::EdgeSet : Sort::VertexSet) : (edge ? Sort::Edge : Sort::Vertex);
    scope_.emplace_back(v.text, s);
    auto body = formula();
    scope_.pop_back();
    return ex ? fm::exists(v.text, s, body) : fm::forall(v.text, s, body);
  }

  std::vector<Token> call_args(std::size_t n) {
    expect("(");
    std::vector<Token> a;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) expect(",");
      if (peek().type != Token::Ident && peek().type != Token::Int) throw ParseError(peek().col, "expected an argument");
      a.push_back(take());
    }
    expect(")");
    return a;
  }

  FormulaPtr atom() {
    const Token& t = peek();
    if (t.type != Token::Ident) throw ParseError(t.col, t.type == Token::End ? "unexpected end of formula" : "unexpected '" + t.text + "'");
    const bool call = peek(1).type == Token::Sym && peek(1).text == "(";
    if (t.text == "true") {
      ++pos_;
      return fm::truth();
    }
    if (t.text == "false") {
      ++pos_;
      return fm::falsity();
    }
    if (t.text == "rho") {
      ++pos_;
      return fm::rho();
    }
    if (call && t.text == "gamma") {
      ++pos_;
      auto a = call_args(1);
      if (a[0].type != Token::Int) throw ParseError(a[0].col, "gamma expects a number of paths");
      return fm::gamma(std::stoi(a[0].text));
    }
    if (call && t.text == "l") {
      ++pos_;
      auto a = call_args(2);
      use(a[0], {Sort::Vertex});
      return fm::label(a[0].text, a[1].text);
    }
    if (call && (t.text == "s" || t.text == "t")) {
      const bool is_src = t.text == "s";
      ++pos_;
      auto a = call_args(2);
      use(a[0], {Sort::Edge});
      use(a[1], {Sort::Vertex});
      return is_src ? fm::src(a[0].text, a[1].text) : fm::tgt(a[0].text, a[1].text);
    }
    if (call && t.text == "path") {
      ++pos_;
      auto a = call_args(4);
      use(a[0], {Sort::Vertex});
      use(a[1], {Sort::VertexSet});
      use(a[2], {Sort::EdgeSet});
      use(a[3], {Sort::Vertex});
      return fm::path(a[0].text, a[1].text, a[2].text, a[3].text);
    }
    if (call) throw ParseError(t.col, "unknown predicate '" + t.text + "'");
    const Token x = take();
    if (at("<")) {
      ++pos_;
      const Token y = ident("a variable after '<'");
      use(x, {Sort::Vertex});
      use(y, {Sort::Vertex});
      return fm::less(x.text, y.text);
    }
    if (at("=")) {
      ++pos_;
      const Token y = ident("a variable after '='");
      const Sort sx = use(x, {Sort::Vertex, Sort::Edge});
      use(y, {sx});
      return fm::equal(x.text, y.text, sx, "EQ");
    }
    if (at_word("in")) {
      ++pos_;
      const Token X = ident("a set variable after 'in'");
      const Sort sx = use(x, {Sort::Vertex, Sort::Edge});
      use(X, {sx == Sort::Edge ? Sort::EdgeSet : Sort::VertexSet});
      return fm::member(x.text, X.text);
    }
    throw ParseError(peek().col, "expected '<', '=' or 'in' after '" + x.text + "'");
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, bool closed) { return Parser(text, closed).run(); }

// ---------------------------------------------------------------------------
// printing and structure
// ---------------------------------------------------------------------------

namespace {

void print(const FormulaPtr& f, std::string& out) {
  using K = Formula::Kind;
  auto operand = [&](const FormulaPtr& g) {
    if (g->kind == K::Exists) {
      out += '(';
      print(g, out);
      out += ')';
    } else {
      print(g, out);
    }
  };
  switch (f->kind) {
    case K::True:
      out += "true";
      break;
    case K::False:
      out += "false";
      break;
    case K::Not:
      out += '!';
      print(f->left, out);
      break;
    case K::And:
    case K::Or:
      out += '(';
      operand(f->left);
      out += f->kind == K::And ? " & " : " | ";
      operand(f->right);
      out += ')';
      break;
    case K::Exists:
      out += "EX " + f->var + (is_edge_sorted(f->sort) ? ":e" : "") + ". ";
      print(f->left, out);
      break;
    case K::Less:
      out += f->args[0] + " < " + f->args[1];
      break;
    case K::In:
      out += f->args[0] + " in " + f->args[1];
      break;
    case K::Label:
      out += "l(" + f->args[0] + "," + f->label + ")";
      break;
    case K::Src:
      out += "s(" + f->args[0] + "," + f->args[1] + ")";
      break;
    case K::Tgt:
      out += "t(" + f->args[0] + "," + f->args[1] + ")";
      break;
    case K::Path:
      out += "path(" + f->args[0] + "," + f->args[1] + "," + f->args[2] + "," + f->args[3] + ")";
      break;
    case K::Rho:
      out += "rho";
      break;
    case K::Gamma:
      out += "gamma(" + std::to_string(f->paths) + ")";
      break;
  }
}

}  // namespace

std::string to_string(const FormulaPtr& f) {
  std::string s;
  print(f, s);
  return s;
}

bool same_formula(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->var != b->var || a->sort != b->sort || a->args != b->args || a->label != b->label ||
      a->paths != b->paths)
    return false;
  return same_formula(a->left, b->left) && same_formula(a->right, b->right);
}

VarContext free_variables(const FormulaPtr& f) {
  VarContext out;
  std::vector<std::pair<std::string, Sort>> bound;
  std::function<void(const FormulaPtr&)> rec = [&](const FormulaPtr& g) {
    using K = Formula::Kind;
    auto note = [&](const std::string& n, Sort s) {
      for (auto it = bound.rbegin(); it != bound.rend(); ++it)
        if (it->first == n) return;
      for (auto& [m, t] : out)
        if (m == n) return;
      out.emplace_back(n, s);
    };
    switch (g->kind) {
      case K::Not:
        rec(g->left);
        break;
      case K::And:
      case K::Or:
        rec(g->left);
        rec(g->right);
        break;
      case K::Exists:
        bound.emplace_back(g->var, g->sort);
        rec(g->left);
        bound.pop_back();
        break;
      case K::Less:
        note(g->args[0], Sort::Vertex);
        note(g->args[1], Sort::Vertex);
        break;
      case K::In: {
        // element sort follows the set's case; edge-ness is unknown without binding, default vertex
        Sort set = Sort::VertexSet;
        for (auto it = bound.rbegin(); it != bound.rend(); ++it)
          if (it->first == g->args[1]) {
            set = it->second;
            break;
          }
        note(g->args[0], set == Sort::EdgeSet ? Sort::Edge : Sort::Vertex);
        note(g->args[1], set);
        break;
      }
      case K::Label:
        note(g->args[0], Sort::Vertex);
        break;
      case K::Src:
      case K::Tgt:
        note(g->args[0], Sort::Edge);
        note(g->args[1], Sort::Vertex);
        break;
      case K::Path:
        note(g->args[0], Sort::Vertex);
        note(g->args[1], Sort::VertexSet);
        note(g->args[2], Sort::EdgeSet);
        note(g->args[3], Sort::Vertex);
        break;
      default:
        break;
    }
  };
  rec(f);
  return out;
}

bool is_order_formula(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Src:
    case K::Tgt:
    case K::Path:
    case K::Rho:
    case K::Gamma:
      return false;
    case K::Exists:
      return !is_edge_sorted(f->sort) && is_order_formula(f->left);
    case K::Not:
      return is_order_formula(f->left);
    case K::And:
    case K::Or:
      return is_order_formula(f->left) && is_order_formula(f->right);
    default:
      return true;
  }
}

namespace {

FormulaPtr rewrite(const FormulaPtr& f, const std::function<FormulaPtr(const FormulaPtr&)>& atom_map) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Not:
      return fm::neg(rewrite(f->left, atom_map));
    case K::And:
      return fm::conj(rewrite(f->left, atom_map), rewrite(f->right, atom_map));
    case K::Or:
      return fm::disj(rewrite(f->left, atom_map), rewrite(f->right, atom_map));
    case K::Exists:
      return fm::exists(f->var, f->sort, rewrite(f->left, atom_map));
    default:
      return atom_map(f);
  }
}

std::string pick(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i)
    if (!avoid.count(base + std::to_string(i))) return base + std::to_string(i);
}

}  // namespace

FormulaPtr to_graph_formula(const FormulaPtr& f) {
  return rewrite(f, [](const FormulaPtr& a) {
    if (a->kind != Formula::Kind::Less) return a;
    // X and Y are uppercase, the path endpoints lowercase: no capture possible
    return fm::exists("X", Sort::VertexSet, fm::exists("Y", Sort::EdgeSet, fm::path(a->args[0], "X", "Y", a->args[1])));
  });
}

FormulaPtr path_formula(const std::string& x1, const std::string& X, const std::string& Y, const std::string& x2) {
  using namespace fm;
  const std::set<std::string> avoid{x1, X, Y, x2};
  const std::string e = pick("e", avoid), f = pick("f", avoid), u = pick("u", avoid), w = pick("w", avoid),
                    z = pick("z", avoid);
  auto edge_eq = [&](const std::string& a, const std::string& b) { return equal(a, b, Sort::Edge, pick("EQ", avoid)); };
  auto vert_eq = [&](const std::string& a, const std::string& b) { return equal(a, b, Sort::Vertex, pick("EQ", avoid)); };
  // exactly one Y-edge leaving (out=true) or entering v
  auto one = [&](const std::string& v, bool out) {
    auto at = [&](const std::string& y) { return out ? src(y, v) : tgt(y, v); };
    return exists(e, Sort::Edge,
                  conj(conj(member(e, Y), at(e)), forall(f, Sort::Edge, implies(conj(member(f, Y), at(f)), edge_eq(f, e)))));
  };
  auto none = [&](const std::string& v, bool out) {
    return neg(exists(e, Sort::Edge, conj(member(e, Y), out ? src(e, v) : tgt(e, v))));
  };
  auto body = conj(neg(member(x1, X)), neg(member(x2, X)));
  body = conj(body, conj(one(x1, true), none(x1, false)));
  body = conj(body, conj(one(x2, false), none(x2, true)));
  body = conj(body, forall(z, Sort::Vertex, implies(member(z, X), conj(one(z, false), one(z, true)))));
  auto ends = conj(conj(src(e, u), tgt(e, w)),
                   conj(disj(vert_eq(u, x1), member(u, X)), disj(vert_eq(w, x2), member(w, X))));
  body = conj(body, forall(e, Sort::Edge, implies(member(e, Y), exists(u, Sort::Vertex, exists(w, Sort::Vertex, ends)))));
  return body;
}

FormulaPtr rho_formula() {
  using namespace fm;
  auto other_path = exists("X", Sort::VertexSet, exists("Y", Sort::EdgeSet, conj(path_formula("u", "X", "Y", "w"), neg(member("e", "Y")))));
  return forall("e", Sort::Edge,
                forall("u", Sort::Vertex, forall("w", Sort::Vertex, implies(conj(src("e", "u"), tgt("e", "w")), neg(other_path)))));
}

FormulaPtr gamma_formula(int c) {
  using namespace fm;
  auto xs = [](int i) { return "P" + std::to_string(i); };
  auto ys = [](int i) { return "R" + std::to_string(i); };
  FormulaPtr cover_v = falsity(), cover_e = falsity();
  for (int i = 1; i <= c; ++i) {
    cover_v = i == 1 ? member("z", xs(i)) : disj(cover_v, member("z", xs(i)));
    cover_e = i == 1 ? member("e", ys(i)) : disj(cover_e, member("e", ys(i)));
  }
  FormulaPtr body = conj(forall("z", Sort::Vertex, cover_v), forall("e", Sort::Edge, cover_e));
  for (int i = 1; i <= c; ++i) {
    const std::string X = xs(i), Y = ys(i);
    auto no_edges = neg(exists("e", Sort::Edge, member("e", Y)));
    auto empty = conj(neg(exists("z", Sort::Vertex, member("z", X))), no_edges);
    auto single = conj(exists("u", Sort::Vertex, forall("z", Sort::Vertex, iff(member("z", X), equal("z", "u", Sort::Vertex, "EQ")))), no_edges);
    auto span = forall("z", Sort::Vertex,
                       iff(member("z", X), disj(member("z", "Z"), disj(equal("z", "u", Sort::Vertex, "EQ"), equal("z", "w", Sort::Vertex, "EQ")))));
    auto longer = exists("u", Sort::Vertex,
                         exists("w", Sort::Vertex,
                                exists("Z", Sort::VertexSet, conj(conj(member("u", X), member("w", X)), conj(path_formula("u", "Z", Y, "w"), span)))));
    body = conj(body, disj(empty, disj(single, longer)));
  }
  for (int i = c; i >= 1; --i) body = exists(ys(i), Sort::EdgeSet, body);
  for (int i = c; i >= 1; --i) body = exists(xs(i), Sort::VertexSet, body);
  return body;
}

FormulaPtr expand_builtins(const FormulaPtr& f) {
  return rewrite(f, [](const FormulaPtr& a) -> FormulaPtr {
    switch (a->kind) {
      case Formula::Kind::Path:
        return path_formula(a->args[0], a->args[1], a->args[2], a->args[3]);
      case Formula::Kind::Rho:
        return rho_formula();
      case Formula::Kind::Gamma:
        return gamma_formula(a->paths);
      default:
        return a;
    }
  });
}

}  // namespace slw
