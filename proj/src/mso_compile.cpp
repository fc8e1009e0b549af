#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "frontier.hpp"
#include "slw/mso.hpp"

namespace slw {

namespace {

using detail::Frontier;

constexpr int kMaskBits = 40;
constexpr Letter kMaskAll = (Letter{1} << kMaskBits) - 1;
constexpr std::size_t kMinimizeCap = 20000;

Letter base_of(Letter l) { return l >> kMaskBits; }
Letter mask_of(Letter l) { return l & kMaskAll; }

// Context variables are identified by their position in the binding stack.
struct Var {
  std::string name;
  Sort sort;
};
using Context = std::vector<Var>;

bool first_order(Sort s) { return !is_set(s); }

// Bit layout of the annotation of one letter over a sorted set of variables.
// Vertex-sorted variables take one bit, edge-sorted ones a bit per out-port.
struct Layout {
  std::vector<int> vars;
  std::vector<int> off, width;
  std::vector<char> fo, edge;
  int bits = 0;

  Layout() = default;
  Layout(std::vector<int> vs, const Context& ctx, int c) : vars(std::move(vs)) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (int v : vars) {
      const Sort s = ctx[static_cast<std::size_t>(v)].sort;
      off.push_back(bits);
      width.push_back(is_edge_sorted(s) ? c : 1);
      fo.push_back(first_order(s));
      edge.push_back(is_edge_sorted(s));
      bits += width.back();
    }
    if (bits > kMaskBits)
      throw ResourceError("too many variables in scope: annotation needs " + std::to_string(bits) + " bits");
  }
  int find(int var) const {
    auto it = std::lower_bound(vars.begin(), vars.end(), var);
    return it != vars.end() && *it == var ? static_cast<int>(it - vars.begin()) : -1;
  }
  std::size_t size() const { return vars.size(); }
  std::uint32_t field(Letter mask, std::size_t i) const {
    return static_cast<std::uint32_t>((mask >> off[i]) & ((Letter{1} << width[i]) - 1));
  }
};

struct Annotated {
  Layout layout;
  Nfa nfa;
};

using Fields = std::vector<std::uint32_t>;
using PayloadEmit = std::function<void(const std::string&)>;

// An atom over a few variables. The builder below adds the frontier size,
// the start flag and the exactly-once bookkeeping of first-order variables.
struct AtomSpec {
  std::string init;
  std::function<void(const std::string&, const UnitShape&, const Fields&, const PayloadEmit&)> step;
  std::function<bool(const std::string&)> accept;
};

Annotated build_atom(const Layout& L, const AtomSpec& spec, const SliceAlphabet& sigma, const BuildOptions& opt) {
  std::uint32_t all_fo = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L.fo[i]) all_fo |= 1u << i;
  auto header = [](bool started, int k, std::uint32_t seen) {
    std::string s(6, '\0');
    s[0] = static_cast<char>(started);
    s[1] = static_cast<char>(k);
    for (int b = 0; b < 4; ++b) s[2 + b] = static_cast<char>((seen >> (8 * b)) & 0xff);
    return s;
  };
  auto seen_of = [](const std::string& s) {
    std::uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[2 + b])) << (8 * b);
    return v;
  };
  Nfa n = explore(
      header(false, 0, 0) + spec.init,
      [&](const std::string& st, const Emit& emit) {
        const bool started = st[0] != 0;
        const int k = static_cast<unsigned char>(st[1]);
        const std::uint32_t seen = seen_of(st);
        const std::string payload = st.substr(6);
        Fields fields(L.size(), 0);
        for (int id : sigma.letters_with_in(started ? k : 0)) {
          const UnitShape& u = sigma.shape(id);
          const std::uint32_t born = u.born_mask();
          std::function<void(std::size_t, std::uint32_t, Letter)> pick = [&](std::size_t i, std::uint32_t now, Letter mask) {
            if (i == L.size()) {
              const Letter letter = (static_cast<Letter>(id) << kMaskBits) | mask;
              const std::string head = header(true, u.out, now);
              spec.step(payload, u, fields, [&](const std::string& next) { emit(letter, head + next); });
              return;
            }
            const std::uint32_t range = L.edge[i] ? born : 1u;
            std::uint32_t sub = range;
            while (true) {
              bool ok = true;
              std::uint32_t nxt = now;
              if (L.fo[i] && sub) {
                if ((now >> i) & 1u) ok = false;
                if (__builtin_popcount(sub) > 1) ok = false;
                nxt |= 1u << i;
              }
              if (ok) {
                fields[i] = sub;
                pick(i + 1, nxt, mask | (static_cast<Letter>(sub) << L.off[i]));
              }
              if (sub == 0) break;
              sub = (sub - 1) & range;
            }
          };
          pick(0, seen, 0);
        }
      },
      [&](const std::string& st) { return st[0] != 0 && st[1] == 0 && seen_of(st) == all_fo && spec.accept(st.substr(6)); },
      opt);
  return {L, trim(n)};
}

int low_bit(std::uint32_t m) { return __builtin_ctz(m); }

Annotated product_join(const Annotated& a, const Annotated& b, const Context& ctx, int c, const BuildOptions& opt) {
  std::vector<int> vs = a.layout.vars;
  vs.insert(vs.end(), b.layout.vars.begin(), b.layout.vars.end());
  Layout U(vs, ctx, c);
  std::vector<int> pa(U.size()), pb(U.size());
  for (std::size_t i = 0; i < U.size(); ++i) {
    pa[i] = a.layout.find(U.vars[i]);
    pb[i] = b.layout.find(U.vars[i]);
  }
  auto key = [](int x, int y) {
    std::string s(8, '\0');
    for (int k = 0; k < 4; ++k) {
      s[k] = static_cast<char>((x >> (8 * k)) & 0xff);
      s[4 + k] = static_cast<char>((y >> (8 * k)) & 0xff);
    }
    return s;
  };
  auto unkey = [](const std::string& s, int& x, int& y) {
    x = y = 0;
    for (int k = 0; k < 4; ++k) {
      x |= static_cast<int>(static_cast<unsigned char>(s[k])) << (8 * k);
      y |= static_cast<int>(static_cast<unsigned char>(s[4 + k])) << (8 * k);
    }
  };
  Nfa n = explore(
      key(a.nfa.initial, b.nfa.initial),
      [&](const std::string& st, const Emit& emit) {
        int x, y;
        unkey(st, x, y);
        const auto& oy = b.nfa.out[static_cast<std::size_t>(y)];
        for (auto [la, ta] : a.nfa.out[static_cast<std::size_t>(x)]) {
          const Letter base = base_of(la);
          auto lo = std::lower_bound(oy.begin(), oy.end(), std::make_pair(base << kMaskBits, 0));
          for (auto it = lo; it != oy.end() && base_of(it->first) == base; ++it) {
            const Letter ma = mask_of(la), mb = mask_of(it->first);
            Letter m = 0;
            bool ok = true;
            for (std::size_t i = 0; i < U.size() && ok; ++i) {
              std::uint32_t v;
              if (pa[i] >= 0) {
                v = a.layout.field(ma, static_cast<std::size_t>(pa[i]));
                if (pb[i] >= 0 && b.layout.field(mb, static_cast<std::size_t>(pb[i])) != v) ok = false;
              } else {
                v = b.layout.field(mb, static_cast<std::size_t>(pb[i]));
              }
              m |= static_cast<Letter>(v) << U.off[i];
            }
            if (ok) emit((base << kMaskBits) | m, key(ta, it->second));
          }
        }
      },
      [&](const std::string& st) {
        int x, y;
        unkey(st, x, y);
        return a.nfa.final[static_cast<std::size_t>(x)] && b.nfa.final[static_cast<std::size_t>(y)];
      },
      opt);
  return {U, trim(n)};
}

// Deterministic minimal form when it stays small; the automaton otherwise.
Annotated shrink(Annotated a) {
  a.nfa = trim(a.nfa);
  if (a.nfa.is_deterministic()) {
    a.nfa = trim(minimize(a.nfa));
    return a;
  }
  try {
    BuildOptions small;
    small.max_states = kMinimizeCap;
    Nfa d = trim(minimize(determinize(a.nfa, small)));
    if (d.size() <= a.nfa.size() * 2) a.nfa = std::move(d);
  } catch (const ResourceError&) {
  }
  return a;
}

class Compiler {
 public:
  Compiler(const SliceAlphabet& sigma, const CompileOptions& opt) : sigma_(sigma), c_(sigma.width()) {
    bopt_.max_states = opt.max_states;
    bopt_.what = "formula automaton";
  }

  Annotated run(const FormulaPtr& f, Context& ctx) {
    const std::string key = memo_key(f, ctx);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Annotated r;
    try {
      r = build(f, ctx);
    } catch (const ResourceError& e) {
      const std::string msg = e.what();
      if (msg.find(" while compiling ") != std::string::npos) throw;
      throw ResourceError(msg + " while compiling " + to_string(f));
    }
    memo_.emplace(key, r);
    return r;
  }

 private:
  const SliceAlphabet& sigma_;
  int c_;
  BuildOptions bopt_;
  std::map<std::string, Annotated> memo_;

  static std::string memo_key(const FormulaPtr& f, const Context& ctx) {
    std::string k = to_string(f) + "\n";
    for (auto& v : ctx) k += v.name + ":" + sort_name(v.sort) + ",";
    return k;
  }

  int resolve(const Context& ctx, const std::string& name, Sort want) const {
    for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i)
      if (ctx[static_cast<std::size_t>(i)].name == name) {
        if (ctx[static_cast<std::size_t>(i)].sort != want)
          throw InputError("sort error: '" + name + "' is a " + sort_name(ctx[static_cast<std::size_t>(i)].sort) + " variable, expected " +
                           sort_name(want));
        return i;
      }
    throw InputError("free variable '" + name + "' in a formula to compile");
  }

  Annotated wf(std::vector<int> vars, const Context& ctx) {
    AtomSpec s{"", [](const std::string& p, const UnitShape&, const Fields&, const PayloadEmit& e) { e(p); },
               [](const std::string&) { return true; }};
    return build_atom(Layout(std::move(vars), ctx, c_), s, sigma_, bopt_);
  }

  Annotated atom(const FormulaPtr& f, const Context& ctx) {
    using K = Formula::Kind;
    auto always = [](const std::string&) { return true; };
    switch (f->kind) {
      case K::True:
        return wf({}, ctx);
      case K::False:
        return {Layout({}, ctx, c_), empty_nfa()};
      case K::In: {
        const Sort es = [&] {
          for (int i = static_cast<int>(ctx.size()) - 1; i >= 0; --i)
            if (ctx[static_cast<std::size_t>(i)].name == f->args[0]) return ctx[static_cast<std::size_t>(i)].sort;
          throw InputError("free variable '" + f->args[0] + "' in a formula to compile");
        }();
        const int x = resolve(ctx, f->args[0], es);
        const int X = resolve(ctx, f->args[1], es == Sort::Edge ? Sort::EdgeSet : Sort::VertexSet);
        Layout L({x, X}, ctx, c_);
        const int a = L.find(x), b = L.find(X);
        return build_atom(L,
                          {"",
                           [a, b](const std::string& p, const UnitShape&, const Fields& fl, const PayloadEmit& e) {
                             if ((fl[a] & ~fl[b]) == 0) e(p);
                           },
                           always},
                          sigma_, bopt_);
      }
      case K::Label: {
        const int x = resolve(ctx, f->args[0], Sort::Vertex);
        const int l = sigma_.labels().find(f->label);
        if (l < 0) throw InputError("unknown label '" + f->label + "'");
        Layout L({x}, ctx, c_);
        return build_atom(L,
                          {"",
                           [l](const std::string& p, const UnitShape& u, const Fields& fl, const PayloadEmit& e) {
                             if (!fl[0] || u.label == l) e(p);
                           },
                           always},
                          sigma_, bopt_);
      }
      case K::Src: {
        const int y = resolve(ctx, f->args[0], Sort::Edge);
        const int x = resolve(ctx, f->args[1], Sort::Vertex);
        Layout L({y, x}, ctx, c_);
        const int a = L.find(y), b = L.find(x);
        return build_atom(L,
                          {"",
                           [a, b](const std::string& p, const UnitShape&, const Fields& fl, const PayloadEmit& e) {
                             if (!fl[a] || fl[b]) e(p);
                           },
                           always},
                          sigma_, bopt_);
      }
      case K::Tgt: {
        const int y = resolve(ctx, f->args[0], Sort::Edge);
        const int x = resolve(ctx, f->args[1], Sort::Vertex);
        Layout L({y, x}, ctx, c_);
        const int a = L.find(y), b = L.find(x);
        // payload: 255 edge not born, 254 edge arrived, else its port
        return build_atom(L,
                          {std::string(1, '\xff'),
                           [a, b](const std::string& p, const UnitShape& u, const Fields& fl, const PayloadEmit& e) {
                             int port = static_cast<unsigned char>(p[0]);
                             if (port < 254) {
                               if (u.in_to[port] == UnitShape::kToCenter) {
                                 if (!fl[b]) return;
                                 port = 254;
                               } else {
                                 port = u.in_to[port];
                               }
                             }
                             if (fl[a]) port = low_bit(fl[a]);
                             e(std::string(1, static_cast<char>(port)));
                           },
                           [](const std::string& p) { return static_cast<unsigned char>(p[0]) == 254; }},
                          sigma_, bopt_);
      }
      case K::Path: {
        const int x1 = resolve(ctx, f->args[0], Sort::Vertex);
        const int X = resolve(ctx, f->args[1], Sort::VertexSet);
        const int Y = resolve(ctx, f->args[2], Sort::EdgeSet);
        const int x2 = resolve(ctx, f->args[3], Sort::Vertex);
        Layout L({x1, X, Y, x2}, ctx, c_);
        const int i1 = L.find(x1), iX = L.find(X), iY = L.find(Y), i2 = L.find(x2);
        // payload: phase (0 before the start, 1 on the path, 2 past the end), port
        return build_atom(L,
                          {std::string(2, '\0'),
                           [=](const std::string& p, const UnitShape& u, const Fields& fl, const PayloadEmit& e) {
                             const int phase = p[0];
                             const int port = p[1];
                             const bool inX = fl[iX] != 0, end = fl[i2] != 0;
                             const std::uint32_t y = fl[iY];
                             auto out = [&](int ph, int pt) { e(std::string{static_cast<char>(ph), static_cast<char>(pt)}); };
                             if (phase == 0) {
                               if (fl[i1]) {
                                 if (!inX && !end && __builtin_popcount(y) == 1) out(1, low_bit(y));
                               } else if (!inX && !end && y == 0) {
                                 out(0, 0);
                               }
                             } else if (phase == 1) {
                               if (u.in_to[port] == UnitShape::kToCenter) {
                                 if (end) {
                                   if (!inX && y == 0) out(2, 0);
                                 } else if (inX && __builtin_popcount(y) == 1) {
                                   out(1, low_bit(y));
                                 }
                               } else if (!inX && !end && y == 0) {
                                 out(1, u.in_to[port]);
                               }
                             } else if (!inX && !end && y == 0) {
                               out(2, 0);
                             }
                           },
                           [](const std::string& p) { return p[0] == 2; }},
                          sigma_, bopt_);
      }
      case K::Rho: {
        std::string init;
        Frontier{}.encode(init);
        return build_atom(Layout({}, ctx, c_),
                          {init,
                           [](const std::string& p, const UnitShape& u, const Fields&, const PayloadEmit& e) {
                             std::size_t pos = 0;
                             auto fs = detail::step(Frontier::decode(p, pos), u);
                             if (!fs.hasse_ok()) return;
                             std::string next;
                             fs.next.encode(next);
                             e(next);
                           },
                           always},
                          sigma_, bopt_);
      }
      case K::Gamma: {
        if (f->paths < 0) throw InputError("gamma needs a nonnegative number of paths");
        if (f->paths > 64) throw ResourceError("gamma(" + std::to_string(f->paths) + ") has too many paths");
        return build_atom(Layout({}, ctx, c_),
                          {std::string(static_cast<std::size_t>(f->paths), static_cast<char>(detail::kUnstarted)),
                           [](const std::string& p, const UnitShape& u, const Fields&, const PayloadEmit& e) {
                             std::vector<std::uint8_t> slots(p.begin(), p.end());
                             std::set<std::vector<std::uint8_t>> seen;
                             detail::slot_moves(slots, u, [&](const std::vector<std::uint8_t>& n) {
                               if (seen.insert(n).second) e(std::string(n.begin(), n.end()));
                             });
                           },
                           always},
                          sigma_, bopt_);
      }
      default:
        throw InputError("order atom '" + to_string(f) + "' cannot be compiled directly");
    }
  }

  Annotated lift(const Annotated& a, const Layout& target, const Context& ctx) {
    std::vector<int> extra;
    for (int v : target.vars)
      if (a.layout.find(v) < 0) extra.push_back(v);
    if (extra.empty()) return a;
    return product_join(a, wf(extra, ctx), ctx, c_, bopt_);
  }

  Annotated build(const FormulaPtr& f, Context& ctx) {
    using K = Formula::Kind;
    switch (f->kind) {
      case K::And: {
        auto a = run(f->left, ctx);
        if (is_empty(a.nfa)) return a;
        auto b = run(f->right, ctx);
        return shrink(product_join(a, b, ctx, c_, bopt_));
      }
      case K::Or: {
        auto a = run(f->left, ctx);
        auto b = run(f->right, ctx);
        std::vector<int> vs = a.layout.vars;
        vs.insert(vs.end(), b.layout.vars.begin(), b.layout.vars.end());
        Layout U(vs, ctx, c_);
        auto la = lift(a, U, ctx), lb = lift(b, U, ctx);
        return shrink({U, disjoint_union(la.nfa, lb.nfa)});
      }
      case K::Not: {
        auto a = run(f->left, ctx);
        auto universe = wf(a.layout.vars, ctx);
        Nfa d = determinize(a.nfa, bopt_);
        return shrink({a.layout, complement_within(d, universe.nfa, bopt_)});
      }
      case K::Exists: {
        const int v = static_cast<int>(ctx.size());
        ctx.push_back({f->var, f->sort});
        Annotated body;
        try {
          body = run(f->left, ctx);
          if (body.layout.find(v) < 0 && first_order(f->sort)) body = product_join(body, wf({v}, ctx), ctx, c_, bopt_);
        } catch (...) {
          ctx.pop_back();
          throw;
        }
        ctx.pop_back();
        const int i = body.layout.find(v);
        if (i < 0) return body;
        std::vector<int> rest;
        for (int w : body.layout.vars)
          if (w != v) rest.push_back(w);
        // ctx still covers every remaining variable
        Layout L(rest, ctx, c_);
        const int off = body.layout.off[static_cast<std::size_t>(i)], w = body.layout.width[static_cast<std::size_t>(i)];
        Nfa n = map_letters(body.nfa, [off, w](Letter l) {
          const Letter m = mask_of(l);
          const Letter low = m & ((Letter{1} << off) - 1);
          const Letter high = m >> (off + w);
          return (base_of(l) << kMaskBits) | low | (high << off);
        });
        return shrink({L, std::move(n)});
      }
      default:
        return atom(f, ctx);
    }
  }
};

bool mentions_order(const FormulaPtr& f) {
  if (!f) return false;
  return f->kind == Formula::Kind::Less || mentions_order(f->left) || mentions_order(f->right);
}

}  // namespace

SliceAutomaton compile(const FormulaPtr& f, std::shared_ptr<const SliceAlphabet> alphabet, const CompileOptions& opt) {
  auto free = free_variables(f);
  if (!free.empty()) throw InputError("formula has free variable '" + free.front().first + "'");
  const FormulaPtr g = mentions_order(f) ? to_graph_formula(f) : f;
  Compiler comp(*alphabet, opt);
  Context ctx;
  Annotated a = comp.run(g, ctx);
  Nfa n = trim(map_letters(a.nfa, [](Letter l) { return base_of(l); }));
  return SliceAutomaton(std::move(alphabet), std::move(n));
}

SliceAutomaton compile(const FormulaPtr& f, int c, const LabelSet& labels, const CompileOptions& opt) {
  return compile(f, make_alphabet(c, labels), opt);
}

SliceAutomaton po_automaton(const FormulaPtr& f, std::shared_ptr<const SliceAlphabet> alphabet, const CompileOptions& opt) {
  if (!is_order_formula(f)) throw InputError("not an order formula: edge variables and graph atoms are not allowed");
  BuildOptions b;
  b.max_states = opt.max_states;
  auto a = compile(to_graph_formula(f), alphabet, opt);
  auto r = intersect(a, universal(alphabet, b), b);
  return SliceAutomaton(alphabet, trim(r.nfa()));
}

SliceAutomaton po_automaton(const FormulaPtr& f, int c, const LabelSet& labels, const CompileOptions& opt) {
  return po_automaton(f, make_alphabet(c, labels), opt);
}

}  // namespace slw
