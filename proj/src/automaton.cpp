#include "slw/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "frontier.hpp"
#include "slw/canon.hpp"

namespace slw {

using detail::Frontier;

SliceAutomaton::SliceAutomaton(std::shared_ptr<const SliceAlphabet> alphabet, Nfa nfa)
    : alphabet_(std::move(alphabet)), nfa_(std::move(nfa)), cache_(std::make_shared<Cache>()) {
  if (!alphabet_) throw Error("automaton without alphabet");
  if (nfa_.size() == 0) nfa_ = empty_nfa();
}

const Nfa& SliceAutomaton::deterministic(const BuildOptions& opt) const {
  std::lock_guard<std::mutex> lock(cache_->mu);
  if (!cache_->dfa) cache_->dfa = std::make_shared<const Nfa>(nfa_.is_deterministic() ? nfa_ : determinize(nfa_, opt));
  return *cache_->dfa;
}

std::shared_ptr<const SliceAlphabet> make_alphabet(int c, const LabelSet& labels) {
  return std::make_shared<const SliceAlphabet>(c, labels);
}

namespace {

void require_same(const SliceAutomaton& a, const SliceAutomaton& b, const char* op) {
  if (!a.alphabet().same_as(b.alphabet()))
    throw InputError(std::string(op) + ": alphabet mismatch (c=" + std::to_string(a.width()) + " over {" +
                     a.labels().to_string() + "} vs c=" + std::to_string(b.width()) + " over {" + b.labels().to_string() +
                     "})");
}

std::vector<Letter> to_letters(const std::vector<int>& w) { return {w.begin(), w.end()}; }
std::vector<int> to_ids(const std::vector<Letter>& w) {
  std::vector<int> r;
  for (auto l : w) r.push_back(static_cast<int>(l));
  return r;
}

}  // namespace

std::vector<ValidationIssue> validate(const SliceAutomaton& a) {
  std::vector<ValidationIssue> issues;
  const auto& n = a.nfa();
  const auto& sigma = a.alphabet();
  for (auto [l, t] : n.out[n.initial]) {
    if (sigma.shape(static_cast<int>(l)).in != 0)
      issues.push_back({1, "transition " + std::to_string(n.initial) + " -" + sigma.slice(static_cast<int>(l)).to_string(a.labels()) +
                               "-> " + std::to_string(t) + " leaves the initial state with a non-initial slice"});
  }
  std::vector<std::vector<std::pair<int, Letter>>> incoming(n.size());
  for (std::size_t s = 0; s < n.size(); ++s)
    for (auto [l, t] : n.out[s]) {
      incoming[t].emplace_back(static_cast<int>(s), l);
      if (n.final[t] && sigma.shape(static_cast<int>(l)).out != 0)
        issues.push_back({2, "transition " + std::to_string(s) + " -" + sigma.slice(static_cast<int>(l)).to_string(a.labels()) +
                                 "-> " + std::to_string(t) + " enters a final state with a non-final slice"});
    }
  for (std::size_t q = 0; q < n.size(); ++q)
    for (auto [p, l1] : incoming[q])
      for (auto [l2, r] : n.out[q]) {
        const auto& s1 = sigma.slice(static_cast<int>(l1));
        const auto& s2 = sigma.slice(static_cast<int>(l2));
        if (!can_glue(s1, s2))
          issues.push_back({3, "transitions " + std::to_string(p) + " -" + s1.to_string(a.labels()) + "-> " + std::to_string(q) +
                                   " and " + std::to_string(q) + " -" + s2.to_string(a.labels()) + "-> " + std::to_string(r) +
                                   " carry slices that cannot be glued"});
      }
  return issues;
}

bool accepts_word(const SliceAutomaton& a, const std::vector<int>& letters) {
  for (int l : letters)
    if (l < 0 || static_cast<std::size_t>(l) >= a.alphabet().size()) return false;
  return accepts(a.nfa(), to_letters(letters));
}

bool accepts(const SliceAutomaton& a, const UnitDecomposition& u) {
  std::vector<int> w;
  for (const auto& s : u.slices()) {
    const int id = a.alphabet().index_of(s);
    if (id < 0) return false;
    w.push_back(id);
  }
  return accepts_word(a, w);
}

SliceAutomaton well_formed(std::shared_ptr<const SliceAlphabet> alphabet) {
  const int c = alphabet->width();
  Nfa n;
  n.initial = n.add_state(false);
  std::vector<int> f;
  for (int k = 0; k <= c; ++k) f.push_back(n.add_state(k == 0));
  for (std::size_t id = 0; id < alphabet->size(); ++id) {
    const auto& u = alphabet->shape(static_cast<int>(id));
    if (u.in == 0) n.add(n.initial, id, f[u.out]);
    n.add(f[u.in], id, f[u.out]);
  }
  n.normalize();
  return SliceAutomaton(std::move(alphabet), std::move(n));
}

SliceAutomaton empty_automaton(std::shared_ptr<const SliceAlphabet> alphabet) {
  return SliceAutomaton(std::move(alphabet), empty_nfa());
}

SliceAutomaton from_decompositions(std::shared_ptr<const SliceAlphabet> alphabet, const std::vector<UnitDecomposition>& words) {
  Nfa n;
  n.initial = n.add_state(false);
  for (const auto& u : words) {
    int s = n.initial;
    for (const auto& sl : u.slices()) {
      const int id = alphabet->index_of(sl);
      if (id < 0) throw InputError("decomposition letter " + sl.to_string(alphabet->labels()) + " is outside the alphabet");
      int next = -1;
      for (auto [l, t] : n.out[s])
        if (l == static_cast<Letter>(id)) next = t;
      if (next < 0) {
        next = n.add_state(false);
        n.add(s, id, next);
      }
      s = next;
    }
    n.final[s] = 1;
  }
  n.normalize();
  return SliceAutomaton(std::move(alphabet), std::move(n));
}

SliceAutomaton intersect(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt) {
  require_same(a, b, "intersect");
  return SliceAutomaton(a.alphabet_ptr(), product(a.nfa(), b.nfa(), opt));
}

SliceAutomaton unite(const SliceAutomaton& a, const SliceAutomaton& b) {
  require_same(a, b, "union");
  return SliceAutomaton(a.alphabet_ptr(), disjoint_union(a.nfa(), b.nfa()));
}

SliceAutomaton difference(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt) {
  require_same(a, b, "difference");
  return SliceAutomaton(a.alphabet_ptr(), slw::difference(a.nfa(), b.deterministic(opt), opt));
}

SliceAutomaton complement(const SliceAutomaton& a, const BuildOptions& opt) {
  const auto wf = well_formed(a.alphabet_ptr());
  return SliceAutomaton(a.alphabet_ptr(), minimize(complement_within(a.deterministic(opt), wf.nfa(), opt)));
}

SliceAutomaton trimmed(const SliceAutomaton& a) { return SliceAutomaton(a.alphabet_ptr(), trim(a.nfa())); }

bool is_empty(const SliceAutomaton& a) { return slw::is_empty(a.nfa()); }

std::optional<std::vector<int>> inclusion_witness(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt) {
  require_same(a, b, "includes");
  auto w = inclusion_counterexample(a.nfa(), b.deterministic(opt), opt);
  if (!w) return std::nullopt;
  return to_ids(*w);
}

bool includes(const SliceAutomaton& a, const SliceAutomaton& b, const BuildOptions& opt) {
  return !inclusion_witness(a, b, opt).has_value();
}

std::optional<std::vector<int>> shortest_member(const SliceAutomaton& a) {
  auto w = shortest_word(a.nfa());
  if (!w) return std::nullopt;
  return to_ids(*w);
}

UnitDecomposition decomposition_of(const SliceAlphabet& alphabet, const std::vector<int>& word) {
  std::vector<Slice> s;
  for (int id : word) s.push_back(alphabet.slice(id));
  return UnitDecomposition(std::move(s));
}

LabeledDag dag_of(const SliceAlphabet& alphabet, const std::vector<int>& word) {
  LabeledDag h;
  std::vector<int> frontier;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const auto& u = alphabet.shape(word[i]);
    const int v = static_cast<int>(i);
    h.labels.push_back(u.label);
    for (int p = 0; p < u.in; ++p)
      if (u.in_to[p] == UnitShape::kToCenter) h.edges.emplace_back(frontier[p], v);
    std::vector<int> next(static_cast<std::size_t>(u.out));
    for (int q = 0; q < u.out; ++q) next[q] = u.out_from[q] == UnitShape::kToCenter ? v : frontier[u.out_from[q]];
    frontier = std::move(next);
  }
  return h;
}

// ---------------------------------------------------------------------------
// universal automaton
// ---------------------------------------------------------------------------

SliceAutomaton universal(int c, const LabelSet& labels, const BuildOptions& opt) {
  return universal(make_alphabet(c, labels), opt);
}

SliceAutomaton universal(std::shared_ptr<const SliceAlphabet> alphabet, const BuildOptions& opt_in) {
  const int c = alphabet->width();
  BuildOptions opt = opt_in;
  if (opt.what == "automaton") opt.what = "universal automaton";
  // state: frontier, then c slot bytes
  auto split = [c](const std::string& s, Frontier& f, std::vector<std::uint8_t>& slots) {
    std::size_t pos = 0;
    f = Frontier::decode(s, pos);
    slots.assign(s.begin() + static_cast<std::ptrdiff_t>(pos), s.begin() + static_cast<std::ptrdiff_t>(pos) + c);
  };
  std::string init;
  Frontier{}.encode(init);
  init.append(static_cast<std::size_t>(c), static_cast<char>(detail::kUnstarted));
  const SliceAlphabet& sigma = *alphabet;
  Nfa n = explore(
      init,
      [&](const std::string& st, const Emit& emit) {
        Frontier f;
        std::vector<std::uint8_t> slots;
        split(st, f, slots);
        for (int id : sigma.letters_with_in(f.ports())) {
          const auto& u = sigma.shape(id);
          auto fs = detail::step(f, u);
          if (!fs.hasse_ok()) continue;
          std::string head;
          fs.next.encode(head);
          std::set<std::vector<std::uint8_t>> seen;
          detail::slot_moves(slots, u, [&](const std::vector<std::uint8_t>& next) {
            if (!seen.insert(next).second) return;
            emit(static_cast<Letter>(id), head + std::string(next.begin(), next.end()));
          });
        }
      },
      [&](const std::string& st) {
        Frontier f;
        std::vector<std::uint8_t> slots;
        split(st, f, slots);
        return f.ports() == 0 && !detail::slots_fresh(slots);
      },
      opt);
  return SliceAutomaton(std::move(alphabet), trim(n));
}

// ---------------------------------------------------------------------------
// transitive reduction of slice languages
// ---------------------------------------------------------------------------

namespace {

int rank_in(std::uint8_t mask, int p) { return __builtin_popcount(static_cast<unsigned>(mask) & ((1u << p) - 1u)); }

}  // namespace

SliceAutomaton transitive_reduce_automaton(const SliceAutomaton& a, const BuildOptions& opt_in) {
  BuildOptions opt = opt_in;
  if (opt.what == "automaton") opt.what = "transitive reduction";
  const SliceAlphabet& sigma = a.alphabet();
  const Nfa& src = a.nfa();
  // state: int a-state (4 bytes), ghost mask, frontier
  auto pack = [](int q, std::uint8_t ghost, const Frontier& f) {
    std::string s(4, '\0');
    std::copy_n(reinterpret_cast<const char*>(&q), 4, s.data());
    s.push_back(static_cast<char>(ghost));
    f.encode(s);
    return s;
  };
  auto unpack = [](const std::string& s, int& q, std::uint8_t& ghost, Frontier& f) {
    std::copy_n(s.data(), 4, reinterpret_cast<char*>(&q));
    ghost = static_cast<std::uint8_t>(s[4]);
    std::size_t pos = 5;
    f = Frontier::decode(s, pos);
  };
  Nfa n = explore(
      pack(src.initial, 0, Frontier{}),
      [&](const std::string& st, const Emit& emit) {
        int q;
        std::uint8_t ghost;
        Frontier f;
        unpack(st, q, ghost, f);
        for (auto [l, t] : src.out[q]) {
          const auto& u = sigma.shape(static_cast<int>(l));
          if (u.in != f.ports()) continue;
          auto fs = detail::step(f, u);
          // every closed edge: transitive ones ghost, one real edge per remaining source
          bool ok = true;
          std::uint8_t real_classes = 0;
          for (int p = 0; p < u.in && ok; ++p) {
            if (!((fs.closed >> p) & 1u)) continue;
            const bool real = !((ghost >> p) & 1u);
            if ((fs.transitive >> p) & 1u) {
              if (real) ok = false;
              continue;
            }
            if (real) {
              const std::uint8_t bit = static_cast<std::uint8_t>(1u << f.cls[p]);
              if (real_classes & bit) ok = false;
              real_classes |= bit;
            }
          }
          for (int p = 0; p < u.in && ok; ++p)
            if (((fs.closed >> p) & 1u) && !((fs.transitive >> p) & 1u) && !((real_classes >> f.cls[p]) & 1u)) ok = false;
          if (!ok) continue;
          const std::uint8_t born = u.born_mask();
          const std::uint8_t carried_ghost = detail::forward_mask(u, ghost);
          for (unsigned g = 0; g < (1u << u.out); ++g) {
            if (g & ~static_cast<unsigned>(born)) continue;
            const std::uint8_t next_ghost = static_cast<std::uint8_t>(carried_ghost | g);
            const std::uint8_t real_in = static_cast<std::uint8_t>(~ghost & ((1u << u.in) - 1u));
            const std::uint8_t real_out = static_cast<std::uint8_t>(~next_ghost & ((1u << u.out) - 1u));
            UnitShape w;
            w.label = u.label;
            w.in = __builtin_popcount(real_in);
            w.out = __builtin_popcount(real_out);
            for (int p = 0; p < u.in; ++p) {
              if (!((real_in >> p) & 1u)) continue;
              const int np = rank_in(real_in, p);
              w.in_to[np] = u.in_to[p] == UnitShape::kToCenter ? UnitShape::kToCenter
                                                                : static_cast<std::int8_t>(rank_in(real_out, u.in_to[p]));
            }
            for (int qo = 0; qo < u.out; ++qo) {
              if (!((real_out >> qo) & 1u)) continue;
              const int nq = rank_in(real_out, qo);
              w.out_from[nq] = u.out_from[qo] == UnitShape::kToCenter ? UnitShape::kToCenter
                                                                      : static_cast<std::int8_t>(rank_in(real_in, u.out_from[qo]));
            }
            const int id = sigma.index_of(w);
            if (id < 0) throw Error("transitive reduction produced a letter outside the alphabet");
            emit(static_cast<Letter>(id), pack(t, next_ghost, fs.next));
          }
        }
      },
      [&](const std::string& st) {
        int q;
        std::uint8_t ghost;
        Frontier f;
        unpack(st, q, ghost, f);
        return src.final[q] && f.ports() == 0;
      },
      opt);
  return SliceAutomaton(a.alphabet_ptr(), trim(n));
}

std::optional<std::vector<int>> non_hasse_witness(const SliceAutomaton& a, const BuildOptions& opt) {
  const SliceAlphabet& sigma = a.alphabet();
  const Nfa& src = a.nfa();
  auto pack = [](int q, bool bad, const Frontier& f) {
    std::string s(4, '\0');
    std::copy_n(reinterpret_cast<const char*>(&q), 4, s.data());
    s.push_back(bad ? 1 : 0);
    f.encode(s);
    return s;
  };
  auto unpack = [](const std::string& s, int& q, bool& bad, Frontier& f) {
    std::copy_n(s.data(), 4, reinterpret_cast<char*>(&q));
    bad = s[4] != 0;
    std::size_t pos = 5;
    f = Frontier::decode(s, pos);
  };
  Nfa n = explore(
      pack(src.initial, false, Frontier{}),
      [&](const std::string& st, const Emit& emit) {
        int q;
        bool bad;
        Frontier f;
        unpack(st, q, bad, f);
        for (auto [l, t] : src.out[q]) {
          const auto& u = sigma.shape(static_cast<int>(l));
          if (u.in != f.ports()) continue;
          auto fs = detail::step(f, u);
          emit(l, pack(t, bad || !fs.hasse_ok(), fs.next));
        }
      },
      [&](const std::string& st) {
        int q;
        bool bad;
        Frontier f;
        unpack(st, q, bad, f);
        return src.final[q] && bad && f.ports() == 0;
      },
      opt);
  auto w = shortest_word(n);
  if (!w) return std::nullopt;
  return to_ids(*w);
}

// ---------------------------------------------------------------------------
// member enumeration
// ---------------------------------------------------------------------------

namespace {

// DFS over accepted words of length <= n; prefixes with identical positional
// DAG, frontier and automaton subset are explored once.
void for_each_accepted(const SliceAutomaton& a, int n, const Caps& caps,
                       const std::function<void(const LabeledDag&, const std::vector<int>&)>& fn) {
  if (n < 0) return;
  if (static_cast<std::size_t>(n) > caps.max_enum_vertices)
    throw ResourceError("member enumeration up to " + std::to_string(n) + " vertices exceeds the cap of " +
                        std::to_string(caps.max_enum_vertices));
  const Nfa& nfa = a.nfa();
  const SliceAlphabet& sigma = a.alphabet();
  std::unordered_set<std::string> seen;
  LabeledDag h;
  std::vector<int> frontier, word;
  std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& states) {
    std::string key;
    for (int s : states) key += std::to_string(s) + ',';
    key += '|';
    for (int l : h.labels) key += std::to_string(l) + ',';
    key += '|';
    for (auto [x, y] : h.edges) key += std::to_string(x) + '>' + std::to_string(y) + ',';
    key += '|';
    for (int x : frontier) key += std::to_string(x) + ',';
    if (!seen.insert(key).second) return;
    if (!word.empty() && frontier.empty())
      for (int s : states)
        if (nfa.final[s]) {
          fn(h, word);
          break;
        }
    if (static_cast<int>(word.size()) == n) return;
    std::map<Letter, std::vector<int>> moves;
    for (int s : states)
      for (auto [l, t] : nfa.out[s]) moves[l].push_back(t);
    for (auto& [l, next] : moves) {
      const auto& u = sigma.shape(static_cast<int>(l));
      if (u.in != static_cast<int>(frontier.size())) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      const LabeledDag saved_h = h;
      const std::vector<int> saved_f = frontier;
      const int v = h.size();
      h.labels.push_back(u.label);
      for (int p = 0; p < u.in; ++p)
        if (u.in_to[p] == UnitShape::kToCenter) h.edges.emplace_back(frontier[p], v);
      std::vector<int> nf(static_cast<std::size_t>(u.out));
      for (int q = 0; q < u.out; ++q) nf[q] = u.out_from[q] == UnitShape::kToCenter ? v : saved_f[u.out_from[q]];
      frontier = std::move(nf);
      word.push_back(static_cast<int>(l));
      rec(next);
      word.pop_back();
      h = saved_h;
      frontier = saved_f;
    }
  };
  rec({nfa.initial});
}

}  // namespace

std::set<std::string> po_members_up_to(const SliceAutomaton& a, int n, const Caps& caps) {
  std::set<std::string> out;
  for_each_accepted(a, n, caps, [&](const LabeledDag& h, const std::vector<int>&) { out.insert(canonical_key(transitive_closure(h))); });
  return out;
}

std::set<std::string> dag_members_up_to(const SliceAutomaton& a, int n, const Caps& caps) {
  std::set<std::string> out;
  for_each_accepted(a, n, caps, [&](const LabeledDag& h, const std::vector<int>&) { out.insert(canonical_key(h)); });
  return out;
}

std::optional<std::vector<int>> saturation_gap(const SliceAutomaton& a, int n, const Caps& caps) {
  std::set<std::string> done;
  std::optional<std::vector<int>> gap;
  for_each_accepted(a, n, caps, [&](const LabeledDag& h, const std::vector<int>&) {
    if (gap || !done.insert(canonical_key(h)).second) return;
    for_each_decomposition(h, a.alphabet(), [&](const std::vector<int>& w) {
      if (!gap && !accepts_word(a, w)) gap = w;
    });
  });
  return gap;
}

SliceAutomaton c_complement(const SliceAutomaton& a, const BuildOptions& opt, int check_vertices) {
  if (auto w = non_hasse_witness(a, opt))
    throw InputError("c_complement: operand accepts a DAG that is not transitively reduced: " +
                     dag_to_text(dag_of(a.alphabet(), *w), a.labels()));
  Caps caps;
  caps.max_enum_vertices = static_cast<std::size_t>(std::max(check_vertices, 0));
  if (auto w = saturation_gap(a, check_vertices, caps))
    throw InputError("c_complement: operand is not saturated; missing decomposition of " +
                     dag_to_text(dag_of(a.alphabet(), *w), a.labels()));
  return difference(universal(a.alphabet_ptr(), opt), a, opt);
}

// ---------------------------------------------------------------------------
// text format
// ---------------------------------------------------------------------------

std::string to_text(const SliceAutomaton& a) {
  std::ostringstream os;
  os << "slice-automaton c=" << a.width() << " alphabet=" << a.labels().to_string() << '\n';
  const Nfa& n = a.nfa();
  for (std::size_t s = 0; s < n.size(); ++s) {
    os << "state " << s;
    if (static_cast<int>(s) == n.initial) os << " initial";
    if (n.final[s]) os << " final";
    os << '\n';
  }
  for (std::size_t s = 0; s < n.size(); ++s)
    for (auto [l, t] : n.out[s])
      os << "trans " << s << ' ' << a.alphabet().slice(static_cast<int>(l)).to_string(a.labels()) << ' ' << t << '\n';
  return os.str();
}

SliceAutomaton automaton_from_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::shared_ptr<const SliceAlphabet> sigma;
  Nfa n;
  std::map<long, int> ids;
  int initial = -1;
  auto err = [&](const std::string& m) { return InputError("line " + std::to_string(lineno) + ": " + m); };
  auto state = [&](const std::string& tok) {
    long v;
    try {
      std::size_t used = 0;
      v = std::stol(tok, &used);
      if (used != tok.size() || v < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw err("bad state id '" + tok + "'");
    }
    auto [it, fresh] = ids.emplace(v, static_cast<int>(n.size()));
    if (fresh) n.add_state(false);
    return it->second;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw == "slice-automaton") {
      std::string c_tok, a_tok;
      if (!(ls >> c_tok >> a_tok) || c_tok.rfind("c=", 0) != 0 || a_tok.rfind("alphabet=", 0) != 0)
        throw err("expected 'slice-automaton c=<c> alphabet=<labels>'");
      try {
        sigma = make_alphabet(std::stoi(c_tok.substr(2)), LabelSet::parse(a_tok.substr(9)));
      } catch (const InputError& e) {
        throw err(e.what());
      } catch (const std::exception&) {
        throw err("bad width '" + c_tok + "'");
      }
      continue;
    }
    if (!sigma) throw err("missing 'slice-automaton' header");
    if (kw == "state") {
      std::string id, flag;
      if (!(ls >> id)) throw err("expected 'state <id>'");
      const int s = state(id);
      while (ls >> flag) {
        if (flag == "initial") {
          if (initial >= 0 && initial != s) throw err("second initial state");
          initial = s;
        } else if (flag == "final") {
          n.final[s] = 1;
        } else {
          throw err("unknown state flag '" + flag + "'");
        }
      }
    } else if (kw == "trans") {
      std::string rest;
      std::getline(ls, rest);
      const auto open = rest.find("slice{");
      const auto close = rest.find('}', open == std::string::npos ? 0 : open);
      if (open == std::string::npos || close == std::string::npos) throw err("expected 'trans <src> <slice literal> <dst>'");
      std::istringstream head(rest.substr(0, open)), tail(rest.substr(close + 1));
      std::string src, dst, extra;
      if (!(head >> src) || !(tail >> dst) || (tail >> extra)) throw err("expected 'trans <src> <slice literal> <dst>'");
      int id;
      try {
        id = sigma->index_of(Slice::parse(rest.substr(open, close - open + 1), sigma->labels()));
      } catch (const InputError& e) {
        throw err(e.what());
      }
      if (id < 0) throw err("slice is not a unit slice of width <= " + std::to_string(sigma->width()));
      const int s = state(src);
      const int t = state(dst);
      n.add(s, static_cast<Letter>(id), t);
    } else {
      throw err("unknown keyword '" + kw + "'");
    }
  }
  if (!sigma) throw InputError("empty automaton file");
  if (initial < 0) throw InputError("no initial state");
  n.initial = initial;
  n.normalize();
  SliceAutomaton a(sigma, std::move(n));
  auto issues = validate(a);
  if (!issues.empty()) throw InputError("automaton violates condition " + std::to_string(issues[0].condition) + ": " + issues[0].message);
  return a;
}

}  // namespace slw
