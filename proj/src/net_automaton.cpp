#include <algorithm>
#include <functional>
#include <set>

#include "frontier.hpp"
#include "slw/ptnet.hpp"

namespace slw {

namespace {

using detail::Frontier;

// A class of interchangeable tokens. `down` holds the open ports whose source
// lies at or above the producing event, `direct` the ports born at it.
struct Token {
  std::uint8_t place;
  std::uint8_t initial;
  std::uint8_t down;
  std::uint8_t direct;
  int count;
  auto key() const { return std::tie(place, initial, down, direct); }
};

void normalize(std::vector<Token>& ts) {
  std::sort(ts.begin(), ts.end(), [](const Token& a, const Token& b) { return a.key() < b.key(); });
  std::vector<Token> out;
  for (const auto& t : ts) {
    if (t.count == 0) continue;
    if (!out.empty() && out.back().key() == t.key()) out.back().count += t.count;
    else out.push_back(t);
  }
  ts = std::move(out);
}

struct State {
  Frontier frontier;
  std::vector<std::uint8_t> slots;
  std::vector<Token> tokens;

  std::string encode() const {
    std::string s;
    frontier.encode(s);
    s.append(slots.begin(), slots.end());
    for (const auto& t : tokens) {
      s.push_back(static_cast<char>(t.place));
      s.push_back(static_cast<char>(t.initial));
      s.push_back(static_cast<char>(t.down));
      s.push_back(static_cast<char>(t.direct));
      s.push_back(static_cast<char>(t.count));
    }
    return s;
  }
  static State decode(const std::string& s, int c) {
    State st;
    std::size_t pos = 0;
    st.frontier = Frontier::decode(s, pos);
    st.slots.assign(s.begin() + static_cast<std::ptrdiff_t>(pos), s.begin() + static_cast<std::ptrdiff_t>(pos) + c);
    pos += static_cast<std::size_t>(c);
    for (; pos + 5 <= s.size(); pos += 5)
      st.tokens.push_back({static_cast<std::uint8_t>(s[pos]), static_cast<std::uint8_t>(s[pos + 1]), static_cast<std::uint8_t>(s[pos + 2]),
                           static_cast<std::uint8_t>(s[pos + 3]), static_cast<unsigned char>(s[pos + 4])});
    return st;
  }
};

}  // namespace

SliceAutomaton net_automaton(const PtNet& n, std::shared_ptr<const SliceAlphabet> alphabet, Semantics sem, const BuildOptions& opt_in) {
  if (!(alphabet->labels() == n.transitions()))
    throw InputError("alphabet labels " + alphabet->labels().to_string() + " differ from the net transitions " + n.transitions().to_string());
  if (n.place_count() > 250) throw ResourceError("too many place instances");
  if (n.bound() > 250) throw ResourceError("bound too large");
  const int c = alphabet->width();
  const int np = static_cast<int>(n.place_count());
  const bool causal = sem == Semantics::Causal;
  BuildOptions opt = opt_in;
  if (opt.what == "automaton") opt.what = std::string("net automaton (") + semantics_name(sem) + ")";

  State init;
  init.slots.assign(static_cast<std::size_t>(c), detail::kUnstarted);
  for (int q = 0; q < np; ++q) {
    const int k = n.places()[static_cast<std::size_t>(q)].initial;
    if (k > n.bound()) return empty_automaton(alphabet);
    if (k > 0) init.tokens.push_back({static_cast<std::uint8_t>(q), 1, 0, 0, k});
  }
  normalize(init.tokens);
  const SliceAlphabet& sigma = *alphabet;

  Nfa a = explore(
      init.encode(),
      [&](const std::string& key, const Emit& emit) {
        const State st = State::decode(key, c);
        for (int id : sigma.letters_with_in(st.frontier.ports())) {
          const UnitShape& u = sigma.shape(id);
          const auto t = static_cast<std::size_t>(u.label);
          const auto fs = detail::step(st.frontier, u);
          if (!fs.hasse_ok()) continue;
          std::set<std::vector<std::uint8_t>> moves;
          detail::slot_moves(st.slots, u, [&](const std::vector<std::uint8_t>& m) { moves.insert(m); });
          if (moves.empty()) continue;
          const std::uint8_t closed = fs.closed;
          const std::uint8_t born = u.born_mask();
          std::string head;
          fs.next.encode(head);

          // tokens of each class taken by this event
          std::vector<int> take(st.tokens.size(), 0);
          std::set<std::string> done;
          auto finish = [&]() {
            std::uint8_t realized = 0;
            std::vector<Token> next;
            std::vector<int> per_place(static_cast<std::size_t>(np), 0);
            for (std::size_t i = 0; i < st.tokens.size(); ++i) {
              const Token& tk = st.tokens[i];
              if (take[i] > 0) realized |= tk.direct;
              const int left = tk.count - take[i];
              if (left == 0) continue;
              Token r = tk;
              r.count = left;
              r.down = static_cast<std::uint8_t>(detail::forward_mask(u, tk.down) | ((tk.down & closed) ? born : 0));
              r.direct = detail::forward_mask(u, tk.direct);
              per_place[tk.place] += left;
              next.push_back(r);
            }
            if (causal && (closed & ~realized)) return;
            for (int q = 0; q < np; ++q) {
              const int put = n.places()[static_cast<std::size_t>(q)].puts[t];
              if (put == 0) continue;
              per_place[static_cast<std::size_t>(q)] += put;
              next.push_back({static_cast<std::uint8_t>(q), 0, born, static_cast<std::uint8_t>(causal ? born : 0), put});
            }
            for (int q = 0; q < np; ++q)
              if (per_place[static_cast<std::size_t>(q)] > n.bound()) return;
            normalize(next);
            State ns;
            ns.tokens = std::move(next);
            std::string tail;
            for (const auto& tk : ns.tokens) {
              tail.push_back(static_cast<char>(tk.place));
              tail.push_back(static_cast<char>(tk.initial));
              tail.push_back(static_cast<char>(tk.down));
              tail.push_back(static_cast<char>(tk.direct));
              tail.push_back(static_cast<char>(tk.count));
            }
            if (!done.insert(tail).second) return;
            for (const auto& m : moves) emit(static_cast<Letter>(id), head + std::string(m.begin(), m.end()) + tail);
          };
          // choose the consumed tokens place by place
          std::function<void(int, std::size_t, int)> choose = [&](int q, std::size_t i, int need) {
            if (q == np) {
              finish();
              return;
            }
            if (need == 0) {
              const int nq = q + 1;
              choose(nq, 0, nq < np ? n.places()[static_cast<std::size_t>(nq)].takes[t] : 0);
              return;
            }
            for (; i < st.tokens.size(); ++i) {
              const Token& tk = st.tokens[i];
              if (tk.place != q || !(tk.initial || (tk.down & closed))) continue;
              for (int x = std::min(need, tk.count); x >= 1; --x) {
                take[i] = x;
                choose(q, i + 1, need - x);
              }
              take[i] = 0;
            }
          };
          choose(0, 0, np > 0 ? n.places()[0].takes[t] : 0);
        }
      },
      [&](const std::string& key) {
        const State st = State::decode(key, c);
        return st.frontier.ports() == 0 && !detail::slots_fresh(st.slots);
      },
      opt);
  return SliceAutomaton(std::move(alphabet), trim(a));
}

SliceAutomaton net_automaton(const PtNet& n, int c, Semantics sem, const BuildOptions& opt) {
  return net_automaton(n, make_alphabet(c, n.transitions()), sem, opt);
}

}  // namespace slw
