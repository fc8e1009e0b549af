#include "frontier.hpp"

#include <algorithm>

namespace slw::detail {

void Frontier::encode(std::string& out) const {
  out.push_back(static_cast<char>(cls.size()));
  for (auto c : cls) out.push_back(static_cast<char>(c));
  for (auto r : reach) out.push_back(static_cast<char>(r));
}

Frontier Frontier::decode(const std::string& s, std::size_t& pos) {
  Frontier f;
  const int n = static_cast<unsigned char>(s[pos++]);
  int classes = 0;
  for (int i = 0; i < n; ++i) {
    f.cls.push_back(static_cast<std::uint8_t>(s[pos++]));
    classes = std::max(classes, f.cls.back() + 1);
  }
  for (int i = 0; i < classes; ++i) f.reach.push_back(static_cast<std::uint8_t>(s[pos++]));
  return f;
}

FrontierStep step(const Frontier& f, const UnitShape& u) {
  FrontierStep r;
  r.closed = u.closed_mask();
  std::uint8_t closed_classes = 0;
  for (int p = 0; p < u.in; ++p) {
    if (!((r.closed >> p) & 1u)) continue;
    const std::uint8_t bit = static_cast<std::uint8_t>(1u << f.cls[p]);
    if (closed_classes & bit) r.parallel = true;
    closed_classes |= bit;
  }
  for (int p = 0; p < u.in; ++p)
    if (((r.closed >> p) & 1u) && (f.reach[f.cls[p]] & closed_classes)) r.transitive |= static_cast<std::uint8_t>(1u << p);

  // old class -> below the new vertex?
  const int old_classes = static_cast<int>(f.reach.size());
  std::uint8_t below = 0;
  for (int a = 0; a < old_classes; ++a)
    if (((closed_classes >> a) & 1u) || (f.reach[a] & closed_classes)) below |= static_cast<std::uint8_t>(1u << a);

  constexpr int kNew = 255;
  std::vector<int> old_of;  // new class -> old class or kNew
  std::vector<int> new_of(static_cast<std::size_t>(old_classes), -1);
  int new_class = -1;
  r.next.cls.resize(static_cast<std::size_t>(u.out));
  for (int q = 0; q < u.out; ++q) {
    if (u.out_from[q] == UnitShape::kToCenter) {
      if (new_class < 0) {
        new_class = static_cast<int>(old_of.size());
        old_of.push_back(kNew);
      }
      r.next.cls[q] = static_cast<std::uint8_t>(new_class);
    } else {
      const int a = f.cls[u.out_from[q]];
      if (new_of[a] < 0) {
        new_of[a] = static_cast<int>(old_of.size());
        old_of.push_back(a);
      }
      r.next.cls[q] = static_cast<std::uint8_t>(new_of[a]);
    }
  }
  r.next.reach.assign(old_of.size(), 0);
  for (std::size_t i = 0; i < old_of.size(); ++i) {
    if (old_of[i] == kNew) continue;
    const int a = old_of[i];
    for (std::size_t j = 0; j < old_of.size(); ++j) {
      const bool lt = old_of[j] == kNew ? ((below >> a) & 1u) : ((f.reach[a] >> old_of[j]) & 1u);
      if (lt) r.next.reach[i] |= static_cast<std::uint8_t>(1u << j);
    }
  }
  return r;
}

void slot_moves(const std::vector<std::uint8_t>& slots, const UnitShape& u,
                const std::function<void(const std::vector<std::uint8_t>&)>& fn) {
  std::vector<std::uint8_t> base;
  int arrivals = 0, unstarted = 0;
  for (auto s : slots) {
    if (s == kUnstarted) {
      ++unstarted;
    } else if (s == kFinished) {
      base.push_back(kFinished);
    } else {
      const int p = s - kRiding;
      if (u.in_to[p] == UnitShape::kToCenter) ++arrivals;
      else base.push_back(static_cast<std::uint8_t>(kRiding + u.in_to[p]));
    }
  }
  std::vector<int> born;
  for (int q = 0; q < u.out; ++q)
    if (u.out_from[q] == UnitShape::kToCenter) born.push_back(q);
  const int nb = static_cast<int>(born.size());

  std::vector<std::uint8_t> next;
  std::vector<int> bins(static_cast<std::size_t>(nb), 1);
  for (int s = 0; s <= unstarted; ++s) {
    const int k = arrivals + s;
    if (k == 0 || k < nb) continue;
    // distribute k slots: each born port >= 1, the rest finish
    const int spare = k - nb;
    std::function<void(int, int)> rec = [&](int i, int left) {
      if (i == nb) {
        next = base;
        for (int x = 0; x < unstarted - s; ++x) next.push_back(kUnstarted);
        for (int x = 0; x < left; ++x) next.push_back(kFinished);
        for (int j = 0; j < nb; ++j)
          for (int x = 0; x < bins[j]; ++x) next.push_back(static_cast<std::uint8_t>(kRiding + born[j]));
        std::sort(next.begin(), next.end());
        fn(next);
        return;
      }
      for (int extra = 0; extra <= left; ++extra) {
        bins[i] = 1 + extra;
        rec(i + 1, left - extra);
      }
      bins[i] = 1;
    };
    rec(0, spare);
  }
}

bool slots_idle(const std::vector<std::uint8_t>& slots) {
  return std::all_of(slots.begin(), slots.end(), [](auto s) { return s < kRiding; });
}

bool slots_fresh(const std::vector<std::uint8_t>& slots) {
  return std::all_of(slots.begin(), slots.end(), [](auto s) { return s == kUnstarted; });
}

std::uint8_t forward_mask(const UnitShape& u, std::uint8_t in_mask) {
  std::uint8_t m = 0;
  for (int p = 0; p < u.in; ++p)
    if (((in_mask >> p) & 1u) && u.in_to[p] != UnitShape::kToCenter) m |= static_cast<std::uint8_t>(1u << u.in_to[p]);
  return m;
}

}  // namespace slw::detail
