#include "lfwave/ball.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

// Digits of x below hi coincide with the digits of prefix (which has none at
// or above hi).
bool agrees_below(const Element& x, const Element& prefix, int hi) {
  const auto& xs = x.terms();
  const auto& ps = prefix.terms();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < xs.size() && xs[i].first < hi) {
    if (j >= ps.size() || xs[i] != ps[j]) return false;
    ++i;
    ++j;
  }
  return j == ps.size();
}

void check_side(const BallSet& x, const BallSet& y) {
  if (x.side() != y.side()) throw ConfigError("ball sets live on different sides");
}

void subtract_into(const GroupDescriptor& g, const Ball& a, const std::vector<Ball>& cut, std::vector<Ball>& out) {
  std::vector<Ball> inside;
  for (const auto& b : cut) {
    if (contains(g, b, a)) return;
    if (contains(g, a, b)) inside.push_back(b);
  }
  if (inside.empty()) {
    out.push_back(a);
    return;
  }
  for (const auto& child : children(g, a)) subtract_into(g, child, inside, out);
}

}  // namespace

Measure modulus_power(const GroupDescriptor& g, int e) {
  boost::multiprecision::cpp_int v = 1;
  for (int i = 0; i < std::abs(e); ++i) v *= g.modulus();
  return e >= 0 ? Measure(v) : Measure(1) / Measure(v);
}

Ball make_ball(const GroupDescriptor& g, Side side, const Element& center, int scale) {
  return Ball{side, center.below(scale * g.r0()), scale};
}

bool contains(const GroupDescriptor& g, const Ball& ball, const Element& x) {
  return agrees_below(x, ball.center, ball.scale * g.r0());
}

bool contains(const GroupDescriptor& g, const Ball& outer, const Ball& inner) {
  return inner.scale >= outer.scale && agrees_below(inner.center, outer.center, outer.scale * g.r0());
}

Measure measure(const GroupDescriptor& g, const Ball& ball) { return modulus_power(g, -ball.scale); }

std::vector<Ball> children(const GroupDescriptor& g, const Ball& ball) {
  const CellCodec codec(g, -ball.scale, ball.scale + 1);
  std::vector<Ball> out;
  out.reserve(codec.size());
  for (std::uint64_t k = 0; k < codec.size(); ++k) {
    std::vector<Element::Term> terms = ball.center.terms();
    const Element low = codec.element_of(k);
    terms.insert(terms.end(), low.terms().begin(), low.terms().end());
    out.push_back(Ball{ball.side, Element(std::move(terms)), ball.scale + 1});
  }
  return out;
}

std::vector<Ball> normalize(const GroupDescriptor& g, std::vector<Ball> balls) {
  std::sort(balls.begin(), balls.end());
  balls.erase(std::unique(balls.begin(), balls.end()), balls.end());

  // Drop balls inside another ball; coarse balls are seen first.
  std::set<Ball> kept;
  std::set<int> scales;
  for (const auto& b : balls) {
    bool covered = false;
    for (int s : scales) {
      if (s > b.scale) break;
      if (kept.count(Ball{b.side, b.center.below(s * g.r0()), s})) {
        covered = true;
        break;
      }
    }
    if (!covered) {
      kept.insert(b);
      scales.insert(b.scale);
    }
  }

  // Merge complete sibling families, finest scale first.
  const Side side = balls.empty() ? Side::Time : balls.front().side;
  std::map<int, std::vector<Element>> by_scale;
  for (const auto& b : kept) by_scale[b.scale].push_back(b.center);
  std::vector<Ball> out;
  while (!by_scale.empty()) {
    auto last = std::prev(by_scale.end());
    const int k = last->first;
    std::vector<Element> centers = std::move(last->second);
    by_scale.erase(last);
    std::map<Element, std::vector<Element>> families;
    for (auto& c : centers) families[c.below((k - 1) * g.r0())].push_back(std::move(c));
    for (auto& [parent, members] : families) {
      if (members.size() == g.modulus()) {
        by_scale[k - 1].push_back(parent);
      } else {
        for (auto& c : members) out.push_back(Ball{side, std::move(c), k});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

BallSet::BallSet(const GroupDescriptor& g, Side side, std::vector<Ball> balls) : side_(side) {
  for (auto& b : balls) {
    if (b.side != side) throw ConfigError("ball on the wrong side for this set");
    b = make_ball(g, side, b.center, b.scale);
  }
  balls_ = normalize(g, std::move(balls));
}

BallSet unite(const GroupDescriptor& g, const BallSet& x, const BallSet& y) {
  check_side(x, y);
  std::vector<Ball> all = x.balls();
  all.insert(all.end(), y.balls().begin(), y.balls().end());
  return BallSet(g, x.side(), std::move(all));
}

BallSet intersect(const GroupDescriptor& g, const BallSet& x, const BallSet& y) {
  check_side(x, y);
  std::vector<Ball> out;
  for (const auto& a : x.balls()) {
    for (const auto& b : y.balls()) {
      if (contains(g, a, b))
        out.push_back(b);
      else if (contains(g, b, a))
        out.push_back(a);
    }
  }
  return BallSet(g, x.side(), std::move(out));
}

BallSet subtract(const GroupDescriptor& g, const BallSet& x, const BallSet& y) {
  check_side(x, y);
  std::vector<Ball> out;
  for (const auto& a : x.balls()) subtract_into(g, a, y.balls(), out);
  return BallSet(g, x.side(), std::move(out));
}

BallSet symmetric_difference(const GroupDescriptor& g, const BallSet& x, const BallSet& y) {
  return unite(g, subtract(g, x, y), subtract(g, y, x));
}

bool member(const GroupDescriptor& g, const BallSet& s, const Element& x) {
  return std::any_of(s.balls().begin(), s.balls().end(), [&](const Ball& b) { return contains(g, b, x); });
}

Measure measure(const GroupDescriptor& g, const BallSet& s) {
  Measure total = 0;
  for (const auto& b : s.balls()) total += measure(g, b);
  return total;
}

BallSet translate(const GroupDescriptor& g, const BallSet& s, const Element& c) {
  std::vector<Ball> out;
  out.reserve(s.balls().size());
  for (const auto& b : s.balls()) out.push_back(make_ball(g, s.side(), add(g, b.center, c), b.scale));
  return BallSet(g, s.side(), std::move(out));
}

BallSet scale(const GroupDescriptor& g, const BallSet& s, int n) {
  std::vector<Ball> out;
  out.reserve(s.balls().size());
  for (const auto& b : s.balls()) out.push_back(Ball{b.side, apply_A(g, b.center, n), b.scale - n});
  return BallSet(g, s.side(), std::move(out));
}

}  // namespace lfwave
