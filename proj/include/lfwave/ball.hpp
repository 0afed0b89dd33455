#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "lfwave/cells.hpp"
#include "lfwave/group.hpp"

namespace lfwave {

using Measure = boost::multiprecision::cpp_rational;

// M^e as an exact rational.
Measure modulus_power(const GroupDescriptor& g, int e);

// center + pi^(scale*r0) O on either side; the center keeps only digits
// below scale*r0. Build through make_ball to get the canonical center.
struct Ball {
  Side side = Side::Time;
  Element center;
  int scale = 0;

  friend bool operator==(const Ball&, const Ball&) = default;
  friend auto operator<=>(const Ball& x, const Ball& y) {
    if (auto c = x.scale <=> y.scale; c != 0) return c;
    return x.center <=> y.center;
  }
};

Ball make_ball(const GroupDescriptor& g, Side side, const Element& center, int scale);
bool contains(const GroupDescriptor& g, const Ball& ball, const Element& x);
bool contains(const GroupDescriptor& g, const Ball& outer, const Ball& inner);
Measure measure(const GroupDescriptor& g, const Ball& ball);
// The M balls of scale + 1 inside ball, in cell-index order.
std::vector<Ball> children(const GroupDescriptor& g, const Ball& ball);

// Finite union of balls on one side, always stored canonically: pairwise
// disjoint, complete sibling families merged into their parent, sorted.
class BallSet {
 public:
  explicit BallSet(Side side = Side::Frequency) : side_(side) {}
  BallSet(const GroupDescriptor& g, Side side, std::vector<Ball> balls);

  Side side() const noexcept { return side_; }
  const std::vector<Ball>& balls() const noexcept { return balls_; }
  bool empty() const noexcept { return balls_.empty(); }

  friend bool operator==(const BallSet&, const BallSet&) = default;

 private:
  Side side_;
  std::vector<Ball> balls_;
};

// Canonical form of an arbitrary (possibly overlapping) ball list.
std::vector<Ball> normalize(const GroupDescriptor& g, std::vector<Ball> balls);

BallSet unite(const GroupDescriptor& g, const BallSet& x, const BallSet& y);
BallSet intersect(const GroupDescriptor& g, const BallSet& x, const BallSet& y);
BallSet subtract(const GroupDescriptor& g, const BallSet& x, const BallSet& y);
BallSet symmetric_difference(const GroupDescriptor& g, const BallSet& x, const BallSet& y);
bool member(const GroupDescriptor& g, const BallSet& s, const Element& x);
Measure measure(const GroupDescriptor& g, const BallSet& s);
// s + c.
BallSet translate(const GroupDescriptor& g, const BallSet& s, const Element& c);
// (A*)^n s on the frequency side, A^n s on the time side.
BallSet scale(const GroupDescriptor& g, const BallSet& s, int n);

}  // namespace lfwave
