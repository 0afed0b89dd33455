#include <doctest.h>

#include "lfwave/ball.hpp"
#include "lfwave/errors.hpp"
#include "lfwave/step_function.hpp"
#include "support.hpp"

using namespace lfwave;
using testsupport::random_element;
using testsupport::random_step;

namespace {

Ball random_ball(const GroupDescriptor& g, Side side, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> sc(-1, 3);
  const int s = sc(rng);
  return make_ball(g, side, random_element(g, -2, s * g.r0(), rng), s);
}

BallSet random_ballset(const GroupDescriptor& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 5);
  std::vector<Ball> balls;
  for (int k = count(rng); k > 0; --k) balls.push_back(random_ball(g, Side::Frequency, rng));
  return BallSet(g, Side::Frequency, balls);
}

}  // namespace

TEST_CASE("ball canonical center and measure") {
  const auto g = GroupDescriptor::qp(3);
  const Ball b = make_ball(g, Side::Time, Element({{-1, Digit{1, 0}}, {2, Digit{2, 0}}}), 1);
  CHECK(b.center == Element::monomial(-1, 1));
  CHECK(measure(g, b) == Measure(1, 3));
  CHECK(contains(g, b, Element({{-1, Digit{1, 0}}, {1, Digit{2, 0}}})));
  CHECK_FALSE(contains(g, b, Element({{-1, Digit{1, 0}}, {0, Digit{2, 0}}})));
  CHECK(children(g, b).size() == 3);
}

TEST_CASE("indicators") {
  for (const auto& g : {GroupDescriptor::qp(2), GroupDescriptor::qp(3, 2), GroupDescriptor::qp_quad(3, 2)}) {
    const StepFunction h = indicator(g, make_ball(g, Side::Time, {}, 0));
    CHECK(h.norm_sq() == doctest::Approx(1.0));
    for (int r = -2; r <= 2; ++r) {
      const StepFunction f = indicator(g, make_ball(g, Side::Time, Element::monomial(-1, 1), r));
      CHECK(f.norm_sq() == doctest::Approx(std::pow(double(g.modulus()), -r)));
    }
  }
  const auto g = GroupDescriptor::qp(3);
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Ball b = random_ball(g, Side::Time, rng);
    const StepFunction f = indicator(g, b);
    const Element x = random_element(g, -3, 4, rng);
    CHECK(f.eval(x) == Complex(contains(g, b, x) ? 1.0 : 0.0));
  }
}

TEST_CASE("linear combinations and the F_2((t)) Lang function") {
  const auto g = GroupDescriptor::fp_laurent(2);
  const StepFunction th = indicator(g, make_ball(g, Side::Time, {}, 1));
  const StepFunction one_th = indicator(g, make_ball(g, Side::Time, Element::monomial(0, 1), 1));
  const std::vector<StepFunction> fs{th, one_th};
  const std::vector<Complex> cs{1.0, -1.0};
  const StepFunction f = linear_combine(cs, fs);
  CHECK(f.eval(Element{}) == Complex(1.0));
  CHECK(f.eval(Element::monomial(1, 1)) == Complex(1.0));
  CHECK(f.eval(Element::monomial(0, 1)) == Complex(-1.0));
  CHECK(f.eval(Element::monomial(-1, 1)) == Complex(0.0));
  CHECK(inner_product(f, f) == Complex(1.0));
  CHECK(inner_product(th, one_th) == Complex(0.0));
  CHECK(inner_product(indicator(g, make_ball(g, Side::Time, {}, 0)), indicator(g, make_ball(g, Side::Time, {}, 0))) ==
        Complex(1.0));

  const std::vector<StepFunction> ff{f, f};
  const std::vector<Complex> cancel{1.0, -1.0};
  CHECK(linear_combine(cancel, ff).cells().empty());

  const std::vector<StepFunction> mixed{th, indicator(g, make_ball(g, Side::Frequency, {}, 1))};
  CHECK_THROWS_AS(linear_combine(cs, mixed), ConfigError);
}

TEST_CASE("inner product properties and refinement invariance") {
  std::mt19937_64 rng(2);
  for (const auto& g : {GroupDescriptor::qp(3), GroupDescriptor::fp_laurent(2), GroupDescriptor::qp_quad(3, 2)}) {
    for (int trial = 0; trial < 20; ++trial) {
      const StepFunction f = random_step(g, Side::Time, 1, 1, rng, 0.6);
      const StepFunction h = random_step(g, Side::Time, 0, 2, rng, 0.6);
      const Complex fh = inner_product(f, h);
      CHECK(std::abs(fh - std::conj(inner_product(h, f))) < 1e-12);
      CHECK(inner_product(f, f).real() >= 0.0);
      CHECK(std::abs(inner_product(f, f).real() - f.norm_sq()) < 1e-12);
      const StepFunction fr = refine(f, 2, 2);
      const StepFunction hr = refine(h, 2, 3);
      CHECK(std::abs(inner_product(fr, hr) - fh) < 1e-12);
      CHECK(max_abs_difference(f, fr) == 0.0);
      // Sesquilinearity.
      const Complex a(0.5, -2.0);
      const std::vector<StepFunction> one{f};
      const std::vector<Complex> ca{a};
      CHECK(std::abs(inner_product(linear_combine(ca, one), h) - a * fh) < 1e-12);
      CHECK(std::abs(inner_product(h, linear_combine(ca, one)) - std::conj(a) * std::conj(fh)) < 1e-12);
    }
    CHECK(inner_product(StepFunction(g, Side::Time, 1, 1), StepFunction(g, Side::Time, 1, 1)) == Complex(0.0));
  }
}

TEST_CASE("cell guard") {
  const auto g = GroupDescriptor::qp(2);
  CHECK_THROWS_AS(StepFunction(g, Side::Time, 12, 11), GuardExceeded);
  CHECK_NOTHROW(StepFunction(g, Side::Time, 11, 11));
  CHECK_THROWS_AS(StepFunction(g, Side::Time, 2, 2, Limits{8}), GuardExceeded);
  CHECK_THROWS_AS(StepFunction(g, Side::Time, 1, -2), ConfigError);
  CHECK_NOTHROW(StepFunction(g, Side::Time, -2, 3));
}

TEST_CASE("ball set algebra against pointwise oracle") {
  for (const auto& g : {GroupDescriptor::qp(2), GroupDescriptor::qp(3), GroupDescriptor::fp_laurent(3)}) {
    std::mt19937_64 rng(3 + g.p());
    const CellCodec cells(g, 2, 3);
    for (int trial = 0; trial < 40; ++trial) {
      const BallSet a = random_ballset(g, rng);
      const BallSet b = random_ballset(g, rng);
      const BallSet u = unite(g, a, b);
      const BallSet i = intersect(g, a, b);
      const BallSet d = subtract(g, a, b);
      CHECK(BallSet(g, Side::Frequency, u.balls()) == u);
      Measure count_u = 0, count_i = 0, count_d = 0;
      for (std::uint64_t k = 0; k < cells.size(); ++k) {
        const Element x = cells.element_of(k);
        const bool in_a = member(g, a, x);
        const bool in_b = member(g, b, x);
        CHECK(member(g, u, x) == (in_a || in_b));
        CHECK(member(g, i, x) == (in_a && in_b));
        CHECK(member(g, d, x) == (in_a && !in_b));
        count_u += (in_a || in_b) ? 1 : 0;
        count_i += (in_a && in_b) ? 1 : 0;
        count_d += (in_a && !in_b) ? 1 : 0;
      }
      const Measure cell = modulus_power(g, -3);
      CHECK(measure(g, u) == count_u * cell);
      CHECK(measure(g, i) == count_i * cell);
      CHECK(measure(g, d) == count_d * cell);
      // Canonical balls are pairwise disjoint.
      for (std::size_t x = 0; x < u.balls().size(); ++x)
        for (std::size_t y = x + 1; y < u.balls().size(); ++y) {
          CHECK_FALSE(contains(g, u.balls()[x], u.balls()[y]));
          CHECK_FALSE(contains(g, u.balls()[y], u.balls()[x]));
        }
    }
  }
}

TEST_CASE("normalization merges siblings and is idempotent") {
  const auto g = GroupDescriptor::qp(3);
  std::vector<Ball> parts;
  for (const auto& child : children(g, make_ball(g, Side::Frequency, Element::monomial(-1, 2), 0)))
    parts.push_back(child);
  parts.push_back(make_ball(g, Side::Frequency, Element({{-1, Digit{2, 0}}, {0, Digit{1, 0}}, {1, Digit{1, 0}}}), 2));
  const BallSet s(g, Side::Frequency, parts);
  REQUIRE(s.balls().size() == 1);
  CHECK(s.balls()[0] == make_ball(g, Side::Frequency, Element::monomial(-1, 2), 0));
  CHECK(BallSet(g, Side::Frequency, s.balls()) == s);
  CHECK(measure(g, s) == 1);
}

TEST_CASE("complement of p^r Z_p in H") {
  for (int p : {2, 3, 5}) {
    for (int r = 1; r <= 3; ++r) {
      const auto g = GroupDescriptor::qp(p, r);
      const BallSet h(g, Side::Frequency, {make_ball(g, Side::Frequency, {}, 0)});
      const BallSet sub(g, Side::Frequency, {make_ball(g, Side::Frequency, {}, 1)});
      CHECK(measure(g, subtract(g, h, sub)) == 1 - testsupport::rpow(p, -r));
    }
  }
}

TEST_CASE("geometric removal from Z_3") {
  // The union of 1 + 9Z_3, 2 + 3 + 27Z_3, ... has measure sum_n 3^-n.
  const auto g = GroupDescriptor::qp(3);
  std::vector<Ball> lambda;
  lambda.push_back(make_ball(g, Side::Frequency, {}, 1));
  Element c = Element::monomial(0, 1);
  for (int n = 2; n <= 6; ++n) {
    // Digits 1,2,1,2,... at the front, ball of scale n.
    std::vector<Element::Term> terms;
    for (int k = 0; k < n - 1; ++k) terms.emplace_back(k, Digit{(n % 2 == 0) == (k % 2 == 0) ? 1 : 2, 0});
    lambda.push_back(make_ball(g, Side::Frequency, Element(terms), n));
  }
  const BallSet h(g, Side::Frequency, {make_ball(g, Side::Frequency, {}, 0)});
  const BallSet lam(g, Side::Frequency, lambda);
  Measure expected = 1;
  for (int n = 1; n <= 6; ++n) expected -= testsupport::rpow(3, -n);
  CHECK(measure(g, subtract(g, h, lam)) == expected);
  CHECK(expected == 1 - Measure(1, 2) * (1 - testsupport::rpow(3, -6)));
}

TEST_CASE("translate and scale ball sets") {
  const auto g = GroupDescriptor::qp(2, 2);
  const BallSet h(g, Side::Frequency, {make_ball(g, Side::Frequency, {}, 0)});
  const BallSet up = scale(g, h, 1);
  CHECK(measure(g, up) == 4);
  CHECK(member(g, up, Element::monomial(-2, 1)));
  CHECK(scale(g, up, -1) == h);
  const BallSet moved = translate(g, h, Element::monomial(-1, 1));
  CHECK(member(g, moved, Element({{-1, Digit{1, 0}}, {3, Digit{1, 0}}})));
  CHECK_FALSE(member(g, moved, Element{}));
}
