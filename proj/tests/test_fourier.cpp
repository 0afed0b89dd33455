#include <doctest.h>

#include "lfwave/errors.hpp"
#include "lfwave/fourier.hpp"
#include "support.hpp"

using namespace lfwave;
using testsupport::pairing_oracle;
using testsupport::random_element;
using testsupport::random_step;

namespace {

std::vector<GroupDescriptor> kinds() {
  return {GroupDescriptor::qp(2), GroupDescriptor::qp(3), GroupDescriptor::qp(2, 2), GroupDescriptor::fp_laurent(2),
          GroupDescriptor::fp_laurent(3), GroupDescriptor::qp_quad(3, 2), GroupDescriptor::qp_quad(5, 2)};
}

Ball time_ball(const GroupDescriptor& g, const Element& c, int r) { return make_ball(g, Side::Time, c, r); }
Ball freq_ball(const GroupDescriptor& g, const Element& c, int r) { return make_ball(g, Side::Frequency, c, r); }

// Definition of the transform evaluated at one frequency, from the
// test-side pairing oracle. Each cell is split one level finer so that
// frequencies just outside the support are integrated correctly.
Complex transform_oracle(const StepFunction& f, const Element& gamma) {
  const GroupDescriptor& g = f.group();
  const CellCodec codec = f.codec();
  const CellCodec sub(g, -f.r(), f.r() + 1);
  Complex sum{};
  for (const auto& [idx, v] : f.cells()) {
    const Element x = codec.element_of(idx);
    for (std::uint64_t k = 0; k < sub.size(); ++k) {
      std::vector<Element::Term> terms = x.terms();
      const Element low = sub.element_of(k);
      terms.insert(terms.end(), low.terms().begin(), low.terms().end());
      sum += v * std::conj(pairing_oracle(g, Element(terms), gamma));
    }
  }
  return sum * f.cell_measure() / double(g.modulus());
}

}  // namespace

TEST_CASE("indicator transforms") {
  for (const auto& g : kinds()) {
    const StepFunction h = transform(indicator(g, time_ball(g, {}, 0)));
    CHECK(max_abs_difference(h, indicator(g, freq_ball(g, {}, 0))) < 1e-14);
    const StepFunction a = transform(indicator(g, time_ball(g, {}, 1)));
    const StepFunction expect = indicator(g, freq_ball(g, {}, -1)).scaled(1.0 / double(g.modulus()));
    CHECK(max_abs_difference(a, expect) < 1e-14);
    CHECK(max_abs_difference(indicator_transform(g, {}, 1), expect) < 1e-14);
  }
  std::mt19937_64 rng(4);
  for (const auto& g : kinds()) {
    for (int r = -1; r <= 2; ++r) {
      if (g.modulus() > 9 && r > 1) continue;
      const Element c = random_element(g, -2, r * g.r0(), rng);
      const StepFunction via_dft = transform(indicator(g, time_ball(g, c, r)));
      CHECK(max_abs_difference(via_dft, indicator_transform(g, c, r)) < 1e-12);
    }
  }
}

TEST_CASE("F_2((t)) Lang function transforms to the indicator of 1/t + H") {
  const auto g = GroupDescriptor::fp_laurent(2);
  const std::vector<StepFunction> parts{indicator(g, time_ball(g, {}, 1)),
                                        indicator(g, time_ball(g, Element::monomial(0, 1), 1))};
  const std::vector<Complex> cs{1.0, -1.0};
  const StepFunction f = linear_combine(cs, parts);
  const StepFunction spectrum = transform(f);
  CHECK(max_abs_difference(spectrum, indicator(g, freq_ball(g, Element::monomial(-1, 1), 0))) < 1e-12);
}

TEST_CASE("transform of zero and side checks") {
  const auto g = GroupDescriptor::qp(3);
  CHECK(transform(StepFunction(g, Side::Time, 1, 1)).cells().empty());
  CHECK_THROWS_AS(transform(StepFunction(g, Side::Frequency, 1, 1)), ConfigError);
  CHECK_THROWS_AS(inverse_transform(StepFunction(g, Side::Time, 1, 1)), ConfigError);
  const StepFunction t = transform(StepFunction(g, Side::Time, 2, -1));
  CHECK(t.m() == -1);
  CHECK(t.r() == 2);
}

TEST_CASE("transform matches the defining sum") {
  std::mt19937_64 rng(5);
  for (const auto& g : kinds()) {
    const StepFunction f = random_step(g, Side::Time, 1, 1, rng, 0.7);
    const StepFunction spectrum = transform(f);
    const CellCodec codec = spectrum.codec();
    std::uniform_int_distribution<std::uint64_t> pick(0, codec.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const std::uint64_t k = pick(rng);
      CHECK(std::abs(spectrum.at(k) - transform_oracle(f, codec.element_of(k))) < 1e-12);
    }
    // Outside the output support the defining sum vanishes.
    const Element far = Element::monomial(-f.r() * g.r0() - 1, 1);
    CHECK(std::abs(transform_oracle(f, far)) < 1e-12);
  }
}

TEST_CASE("round trip and Plancherel") {
  std::mt19937_64 rng(6);
  const auto q3 = GroupDescriptor::qp(3);
  const StepFunction f27 = random_step(q3, Side::Time, 1, 2, rng);
  REQUIRE(f27.cell_count() == 27);
  CHECK(max_abs_difference(inverse_transform(transform(f27)), f27) < 1e-10);
  for (const auto& g : kinds()) {
    for (int trial = 0; trial < 10; ++trial) {
      std::uniform_int_distribution<int> mm(-1, 2);
      const int m = mm(rng);
      const int r = std::max(-m, mm(rng));
      if (ipow_sat(g.modulus(), m + r) > 4096) continue;
      const StepFunction f = random_step(g, Side::Time, m, r, rng, 0.5);
      const StepFunction h = random_step(g, Side::Time, m, r, rng, 0.5);
      const StepFunction ff = transform(f);
      const StepFunction hh = transform(h);
      CHECK(std::abs(ff.norm_sq() - f.norm_sq()) < 1e-10 * std::max(1.0, f.norm_sq()));
      CHECK(std::abs(inner_product(ff, hh) - inner_product(f, h)) < 1e-10);
      CHECK(max_abs_difference(inverse_transform(ff), f) < 1e-10);
    }
  }
}

TEST_CASE("quotient DFT agrees with the cellwise path") {
  std::mt19937_64 rng(7);
  for (const auto& g : kinds()) {
    for (int m = -2; m <= 6; ++m) {
      for (int r = -m; r <= 6; ++r) {
        if (ipow_sat(g.modulus(), m + r) > 729) continue;
        const StepFunction f = testsupport::unit_random_step(g, Side::Time, m, r, rng);
        const StepFunction a = transform(f, TransformPath::Quotient);
        const StepFunction b = transform(f, TransformPath::Cellwise);
        INFO(g.name(), " window ", m, ",", r);
        CHECK(max_abs_difference(a, b) < 1e-10);
        const StepFunction s = testsupport::unit_random_step(g, Side::Frequency, m, r, rng);
        const StepFunction ia = inverse_transform(s, TransformPath::Quotient);
        CHECK(max_abs_difference(ia, inverse_transform(s, TransformPath::Cellwise)) < 1e-10);
      }
    }
  }
}

TEST_CASE("support and constancy scales swap") {
  std::mt19937_64 rng(8);
  for (const auto& g : kinds()) {
    for (int r = 0; r <= 1; ++r) {
      // Supported in (A*)^r H-perp, so constant on balls c + A^-r H.
      const StepFunction s = random_step(g, Side::Frequency, r, 1, rng);
      const StepFunction f = inverse_transform(s);
      for (int trial = 0; trial < 20; ++trial) {
        const Element c = random_element(g, -1, r * g.r0(), rng);
        const Element h = random_element(g, r * g.r0(), r * g.r0() + 3, rng);
        CHECK(std::abs(f.eval(c) - f.eval(add(g, c, h))) < 1e-12);
      }
      const StepFunction tf = transform(f);
      for (const auto& [idx, v] : tf.cells()) {
        const Element gamma = tf.codec().element_of(idx);
        CHECK(gamma.valuation().value_or(0) >= -r * g.r0());
      }
    }
  }
}
