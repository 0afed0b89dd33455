#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "lfwave/group.hpp"
#include "lfwave/step_function.hpp"

namespace testsupport {

using lfwave::Complex;
using lfwave::Digit;
using lfwave::Element;
using lfwave::GroupDescriptor;
using Rational = boost::multiprecision::cpp_rational;

inline Element random_element(const GroupDescriptor& g, int lo, int hi, std::mt19937_64& rng) {
  std::vector<Element::Term> terms;
  std::uniform_int_distribution<int> digit(0, g.p() - 1);
  for (int pos = lo; pos < hi; ++pos)
    terms.emplace_back(pos, Digit{digit(rng), g.is_quadratic() ? digit(rng) : 0});
  return Element(std::move(terms));
}

inline Rational rpow(int p, int e) {
  boost::multiprecision::cpp_int v = 1;
  for (int i = 0; i < std::abs(e); ++i) v *= p;
  return e >= 0 ? Rational(v) : Rational(1) / Rational(v);
}

// Exact rational value of one coordinate of a p-adic digit expansion.
inline Rational value_a(const Element& x, int p) {
  Rational v = 0;
  for (const auto& [pos, d] : x.terms()) v += d.a * rpow(p, pos);
  return v;
}
inline Rational value_b(const Element& x, int p) {
  Rational v = 0;
  for (const auto& [pos, d] : x.terms()) v += d.b * rpow(p, pos);
  return v;
}

// v mod 1 in [0, 1).
inline Rational frac(const Rational& v) {
  boost::multiprecision::cpp_int n = numerator(v);
  boost::multiprecision::cpp_int d = denominator(v);
  boost::multiprecision::cpp_int r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

inline Complex turns(const Rational& t) {
  const double x = static_cast<double>(frac(t));
  return std::polar(1.0, 2.0 * std::numbers::pi * x);
}

// Pairing straight from the definitions, on exact rationals (Q_p and the
// quadratic kind) or on coefficient convolution mod p (F_p((t))).
inline Complex pairing_oracle(const GroupDescriptor& g, const Element& x, const Element& y) {
  const int p = g.p();
  switch (g.kind()) {
    case lfwave::GroupKind::Qp:
      return turns(value_a(x, p) * value_a(y, p));
    case lfwave::GroupKind::QpQuadUnramified: {
      const Rational a = value_a(x, p) * value_a(y, p) + g.u() * value_b(x, p) * value_b(y, p);
      return turns(2 * a);
    }
    case lfwave::GroupKind::FpLaurent: {
      long c = 0;
      for (const auto& [px, dx] : x.terms())
        for (const auto& [py, dy] : y.terms())
          if (px + py == -1) c += static_cast<long>(dx.a) * dy.a;
      return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(c % p) / p);
    }
  }
  return {};
}

inline lfwave::StepFunction random_step(const GroupDescriptor& g, lfwave::Side side, int m, int r,
                                        std::mt19937_64& rng, double density = 1.0) {
  lfwave::StepFunction f(g, side, m, r);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::uint64_t k = 0; k < f.cell_count(); ++k)
    if (u(rng) < density) f.set(k, {n(rng), n(rng)});
  return f;
}

// Random step function scaled to unit L2 norm.
inline lfwave::StepFunction unit_random_step(const GroupDescriptor& g, lfwave::Side side, int m, int r,
                                             std::mt19937_64& rng) {
  lfwave::StepFunction f = random_step(g, side, m, r, rng);
  return f.scaled(1.0 / std::sqrt(f.norm_sq()));
}

}  // namespace testsupport
