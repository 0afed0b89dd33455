#include "lfwave/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

Complex turn(std::uint64_t num, std::uint64_t den) { return UnitComplex::from_turns(num % den, den).value(); }

std::uint64_t upow(std::uint64_t p, int e) {
  const std::uint64_t v = ipow_sat(p, e);
  if (v > (std::uint64_t{1} << 40)) throw ConfigError("translation sum exponent too large");
  return v;
}

}  // namespace

int coset_depth(const GroupDescriptor& g, const Element& s) {
  const auto v = s.valuation();
  if (!v || *v >= 0) return 0;
  return (-*v + g.r0() - 1) / g.r0();
}

CosetIndex::CosetIndex(const GroupDescriptor& g, const Element& s, int depth)
    : s_(s.below(0)), depth_(std::max(depth, coset_depth(g, s))) {}

std::vector<CosetIndex> CosetIndex::enumerate(const GroupDescriptor& g, int depth) {
  std::vector<CosetIndex> out;
  for (const auto& e : d_prefix(g, depth)) out.emplace_back(g, e, depth);
  return out;
}

CosetIndex coset_add(const GroupDescriptor& g, const CosetIndex& s, const CosetIndex& t) {
  return CosetIndex(g, add(g, s.representative(), t.representative()), std::max(s.depth(), t.depth()));
}

StepFunction dilate(const StepFunction& f, int n) {
  if (f.side() != Side::Time) throw ConfigError("dilate acts on time-side functions");
  const GroupDescriptor& g = f.group();
  StepFunction out(g, Side::Time, f.m() - n, f.r() + n, Limits{f.cell_count()});
  const double factor = std::pow(static_cast<double>(g.modulus()), 0.5 * n);
  for (const auto& [idx, v] : f.cells()) out.set(idx, factor * v);
  return out;
}

Complex multiplier_value(const GroupDescriptor& g, const Element& s, const Element& gamma) {
  return pairing(g, s, gamma.from(0)).conj().value();
}

StepFunction multiplier_w(const GroupDescriptor& g, const Element& s, int m, int r, const Limits& limits) {
  StepFunction w(g, Side::Frequency, m, std::max(r, coset_depth(g, s)), limits);
  const CellCodec codec = w.codec();
  for (std::uint64_t k = 0; k < w.cell_count(); ++k) w.set(k, multiplier_value(g, s, codec.element_of(k)));
  return w;
}

StepFunction translate(const StepFunction& f, const CosetIndex& s, const Limits& limits) {
  return translate(f, s.representative(), limits);
}

StepFunction translate(const StepFunction& f, const Element& s, const Limits& limits) {
  const GroupDescriptor& g = f.group();
  // The multiplier is constant on frequency balls of scale >= depth, so the
  // spectrum must be resolved at least that finely.
  const int depth = coset_depth(g, s);
  const StepFunction base = f.m() >= depth ? f : refine(f, depth, f.r(), limits);
  StepFunction spectrum = transform(base, TransformPath::Quotient, limits);
  const CellCodec codec = spectrum.codec();
  StepFunction shifted(g, Side::Frequency, spectrum.m(), spectrum.r(), limits);
  for (const auto& [idx, v] : spectrum.cells())
    shifted.set(idx, v * multiplier_value(g, s, codec.element_of(idx)));
  return inverse_transform(shifted, TransformPath::Quotient, limits);
}

StepFunction translate_direct_oracle(const GroupDescriptor& g, const Ball& ball, const CosetIndex& s,
                                     const Limits& limits) {
  if (ball.side != Side::Time) throw ConfigError("translate_direct_oracle expects a time-side ball");
  const Element& c = ball.center;
  const Element moved = add(g, s.representative(), c);
  if (ball.scale <= 0) return indicator(g, make_ball(g, Side::Time, moved, ball.scale), limits);

  const int r = ball.scale;
  const Element base = moved.below(0);
  const int m = coset_depth(g, base);
  StepFunction out(g, Side::Time, m, r, limits);
  const CellCodec codec = out.codec();
  const CellCodec fine(g, 0, r, limits);
  const std::vector<Element> sigmas = d_prefix(g, r);
  const double weight = std::pow(static_cast<double>(g.modulus()), -r);
  for (std::uint64_t k = 0; k < fine.size(); ++k) {
    std::vector<Element::Term> terms = base.terms();
    const Element h = fine.element_of(k);
    terms.insert(terms.end(), h.terms().begin(), h.terms().end());
    const Element x(std::move(terms));
    const Element diff = subtract(g, x, c, r * g.r0());
    Complex sum{};
    for (const auto& sigma : sigmas) sum += pairing(g, diff, sigma).value();
    out.set(*codec.index_of(x), weight * sum);
  }
  return out;
}

Complex qp_translate_sum(int p, int n, std::uint64_t m, int l) {
  const auto pp = static_cast<std::uint64_t>(p);
  const std::uint64_t den = upow(pp, l + n);
  const std::uint64_t terms = upow(pp, n);
  m %= den;
  Complex sum{};
  for (std::uint64_t j = 0; j < terms; ++j)
    sum += turn(static_cast<std::uint64_t>(static_cast<unsigned __int128>(m) * j % den), den);
  return sum / static_cast<double>(terms);
}

Complex quad_translate_sum(int p, int u, int n, std::uint64_t m1, std::uint64_t m2, int l) {
  const auto pp = static_cast<std::uint64_t>(p);
  const std::uint64_t den = upow(pp, l + n);
  const std::uint64_t terms = upow(pp, n);
  m1 %= den;
  m2 %= den;
  const auto sden = static_cast<std::int64_t>(den);
  const auto ured = static_cast<std::uint64_t>((u % sden + sden) % sden);
  const auto um2 = static_cast<std::uint64_t>(static_cast<unsigned __int128>(ured) * m2 % den);
  Complex sum{};
  for (std::uint64_t m3 = 0; m3 < terms; ++m3)
    for (std::uint64_t m4 = 0; m4 < terms; ++m4) {
      const auto phase = static_cast<std::uint64_t>(
          (static_cast<unsigned __int128>(m1) * m3 + static_cast<unsigned __int128>(um2) * m4) % den);
      sum += turn(2 * phase % den, den);
    }
  return sum / static_cast<double>(terms * terms);
}

StepFunction apply_basis_index(const StepFunction& psi, const BasisIndex& idx, const Limits& limits) {
  return dilate(translate(psi, idx.s, limits), idx.n);
}

}  // namespace lfwave
