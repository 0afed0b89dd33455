#include "lfwave/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

void check_compatible(const StepFunction& f, const StepFunction& h) {
  if (f.side() != h.side()) throw ConfigError("step functions live on different sides");
  if (!(f.group() == h.group())) throw ConfigError("step functions over different groups");
}

// Smallest m with every digit of x at position >= -m*r0.
int support_exponent(const GroupDescriptor& g, const Element& x) {
  const auto v = x.valuation();
  if (!v || *v >= 0) return 0;
  return (-*v + g.r0() - 1) / g.r0();
}

}  // namespace

StepFunction::StepFunction(const GroupDescriptor& g, Side side, int m, int r, const Limits& limits)
    : g_(g), side_(side), m_(m), r_(r), count_(checked_cell_count(g, m, r, limits)) {}

double StepFunction::cell_measure() const { return std::pow(static_cast<double>(g_.modulus()), -r_); }

Complex StepFunction::at(std::uint64_t index) const {
  auto it = cells_.find(index);
  return it == cells_.end() ? Complex{} : it->second;
}

void StepFunction::set(std::uint64_t index, Complex value) {
  if (index >= count_) throw ConfigError("cell index out of range");
  if (value == Complex{})
    cells_.erase(index);
  else
    cells_[index] = value;
}

void StepFunction::add(std::uint64_t index, Complex value) { set(index, at(index) + value); }

Complex StepFunction::eval(const Element& x) const {
  const auto idx = codec().index_of(x);
  return idx ? at(*idx) : Complex{};
}

double StepFunction::norm_sq() const {
  double sum = 0.0;
  for (const auto& [idx, v] : cells_) sum += std::norm(v);
  return sum * cell_measure();
}

StepFunction StepFunction::scaled(Complex c) const {
  StepFunction out(g_, side_, m_, r_, Limits{count_});
  for (const auto& [idx, v] : cells_) out.set(idx, c * v);
  return out;
}

StepFunction indicator(const GroupDescriptor& g, const Ball& ball, const Limits& limits) {
  const Ball b = make_ball(g, ball.side, ball.center, ball.scale);
  const int m = std::max(-b.scale, support_exponent(g, b.center));
  StepFunction f(g, b.side, m, b.scale, limits);
  f.set(*f.codec().index_of(b.center), 1.0);
  return f;
}

StepFunction refine(const StepFunction& f, int m, int r, const Limits& limits) {
  if (m < f.m() || r < f.r()) throw ConfigError("refine cannot shrink a window");
  const GroupDescriptor& g = f.group();
  StepFunction out(g, f.side(), m, r, limits);
  const std::uint64_t q = static_cast<std::uint64_t>(g.residue_size());
  const int shift = (m - f.m()) * g.r0();
  const std::uint64_t low = ipow_sat(q, shift);
  const std::uint64_t high = ipow_sat(q, shift + (f.m() + f.r()) * g.r0());
  const std::uint64_t extra = ipow_sat(q, (r - f.r()) * g.r0());
  for (const auto& [idx, v] : f.cells())
    for (std::uint64_t j = 0; j < extra; ++j) out.set(idx * low + j * high, v);
  return out;
}

StepFunction linear_combine(std::span<const Complex> coeffs, std::span<const StepFunction> fs, const Limits& limits) {
  if (coeffs.size() != fs.size()) throw ConfigError("coefficient count does not match function count");
  if (fs.empty()) throw ConfigError("linear_combine needs at least one function");
  int m = fs[0].m();
  int r = fs[0].r();
  for (const auto& f : fs) {
    check_compatible(fs[0], f);
    m = std::max(m, f.m());
    r = std::max(r, f.r());
  }
  StepFunction out(fs[0].group(), fs[0].side(), m, r, limits);
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (coeffs[k] == Complex{}) continue;
    const StepFunction fine = refine(fs[k], m, r, limits);
    for (const auto& [idx, v] : fine.cells()) out.add(idx, coeffs[k] * v);
  }
  return out;
}

Complex inner_product(const StepFunction& f, const StepFunction& h) {
  check_compatible(f, h);
  const GroupDescriptor& g = f.group();
  const std::uint64_t q = static_cast<std::uint64_t>(g.residue_size());
  const int r0 = g.r0();
  // Walk the finer function and look the other one up in its own window.
  const bool f_fine = f.r() >= h.r();
  const StepFunction& fine = f_fine ? f : h;
  const StepFunction& coarse = f_fine ? h : f;
  Complex sum{};
  for (const auto& [idx, v] : fine.cells()) {
    const auto j = coarsen_index(q, idx, -fine.m() * r0, -coarse.m() * r0, coarse.r() * r0);
    if (!j) continue;
    const Complex w = coarse.at(*j);
    if (w == Complex{}) continue;
    sum += f_fine ? v * std::conj(w) : w * std::conj(v);
  }
  return sum * fine.cell_measure();
}

double max_abs_difference(const StepFunction& f, const StepFunction& h, const Limits& limits) {
  check_compatible(f, h);
  const int m = std::max(f.m(), h.m());
  const int r = std::max(f.r(), h.r());
  const StepFunction a = refine(f, m, r, limits);
  const StepFunction b = refine(h, m, r, limits);
  double worst = 0.0;
  for (const auto& [idx, v] : a.cells()) worst = std::max(worst, std::abs(v - b.at(idx)));
  for (const auto& [idx, v] : b.cells()) worst = std::max(worst, std::abs(v - a.at(idx)));
  return worst;
}

}  // namespace lfwave
