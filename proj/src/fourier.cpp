#include "lfwave/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <vector>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

// The FFTW planner is not reentrant.
std::mutex planner_mutex;

// Values below this fraction of the largest output are roundoff.
constexpr double kPruneRelative = 1e-13;

int support_exponent(const GroupDescriptor& g, const Element& x) {
  const auto v = x.valuation();
  if (!v || *v >= 0) return 0;
  return (-*v + g.r0() - 1) / g.r0();
}

// Identifies the cells of a window of L digit positions with a finite
// abelian group and the pairing between dual windows with its standard DFT
// kernel:
//   Q_p      Z/p^L,       phase X*Y / p^L
//   F_p((t)) (Z/p)^L,     phase sum_j X_j Y_{L-1-j} / p
//   quad     (Z/p^L)^2,   phase 2 (Xa Ya + u Xb Yb) / p^L
class QuotientLayout {
 public:
  QuotientLayout(const GroupDescriptor& g, int positions) : g_(g), len_(positions) {
    const auto p = static_cast<std::uint64_t>(g.p());
    pl_ = ipow_sat(p, len_);
    switch (g.kind()) {
      case GroupKind::Qp:
        dims_ = {static_cast<int>(pl_)};
        break;
      case GroupKind::FpLaurent:
        dims_.assign(static_cast<std::size_t>(len_), g.p());
        break;
      case GroupKind::QpQuadUnramified:
        dims_ = {static_cast<int>(pl_), static_cast<int>(pl_)};
        break;
    }
  }

  const std::vector<int>& dims() const { return dims_; }

  // Array slot holding the input value of cell idx.
  std::uint64_t input_slot(std::uint64_t idx) const {
    if (!g_.is_quadratic()) return idx;
    const auto [a, b] = split(idx);
    return a * pl_ + b;
  }

  // Array slot holding the output value for cell idx of the dual window.
  std::uint64_t output_slot(std::uint64_t idx) const {
    const auto p = static_cast<std::uint64_t>(g_.p());
    switch (g_.kind()) {
      case GroupKind::Qp:
        return idx;
      case GroupKind::FpLaurent: {
        std::uint64_t rev = 0;
        for (int j = 0; j < len_; ++j, idx /= p) rev = rev * p + idx % p;
        return rev;
      }
      case GroupKind::QpQuadUnramified: {
        const auto [a, b] = split(idx);
        const auto u = static_cast<std::uint64_t>(g_.u());
        return ((2 * a) % pl_) * pl_ + (2 * u % pl_) * b % pl_;
      }
    }
    return idx;
  }

 private:
  // Interleaved codes a + p*b per position into the two coordinates.
  std::pair<std::uint64_t, std::uint64_t> split(std::uint64_t idx) const {
    const auto p = static_cast<std::uint64_t>(g_.p());
    const std::uint64_t q = p * p;
    std::uint64_t a = 0, b = 0, w = 1;
    for (int j = 0; j < len_; ++j, idx /= q, w *= p) {
      const std::uint64_t c = idx % q;
      a += (c % p) * w;
      b += (c / p) * w;
    }
    return {a, b};
  }

  GroupDescriptor g_;
  int len_;
  std::uint64_t pl_ = 1;
  std::vector<int> dims_;
};

void run_fftw(const std::vector<int>& dims, std::vector<Complex>& data, int sign) {
  if (data.size() <= 1) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign, FFTW_ESTIMATE);
  }
  if (plan == nullptr) throw std::runtime_error("FFTW could not plan the transform");
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(planner_mutex);
  fftw_destroy_plan(plan);
}

void store_pruned(StepFunction& out, const std::vector<Complex>& values) {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  const double floor = kPruneRelative * peak;
  for (std::uint64_t k = 0; k < values.size(); ++k)
    if (std::abs(values[k]) > floor) out.set(k, values[k]);
}

// Shared by both directions: the pairing is symmetric, only the sign of the
// exponent changes. The scale is the measure of one input cell.
StepFunction quotient_dft(const StepFunction& in, Side out_side, int sign, const Limits& limits) {
  const GroupDescriptor& g = in.group();
  StepFunction out(g, out_side, in.r(), in.m(), limits);
  const QuotientLayout layout(g, (in.m() + in.r()) * g.r0());
  std::vector<Complex> data(in.cell_count());
  for (const auto& [idx, v] : in.cells()) data[layout.input_slot(idx)] = v;
  run_fftw(layout.dims(), data, sign);
  const double scale = in.cell_measure();
  std::vector<Complex> values(out.cell_count());
  for (std::uint64_t k = 0; k < values.size(); ++k) values[k] = scale * data[layout.output_slot(k)];
  store_pruned(out, values);
  return out;
}

Complex indicator_value(const GroupDescriptor& g, const Element& c, int r, const Element& gamma) {
  if (!gamma.is_zero() && *gamma.valuation() < -r * g.r0()) return {};
  return std::pow(static_cast<double>(g.modulus()), -r) * pairing(g, c, gamma).conj().value();
}

// Linear extension of the indicator transform over the input cells. The
// inverse direction uses the same formula with the roles of the two sides
// exchanged and conjugated.
StepFunction cellwise(const StepFunction& in, Side out_side, bool inverse, const Limits& limits) {
  const GroupDescriptor& g = in.group();
  StepFunction out(g, out_side, in.r(), in.m(), limits);
  const CellCodec src = in.codec();
  const CellCodec dst = out.codec();
  std::vector<std::pair<Element, Complex>> terms;
  for (const auto& [idx, v] : in.cells()) terms.emplace_back(src.element_of(idx), v);
  std::vector<Complex> values(out.cell_count());
  for (std::uint64_t k = 0; k < values.size(); ++k) {
    const Element gamma = dst.element_of(k);
    Complex sum{};
    for (const auto& [x, v] : terms) {
      const Complex e = indicator_value(g, x, in.r(), gamma);
      sum += v * (inverse ? std::conj(e) : e);
    }
    values[k] = sum;
  }
  store_pruned(out, values);
  return out;
}

}  // namespace

Complex indicator_transform_value(const GroupDescriptor& g, const Element& c, int r, const Element& gamma) {
  return indicator_value(g, c, r, gamma);
}

StepFunction indicator_transform(const GroupDescriptor& g, const Element& c, int r, const Limits& limits) {
  const Element center = c.below(r * g.r0());
  const int fine = std::max(-r, support_exponent(g, center));
  StepFunction out(g, Side::Frequency, r, fine, limits);
  const CellCodec codec = out.codec();
  for (std::uint64_t k = 0; k < out.cell_count(); ++k)
    out.set(k, indicator_transform_value(g, center, r, codec.element_of(k)));
  return out;
}

StepFunction transform(const StepFunction& f, TransformPath path, const Limits& limits) {
  if (f.side() != Side::Time) throw ConfigError("transform expects a time-side function");
  if (path == TransformPath::Cellwise) return cellwise(f, Side::Frequency, false, limits);
  return quotient_dft(f, Side::Frequency, FFTW_FORWARD, limits);
}

StepFunction inverse_transform(const StepFunction& spectrum, TransformPath path, const Limits& limits) {
  if (spectrum.side() != Side::Frequency) throw ConfigError("inverse_transform expects a frequency-side function");
  if (path == TransformPath::Cellwise) return cellwise(spectrum, Side::Time, true, limits);
  return quotient_dft(spectrum, Side::Time, FFTW_BACKWARD, limits);
}

}  // namespace lfwave
