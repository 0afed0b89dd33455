#include "lfwave/wavelets.hpp"

#include <cmath>
#include <set>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

BallSet h_perp(const GroupDescriptor& g) {
  return BallSet(g, Side::Frequency, {make_ball(g, Side::Frequency, {}, 0)});
}

Complex pair(const GroupDescriptor& g, const Element& x, const Element& y) { return pairing(g, x, y).value(); }

// Digit 1 at positions 0, step, ..., (count - 1) * step.
Element ones(int count, int step) {
  std::vector<Element::Term> terms;
  for (int k = 0; k < count; ++k) terms.emplace_back(k * step, Digit{1, 0});
  return Element(std::move(terms));
}

// Base-3 digits start, 3 - start, start, ... at positions 0..last.
Element alternating(int start, int last) {
  std::vector<Element::Term> terms;
  for (int k = 0; k <= last; ++k) terms.emplace_back(k, Digit{k % 2 == 0 ? start : 3 - start, 0});
  return Element(std::move(terms));
}

// (A*)^-i omega for i = 1.. while M^-i nu(omega) >= epsilon. Returns the
// union and the measure bound of the terms left out.
std::pair<BallSet, Measure> dilated_union(const GroupDescriptor& g, const BallSet& omega, const Measure& epsilon) {
  const Measure mu = measure(g, omega);
  std::vector<Ball> all;
  int i = 1;
  for (; modulus_power(g, -i) * mu >= epsilon; ++i) {
    const BallSet scaled = scale(g, omega, -i);
    all.insert(all.end(), scaled.balls().begin(), scaled.balls().end());
  }
  const Measure left = modulus_power(g, -i) * mu * Measure(g.modulus()) / Measure(g.modulus() - 1);
  return {BallSet(g, Side::Frequency, std::move(all)), left};
}

std::pair<BallSet, Measure> next_lambda(const GroupDescriptor& g, const BallSet& omega, const Measure& epsilon) {
  auto [u, left] = dilated_union(g, omega, epsilon);
  return {intersect(g, omega, u), left};
}

int least_n(const Element& y, int step) {
  const auto v = y.below(0).valuation();
  if (!v) return 1;
  return std::max(1, (-*v + step - 1) / step);
}

void require(bool ok, const char* what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

std::vector<Element> haar_sigmas(const GroupDescriptor& g) { return d_prefix(g, 1); }

WaveletSystem haar_shannon_system(const GroupDescriptor& g, const Limits& limits) {
  WaveletSystem sys{g, {}, haar_sigmas(g), BallSet(Side::Frequency)};
  std::vector<Ball> support;
  for (std::size_t i = 1; i < sys.sigmas.size(); ++i) {
    const Ball b = make_ball(g, Side::Frequency, sys.sigmas[i], 0);
    sys.generators.push_back(inverse_transform(indicator(g, b, limits), TransformPath::Quotient, limits));
    support.push_back(b);
  }
  sys.omega = BallSet(g, Side::Frequency, std::move(support));
  return sys;
}

StepFunction haar_closed_form(const GroupDescriptor& g, int i, const CosetIndex& s, const Limits& limits) {
  if (i < 1 || static_cast<std::uint64_t>(i) >= g.modulus()) throw ConfigError("generator number out of range");
  const Element sigma = haar_sigmas(g)[static_cast<std::size_t>(i)];
  StepFunction f(g, Side::Time, s.depth(), 1, limits);
  const CellCodec codec = f.codec();
  const CellCodec fine(g, 0, 1);
  for (std::uint64_t k = 0; k < fine.size(); ++k) {
    std::vector<Element::Term> terms = s.representative().terms();
    const Element h = fine.element_of(k);
    terms.insert(terms.end(), h.terms().begin(), h.terms().end());
    const Element x(std::move(terms));
    f.set(*codec.index_of(x), pair(g, x, sigma));
  }
  return f;
}

void validate(const GroupDescriptor& g, const WaveletSetSpec& spec) {
  require(spec.max_iterations >= 1, "max_iterations must be positive");
  require(spec.epsilon > 0, "epsilon must be positive");
  require(!spec.partition.empty(), "partition is empty");
  const BallSet whole = h_perp(g);
  BallSet covered(Side::Frequency);
  Measure total = 0;
  std::set<Element> seen;
  for (const auto& part : spec.partition) {
    validate(g, part.sigma);
    require(!part.sigma.is_zero(), "sigma_0 = 0 cannot carry a partition set");
    require(part.sigma == part.sigma.below(0) && *part.sigma.valuation() >= -g.r0(),
            "sigma must lie in D inside A* H-perp");
    require(seen.insert(part.sigma).second, "sigma listed twice");
    require(part.set.side() == Side::Frequency, "partition sets live on the frequency side");
    require(subtract(g, part.set, whole).empty(), "partition set leaves H-perp");
    covered = unite(g, covered, part.set);
    total += measure(g, part.set);
  }
  require(covered == whole, "partition does not cover H-perp");
  require(total == 1, "partition sets overlap");
}

BallSet apply_T(const GroupDescriptor& g, const WaveletSetSpec& spec, const BallSet& set) {
  std::vector<Ball> out;
  for (const auto& part : spec.partition) {
    const BallSet moved = translate(g, intersect(g, set, part.set), part.sigma);
    out.insert(out.end(), moved.balls().begin(), moved.balls().end());
  }
  return BallSet(g, Side::Frequency, std::move(out));
}

WaveletSetResult build_wavelet_set(const GroupDescriptor& g, const WaveletSetSpec& spec) {
  validate(g, spec);
  WaveletSetResult res{h_perp(g), {}, 0, 0, 0, spec.epsilon};
  for (int n = 1; n <= spec.max_iterations; ++n) {
    BallSet lambda = next_lambda(g, res.omega, spec.epsilon).first;
    if (lambda.empty()) break;
    const Measure mu = measure(g, lambda);
    res.omega = unite(g, subtract(g, res.omega, lambda), apply_T(g, spec, lambda));
    res.lambdas.push_back(std::move(lambda));
    res.lambda_measure += mu;
    if (mu < spec.epsilon) break;
  }
  res.iterations = static_cast<int>(res.lambdas.size());
  const auto [next, left] = next_lambda(g, res.omega, spec.epsilon);
  res.dropped_measure = measure(g, next) + left;
  return res;
}

Measure fixed_point_residual(const GroupDescriptor& g, const WaveletSetSpec& spec, const BallSet& omega) {
  const BallSet whole = h_perp(g);
  const BallSet u = intersect(g, dilated_union(g, omega, spec.epsilon).first, whole);
  const BallSet rhs = unite(g, subtract(g, whole, u), apply_T(g, spec, u));
  return measure(g, symmetric_difference(g, omega, rhs));
}

StepFunction wavelet_from_set(const GroupDescriptor& g, const BallSet& omega, const Limits& limits) {
  if (omega.side() != Side::Frequency) throw ConfigError("wavelet_from_set expects a frequency-side set");
  if (omega.empty()) throw ConfigError("empty wavelet set");
  std::vector<StepFunction> parts;
  for (const auto& b : omega.balls()) parts.push_back(indicator(g, b, limits));
  const std::vector<Complex> ones_(parts.size(), Complex{1.0});
  return inverse_transform(linear_combine(ones_, parts, limits), TransformPath::Quotient, limits);
}

SpectralWavelet::SpectralWavelet(const GroupDescriptor& g, const BallSet& omega) : g_(g), omega_(omega) {
  if (omega.side() != Side::Frequency) throw ConfigError("spectral wavelet needs a frequency-side set");
  for (const auto& b : omega.balls())
    if (b.scale < 0) throw ConfigError("spectral wavelet needs balls of scale >= 0");
}

Complex SpectralWavelet::eval(const CosetIndex& s, const Element& x) const {
  const Element& sr = s.representative();
  Complex sum{};
  for (const auto& b : omega_.balls()) {
    const int low = -b.scale * g_.r0();
    if (x.below(low) != sr.below(low)) continue;
    const double w = std::pow(static_cast<double>(g_.modulus()), -b.scale);
    sum += w * pair(g_, x, b.center) * std::conj(pair(g_, sr, b.center.from(0)));
  }
  return sum;
}

Complex SpectralWavelet::eval(const BasisIndex& idx, const Element& x) const {
  return std::pow(static_cast<double>(g_.modulus()), 0.5 * idx.n) * eval(idx.s, apply_A(g_, x, idx.n));
}

std::vector<SpectralWavelet::Overlap> SpectralWavelet::overlaps(int n, int n2) const {
  const auto& balls = omega_.balls();
  std::vector<Ball> a;
  std::vector<Ball> b;
  for (const auto& ball : balls) {
    a.push_back(Ball{Side::Frequency, apply_A(g_, ball.center, n), ball.scale - n});
    b.push_back(Ball{Side::Frequency, apply_A(g_, ball.center, n2), ball.scale - n2});
  }
  std::vector<Overlap> out;
  for (std::size_t j = 0; j < a.size(); ++j)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (contains(g_, a[j], b[k]))
        out.push_back({j, k, b[k]});
      else if (contains(g_, b[k], a[j]))
        out.push_back({j, k, a[j]});
    }
  return out;
}

Complex SpectralWavelet::inner(const BasisIndex& a, const BasisIndex& b, const std::vector<Overlap>& ov) const {
  const auto& balls = omega_.balls();
  const Element& sa = a.s.representative();
  const Element& sb = b.s.representative();
  const Element za = apply_A(g_, sa, -a.n);
  const Element zb = apply_A(g_, sb, -b.n);
  const double m = static_cast<double>(g_.modulus());
  Complex sum{};
  for (const auto& o : ov) {
    const int low = -o.ball.scale * g_.r0();
    if (za.below(low) != zb.below(low)) continue;
    const Complex phase = pair(g_, sa, balls[o.j].center.below(0)) * std::conj(pair(g_, sb, balls[o.k].center.below(0)));
    sum += std::pow(m, -o.ball.scale) * phase * std::conj(pair(g_, za, o.ball.center)) * pair(g_, zb, o.ball.center);
  }
  return std::pow(m, -0.5 * (a.n + b.n)) * sum;
}

std::string example_name(ExampleId id) {
  switch (id) {
    case ExampleId::QpWave:
      return "qpwave";
    case ExampleId::QpExtnWave:
      return "qpextnwave";
    case ExampleId::FptWave:
      return "fptwave";
    case ExampleId::FptWavePrinted:
      return "fptwave-printed";
    case ExampleId::QpWave3:
      return "qpwave3";
  }
  return {};
}

std::optional<ExampleId> example_from_name(const std::string& name) {
  for (ExampleId id : {ExampleId::QpWave, ExampleId::QpExtnWave, ExampleId::FptWave, ExampleId::FptWavePrinted,
                       ExampleId::QpWave3})
    if (example_name(id) == name) return id;
  return std::nullopt;
}

GroupDescriptor example_group(ExampleId id, const ExampleParams& params) {
  require(params.r >= 1, "example dilation exponent must be >= 1");
  switch (id) {
    case ExampleId::QpWave:
      return GroupDescriptor::qp(params.p, params.r);
    case ExampleId::QpExtnWave:
      require(params.p == 3, "qpextnwave is defined over Q_3");
      return GroupDescriptor::qp_quad(3, 2, params.r);
    case ExampleId::FptWave:
    case ExampleId::FptWavePrinted:
      require(params.r == 1, "fptwave uses A = multiplication by 1/t");
      return GroupDescriptor::fp_laurent(params.p, 1);
    case ExampleId::QpWave3:
      require(params.p == 3 && params.r == 1, "qpwave3 is defined over Q_3 with A = 1/3");
      return GroupDescriptor::qp(3, 1);
  }
  throw ConfigError("unknown example");
}

WaveletSetSpec example_spec(ExampleId id, const ExampleParams& params) {
  const GroupDescriptor g = example_group(id, params);
  WaveletSetSpec spec;
  if (id == ExampleId::QpWave3) {
    spec.partition.push_back({Element::monomial(-1, 1),
                              BallSet(g, Side::Frequency,
                                      {make_ball(g, Side::Frequency, {}, 1),
                                       make_ball(g, Side::Frequency, Element::monomial(0, 2), 1)})});
    spec.partition.push_back(
        {Element::monomial(-1, 2),
         BallSet(g, Side::Frequency, {make_ball(g, Side::Frequency, Element::monomial(0, 1), 1)})});
  } else {
    spec.partition.push_back({Element::monomial(-g.r0(), 1), h_perp(g)});
  }
  return spec;
}

BallSet example_lambda(ExampleId id, const ExampleParams& params, int n) {
  require(n >= 1, "Lambda index starts at 1");
  const GroupDescriptor g = example_group(id, params);
  Element center;
  if (id == ExampleId::QpWave3)
    center = n == 1 ? Element{} : alternating(n % 2 == 0 ? 1 : 2, n - 2);
  else
    center = ones(n - 1, g.r0());
  return BallSet(g, Side::Frequency, {make_ball(g, Side::Frequency, center, n)});
}

Measure example_lambda_limit(ExampleId id, const ExampleParams& params) {
  const GroupDescriptor g = example_group(id, params);
  if (id == ExampleId::QpWave3) return Measure(1, 2);
  return Measure(1) / Measure(g.modulus() - 1);
}

Complex example_closed_form(ExampleId id, const ExampleParams& params, const CosetIndex& s, const Element& x) {
  const GroupDescriptor g = example_group(id, params);
  // Only digits of x - s below 0 enter: the pairings below are with elements of H-perp.
  const Element y = subtract(g, x, s.representative(), 0);
  const double ind = y.below(0).is_zero() ? 1.0 : 0.0;
  const int r = g.r0();
  const int n = least_n(y, r);
  switch (id) {
    case ExampleId::QpWave:
    case ExampleId::QpExtnWave: {
      // p^(Nr) for Q_p, 9^(Nr) for the quadratic extension.
      const double big = std::pow(static_cast<double>(g.modulus()), n);
      const double pr = static_cast<double>(g.modulus());
      const Complex chi = pair(g, x, Element::monomial(-r, 1)) - 1.0;
      return ind + chi / big * pair(g, y, ones(n - 1, r)) + chi / (big * (pr - 1.0)) * pair(g, y, ones(n, r));
    }
    case ExampleId::FptWave:
    case ExampleId::FptWavePrinted: {
      const int p = g.p();
      int c = 0;
      for (int j = -n + 1; j <= -1; ++j) c += y.digit(j).a;
      const int d = c + y.digit(-n).a;
      const auto e = [p](int k) { return UnitComplex::from_turns(static_cast<std::uint64_t>(k % p), p).value(); };
      const Complex lead = (e(x.digit(0).a) - 1.0) / (std::pow(double(p), n) * (p - 1.0));
      if (id == ExampleId::FptWavePrinted) return ind + lead * (e(c) + (p - 1.0) * e(d));
      return ind + lead * ((p - 1.0) * e(c) + e(d));
    }
    case ExampleId::QpWave3: {
      const Complex chi1 = pair(g, x, Element::monomial(-1, 1)) - 1.0;
      const Complex chi2 = pair(g, x, Element::monomial(-1, 2)) - 1.0;
      const double t = std::pow(3.0, n);
      if (n % 2 == 0)
        return ind + chi2 / t * pair(g, y, alternating(1, n - 2)) +
               chi2 / (8.0 * t) * pair(g, y, alternating(1, n - 1)) +
               chi1 / (8.0 * t / 3.0) * pair(g, y, alternating(2, n - 1));
      return ind + chi1 / t * pair(g, y, alternating(2, n - 2)) + chi1 / (8.0 * t) * pair(g, y, alternating(2, n - 1)) +
             chi2 / (8.0 * t / 3.0) * pair(g, y, alternating(1, n - 1));
    }
  }
  throw ConfigError("unknown example");
}

}  // namespace lfwave
