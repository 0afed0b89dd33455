#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfwave/ball.hpp"
#include "lfwave/fourier.hpp"
#include "lfwave/operators.hpp"
#include "lfwave/step_function.hpp"

namespace lfwave {

struct WaveletSystem {
  GroupDescriptor group;
  // M - 1 Haar/Shannon generators, or the single wavelet-set generator.
  std::vector<StepFunction> generators;
  // sigma_0 .. sigma_{M-1} for the Haar system, empty otherwise.
  std::vector<Element> sigmas;
  // Frequency support of the generators taken together.
  BallSet omega;
};

// The M - 1 elements of D inside A* H-perp other than 0, then 0 in front:
// d_prefix(g, 1) order.
std::vector<Element> haar_sigmas(const GroupDescriptor& g);

WaveletSystem haar_shannon_system(const GroupDescriptor& g, const Limits& limits = {});

// (x, sigma_i) 1_{s+H}(x) on the window (depth of s, 1).
StepFunction haar_closed_form(const GroupDescriptor& g, int i, const CosetIndex& s, const Limits& limits = {});

struct PartitionPart {
  Element sigma;
  BallSet set;
};

struct WaveletSetSpec {
  std::vector<PartitionPart> partition;
  int max_iterations = 64;
  Measure epsilon = Measure(1) / Measure(boost::multiprecision::cpp_int(1) << 40);
};

// Throws ConfigError unless the parts cover H-perp disjointly and every sigma
// is a distinct nonzero element of D inside A* H-perp.
void validate(const GroupDescriptor& g, const WaveletSetSpec& spec);

struct WaveletSetResult {
  BallSet omega;
  // Lambda_1 .. Lambda_N.
  std::vector<BallSet> lambdas;
  Measure lambda_measure;
  // Measure of the first Lambda not taken plus the bound on the dropped
  // i-terms of the last union. An estimate of nu(Lambda) - lambda_measure.
  Measure dropped_measure;
  int iterations = 0;
  Measure epsilon;
};

// T on a subset of H-perp: gamma + sigma on each V_sigma.
BallSet apply_T(const GroupDescriptor& g, const WaveletSetSpec& spec, const BallSet& set);
WaveletSetResult build_wavelet_set(const GroupDescriptor& g, const WaveletSetSpec& spec);
// Measure of omega symmetric-difference (H-perp \ U) u T(U), U the union of
// (A*)^-n omega over n >= 1 cut where M^-n < epsilon.
Measure fixed_point_residual(const GroupDescriptor& g, const WaveletSetSpec& spec, const BallSet& omega);

// Inverse transform of the indicator of omega.
StepFunction wavelet_from_set(const GroupDescriptor& g, const BallSet& omega, const Limits& limits = {});

// Evaluates delta^n tau_[s] psi, psi the inverse transform of 1_omega, as an
// exact sum over the balls of omega. Needs every ball of omega at scale >= 0.
class SpectralWavelet {
 public:
  SpectralWavelet(const GroupDescriptor& g, const BallSet& omega);

  const GroupDescriptor& group() const noexcept { return g_; }
  const BallSet& omega() const noexcept { return omega_; }

  Complex eval(const CosetIndex& s, const Element& x) const;
  Complex eval(const BasisIndex& idx, const Element& x) const;

  // One nonempty intersection (A*)^n B_j cap (A*)^n' B_k.
  struct Overlap {
    std::size_t j;
    std::size_t k;
    Ball ball;
  };
  std::vector<Overlap> overlaps(int n, int n2) const;
  // <delta^n tau_s psi, delta^n' tau_s' psi> from the overlaps of (n, n').
  Complex inner(const BasisIndex& a, const BasisIndex& b, const std::vector<Overlap>& ov) const;
  Complex inner(const BasisIndex& a, const BasisIndex& b) const { return inner(a, b, overlaps(a.n, b.n)); }

 private:
  GroupDescriptor g_;
  BallSet omega_;
};

enum class ExampleId { QpWave, QpExtnWave, FptWave, FptWavePrinted, QpWave3 };

std::string example_name(ExampleId id);
std::optional<ExampleId> example_from_name(const std::string& name);

struct ExampleParams {
  int p = 2;
  int r = 1;
};

GroupDescriptor example_group(ExampleId id, const ExampleParams& params);
WaveletSetSpec example_spec(ExampleId id, const ExampleParams& params);
// Lambda_n as listed in the example, n >= 1.
BallSet example_lambda(ExampleId id, const ExampleParams& params, int n);
// nu(Lambda) of the example.
Measure example_lambda_limit(ExampleId id, const ExampleParams& params);
// tau_[s] psi(x) from the example's closed form.
Complex example_closed_form(ExampleId id, const ExampleParams& params, const CosetIndex& s, const Element& x);

}  // namespace lfwave
