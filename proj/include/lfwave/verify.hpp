#pragma once

#include <string>
#include <vector>

#include "lfwave/operators.hpp"
#include "lfwave/wavelets.hpp"

namespace lfwave {

struct GramWindow {
  int n_min = 0;
  int n_max = 0;
  int coset_depth = 0;
  // Generator numbers, 1-based.
  std::vector<int> generators{1};
};

// Indices ordered by n, then coset in d_prefix order, then generator.
// Size (n_max - n_min + 1) * M^coset_depth * generators.size().
std::vector<BasisIndex> basis_window(const GroupDescriptor& g, const GramWindow& w);

struct GramReport {
  GramWindow window;
  std::vector<BasisIndex> indices;
  // Row-major, indices.size() squared.
  std::vector<Complex> matrix;
  double max_offdiag_abs = 0.0;
  double max_diag_err = 0.0;
  double runtime_ms = 0.0;

  std::size_t matrix_size() const noexcept { return indices.size(); }
  double deviation() const noexcept { return std::max(max_offdiag_abs, max_diag_err); }
};

// Gram matrix of delta^n tau_s psi_i built as step functions.
GramReport gram_time(const std::vector<StepFunction>& generators, const GramWindow& w, unsigned threads = 0,
                     const Limits& limits = {});
// Gram matrix of a single wavelet given by its frequency set.
GramReport gram_spectral(const SpectralWavelet& sw, const GramWindow& w, unsigned threads = 0);

struct ParsevalReport {
  GramWindow window;
  // Level d keeps n in [n_min, n_max] with |n| <= d.
  std::vector<int> levels;
  std::vector<double> captured;
  double total_norm_sq = 0.0;
  // Next increments continued geometrically with ratio 1/M.
  double tail_estimate = 0.0;
};

ParsevalReport parseval(const StepFunction& f, const std::vector<StepFunction>& generators, const GramWindow& w,
                        unsigned threads = 0, const Limits& limits = {});

struct CompareSample {
  CosetIndex s;
  Element x;
  int n = 0;
  Complex generic;
  Complex closed;
  double error() const { return std::abs(generic - closed); }
};

struct CompareReport {
  ExampleId id;
  ExampleParams params;
  WaveletSetResult wavelet_set;
  std::vector<CompareSample> samples;
  double max_error = 0.0;
};

// Random points x = s + h with s of depth <= 2 and h reaching down to
// position -max_n * r0, so N ranges over 1..max_n.
CompareReport compare_example(ExampleId id, const ExampleParams& params, int samples, std::uint64_t seed,
                              int max_n = 4, const Measure& epsilon = WaveletSetSpec{}.epsilon);

}  // namespace lfwave
