#include "lfwave/verify.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <thread>

#include "lfwave/errors.hpp"

namespace lfwave {

namespace {

// Runs body(k) for k in [0, count) on a small pool. Each k writes its own
// slots, so results do not depend on scheduling.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        body(k);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

void check_window(const GramWindow& w) {
  if (w.n_min > w.n_max) throw ConfigError("n_min exceeds n_max");
  if (w.coset_depth < 0) throw ConfigError("coset depth must be >= 0");
  if (w.generators.empty()) throw ConfigError("no generators selected");
}

void summarize(GramReport& rep) {
  const std::size_t n = rep.indices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Complex v = rep.matrix[a * n + b];
      if (a == b)
        rep.max_diag_err = std::max(rep.max_diag_err, std::abs(v - 1.0));
      else
        rep.max_offdiag_abs = std::max(rep.max_offdiag_abs, std::abs(v));
    }
}

template <class Entry>
GramReport fill_gram(std::vector<BasisIndex> indices, const GramWindow& w, unsigned threads, Entry entry) {
  const auto start = std::chrono::steady_clock::now();
  GramReport rep;
  rep.window = w;
  rep.indices = std::move(indices);
  const std::size_t n = rep.indices.size();
  rep.matrix.assign(n * n, Complex{});
  parallel_for(n, threads, [&](std::size_t a) {
    for (std::size_t b = a; b < n; ++b) {
      const Complex v = entry(a, b);
      rep.matrix[a * n + b] = v;
      rep.matrix[b * n + a] = std::conj(v);
    }
  });
  summarize(rep);
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace

std::vector<BasisIndex> basis_window(const GroupDescriptor& g, const GramWindow& w) {
  check_window(w);
  for (int i : w.generators)
    if (i < 1) throw ConfigError("generator numbers start at 1");
  const auto cosets = CosetIndex::enumerate(g, w.coset_depth);
  std::vector<BasisIndex> out;
  for (int n = w.n_min; n <= w.n_max; ++n)
    for (const auto& s : cosets)
      for (int i : w.generators) out.push_back(BasisIndex{n, CosetIndex(g, s.representative()), i});
  return out;
}

GramReport gram_time(const std::vector<StepFunction>& generators, const GramWindow& w, unsigned threads,
                     const Limits& limits) {
  if (generators.empty()) throw ConfigError("no generators");
  for (int i : w.generators)
    if (i < 1 || static_cast<std::size_t>(i) > generators.size()) throw ConfigError("generator number out of range");
  const GroupDescriptor& g = generators.front().group();
  std::vector<BasisIndex> indices = basis_window(g, w);
  std::vector<std::optional<StepFunction>> fs(indices.size());
  parallel_for(indices.size(), threads, [&](std::size_t k) {
    fs[k] = apply_basis_index(generators[static_cast<std::size_t>(indices[k].i - 1)], indices[k], limits);
  });
  return fill_gram(std::move(indices), w, threads,
                   [&](std::size_t a, std::size_t b) { return inner_product(*fs[a], *fs[b]); });
}

GramReport gram_spectral(const SpectralWavelet& sw, const GramWindow& w, unsigned threads) {
  for (int i : w.generators)
    if (i != 1) throw ConfigError("a wavelet-set system has a single generator");
  std::vector<BasisIndex> indices = basis_window(sw.group(), w);
  const int span = w.n_max - w.n_min + 1;
  std::vector<std::vector<SpectralWavelet::Overlap>> ov(static_cast<std::size_t>(span * span));
  parallel_for(ov.size(), threads, [&](std::size_t k) {
    ov[k] = sw.overlaps(w.n_min + static_cast<int>(k) / span, w.n_min + static_cast<int>(k) % span);
  });
  const std::vector<BasisIndex> idx = indices;
  return fill_gram(std::move(indices), w, threads, [&](std::size_t a, std::size_t b) {
    const std::size_t k = static_cast<std::size_t>((idx[a].n - w.n_min) * span + (idx[b].n - w.n_min));
    return sw.inner(idx[a], idx[b], ov[k]);
  });
}

ParsevalReport parseval(const StepFunction& f, const std::vector<StepFunction>& generators, const GramWindow& w,
                        unsigned threads, const Limits& limits) {
  if (generators.empty()) throw ConfigError("no generators");
  if (f.side() != Side::Time) throw ConfigError("parseval expects a time-side function");
  const GroupDescriptor& g = generators.front().group();
  const std::vector<BasisIndex> indices = basis_window(g, w);
  std::vector<double> energy(indices.size());
  parallel_for(indices.size(), threads, [&](std::size_t k) {
    const StepFunction b =
        apply_basis_index(generators.at(static_cast<std::size_t>(indices[k].i - 1)), indices[k], limits);
    energy[k] = std::norm(inner_product(f, b));
  });
  ParsevalReport rep;
  rep.window = w;
  rep.total_norm_sq = f.norm_sq();
  const int top = std::max(std::abs(w.n_min), std::abs(w.n_max));
  for (int d = 0; d <= top; ++d) {
    double sum = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k)
      if (std::abs(indices[k].n) <= d) sum += energy[k];
    rep.levels.push_back(d);
    rep.captured.push_back(sum);
  }
  const double last = rep.captured.size() > 1 ? rep.captured.back() - rep.captured[rep.captured.size() - 2]
                                              : rep.captured.back();
  rep.tail_estimate = last / (static_cast<double>(g.modulus()) - 1.0);
  return rep;
}

CompareReport compare_example(ExampleId id, const ExampleParams& params, int samples, std::uint64_t seed, int max_n,
                              const Measure& epsilon) {
  if (samples < 1) throw ConfigError("need at least one sample");
  if (max_n < 1) throw ConfigError("max_n must be >= 1");
  const GroupDescriptor g = example_group(id, params);
  WaveletSetSpec spec = example_spec(id, params);
  spec.epsilon = epsilon;
  CompareReport rep{id, params, build_wavelet_set(g, spec), {}, 0.0};
  const SpectralWavelet sw(g, rep.wavelet_set.omega);
  const auto cosets = CosetIndex::enumerate(g, 2);
  std::mt19937_64 rng(seed);
  const auto digit = [&] {
    const auto k = static_cast<int>(rng() % g.residue_size());
    return digit_from_code(g, k);
  };
  for (int k = 0; k < samples; ++k) {
    const CosetIndex s(g, cosets[rng() % cosets.size()].representative());
    const int depth = static_cast<int>(rng() % static_cast<std::uint64_t>(max_n + 1));
    std::vector<Element::Term> terms;
    for (int pos = -depth * g.r0(); pos < g.r0() + 1; ++pos) terms.emplace_back(pos, digit());
    const Element h(std::move(terms));
    const Element x = add(g, s.representative(), h);
    const auto v = h.below(0).valuation();
    const int n = v ? std::max(1, (-*v + g.r0() - 1) / g.r0()) : 1;
    CompareSample sample{s, x, n, sw.eval(s, x), example_closed_form(id, params, s, x)};
    rep.max_error = std::max(rep.max_error, sample.error());
    rep.samples.push_back(std::move(sample));
  }
  return rep;
}

}  // namespace lfwave
