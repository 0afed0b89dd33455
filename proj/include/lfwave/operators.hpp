#pragma once

#include <cstdint>
#include <vector>

#include "lfwave/fourier.hpp"
#include "lfwave/step_function.hpp"

namespace lfwave {

// A coset s + H, represented by the digits of s at negative positions.
class CosetIndex {
 public:
  CosetIndex() = default;
  // Digits of s at positions >= 0 are dropped. depth is raised to the
  // smallest d with every digit inside [-d*r0, -1].
  CosetIndex(const GroupDescriptor& g, const Element& s, int depth = 0);

  const Element& representative() const noexcept { return s_; }
  int depth() const noexcept { return depth_; }

  // All cosets with digits inside [-depth*r0, -1], in d_prefix order.
  static std::vector<CosetIndex> enumerate(const GroupDescriptor& g, int depth);

  friend bool operator==(const CosetIndex& x, const CosetIndex& y) { return x.s_ == y.s_; }

 private:
  Element s_;
  int depth_ = 0;
};

// Smallest d >= 0 with every negative-position digit of s at or above -d*r0.
int coset_depth(const GroupDescriptor& g, const Element& s);

// [s] + [t] in G/H.
CosetIndex coset_add(const GroupDescriptor& g, const CosetIndex& s, const CosetIndex& t);

struct BasisIndex {
  int n = 0;
  CosetIndex s;
  int i = 1;
};

// M^(n/2) f(A^n x). Time side only.
StepFunction dilate(const StepFunction& f, int n);

// conj((s, eta(gamma))) for one frequency.
Complex multiplier_value(const GroupDescriptor& g, const Element& s, const Element& gamma);
// The multiplier of the coset translation on the frequency window
// (m, max(r, depth of s)). s may carry digits at positions >= 0.
StepFunction multiplier_w(const GroupDescriptor& g, const Element& s, int m, int r, const Limits& limits = {});

// Coset translation through the frequency side.
StepFunction translate(const StepFunction& f, const CosetIndex& s, const Limits& limits = {});
// Same with a raw representative.
StepFunction translate(const StepFunction& f, const Element& s, const Limits& limits = {});

// Closed form of the translated ball indicator with the standard
// representatives: for r <= 0 the indicator of s + c + A^-r H, for r > 0
// M^-r sum_i (x - c, sigma_i) on s + c + H with sigma_i = d_prefix(g, r).
StepFunction translate_direct_oracle(const GroupDescriptor& g, const Ball& ball, const CosetIndex& s,
                                     const Limits& limits = {});

// p^-n sum_{j < p^n} exp(2 pi i m j / p^(l+n)).
Complex qp_translate_sum(int p, int n, std::uint64_t m, int l);
// q^-n sum_{m3, m4 < p^n} exp(4 pi i (m1 m3 + u m2 m4) / p^(l+n)), q = p^2.
// u may be negative (u = -1 for the sqrt(-1) basis).
Complex quad_translate_sum(int p, int u, int n, std::uint64_t m1, std::uint64_t m2, int l);

// dilate(translate(psi, idx.s), idx.n).
StepFunction apply_basis_index(const StepFunction& psi, const BasisIndex& idx, const Limits& limits = {});

}  // namespace lfwave
