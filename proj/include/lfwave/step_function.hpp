#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "lfwave/ball.hpp"
#include "lfwave/cells.hpp"
#include "lfwave/group.hpp"

namespace lfwave {

// Locally constant function supported in the scale -m ball around 0 and
// constant on scale r balls, stored sparsely by cell index of the window
// (m, r). Missing cells are zero.
class StepFunction {
 public:
  using Cells = std::map<std::uint64_t, Complex>;

  StepFunction(const GroupDescriptor& g, Side side, int m, int r, const Limits& limits = {});

  const GroupDescriptor& group() const noexcept { return g_; }
  Side side() const noexcept { return side_; }
  int m() const noexcept { return m_; }
  int r() const noexcept { return r_; }
  std::uint64_t cell_count() const noexcept { return count_; }
  CellCodec codec() const { return CellCodec(g_, m_, r_, Limits{count_}); }
  // M^(-r), the Haar measure of one cell.
  double cell_measure() const;

  const Cells& cells() const noexcept { return cells_; }
  Complex at(std::uint64_t index) const;
  void set(std::uint64_t index, Complex value);
  void add(std::uint64_t index, Complex value);

  Complex eval(const Element& x) const;
  double norm_sq() const;
  StepFunction scaled(Complex c) const;

 private:
  GroupDescriptor g_;
  Side side_;
  int m_;
  int r_;
  std::uint64_t count_;
  Cells cells_;
};

StepFunction indicator(const GroupDescriptor& g, const Ball& ball, const Limits& limits = {});
// Same function on a larger window (m >= f.m(), r >= f.r()).
StepFunction refine(const StepFunction& f, int m, int r, const Limits& limits = {});
StepFunction linear_combine(std::span<const Complex> coeffs, std::span<const StepFunction> fs,
                            const Limits& limits = {});
// Integral of f * conj(h).
Complex inner_product(const StepFunction& f, const StepFunction& h);
double max_abs_difference(const StepFunction& f, const StepFunction& h, const Limits& limits = {});

}  // namespace lfwave
