#pragma once

#include "lfwave/step_function.hpp"

namespace lfwave {

enum class TransformPath {
  // DFT on the finite quotient group behind the window (FFTW).
  Quotient,
  // Sum of indicator transforms cell by cell; slow reference.
  Cellwise,
};

// Input window (m, r); the output window is (r, m).
struct TransformPlan {
  GroupDescriptor group;
  int m;
  int r;

  int out_m() const noexcept { return r; }
  int out_r() const noexcept { return m; }
};

// conj((c, gamma)) M^-r on (A*)^r H-perp, 0 outside.
Complex indicator_transform_value(const GroupDescriptor& g, const Element& c, int r, const Element& gamma);
// Transform of the indicator of c + A^-r H as a frequency-side step function.
StepFunction indicator_transform(const GroupDescriptor& g, const Element& c, int r, const Limits& limits = {});

StepFunction transform(const StepFunction& f, TransformPath path = TransformPath::Quotient,
                       const Limits& limits = {});
StepFunction inverse_transform(const StepFunction& spectrum, TransformPath path = TransformPath::Quotient,
                               const Limits& limits = {});

}  // namespace lfwave
