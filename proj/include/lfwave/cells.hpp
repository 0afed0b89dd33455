#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lfwave/group.hpp"

namespace lfwave {

enum class Side { Time, Frequency };

const char* side_name(Side side);
Side dual(Side side);

struct Limits {
  std::uint64_t max_cells = std::uint64_t{1} << 22;
};

// q^k, saturating at UINT64_MAX.
std::uint64_t ipow_sat(std::uint64_t q, int k);

// Number of cells of the window (m, r); throws GuardExceeded above the limit
// and ConfigError when m + r < 0.
std::uint64_t checked_cell_count(const GroupDescriptor& g, int m, int r, const Limits& limits);

// Digit vectors of the window (m, r) covering positions [-m*r0, r*r0). The
// cell index reads the per-position digit codes as a base-q number whose
// least significant digit sits at the lowest position.
class CellCodec {
 public:
  CellCodec(const GroupDescriptor& g, int m, int r, const Limits& limits = {});

  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return hi_; }
  int length() const noexcept { return hi_ - lo_; }
  std::uint64_t size() const noexcept { return size_; }
  std::uint64_t radix() const noexcept { return q_; }

  // nullopt when x has a digit below lo; digits at hi and above are ignored.
  std::optional<std::uint64_t> index_of(const Element& x) const;
  // The representative with digits only inside the window.
  Element element_of(std::uint64_t index) const;
  std::vector<int> codes_of(std::uint64_t index) const;
  std::uint64_t index_of_codes(const std::vector<int>& codes) const;

 private:
  GroupDescriptor g_;
  int lo_;
  int hi_;
  std::uint64_t q_;
  std::uint64_t size_;
};

// Maps a cell of a window starting at from_lo to the cell of [to_lo, to_hi)
// containing it; the source window must end at or above to_hi. nullopt when
// the cell falls outside the target support.
std::optional<std::uint64_t> coarsen_index(std::uint64_t q, std::uint64_t index, int from_lo, int to_lo,
                                           int to_hi);

}  // namespace lfwave
