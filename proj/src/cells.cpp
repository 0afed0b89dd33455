#include "lfwave/cells.hpp"

#include <limits>
#include <string>

#include "lfwave/errors.hpp"

namespace lfwave {

const char* side_name(Side side) { return side == Side::Time ? "time" : "frequency"; }

Side dual(Side side) { return side == Side::Time ? Side::Frequency : Side::Time; }

std::uint64_t ipow_sat(std::uint64_t q, int k) {
  std::uint64_t v = 1;
  for (int i = 0; i < k; ++i) {
    if (v > std::numeric_limits<std::uint64_t>::max() / q) return std::numeric_limits<std::uint64_t>::max();
    v *= q;
  }
  return v;
}

std::uint64_t checked_cell_count(const GroupDescriptor& g, int m, int r, const Limits& limits) {
  if (m + r < 0) throw ConfigError("window (" + std::to_string(m) + ", " + std::to_string(r) + ") has m + r < 0");
  const std::uint64_t n = ipow_sat(g.modulus(), m + r);
  if (n > limits.max_cells)
    throw GuardExceeded("window (" + std::to_string(m) + ", " + std::to_string(r) + ") needs " +
                        (n == std::numeric_limits<std::uint64_t>::max() ? std::string("over 2^64")
                                                                        : std::to_string(n)) +
                        " cells, limit " + std::to_string(limits.max_cells));
  return n;
}

CellCodec::CellCodec(const GroupDescriptor& g, int m, int r, const Limits& limits)
    : g_(g),
      lo_(-m * g.r0()),
      hi_(r * g.r0()),
      q_(static_cast<std::uint64_t>(g.residue_size())),
      size_(checked_cell_count(g, m, r, limits)) {}

std::optional<std::uint64_t> CellCodec::index_of(const Element& x) const {
  std::uint64_t index = 0;
  std::uint64_t weight = 1;
  int pos = lo_;
  for (const auto& [p, d] : x.terms()) {
    if (p < lo_) return std::nullopt;
    if (p >= hi_) break;
    for (; pos < p; ++pos) weight *= q_;
    index += weight * static_cast<std::uint64_t>(digit_code(g_, d));
  }
  return index;
}

std::vector<int> CellCodec::codes_of(std::uint64_t index) const {
  std::vector<int> codes(static_cast<std::size_t>(length()));
  for (auto& c : codes) {
    c = static_cast<int>(index % q_);
    index /= q_;
  }
  return codes;
}

std::uint64_t CellCodec::index_of_codes(const std::vector<int>& codes) const {
  std::uint64_t index = 0;
  for (auto it = codes.rbegin(); it != codes.rend(); ++it) index = index * q_ + static_cast<std::uint64_t>(*it);
  return index;
}

Element CellCodec::element_of(std::uint64_t index) const {
  std::vector<Element::Term> terms;
  for (int pos = lo_; index != 0; ++pos, index /= q_) {
    const int c = static_cast<int>(index % q_);
    if (c != 0) terms.emplace_back(pos, digit_from_code(g_, c));
  }
  return Element(std::move(terms));
}

std::optional<std::uint64_t> coarsen_index(std::uint64_t q, std::uint64_t index, int from_lo, int to_lo,
                                           int to_hi) {
  const int len = to_hi - to_lo;
  if (to_lo > from_lo) {
    const std::uint64_t w = ipow_sat(q, to_lo - from_lo);
    if (w != std::numeric_limits<std::uint64_t>::max()) {
      if (index % w != 0) return std::nullopt;
      index /= w;
    } else if (index != 0) {
      return std::nullopt;
    }
  } else if (to_lo < from_lo) {
    const int k = from_lo - to_lo;
    if (k >= len) return 0;
    index %= ipow_sat(q, len - k);
    index *= ipow_sat(q, k);
  }
  const std::uint64_t span = ipow_sat(q, len);
  return span == std::numeric_limits<std::uint64_t>::max() ? index : index % span;
}

}  // namespace lfwave
