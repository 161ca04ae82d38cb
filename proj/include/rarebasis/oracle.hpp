#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "rarebasis/extremal.hpp"

namespace rarebasis {

inline constexpr std::int64_t kDefaultGridGuard = std::int64_t{1} << 24;

/// Flat bit mask over the n-dimensional cell grid of an evaluation domain,
/// row-major with the last axis contiguous.
class GridMask {
 public:
  GridMask(std::vector<AxisFrame> frames, std::int64_t guard = kDefaultGridGuard);

  const std::vector<AxisFrame>& frames() const { return frames_; }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::int64_t total_cells() const { return total_; }

  bool get(std::int64_t flat) const {
    return (bits_[static_cast<std::size_t>(flat >> 6)] >> (flat & 63)) & 1;
  }
  void set(std::int64_t flat) {
    bits_[static_cast<std::size_t>(flat >> 6)] |= std::uint64_t{1} << (flat & 63);
  }
  /// Sets the flat range [begin, end).
  void set_range(std::int64_t begin, std::int64_t end);
  void or_with(const GridMask& other);

  std::int64_t flat_index(std::span<const std::int64_t> coords) const;
  std::vector<std::int64_t> coords_of(std::int64_t flat) const;

  std::int64_t popcount() const;
  /// popcount() * prod_j 2^{fine_j}, exact.
  Dyadic measure() const;

  bool contains(const GridMask& other) const;
  /// First flat index set in other but not here.
  std::optional<std::int64_t> first_missing(const GridMask& other) const;

  friend bool operator==(const GridMask& a, const GridMask& b) {
    return a.frames_ == b.frames_ && a.bits_ == b.bits_;
  }

  /// Text export: header with dims and frames, run-length encoded bits.
  void export_rle(std::ostream& out) const;
  static GridMask parse_rle(std::istream& in, std::int64_t guard = kDefaultGridGuard);

 private:
  std::vector<AxisFrame> frames_;
  std::vector<std::int64_t> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t total_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Bits set exactly on the cells of E = prod_j level_0(axis j).
GridMask materialize(const ExtremalConfig& config, std::int64_t guard = kDefaultGridGuard);

/// Bits set on the union over omega of the level-set products; the measure of
/// this mask is the grid-side value that the analytic summation must match.
GridMask grid_union(const ExtremalConfig& config, const OmegaSet& omega,
                    std::int64_t guard = kDefaultGridGuard);

/// Per-cell maximum count of set cells over the cell-aligned windows of
/// length 2^window_exp containing the cell and lying inside the domain.
/// A sliding-window sum followed by a sliding range-maximum pass.
std::vector<std::int64_t> sliding_window_max_counts(const CellSet1D& axis_set,
                                                    std::int64_t window_exp);

/// Exact per-cell maximum averages; values are counts / 2^{window_exp - fine}.
std::vector<Dyadic> sliding_profile(const CellSet1D& axis_set, std::int64_t window_exp);

using Shape = Tuple;  // per-axis window exponents t_j

/// Marks cells whose best product average over the given shapes reaches the
/// threshold. Monotone in shapes, antitone in threshold. Deterministic for
/// any thread count (disjoint slabs merged by fixed-order OR).
GridMask restricted_superlevel(const ExtremalConfig& config, const std::vector<Shape>& shapes,
                               const Dyadic& threshold, std::int64_t guard = kDefaultGridGuard,
                               unsigned threads = 1);

struct ContainmentReport {
  bool ok = false;
  std::int64_t union_cells = 0;
  std::int64_t marked_cells = 0;
  std::optional<std::vector<std::int64_t>> first_failure;  // cell coordinates
};

/// Confirms cell-by-cell that the analytic union is contained in the
/// superlevel set of the restricted maximal operator at threshold 2^{-k},
/// using one realizing shape per omega tuple.
ContainmentReport check_containment(const ExtremalConfig& config, const OmegaSet& omega,
                                    const std::map<Tuple, Shape>& shapes_for_omega,
                                    std::int64_t guard = kDefaultGridGuard,
                                    unsigned threads = 1);

}  // namespace rarebasis
