#pragma once

#include <cstdint>
#include <vector>

#include "rarebasis/dyadic.hpp"

namespace rarebasis {

/// 1D dyadic grid: cells of side 2^fine_exp tiling the domain [0, 2^coarse_exp).
struct AxisFrame {
  std::int64_t fine_exp;
  std::int64_t coarse_exp;

  AxisFrame(std::int64_t fine, std::int64_t coarse);

  std::int64_t span_bits() const { return coarse_exp - fine_exp; }
  std::int64_t cell_count() const { return std::int64_t{1} << span_bits(); }
  Dyadic cell_measure() const { return Dyadic::pow2(fine_exp); }
  Dyadic domain_measure() const { return Dyadic::pow2(coarse_exp); }

  friend bool operator==(const AxisFrame& a, const AxisFrame& b) {
    return a.fine_exp == b.fine_exp && a.coarse_exp == b.coarse_exp;
  }
  friend bool operator!=(const AxisFrame& a, const AxisFrame& b) { return !(a == b); }
};

/// Half-open run of cell indices [begin, end).
struct Run {
  std::int64_t begin;
  std::int64_t end;
  friend bool operator==(const Run& a, const Run& b) {
    return a.begin == b.begin && a.end == b.end;
  }
};

/// Union of cell runs inside an AxisFrame. Canonical form: runs sorted,
/// disjoint and non-adjacent, so the stored runs are the maximal ones.
class CellSet1D {
 public:
  explicit CellSet1D(AxisFrame frame) : frame_(frame) {}

  static CellSet1D empty(AxisFrame frame) { return CellSet1D(frame); }
  static CellSet1D full(AxisFrame frame);
  /// Sorts and merges adjacent runs; throws on overlap or out-of-range.
  static CellSet1D from_runs(AxisFrame frame, std::vector<Run> runs);

  const AxisFrame& frame() const { return frame_; }
  const std::vector<Run>& runs() const { return runs_; }
  bool is_empty() const { return runs_.empty(); }
  std::size_t run_count() const { return runs_.size(); }

  /// Total number of set cells.
  std::int64_t cell_total() const { return cum_.empty() ? 0 : cum_.back(); }
  /// Exact Lebesgue measure, cell_total * 2^fine_exp.
  Dyadic measure() const { return Dyadic::from_units(cell_total(), frame_.fine_exp); }

  /// Number of set cells with index < x.
  std::int64_t cells_below(std::int64_t x) const;
  /// Number of set cells in [a, b).
  std::int64_t cells_in(std::int64_t a, std::int64_t b) const {
    return cells_below(b) - cells_below(a);
  }
  bool contains_cell(std::int64_t i) const { return cells_in(i, i + 1) == 1; }
  bool contains_range(std::int64_t a, std::int64_t b) const {
    return cells_in(a, b) == b - a;
  }
  bool contains(const CellSet1D& other) const;

  friend CellSet1D intersect(const CellSet1D& a, const CellSet1D& b);
  friend CellSet1D unite(const CellSet1D& a, const CellSet1D& b);
  friend CellSet1D difference(const CellSet1D& a, const CellSet1D& b);

  friend bool operator==(const CellSet1D& a, const CellSet1D& b) {
    return a.frame_ == b.frame_ && a.runs_ == b.runs_;
  }
  friend bool operator!=(const CellSet1D& a, const CellSet1D& b) { return !(a == b); }

 private:
  void rebuild_cum();

  AxisFrame frame_;
  std::vector<Run> runs_;
  std::vector<std::int64_t> cum_;  // cum_[i] = cells in runs_[0..i)
};

/// True iff every maximal run I of h satisfies |I ∩ e| / |I| = alpha exactly.
/// Throws if frames differ or h is empty.
bool saturates(const CellSet1D& e, const CellSet1D& h, const Dyadic& alpha);

}  // namespace rarebasis
