#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rarebasis/cellset.hpp"

namespace rarebasis {

/// Keep the odd-indexed pieces (1st, 3rd, ...) of each maximal run of h,
/// partitioned into pieces of length 2^piece_exp. Halves the measure and
/// 1/2-saturates every run of h.
CellSet1D interleave(std::int64_t piece_exp, const CellSet1D& h);

/// Nested level sets built by descending interleaving from the full domain:
/// level k is [0, 2^{s_k}) and level m-1 = interleave(s_{m-1}, level m).
/// shell 0 = level 0 and shell m = level m \ level m-1.
///
/// Levels are materialized as explicit cell runs only while the run count
/// stays within a guard; beyond it the ladder is symbolic and only the
/// measure accessors (closed forms implied by the construction) remain.
class Ladder {
 public:
  std::size_t k() const { return scales_.size() - 1; }
  const std::vector<std::int64_t>& scales() const { return scales_; }
  std::int64_t scale(std::size_t m) const { return scales_[m]; }
  std::int64_t span_bits() const { return scales_.back() - scales_.front(); }

  bool materialized() const { return !levels_.empty(); }
  AxisFrame frame() const;
  const CellSet1D& level(std::size_t m) const;
  const CellSet1D& shell(std::size_t m) const;

  /// |level m| = 2^{s_k - (k - m)}, valid also for symbolic ladders.
  Dyadic level_measure(std::size_t m) const;
  /// |shell 0| = |level 0| and |shell m| = |level m| / 2 for m >= 1.
  Dyadic shell_measure(std::size_t m) const;

  friend Ladder build_ladder(std::span<const std::int64_t> scales,
                             std::int64_t max_materialized_runs);

 private:
  std::vector<std::int64_t> scales_;
  std::vector<CellSet1D> levels_;
  std::vector<CellSet1D> shells_;
};

inline constexpr std::int64_t kDefaultMaxMaterializedRuns = std::int64_t{1} << 22;

/// Requires at least two strictly increasing integer scales.
Ladder build_ladder(std::span<const std::int64_t> scales,
                    std::int64_t max_materialized_runs = kDefaultMaxMaterializedRuns);
inline Ladder build_ladder(const std::vector<std::int64_t>& scales,
                           std::int64_t max_materialized_runs = kDefaultMaxMaterializedRuns) {
  return build_ladder(std::span<const std::int64_t>(scales), max_materialized_runs);
}

struct LadderCounterexample {
  int property;          // 2 or 3, the violated saturation statement
  std::size_t m;         // level index
  std::int64_t t;        // log2 of the interval length
  std::int64_t position; // start cell of the offending interval
  std::int64_t expected_cells;
  std::int64_t actual_cells;
  std::string describe() const;
};

struct LadderReport {
  bool pass = false;
  std::uint64_t intervals_checked = 0;
  std::optional<LadderCounterexample> counterexample;
};

/// Exhaustive check over every dyadic-aligned interval J inside level m with
/// length 2^t, t in (s_{m-1}, s_m], including all intermediate lengths:
/// level m-1 must 1/2-saturate J and level 0 must 1/2^m-saturate J.
/// Reports the lexicographically first (m, t, position) counterexample.
LadderReport verify_ladder(const Ladder& ladder);

}  // namespace rarebasis
