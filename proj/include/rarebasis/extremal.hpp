#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rarebasis/dyadic.hpp"
#include "rarebasis/ladder.hpp"
#include "rarebasis/omega.hpp"
#include "rarebasis/spectrum.hpp"

namespace rarebasis {

/// Product configuration: one ladder per axis, with the distinguished set
/// E = level_0(axis 1) x ... x level_0(axis n).
struct ExtremalConfig {
  std::size_t n = 0;
  std::int64_t k = 0;
  std::vector<Ladder> ladders;

  Dyadic e_measure() const;
  std::vector<Tuple> sequences() const;
  /// Sum over axes of span bits; the grid of the full evaluation domain has
  /// 2^total_span_bits cells.
  std::int64_t total_span_bits() const;
  bool materialized() const;
};

ExtremalConfig build_extremal(const std::vector<Tuple>& sequences,
                              std::int64_t max_materialized_runs = kDefaultMaxMaterializedRuns);

/// Exact measure of the union over omega of the level-set products
/// (union over m of level_{m_1} x ... x level_{m_n}), computed by summing
/// shell-measure products over the downward closure of omega in the shell
/// lattice {0..k}^n. No grid is involved.
Dyadic union_level_set_measure(const ExtremalConfig& config, const OmegaSet& omega);

struct VerificationReport {
  std::size_t n = 0;
  std::int64_t k = 0;
  std::string family;
  std::vector<Tuple> sequences;
  Dyadic e_measure;
  Dyadic union_measure;
  Dyadic bound;           // 2^{-n} * card(realized) * 2^k * |E|
  Dyadic achieved_ratio;  // union / (2^k * |E|)
  bool pass = false;
  std::size_t requested_omega_card = 0;
  std::size_t realized_omega_card = 0;
  std::vector<Tuple> dropped_tuples;
  std::vector<std::string> warnings;

  // Optional oracle cross-check, filled by the cli layer when within guard.
  std::optional<bool> oracle_union_match;
  std::optional<bool> containment_ok;
  std::optional<std::string> oracle_note;

  // Threshold-alpha extras.
  std::optional<Dyadic> alpha;
  std::optional<ExactRatio> achieved_constant;  // union*alpha / (k^{n-1}*|E|)
  // Omega-schedule extras.
  std::optional<ExactRatio> omega_density;      // card(realized) / k^{n-1}
  std::optional<ExactRatio> achieved_c;         // union / (k^{n-1} * 2^k * |E|)
};

/// Realizes omega against the family within the window (unrealized tuples are
/// dropped with a warning), then verifies the exact lower bound
/// union >= 2^{-n} * card * 2^k * |E| on the realized subset.
VerificationReport verify_superlevel_bound(const ExtremalConfig& config, const OmegaSet& omega,
                                           const SpectrumFamily& family, const Window& window);

/// ceil(log2(1/alpha)) for alpha in (0,1), exact.
std::int64_t ceil_log2_inverse(const Dyadic& alpha);

/// union*alpha / (k^{n-1} |E|) attached as the instance's achieved constant.
void attach_alpha_constant(VerificationReport& report, const Dyadic& alpha);

/// Weak-type sharpness instance at threshold alpha: k = max(n, ceil
/// log2(1/alpha)), sequences from extraction, omega the full composition set.
/// Reports the achieved constant union*alpha / (k^{n-1} |E|).
VerificationReport weak_type_instance(const Dyadic& alpha, const SpectrumFamily& family,
                                      const std::vector<IntSet>& s, const Window& window,
                                      std::int64_t max_materialized_runs = kDefaultMaxMaterializedRuns);

struct OmegaScheduleItem {
  std::int64_t k = 0;
  OmegaSet omega;
  std::optional<std::vector<Tuple>> sequences;  // extracted when absent
};

/// Per-item completeness plus bound verification; failures are recorded in
/// the item's report and the run continues.
std::vector<VerificationReport> omega_schedule_run(
    const SpectrumFamily& family, const std::vector<IntSet>& s,
    const std::vector<OmegaScheduleItem>& items, const Window& window,
    std::int64_t max_materialized_runs = kDefaultMaxMaterializedRuns);

/// Thrown when sequence extraction fails; carries the extraction diagnostic.
struct ExtractionError : std::runtime_error {
  explicit ExtractionError(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace rarebasis
