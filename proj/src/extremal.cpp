#include "rarebasis/extremal.hpp"

#include <algorithm>
#include <stdexcept>

namespace rarebasis {

Dyadic ExtremalConfig::e_measure() const {
  Dyadic m(1);
  for (const Ladder& ladder : ladders) m = m * ladder.level_measure(0);
  return m;
}

std::vector<Tuple> ExtremalConfig::sequences() const {
  std::vector<Tuple> out;
  out.reserve(ladders.size());
  for (const Ladder& ladder : ladders) out.push_back(ladder.scales());
  return out;
}

std::int64_t ExtremalConfig::total_span_bits() const {
  std::int64_t total = 0;
  for (const Ladder& ladder : ladders) total += ladder.span_bits();
  return total;
}

bool ExtremalConfig::materialized() const {
  for (const Ladder& ladder : ladders) {
    if (!ladder.materialized()) return false;
  }
  return !ladders.empty();
}

ExtremalConfig build_extremal(const std::vector<Tuple>& sequences,
                              std::int64_t max_materialized_runs) {
  if (sequences.empty()) throw std::invalid_argument("build_extremal: no sequences");
  const std::size_t len = sequences.front().size();
  if (len < 2) throw std::invalid_argument("build_extremal: sequences need k >= 1");
  for (const Tuple& seq : sequences) {
    if (seq.size() != len) {
      throw std::invalid_argument("build_extremal: sequences must share one length");
    }
  }
  ExtremalConfig config;
  config.n = sequences.size();
  config.k = static_cast<std::int64_t>(len) - 1;
  for (const Tuple& seq : sequences) {
    config.ladders.push_back(build_ladder(seq, max_materialized_runs));
  }
  return config;
}

Dyadic union_level_set_measure(const ExtremalConfig& config, const OmegaSet& omega) {
  const std::size_t n = config.n;
  const std::int64_t k = config.k;
  if (omega.n != n) throw std::invalid_argument("union_level_set_measure: dimension mismatch");
  if (omega.k != k) throw std::invalid_argument("union_level_set_measure: k mismatch");
  if (omega.tuples.empty()) return Dyadic();
  for (const Tuple& m : omega.tuples) {
    for (std::int64_t v : m) {
      if (v < 1 || v > k) throw std::invalid_argument("union_level_set_measure: tuple out of range");
    }
  }

  // Downward closure of omega in {0..k}^n: the level-set products decompose
  // into disjoint shell products, one per closure cell.
  const std::size_t side = static_cast<std::size_t>(k) + 1;
  std::size_t total = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (total > (std::size_t{1} << 40) / side) {
      throw std::invalid_argument("union_level_set_measure: closure lattice too large");
    }
    total *= side;
  }
  std::vector<char> closed(total, 0);
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t j = n; j-- > 1;) stride[j - 1] = stride[j] * side;

  Tuple cell(n, 0);
  for (const Tuple& m : omega.tuples) {
    // Mark the box [0..m_1] x ... x [0..m_n].
    std::fill(cell.begin(), cell.end(), 0);
    while (true) {
      std::size_t flat = 0;
      for (std::size_t j = 0; j < n; ++j) flat += stride[j] * static_cast<std::size_t>(cell[j]);
      closed[flat] = 1;
      std::size_t j = n;
      while (j > 0 && cell[j - 1] == m[j - 1]) cell[--j] = 0;
      if (j == 0) break;
      cell[j - 1]++;
    }
  }

  std::vector<std::vector<Dyadic>> shell_measures(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < side; ++m) {
      shell_measures[j].push_back(config.ladders[j].materialized()
                                      ? config.ladders[j].shell(m).measure()
                                      : config.ladders[j].shell_measure(m));
    }
  }

  Dyadic sum;
  std::fill(cell.begin(), cell.end(), 0);
  std::size_t flat = 0;
  while (true) {
    if (closed[flat]) {
      Dyadic term(1);
      for (std::size_t j = 0; j < n; ++j) {
        term = term * shell_measures[j][static_cast<std::size_t>(cell[j])];
      }
      sum = sum + term;
    }
    std::size_t j = n;
    while (j > 0 && cell[j - 1] == k) cell[--j] = 0;
    if (j == 0) break;
    cell[j - 1]++;
    flat = 0;
    for (std::size_t i = 0; i < n; ++i) flat += stride[i] * static_cast<std::size_t>(cell[i]);
  }
  return sum;
}

VerificationReport verify_superlevel_bound(const ExtremalConfig& config, const OmegaSet& omega,
                                           const SpectrumFamily& family, const Window& window) {
  VerificationReport report;
  report.n = config.n;
  report.k = config.k;
  report.family = family.to_string();
  report.sequences = config.sequences();
  report.e_measure = config.e_measure();
  report.requested_omega_card = omega.tuples.size();

  const CompletenessResult comp = completeness(family, report.sequences, omega, window);
  report.realized_omega_card = comp.realized.tuples.size();
  report.dropped_tuples = comp.unrealized;
  for (const Tuple& t : comp.unrealized) {
    std::string w = "tuple not realized by the basis in window:";
    for (std::int64_t v : t) w += " " + std::to_string(v);
    report.warnings.push_back(std::move(w));
  }

  report.union_measure = union_level_set_measure(config, comp.realized);
  const std::int64_t card = static_cast<std::int64_t>(comp.realized.tuples.size());
  report.bound = (Dyadic(card) * report.e_measure)
                     .mul_pow2(config.k - static_cast<std::int64_t>(config.n));
  // |E| is always a pure power of two, so the ratio stays dyadic.
  report.achieved_ratio =
      report.union_measure.div_pow2(config.k + report.e_measure.exponent());
  report.pass = card > 0 && report.union_measure >= report.bound;
  if (card == 0) report.warnings.push_back("no omega tuple realized; vacuous instance fails");
  return report;
}

std::int64_t ceil_log2_inverse(const Dyadic& alpha) {
  if (alpha.sign() <= 0 || alpha >= Dyadic(1)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  // alpha = m * 2^e normalized; the least c with alpha * 2^c >= 1 is
  // -e - floor(log2 m).
  const std::int64_t floor_log2_m =
      static_cast<std::int64_t>(boost::multiprecision::msb(alpha.mantissa()));
  return -alpha.exponent() - floor_log2_m;
}

namespace {

VerificationReport run_instance(const SpectrumFamily& family, const std::vector<IntSet>& s,
                                std::int64_t k, const OmegaSet& omega, const Window& window,
                                std::int64_t max_materialized_runs) {
  const ExtractionResult ext =
      extract_sequences(family, s, static_cast<std::size_t>(k), window);
  if (!ext.ok) {
    throw ExtractionError(ext.error + " (coordinate " + std::to_string(ext.blocking_coord) + ")");
  }
  const ExtremalConfig config = build_extremal(ext.sequences, max_materialized_runs);
  return verify_superlevel_bound(config, omega, family, window);
}

ExactRatio over_pow2(const Dyadic& value, const BigInt& den, std::int64_t pow2_shift) {
  // value / (den * 2^pow2_shift)
  return ExactRatio::from_dyadic_over(value.div_pow2(pow2_shift), den);
}

}  // namespace

void attach_alpha_constant(VerificationReport& report, const Dyadic& alpha) {
  report.alpha = alpha;
  const BigInt k_pow = ipow(BigInt(report.k), static_cast<std::int64_t>(report.n) - 1);
  report.achieved_constant = over_pow2(report.union_measure * alpha, k_pow,
                                       report.e_measure.exponent());
}

VerificationReport weak_type_instance(const Dyadic& alpha, const SpectrumFamily& family,
                                      const std::vector<IntSet>& s, const Window& window,
                                      std::int64_t max_materialized_runs) {
  const std::size_t n = family.dimension();
  const std::int64_t k =
      std::max<std::int64_t>(static_cast<std::int64_t>(n), ceil_log2_inverse(alpha));
  const OmegaSet omega = enumerate_compositions(n, k);
  VerificationReport report =
      run_instance(family, s, k, omega, window, max_materialized_runs);
  attach_alpha_constant(report, alpha);
  return report;
}

std::vector<VerificationReport> omega_schedule_run(
    const SpectrumFamily& family, const std::vector<IntSet>& s,
    const std::vector<OmegaScheduleItem>& items, const Window& window,
    std::int64_t max_materialized_runs) {
  const std::size_t n = family.dimension();
  std::vector<VerificationReport> reports;
  for (const OmegaScheduleItem& item : items) {
    try {
      VerificationReport report;
      if (item.sequences) {
        const ExtremalConfig config = build_extremal(*item.sequences, max_materialized_runs);
        report = verify_superlevel_bound(config, item.omega, family, window);
      } else {
        report = run_instance(family, s, item.k, item.omega, window, max_materialized_runs);
      }
      const BigInt k_pow = ipow(BigInt(item.k), static_cast<std::int64_t>(n) - 1);
      report.omega_density =
          ExactRatio(BigInt(static_cast<std::int64_t>(report.realized_omega_card)), k_pow);
      report.achieved_c = over_pow2(report.union_measure, k_pow,
                                    item.k + report.e_measure.exponent());
      reports.push_back(std::move(report));
    } catch (const std::exception& err) {
      VerificationReport failed;
      failed.n = n;
      failed.k = item.k;
      failed.family = family.to_string();
      failed.pass = false;
      failed.warnings.push_back(std::string("instance failed: ") + err.what());
      reports.push_back(std::move(failed));
    }
  }
  return reports;
}

}  // namespace rarebasis
