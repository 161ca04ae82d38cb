#include "rarebasis/ladder.hpp"

#include <algorithm>
#include <stdexcept>

namespace rarebasis {

CellSet1D interleave(std::int64_t piece_exp, const CellSet1D& h) {
  const AxisFrame f = h.frame();
  if (piece_exp < f.fine_exp) {
    throw std::invalid_argument("interleave: piece length below frame resolution");
  }
  const std::int64_t w = std::int64_t{1} << (piece_exp - f.fine_exp);
  std::vector<Run> out;
  for (const Run& r : h.runs()) {
    const std::int64_t len = r.end - r.begin;
    if ((len & (len - 1)) != 0) {
      throw std::invalid_argument("interleave: run length is not a power of two");
    }
    if (len <= w) {
      throw std::invalid_argument("interleave: piece length must be smaller than run length");
    }
    out.reserve(out.size() + static_cast<std::size_t>(len / (2 * w)));
    for (std::int64_t off = 0; off < len; off += 2 * w) {
      out.push_back(Run{r.begin + off, r.begin + off + w});
    }
  }
  return CellSet1D::from_runs(f, std::move(out));
}

AxisFrame Ladder::frame() const {
  if (span_bits() > 62) throw std::logic_error("Ladder: symbolic ladder has no frame");
  return AxisFrame(scales_.front(), scales_.back());
}

const CellSet1D& Ladder::level(std::size_t m) const {
  if (!materialized()) throw std::logic_error("Ladder: levels not materialized");
  return levels_.at(m);
}

const CellSet1D& Ladder::shell(std::size_t m) const {
  if (!materialized()) throw std::logic_error("Ladder: shells not materialized");
  return shells_.at(m);
}

Dyadic Ladder::level_measure(std::size_t m) const {
  const std::int64_t kk = static_cast<std::int64_t>(k());
  return Dyadic::pow2(scales_.back() - (kk - static_cast<std::int64_t>(m)));
}

Dyadic Ladder::shell_measure(std::size_t m) const {
  if (m == 0) return level_measure(0);
  return level_measure(m).div_pow2(1);
}

Ladder build_ladder(std::span<const std::int64_t> scales,
                    std::int64_t max_materialized_runs) {
  if (scales.size() < 2) throw std::invalid_argument("build_ladder: need k >= 1");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i] <= scales[i - 1]) {
      throw std::invalid_argument("build_ladder: scales must be strictly increasing");
    }
  }
  Ladder ladder;
  ladder.scales_.assign(scales.begin(), scales.end());

  const std::int64_t k = static_cast<std::int64_t>(scales.size()) - 1;
  const std::int64_t span = scales.back() - scales.front();
  // level 0 ends up with 2^(span - k) maximal runs; refuse to materialize
  // beyond the guard and keep the ladder symbolic.
  std::int64_t runs_log = span - k;
  std::int64_t guard_log = 0;
  while ((std::int64_t{1} << guard_log) < max_materialized_runs && guard_log < 62) ++guard_log;
  if (span > 62 || runs_log > guard_log) return ladder;

  const AxisFrame frame(scales.front(), scales.back());
  std::vector<CellSet1D> levels(static_cast<std::size_t>(k) + 1, CellSet1D(frame));
  levels.back() = CellSet1D::full(frame);
  for (std::int64_t m = k - 1; m >= 0; --m) {
    levels[static_cast<std::size_t>(m)] =
        interleave(scales[static_cast<std::size_t>(m)], levels[static_cast<std::size_t>(m) + 1]);
  }

  std::vector<CellSet1D> shells;
  shells.reserve(levels.size());
  shells.push_back(levels[0]);
  for (std::size_t m = 1; m < levels.size(); ++m) {
    shells.push_back(difference(levels[m], levels[m - 1]));
  }

  ladder.levels_ = std::move(levels);
  ladder.shells_ = std::move(shells);

  // Construction invariants; violations would be internal bugs.
  for (std::size_t m = 0; m < ladder.levels_.size(); ++m) {
    const std::int64_t run_len = std::int64_t{1} << (ladder.scales_[m] - frame.fine_exp);
    for (const Run& r : ladder.levels_[m].runs()) {
      if (r.end - r.begin != run_len) throw std::logic_error("build_ladder: run length drift");
    }
    if (ladder.levels_[m].measure() != ladder.level_measure(m)) {
      throw std::logic_error("build_ladder: level measure drift");
    }
    if (ladder.shells_[m].measure() != ladder.shell_measure(m)) {
      throw std::logic_error("build_ladder: shell measure drift");
    }
  }
  return ladder;
}

std::string LadderCounterexample::describe() const {
  return "property " + std::to_string(property) + " failed at m=" + std::to_string(m) +
         " t=" + std::to_string(t) + " start_cell=" + std::to_string(position) +
         " expected_cells=" + std::to_string(expected_cells) +
         " actual_cells=" + std::to_string(actual_cells);
}

LadderReport verify_ladder(const Ladder& ladder) {
  if (!ladder.materialized()) {
    throw std::invalid_argument("verify_ladder: ladder is not materialized");
  }
  LadderReport report;
  const AxisFrame frame = ladder.frame();
  const std::size_t k = ladder.k();

  for (std::size_t m = 1; m <= k; ++m) {
    const CellSet1D& outer = ladder.level(m);
    const CellSet1D& inner = ladder.level(m - 1);
    const CellSet1D& base = ladder.level(0);
    for (std::int64_t t = ladder.scale(m - 1) + 1; t <= ladder.scale(m); ++t) {
      const std::int64_t len = std::int64_t{1} << (t - frame.fine_exp);
      // Runs of level m are aligned to multiples of their own length, so
      // every aligned J of length 2^t inside level m sits inside one run.
      for (const Run& r : outer.runs()) {
        for (std::int64_t start = r.begin; start < r.end; start += len) {
          report.intervals_checked++;
          const std::int64_t half = len >> 1;
          const std::int64_t got_half = inner.cells_in(start, start + len);
          if (got_half != half) {
            report.counterexample = LadderCounterexample{
                2, m, t, start, half, got_half};
            return report;
          }
          const std::int64_t frac = len >> m;  // len / 2^m, integral since t - s_0 >= m
          const std::int64_t got_frac = base.cells_in(start, start + len);
          if (got_frac != frac) {
            report.counterexample = LadderCounterexample{
                3, m, t, start, frac, got_frac};
            return report;
          }
        }
      }
    }
  }
  report.pass = true;
  return report;
}

}  // namespace rarebasis
