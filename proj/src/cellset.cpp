#include "rarebasis/cellset.hpp"

#include <algorithm>
#include <stdexcept>

namespace rarebasis {

AxisFrame::AxisFrame(std::int64_t fine, std::int64_t coarse)
    : fine_exp(fine), coarse_exp(coarse) {
  if (coarse < fine) throw std::invalid_argument("AxisFrame: coarse_exp < fine_exp");
  if (coarse - fine > 62) {
    throw std::invalid_argument("AxisFrame: span exceeds 62 bits, cells not addressable");
  }
}

CellSet1D CellSet1D::full(AxisFrame frame) {
  CellSet1D s(frame);
  s.runs_ = {Run{0, frame.cell_count()}};
  s.rebuild_cum();
  return s;
}

CellSet1D CellSet1D::from_runs(AxisFrame frame, std::vector<Run> runs) {
  std::sort(runs.begin(), runs.end(),
            [](const Run& a, const Run& b) { return a.begin < b.begin; });
  CellSet1D s(frame);
  for (const Run& r : runs) {
    if (r.begin < 0 || r.begin >= r.end || r.end > frame.cell_count()) {
      throw std::invalid_argument("CellSet1D: run out of range or empty");
    }
    if (!s.runs_.empty() && r.begin < s.runs_.back().end) {
      throw std::invalid_argument("CellSet1D: overlapping runs");
    }
    if (!s.runs_.empty() && r.begin == s.runs_.back().end) {
      s.runs_.back().end = r.end;  // merge adjacent into the maximal run
    } else {
      s.runs_.push_back(r);
    }
  }
  s.rebuild_cum();
  return s;
}

void CellSet1D::rebuild_cum() {
  cum_.assign(runs_.size() + 1, 0);
  for (std::size_t i = 0; i < runs_.size(); ++i) {
    cum_[i + 1] = cum_[i] + (runs_[i].end - runs_[i].begin);
  }
}

std::int64_t CellSet1D::cells_below(std::int64_t x) const {
  // First run with end > x; runs before it lie entirely below x.
  auto it = std::lower_bound(runs_.begin(), runs_.end(), x,
                             [](const Run& r, std::int64_t v) { return r.end <= v; });
  std::int64_t total = cum_[static_cast<std::size_t>(it - runs_.begin())];
  if (it != runs_.end() && it->begin < x) total += x - it->begin;
  return total;
}

bool CellSet1D::contains(const CellSet1D& other) const {
  if (frame_ != other.frame_) throw std::invalid_argument("CellSet1D: frame mismatch");
  for (const Run& r : other.runs_) {
    if (!contains_range(r.begin, r.end)) return false;
  }
  return true;
}

CellSet1D intersect(const CellSet1D& a, const CellSet1D& b) {
  if (a.frame_ != b.frame_) throw std::invalid_argument("intersect: frame mismatch");
  CellSet1D out(a.frame_);
  std::size_t i = 0, j = 0;
  while (i < a.runs_.size() && j < b.runs_.size()) {
    const Run& ra = a.runs_[i];
    const Run& rb = b.runs_[j];
    const std::int64_t lo = std::max(ra.begin, rb.begin);
    const std::int64_t hi = std::min(ra.end, rb.end);
    if (lo < hi) out.runs_.push_back(Run{lo, hi});
    (ra.end < rb.end ? i : j) += 1;
  }
  out.rebuild_cum();
  return out;
}

CellSet1D unite(const CellSet1D& a, const CellSet1D& b) {
  if (a.frame_ != b.frame_) throw std::invalid_argument("unite: frame mismatch");
  CellSet1D out(a.frame_);
  std::size_t i = 0, j = 0;
  while (i < a.runs_.size() || j < b.runs_.size()) {
    Run next{};
    if (j == b.runs_.size() || (i < a.runs_.size() && a.runs_[i].begin <= b.runs_[j].begin)) {
      next = a.runs_[i++];
    } else {
      next = b.runs_[j++];
    }
    if (!out.runs_.empty() && next.begin <= out.runs_.back().end) {
      out.runs_.back().end = std::max(out.runs_.back().end, next.end);
    } else {
      out.runs_.push_back(next);
    }
  }
  out.rebuild_cum();
  return out;
}

CellSet1D difference(const CellSet1D& a, const CellSet1D& b) {
  if (a.frame_ != b.frame_) throw std::invalid_argument("difference: frame mismatch");
  CellSet1D out(a.frame_);
  std::size_t j = 0;
  for (const Run& ra : a.runs_) {
    std::int64_t cursor = ra.begin;
    while (j < b.runs_.size() && b.runs_[j].end <= ra.begin) ++j;
    std::size_t jj = j;
    while (jj < b.runs_.size() && b.runs_[jj].begin < ra.end) {
      if (b.runs_[jj].begin > cursor) out.runs_.push_back(Run{cursor, b.runs_[jj].begin});
      cursor = std::max(cursor, b.runs_[jj].end);
      ++jj;
    }
    if (cursor < ra.end) out.runs_.push_back(Run{cursor, ra.end});
  }
  // Holes of a survive only where b had a gap, so results stay non-adjacent
  // inside each source run; runs from different source runs were already
  // separated in a.
  out.rebuild_cum();
  return out;
}

bool saturates(const CellSet1D& e, const CellSet1D& h, const Dyadic& alpha) {
  if (e.frame() != h.frame()) throw std::invalid_argument("saturates: frame mismatch");
  if (h.is_empty()) throw std::invalid_argument("saturates: empty saturation target");
  for (const Run& r : h.runs()) {
    const std::int64_t inter = e.cells_in(r.begin, r.end);
    // |I ∩ E| / |I| = alpha, with the common 2^fine_exp factor cancelled.
    if (Dyadic(inter) != alpha * Dyadic(r.end - r.begin)) return false;
  }
  return true;
}

}  // namespace rarebasis
