#include "rarebasis/oracle.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rarebasis {

GridMask::GridMask(std::vector<AxisFrame> frames, std::int64_t guard)
    : frames_(std::move(frames)) {
  if (frames_.empty()) throw std::invalid_argument("GridMask: no frames");
  std::int64_t span = 0;
  for (const AxisFrame& f : frames_) span += f.span_bits();
  if (span > 62 || (std::int64_t{1} << span) > guard) {
    throw std::runtime_error("GridMask: grid guard exceeded");
  }
  total_ = std::int64_t{1} << span;
  dims_.reserve(frames_.size());
  for (const AxisFrame& f : frames_) dims_.push_back(f.cell_count());
  strides_.assign(frames_.size(), 1);
  for (std::size_t j = frames_.size(); j-- > 1;) strides_[j - 1] = strides_[j] * dims_[j];
  bits_.assign(static_cast<std::size_t>((total_ + 63) / 64), 0);
}

void GridMask::set_range(std::int64_t begin, std::int64_t end) {
  if (begin >= end) return;
  std::int64_t first_word = begin >> 6;
  std::int64_t last_word = (end - 1) >> 6;
  const std::uint64_t head = ~std::uint64_t{0} << (begin & 63);
  const std::uint64_t tail = ~std::uint64_t{0} >> (63 - ((end - 1) & 63));
  if (first_word == last_word) {
    bits_[static_cast<std::size_t>(first_word)] |= head & tail;
    return;
  }
  bits_[static_cast<std::size_t>(first_word)] |= head;
  for (std::int64_t w = first_word + 1; w < last_word; ++w) {
    bits_[static_cast<std::size_t>(w)] = ~std::uint64_t{0};
  }
  bits_[static_cast<std::size_t>(last_word)] |= tail;
}

void GridMask::or_with(const GridMask& other) {
  if (frames_ != other.frames_) throw std::invalid_argument("GridMask: frame mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
}

std::int64_t GridMask::flat_index(std::span<const std::int64_t> coords) const {
  std::int64_t flat = 0;
  for (std::size_t j = 0; j < frames_.size(); ++j) flat += strides_[j] * coords[j];
  return flat;
}

std::vector<std::int64_t> GridMask::coords_of(std::int64_t flat) const {
  std::vector<std::int64_t> coords(frames_.size());
  for (std::size_t j = 0; j < frames_.size(); ++j) {
    coords[j] = flat / strides_[j];
    flat %= strides_[j];
  }
  return coords;
}

std::int64_t GridMask::popcount() const {
  std::int64_t total = 0;
  for (std::uint64_t w : bits_) total += std::popcount(w);
  return total;
}

Dyadic GridMask::measure() const {
  std::int64_t fine = 0;
  for (const AxisFrame& f : frames_) fine += f.fine_exp;
  return Dyadic::from_units(popcount(), fine);
}

bool GridMask::contains(const GridMask& other) const {
  return !first_missing(other).has_value();
}

std::optional<std::int64_t> GridMask::first_missing(const GridMask& other) const {
  if (frames_ != other.frames_) throw std::invalid_argument("GridMask: frame mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    const std::uint64_t missing = other.bits_[i] & ~bits_[i];
    if (missing) {
      return static_cast<std::int64_t>(i * 64 + static_cast<std::size_t>(std::countr_zero(missing)));
    }
  }
  return std::nullopt;
}

void GridMask::export_rle(std::ostream& out) const {
  out << "cellmask v1\n";
  out << "dims " << frames_.size() << "\n";
  for (const AxisFrame& f : frames_) {
    out << "frame " << f.fine_exp << " " << f.coarse_exp << "\n";
  }
  out << "rle";
  std::int64_t pos = 0;
  bool value = get(0);
  out << " " << (value ? 1 : 0);
  std::int64_t run_start = 0;
  for (pos = 1; pos <= total_; ++pos) {
    const bool v = pos < total_ ? get(pos) : !value;
    if (v != value) {
      out << ":" << (pos - run_start);
      if (pos < total_) out << " " << (v ? 1 : 0);
      run_start = pos;
      value = v;
    }
  }
  out << "\n";
}

GridMask GridMask::parse_rle(std::istream& in, std::int64_t guard) {
  std::string tag, version;
  in >> tag >> version;
  if (tag != "cellmask" || version != "v1") throw std::runtime_error("cellmask: bad header");
  std::string key;
  std::size_t dims = 0;
  in >> key >> dims;
  if (key != "dims" || dims == 0) throw std::runtime_error("cellmask: bad dims");
  std::vector<AxisFrame> frames;
  for (std::size_t j = 0; j < dims; ++j) {
    std::int64_t fine = 0, coarse = 0;
    in >> key >> fine >> coarse;
    if (key != "frame") throw std::runtime_error("cellmask: bad frame");
    frames.emplace_back(fine, coarse);
  }
  in >> key;
  if (key != "rle") throw std::runtime_error("cellmask: bad body");
  GridMask mask(std::move(frames), guard);
  std::int64_t pos = 0;
  std::string chunk;
  while (pos < mask.total_cells() && in >> chunk) {
    const auto colon = chunk.find(':');
    if (colon == std::string::npos) throw std::runtime_error("cellmask: bad run");
    const int value = std::stoi(chunk.substr(0, colon));
    const std::int64_t length = std::stoll(chunk.substr(colon + 1));
    if (length < 1 || pos + length > mask.total_cells()) {
      throw std::runtime_error("cellmask: run overflow");
    }
    if (value) mask.set_range(pos, pos + length);
    pos += length;
  }
  if (pos != mask.total_cells()) throw std::runtime_error("cellmask: truncated body");
  return mask;
}

namespace {

std::vector<AxisFrame> config_frames(const ExtremalConfig& config) {
  if (!config.materialized()) {
    throw std::runtime_error("oracle: configuration exceeds the materialization guard");
  }
  std::vector<AxisFrame> frames;
  frames.reserve(config.n);
  for (const Ladder& ladder : config.ladders) frames.push_back(ladder.frame());
  return frames;
}

std::vector<std::int64_t> row_major_strides(const std::vector<std::int64_t>& dims) {
  std::vector<std::int64_t> strides(dims.size(), 1);
  for (std::size_t j = dims.size(); j-- > 1;) strides[j - 1] = strides[j] * dims[j];
  return strides;
}

/// Fills the mask with the product of per-axis cell sets. The innermost axis
/// is filled run by run; an odometer walks the set cells of the outer axes.
void fill_product(GridMask& mask, const std::vector<const CellSet1D*>& sets) {
  const std::size_t n = sets.size();
  for (const CellSet1D* s : sets) {
    if (s->is_empty()) return;
  }
  const auto strides = row_major_strides(mask.dims());
  if (n == 1) {
    for (const Run& r : sets[0]->runs()) mask.set_range(r.begin, r.end);
    return;
  }
  std::vector<std::size_t> run_idx(n - 1, 0);
  std::vector<std::int64_t> cell(n - 1);
  for (std::size_t j = 0; j + 1 < n; ++j) cell[j] = sets[j]->runs()[0].begin;
  while (true) {
    std::int64_t base = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) base += cell[j] * strides[j];
    for (const Run& r : sets[n - 1]->runs()) mask.set_range(base + r.begin, base + r.end);
    std::size_t j = n - 1;
    bool advanced = false;
    while (j-- > 0) {
      const auto& runs = sets[j]->runs();
      if (cell[j] + 1 < runs[run_idx[j]].end) {
        cell[j]++;
        advanced = true;
        break;
      }
      if (run_idx[j] + 1 < runs.size()) {
        run_idx[j]++;
        cell[j] = runs[run_idx[j]].begin;
        advanced = true;
        break;
      }
      run_idx[j] = 0;
      cell[j] = runs[0].begin;
    }
    if (!advanced) break;
  }
}

}  // namespace

GridMask materialize(const ExtremalConfig& config, std::int64_t guard) {
  GridMask mask(config_frames(config), guard);
  std::vector<const CellSet1D*> sets;
  for (const Ladder& ladder : config.ladders) sets.push_back(&ladder.level(0));
  fill_product(mask, sets);
  return mask;
}

GridMask grid_union(const ExtremalConfig& config, const OmegaSet& omega, std::int64_t guard) {
  if (omega.n != config.n || omega.k != config.k) {
    throw std::invalid_argument("grid_union: omega mismatch");
  }
  GridMask mask(config_frames(config), guard);
  for (const Tuple& m : omega.tuples) {
    std::vector<const CellSet1D*> sets;
    for (std::size_t j = 0; j < config.n; ++j) {
      sets.push_back(&config.ladders[j].level(static_cast<std::size_t>(m[j])));
    }
    fill_product(mask, sets);
  }
  return mask;
}

std::vector<std::int64_t> sliding_window_max_counts(const CellSet1D& axis_set,
                                                    std::int64_t window_exp) {
  const AxisFrame f = axis_set.frame();
  if (window_exp < f.fine_exp || window_exp > f.coarse_exp) {
    throw std::invalid_argument("sliding window exponent out of frame range");
  }
  if (f.span_bits() > 30) {
    throw std::invalid_argument("sliding window axis too large");
  }
  const std::int64_t cells = f.cell_count();
  const std::int64_t window = std::int64_t{1} << (window_exp - f.fine_exp);

  // Window sums at every start position, by membership increments.
  std::vector<char> member(static_cast<std::size_t>(cells), 0);
  for (const Run& r : axis_set.runs()) {
    std::fill(member.begin() + static_cast<std::ptrdiff_t>(r.begin),
              member.begin() + static_cast<std::ptrdiff_t>(r.end), char{1});
  }
  const std::int64_t starts = cells - window + 1;
  std::vector<std::int64_t> sums(static_cast<std::size_t>(starts));
  std::int64_t acc = 0;
  for (std::int64_t i = 0; i < window; ++i) acc += member[static_cast<std::size_t>(i)];
  sums[0] = acc;
  for (std::int64_t p = 1; p < starts; ++p) {
    acc += member[static_cast<std::size_t>(p + window - 1)] -
           member[static_cast<std::size_t>(p - 1)];
    sums[static_cast<std::size_t>(p)] = acc;
  }

  // Max over starts in [x-window+1, x] clamped to [0, starts-1]; monotone
  // deque over the sums array.
  std::vector<std::int64_t> out(static_cast<std::size_t>(cells));
  std::deque<std::int64_t> dq;
  for (std::int64_t x = 0; x < cells; ++x) {
    if (x < starts) {
      while (!dq.empty() && sums[static_cast<std::size_t>(dq.back())] <=
                                sums[static_cast<std::size_t>(x)]) {
        dq.pop_back();
      }
      dq.push_back(x);
    }
    while (dq.front() < x - window + 1) dq.pop_front();
    out[static_cast<std::size_t>(x)] = sums[static_cast<std::size_t>(dq.front())];
  }
  return out;
}

std::vector<Dyadic> sliding_profile(const CellSet1D& axis_set, std::int64_t window_exp) {
  const auto counts = sliding_window_max_counts(axis_set, window_exp);
  const std::int64_t denom_exp = window_exp - axis_set.frame().fine_exp;
  std::vector<Dyadic> out;
  out.reserve(counts.size());
  for (std::int64_t c : counts) out.push_back(Dyadic(c).div_pow2(denom_exp));
  return out;
}

namespace {

/// Least integer product value that reaches the threshold: the marking rule
/// prod_j counts_j / 2^T >= m*2^e becomes prod_j counts_j >= ceil(m*2^{e+T}).
/// Returns nullopt when nothing can pass (threshold above 1 on this grid).
std::optional<std::int64_t> min_passing_product(const Dyadic& threshold, std::int64_t total_exp,
                                                std::int64_t max_product) {
  if (threshold.sign() <= 0) return 0;
  const std::int64_t shift = threshold.exponent() + total_exp;
  BigInt needed;
  if (shift >= 0) {
    needed = threshold.mantissa() << static_cast<unsigned>(shift);
  } else {
    const BigInt den = BigInt(1) << static_cast<unsigned>(-shift);
    needed = (threshold.mantissa() + den - 1) / den;
  }
  if (needed > max_product) return std::nullopt;
  return static_cast<std::int64_t>(needed);
}

void mark_superlevel_rec(GridMask& mask, const std::vector<std::vector<std::int64_t>>& counts,
                         const std::vector<std::int64_t>& strides, std::int64_t min_product,
                         std::size_t axis, std::int64_t base, std::int64_t partial,
                         std::int64_t x_begin, std::int64_t x_end) {
  const std::size_t n = counts.size();
  for (std::int64_t x = x_begin; x < x_end; ++x) {
    const std::int64_t p = partial * counts[axis][static_cast<std::size_t>(x)];
    if (p == 0) continue;  // min_product >= 1 here, zero factors cannot pass
    const std::int64_t b = base + x * strides[axis];
    if (axis + 1 == n) {
      if (p >= min_product) mask.set(b);
    } else {
      mark_superlevel_rec(mask, counts, strides, min_product, axis + 1, b, p, 0,
                          static_cast<std::int64_t>(counts[axis + 1].size()));
    }
  }
}

}  // namespace

GridMask restricted_superlevel(const ExtremalConfig& config, const std::vector<Shape>& shapes,
                               const Dyadic& threshold, std::int64_t guard, unsigned threads) {
  if (shapes.empty()) throw std::invalid_argument("restricted_superlevel: no shapes");
  GridMask mask(config_frames(config), guard);
  if (threshold.sign() <= 0) {
    mask.set_range(0, mask.total_cells());
    return mask;
  }
  const std::size_t n = config.n;
  for (const Shape& shape : shapes) {
    if (shape.size() != n) throw std::invalid_argument("restricted_superlevel: bad shape arity");
    std::vector<std::vector<std::int64_t>> counts;
    std::int64_t total_exp = 0;
    std::int64_t max_product = 1;
    for (std::size_t j = 0; j < n; ++j) {
      const Ladder& ladder = config.ladders[j];
      if (shape[j] < ladder.scales().front() || shape[j] > ladder.scales().back()) {
        throw std::invalid_argument("restricted_superlevel: shape exponent out of range");
      }
      counts.push_back(sliding_window_max_counts(ladder.level(0), shape[j]));
      total_exp += shape[j] - ladder.frame().fine_exp;
      max_product <<= shape[j] - ladder.frame().fine_exp;
    }
    const auto min_product = min_passing_product(threshold, total_exp, max_product);
    if (!min_product) continue;  // threshold unreachable for this shape

    const auto strides = row_major_strides(mask.dims());
    const std::int64_t dim0 = mask.dims()[0];
    const unsigned nthreads =
        std::max<unsigned>(1, std::min<unsigned>(threads, static_cast<unsigned>(dim0)));
    if (nthreads == 1) {
      mark_superlevel_rec(mask, counts, strides, *min_product, 0, 0, 1, 0, dim0);
    } else {
      // Per-thread buffers merged in a fixed order keep the result
      // independent of scheduling.
      std::vector<GridMask> buffers(nthreads, GridMask(mask.frames(), guard));
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nthreads; ++t) {
        const std::int64_t begin = dim0 * t / nthreads;
        const std::int64_t end = dim0 * (t + 1) / nthreads;
        pool.emplace_back([&buffers, &counts, &strides, &min_product, t, begin, end] {
          mark_superlevel_rec(buffers[t], counts, strides, *min_product, 0, 0, 1, begin, end);
        });
      }
      for (auto& th : pool) th.join();
      for (const GridMask& b : buffers) mask.or_with(b);
    }
  }
  return mask;
}

ContainmentReport check_containment(const ExtremalConfig& config, const OmegaSet& omega,
                                    const std::map<Tuple, Shape>& shapes_for_omega,
                                    std::int64_t guard, unsigned threads) {
  std::vector<Shape> shapes;
  for (const Tuple& m : omega.tuples) {
    auto it = shapes_for_omega.find(m);
    if (it == shapes_for_omega.end()) {
      throw std::invalid_argument("check_containment: missing shape for a tuple");
    }
    for (std::size_t j = 0; j < config.n; ++j) {
      const Tuple& scales = config.ladders[j].scales();
      const std::int64_t t = it->second[j];
      const std::int64_t m_j = m[j];
      if (t <= scales[static_cast<std::size_t>(m_j) - 1] ||
          t > scales[static_cast<std::size_t>(m_j)]) {
        throw std::invalid_argument("check_containment: shape exponent outside tuple range");
      }
    }
    shapes.push_back(it->second);
  }

  ContainmentReport report;
  const GridMask union_mask = grid_union(config, omega, guard);
  report.union_cells = union_mask.popcount();
  if (omega.tuples.empty()) {
    report.ok = true;
    report.marked_cells = 0;
    return report;
  }
  const GridMask marked =
      restricted_superlevel(config, shapes, Dyadic::pow2(-config.k), guard, threads);
  report.marked_cells = marked.popcount();
  const auto missing = marked.first_missing(union_mask);
  report.ok = !missing.has_value();
  if (missing) report.first_failure = marked.coords_of(*missing);
  return report;
}

}  // namespace rarebasis
