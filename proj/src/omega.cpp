#include "rarebasis/omega.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rarebasis {

namespace {

void compositions_rec(std::size_t n, std::int64_t k, Tuple& acc, std::vector<Tuple>& out) {
  if (acc.size() + 1 == n) {
    const std::int64_t rest = k;
    if (rest >= 1) {
      acc.push_back(rest);
      out.push_back(acc);
      acc.pop_back();
    }
    return;
  }
  const std::int64_t remaining_parts = static_cast<std::int64_t>(n - acc.size()) - 1;
  for (std::int64_t v = 1; v + remaining_parts <= k; ++v) {
    acc.push_back(v);
    compositions_rec(n, k - v, acc, out);
    acc.pop_back();
  }
}

}  // namespace

OmegaSet enumerate_compositions(std::size_t n, std::int64_t k) {
  if (n < 1) throw std::invalid_argument("enumerate_compositions: n must be >= 1");
  if (k < static_cast<std::int64_t>(n)) {
    throw std::invalid_argument("enumerate_compositions: k must be >= n");
  }
  OmegaSet omega;
  omega.n = n;
  omega.k = k;
  Tuple acc;
  compositions_rec(n, k, acc, omega.tuples);
  return omega;
}

OmegaSet omega_subset(std::size_t n, std::int64_t k, std::vector<Tuple> tuples) {
  for (const Tuple& t : tuples) {
    if (t.size() != n) throw std::invalid_argument("omega_subset: bad tuple length");
    std::int64_t sum = 0;
    for (std::int64_t v : t) {
      if (v < 1) throw std::invalid_argument("omega_subset: entries must be >= 1");
      sum += v;
    }
    if (sum != k) throw std::invalid_argument("omega_subset: entries must sum to k");
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  OmegaSet omega;
  omega.n = n;
  omega.k = k;
  omega.tuples = std::move(tuples);
  return omega;
}

OmegaSet monotone_tuples(std::size_t dims, std::int64_t k) {
  OmegaSet all = enumerate_compositions(dims, k);
  OmegaSet out;
  out.n = dims;
  out.k = k;
  for (const Tuple& t : all.tuples) {
    bool mono = true;
    for (std::size_t j = 0; j + 2 < dims && mono; ++j) {
      if (t[j] < t[j + 1]) mono = false;
    }
    if (mono) out.tuples.push_back(t);
  }
  return out;
}

CardinalityReport cardinality_bounds_check(std::size_t n, std::int64_t k) {
  if (n < 1 || k < static_cast<std::int64_t>(n)) {
    throw std::invalid_argument("cardinality_bounds_check: need k >= n >= 1");
  }
  CardinalityReport report;
  report.n = n;
  report.k = k;
  report.cardinality = binomial(k - 1, static_cast<std::int64_t>(n) - 1);
  report.upper = ipow(BigInt(k), static_cast<std::int64_t>(n) - 1);
  report.ratio = ExactRatio(report.cardinality, report.upper);
  report.upper_ok = report.cardinality <= report.upper;
  return report;
}

CompletenessResult completeness(const SpectrumFamily& family,
                                const std::vector<Tuple>& sequences, const OmegaSet& omega,
                                const Window& window) {
  const std::size_t n = family.dimension();
  if (sequences.size() != n || omega.n != n || window.dimension() != n) {
    throw std::invalid_argument("completeness: dimension mismatch");
  }
  for (const Tuple& seq : sequences) {
    if (seq.size() != static_cast<std::size_t>(omega.k) + 1) {
      throw std::invalid_argument("completeness: sequence length must be k+1");
    }
    for (std::size_t m = 1; m < seq.size(); ++m) {
      if (seq[m] <= seq[m - 1]) {
        throw std::invalid_argument("completeness: sequences must be strictly increasing");
      }
    }
  }

  // Spectrum tuples can only realize boxes inside the scale ranges, so the
  // enumeration window is the intersection.
  std::vector<std::array<std::int64_t, 2>> ranges;
  for (std::size_t j = 0; j < n; ++j) {
    const std::int64_t lo = std::max(window.lo(j), sequences[j].front() + 1);
    const std::int64_t hi = std::min(window.hi(j), sequences[j].back());
    if (lo > hi) {
      CompletenessResult empty;
      empty.realized.n = n;
      empty.realized.k = omega.k;
      empty.unrealized = omega.tuples;
      empty.complete = omega.tuples.empty();
      return empty;
    }
    ranges.push_back({lo, hi});
  }
  const auto tuples = family.enumerate(Window(std::move(ranges)));

  std::map<Tuple, Tuple> witness_by_cell;
  for (const Tuple& w : tuples) {
    Tuple cell(n);
    bool in_grid = true;
    for (std::size_t j = 0; j < n && in_grid; ++j) {
      const Tuple& seq = sequences[j];
      auto it = std::lower_bound(seq.begin(), seq.end(), w[j]);
      if (it == seq.end() || it == seq.begin()) {
        in_grid = false;
      } else {
        cell[j] = it - seq.begin();
      }
    }
    if (in_grid) witness_by_cell.emplace(std::move(cell), w);  // keeps the first witness
  }

  CompletenessResult result;
  result.realized.n = n;
  result.realized.k = omega.k;
  for (const Tuple& m : omega.tuples) {
    auto it = witness_by_cell.find(m);
    if (it != witness_by_cell.end()) {
      result.realized.tuples.push_back(m);
      result.witness.emplace(m, it->second);
    } else {
      result.unrealized.push_back(m);
    }
  }
  result.complete = result.unrealized.empty();
  return result;
}

IsPropertyReport is_property_check(
    std::span<const ShapePair> shapes,
    const std::function<bool(std::int64_t, std::int64_t)>& basis_membership) {
  if (shapes.empty()) throw std::invalid_argument("is_property_check: no shapes");
  IsPropertyReport report;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i; j < shapes.size(); ++j) {
      const ShapePair& a = shapes[i];
      const ShapePair& b = shapes[j];
      if (i != j) {
        const bool a_in_b = a.p <= b.p && a.q <= b.q;
        const bool b_in_a = b.p <= a.p && b.q <= a.q;
        if (a_in_b || b_in_a) report.comparability_violations.emplace_back(a, b);
      }
      if (!basis_membership(std::min(a.p, b.p), std::min(a.q, b.q))) {
        report.closure_violations.emplace_back(a, b);
      }
    }
  }
  report.pass =
      report.comparability_violations.empty() && report.closure_violations.empty();
  return report;
}

std::string IsPropertyReport::to_text() const {
  std::string out;
  out += std::string("is_property: ") + (pass ? "pass" : "FAIL") + "\n";
  for (const auto& [a, b] : comparability_violations) {
    out += "comparable pair: (" + std::to_string(a.p) + "," + std::to_string(a.q) + ") and (" +
           std::to_string(b.p) + "," + std::to_string(b.q) + ")\n";
  }
  for (const auto& [a, b] : closure_violations) {
    out += "intersection outside basis: (" + std::to_string(a.p) + "," + std::to_string(a.q) +
           ") and (" + std::to_string(b.p) + "," + std::to_string(b.q) + ")\n";
  }
  return out;
}

std::vector<ShapePair> intersection_closure(std::span<const ShapePair> shapes) {
  std::set<ShapePair> out(shapes.begin(), shapes.end());
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      out.insert(ShapePair{std::min(shapes[i].p, shapes[j].p),
                           std::min(shapes[i].q, shapes[j].q)});
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Tuple> product_basis_tuples(std::span<const ShapePair> shapes,
                                        std::span<const std::int64_t> third_axis) {
  const auto closure = intersection_closure(shapes);
  std::vector<Tuple> out;
  out.reserve(closure.size() * third_axis.size());
  for (const ShapePair& s : closure) {
    for (std::int64_t t : third_axis) out.push_back(Tuple{s.p, s.q, t});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rarebasis
