#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rarebasis/dyadic.hpp"
#include "rarebasis/intset.hpp"

namespace rarebasis {

using Tuple = std::vector<std::int64_t>;

/// Per-coordinate inclusive integer ranges truncating the infinite sets that
/// the spectrum definitions quantify over.
struct Window {
  std::vector<std::array<std::int64_t, 2>> ranges;  // {lo, hi}

  Window() = default;
  explicit Window(std::vector<std::array<std::int64_t, 2>> r);
  static Window uniform(std::size_t dimension, std::int64_t lo, std::int64_t hi);

  std::size_t dimension() const { return ranges.size(); }
  std::int64_t lo(std::size_t j) const { return ranges[j][0]; }
  std::int64_t hi(std::size_t j) const { return ranges[j][1]; }
  std::string to_string() const;
};

/// Symbolic descriptor of a rare basis through its admissible side-length
/// exponent tuples. All variants expose exact window enumeration, exact
/// projections, and exact per-prefix sections of the final coordinate.
class SpectrumFamily {
 public:
  enum class Kind { FullProduct, Soria, Zygmund, Cordoba, LinearRelation, ThetaTable, Explicit };

  struct ThetaEntry {
    Tuple prefix;        // w_1 .. w_{n-1}
    std::int64_t index;  // which theta function
    std::int64_t value;  // w_n
  };

  static SpectrumFamily full_product(std::vector<IntSet> sets);
  static SpectrumFamily soria(IntSet gamma);    // n=3, w3 in gamma - w2
  static SpectrumFamily zygmund(IntSet gamma);  // n=3, w3 in gamma + w2
  static SpectrumFamily cordoba(IntSet gamma);  // n=3, w3 in gamma + w1 + w2
  /// w_n in gamma + sign * (w_{j_1} + ... + w_{j_p}); indices are 1-based
  /// coordinates in 1..n-1, sign is +1 or -1.
  static SpectrumFamily linear_relation(std::vector<IntSet> head_sets, IntSet gamma,
                                        std::vector<int> indices, int sign);
  static SpectrumFamily theta_table(std::vector<IntSet> head_sets,
                                    std::vector<ThetaEntry> entries);
  static SpectrumFamily explicit_tuples(std::size_t dimension, std::vector<Tuple> tuples);

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return dimension_; }
  std::string to_string() const;

  /// Values tau in [lo, hi] with (prefix, tau) in the projection to
  /// |prefix|+1 coordinates. prefix may be empty (section of coordinate 1).
  std::vector<std::int64_t> section(std::span<const std::int64_t> prefix,
                                    std::int64_t lo, std::int64_t hi) const;

  /// Projection to the first j coordinates, restricted to the first j window
  /// ranges; sorted lexicographically.
  std::vector<Tuple> project(std::size_t j, const Window& window) const;

  /// Full spectrum inside the window; sorted lexicographically.
  std::vector<Tuple> enumerate(const Window& window) const;

  /// True when the section of coordinate j+1 does not depend on the prefix.
  bool section_uniform(std::size_t j) const;

  const std::vector<ThetaEntry>& theta_entries() const { return theta_entries_; }

 private:
  SpectrumFamily(Kind kind, std::size_t dimension) : kind_(kind), dimension_(dimension) {}
  const IntSet& head_set(std::size_t j) const;  // coordinate set for j < n in product-like kinds

  Kind kind_;
  std::size_t dimension_;
  std::vector<IntSet> sets_;      // FullProduct: all n; relation kinds: first n-1
  std::optional<IntSet> gamma_;
  std::vector<int> indices_;      // LinearRelation
  int sign_ = -1;                 // LinearRelation
  std::vector<ThetaEntry> theta_entries_;
  std::vector<Tuple> tuples_;     // Explicit, sorted
};

/// Thin wrapper kept for symmetry with the CLI verbs.
std::vector<Tuple> spectrum_window(const SpectrumFamily& family, const Window& window);

/// Every s in S∩[lo,hi] has some w in W with |s-w| <= budget. W, S sorted.
bool is_net_1d(std::span<const std::int64_t> w, std::span<const std::int64_t> s,
               std::int64_t lo, std::int64_t hi, std::int64_t budget);

struct DensityReport {
  struct Coord {
    std::size_t coord = 0;            // 1-based
    std::int64_t budget = 0;
    bool achievable = false;          // false when some point has no candidate at all
    std::int64_t achieved = 0;        // max over sections and points of nearest distance
    std::uint64_t sections = 0;
    bool pass = false;
    std::optional<Tuple> failing_prefix;
    std::optional<std::int64_t> failing_point;
  };
  std::vector<Coord> coords;
  bool dense = false;
  std::string to_text() const;
};

/// Sectionwise net check of the density definition on a finite window: for
/// each j, every prefix t in the projection of W to j-1 coordinates must have
/// its section cover S_j within the per-coordinate budget.
DensityReport is_dense(const std::vector<Tuple>& w, const std::vector<IntSet>& s,
                       const Window& window, std::span<const std::int64_t> budgets);

struct ExtractionResult {
  bool ok = false;
  std::vector<Tuple> sequences;            // n sequences of length k+1
  std::vector<std::int64_t> net_constants; // per coordinate
  std::size_t blocking_coord = 0;          // 1-based, when failed
  std::string error;
  std::vector<Tuple> unrealized;           // realization-check failures
};

/// Sequence extraction: per coordinate, compute the net constant over the
/// sections indexed by already-chosen scale ranges, greedily pick 2k+1
/// elements of S_j spaced more than that constant apart inside the window,
/// and keep the even-indexed ones. A post-hoc check confirms that every
/// tuple of {1..k}^n is realized by a spectrum tuple in the induced ranges;
/// failures are reported, never ignored.
ExtractionResult extract_sequences(const SpectrumFamily& family, const std::vector<IntSet>& s,
                                   std::size_t k, const Window& window);

/// ceil(log2(value)) for value > 0; the side exponent of the smallest
/// enclosing dyadic length.
std::int64_t dyadic_skeleton_exp(const Dyadic& value);
std::int64_t dyadic_skeleton_exp(const BigInt& num, const BigInt& den);
std::vector<std::int64_t> dyadic_skeleton(std::span<const Dyadic> lengths);

struct ThetaWindowReport {
  bool zero_prefix_present = false;
  std::int64_t base_min = 0;  // min over k of value at prefix (0,...,0)
  std::int64_t base_max = 0;
  bool spreads_comparable = false;  // every prefix shares an index with prefix 0
  std::int64_t spread_min = 0;      // extremes of value(prefix,k) - value(0,k)
  std::int64_t spread_max = 0;
  bool window_consistent = false;
  std::string to_text() const;
};

/// Window-restricted report on a theta table: observed range of the base
/// sequence and of the log-ratios against the all-ones prefix. Consistency
/// on a window is reported as such and never claimed to be a proof.
ThetaWindowReport theta_window_check(const SpectrumFamily& family, const Window& window);

}  // namespace rarebasis
