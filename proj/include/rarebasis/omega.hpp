#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rarebasis/dyadic.hpp"
#include "rarebasis/spectrum.hpp"

namespace rarebasis {

/// Compositions of k into n positive parts; tuples sorted lexicographically.
struct OmegaSet {
  std::size_t n = 0;
  std::int64_t k = 0;
  std::vector<Tuple> tuples;
};

/// All (m_1,...,m_n) with m_j >= 1 and sum k; cardinality C(k-1, n-1).
OmegaSet enumerate_compositions(std::size_t n, std::int64_t k);

/// Subset of OmegaSet with an explicit tuple list (validated).
OmegaSet omega_subset(std::size_t n, std::int64_t k, std::vector<Tuple> tuples);

/// Tuples of the (dims)-part composition set with the first dims-1 entries
/// non-increasing; the final coordinate is unconstrained.
OmegaSet monotone_tuples(std::size_t dims, std::int64_t k);

struct CardinalityReport {
  std::size_t n = 0;
  std::int64_t k = 0;
  BigInt cardinality;   // C(k-1, n-1)
  BigInt upper;         // k^(n-1)
  ExactRatio ratio;     // cardinality / upper
  bool upper_ok = false;
};

/// card = C(k-1,n-1) against the upper bound k^(n-1); the ratio is the
/// empirically achieved lower constant.
CardinalityReport cardinality_bounds_check(std::size_t n, std::int64_t k);

struct CompletenessResult {
  OmegaSet realized;
  std::vector<Tuple> unrealized;
  std::map<Tuple, Tuple> witness;  // omega tuple -> realizing spectrum tuple
  bool complete = false;
};

/// For each tuple (m_1..m_n) of omega, decides whether some spectrum tuple
/// lies in the box of exponent ranges (s_{j,m_j-1}, s_{j,m_j}]. The spectrum
/// is enumerated inside the given window intersected with the scale ranges.
CompletenessResult completeness(const SpectrumFamily& family,
                                const std::vector<Tuple>& sequences, const OmegaSet& omega,
                                const Window& window);

struct ShapePair {
  std::int64_t p = 0;
  std::int64_t q = 0;
  friend bool operator==(const ShapePair& a, const ShapePair& b) {
    return a.p == b.p && a.q == b.q;
  }
  friend bool operator<(const ShapePair& a, const ShapePair& b) {
    return a.p != b.p ? a.p < b.p : a.q < b.q;
  }
};

struct IsPropertyReport {
  bool pass = false;
  std::vector<std::pair<ShapePair, ShapePair>> comparability_violations;
  std::vector<std::pair<ShapePair, ShapePair>> closure_violations;
  std::string to_text() const;
};

/// Pairwise incomparability plus closure of pairwise componentwise minima
/// under the caller-supplied basis membership predicate.
IsPropertyReport is_property_check(
    std::span<const ShapePair> shapes,
    const std::function<bool(std::int64_t, std::int64_t)>& basis_membership);

/// shapes together with all pairwise componentwise minima; sorted unique.
std::vector<ShapePair> intersection_closure(std::span<const ShapePair> shapes);

/// 3D exponent tuples of the product of a 2D shape family (closed under
/// pairwise minima) with a set of third-axis exponents.
std::vector<Tuple> product_basis_tuples(std::span<const ShapePair> shapes,
                                        std::span<const std::int64_t> third_axis);

}  // namespace rarebasis
