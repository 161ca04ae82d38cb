#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rarebasis/dyadic.hpp"
#include "rarebasis/intset.hpp"
#include "rarebasis/omega.hpp"
#include "rarebasis/oracle.hpp"
#include "rarebasis/spectrum.hpp"

namespace rarebasis {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

/// Experiment description parsed from the key-value configuration text.
/// Numbers are integers or exact dyadic literals "m*2^e"; nothing is ever
/// rounded on the way in.
struct ExperimentConfig {
  std::optional<std::size_t> n;
  std::optional<std::int64_t> k;
  std::optional<Dyadic> alpha;
  std::optional<std::string> family_kind;
  std::map<std::size_t, IntSet> sets;     // set<j>: family coordinate sets
  std::map<std::size_t, IntSet> targets;  // target<j>: S_j overrides for nets
  std::optional<IntSet> gamma;
  std::optional<Window> window;
  std::map<std::size_t, Tuple> scales;    // scales<j>: explicit scale sequences
  std::vector<Tuple> explicit_tuples;     // tuple: spectrum tuples
  std::vector<SpectrumFamily::ThetaEntry> theta_entries;
  std::vector<int> linear_indices;
  int linear_sign = -1;
  std::vector<Tuple> omega_tuples;        // omega: explicit tuple subset
  bool omega_monotone = false;
  std::vector<std::pair<std::int64_t, std::string>> schedule;  // (k_j, full|monotone)
  std::vector<std::int64_t> budgets;      // density budgets per coordinate
  std::optional<std::int64_t> kmin;
  std::optional<std::int64_t> kmax;
  std::vector<std::int64_t> gaps;         // sweep scale gaps per axis
  std::vector<ShapePair> shapes;          // is-check / product2d shapes
  std::string predicate_kind = "any";
  std::int64_t predicate_bound = 0;
  std::vector<ShapePair> predicate_pairs;
  std::int64_t guard = kDefaultGridGuard;
  unsigned threads = 1;
  std::optional<std::string> mask_out;
  std::uint64_t seed = 1;  // reserved for randomized property suites

  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_file(const std::string& path);
  static ExperimentConfig parse_string(const std::string& text);
};

/// Builds the spectrum family described by the config. Requires family_kind.
SpectrumFamily build_family(const ExperimentConfig& config);

/// Per-coordinate target sets S_j for density and extraction: explicit
/// target<j> overrides, otherwise the family's natural sets (relation
/// families target gamma on the last coordinate).
std::vector<IntSet> target_sets(const ExperimentConfig& config, const SpectrumFamily& family);

/// Basis membership predicate for is-check.
std::function<bool(std::int64_t, std::int64_t)> build_predicate(const ExperimentConfig& config);

}  // namespace rarebasis
