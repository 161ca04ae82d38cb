#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rarebasis {

/// Descriptor of a subset of Z with decidable membership and enumeration on
/// any finite range. Generators cover the sparse-set experiments without an
/// infinite representation.
class IntSet {
 public:
  enum class Kind { All, Explicit, Arithmetic, Squares, Geometric };

  static IntSet all();
  static IntSet explicit_set(std::vector<std::int64_t> values);
  /// {start + j*step : j >= 0}, step >= 1.
  static IntSet arithmetic(std::int64_t start, std::int64_t step);
  /// {j*j : j >= 0}.
  static IntSet squares();
  /// {base^j : j >= 0}, base >= 2.
  static IntSet geometric(std::int64_t base);

  Kind kind() const { return kind_; }
  bool contains(std::int64_t x) const;
  /// Sorted values in [lo, hi].
  std::vector<std::int64_t> enumerate(std::int64_t lo, std::int64_t hi) const;

  std::string to_string() const;
  /// Token forms: "all" | "list v..." | "arith start step" | "squares" |
  /// "geometric base".
  static std::optional<IntSet> parse(const std::vector<std::string>& tokens);

 private:
  IntSet(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::vector<std::int64_t> values_;  // Explicit, sorted unique
  std::int64_t a_ = 0;                // Arithmetic start / Geometric base
  std::int64_t d_ = 1;                // Arithmetic step
};

}  // namespace rarebasis
