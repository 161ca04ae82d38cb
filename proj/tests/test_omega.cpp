#include <doctest.h>

#include "rarebasis/omega.hpp"

using namespace rarebasis;

TEST_CASE("compositions on the worked cases") {
  CHECK(enumerate_compositions(2, 2).tuples == std::vector<Tuple>{{1, 1}});
  CHECK(enumerate_compositions(3, 5).tuples.size() == 6);
  CHECK(enumerate_compositions(2, 5).tuples ==
        std::vector<Tuple>{{1, 4}, {2, 3}, {3, 2}, {4, 1}});
  CHECK(enumerate_compositions(1, 7).tuples == std::vector<Tuple>{{7}});
  CHECK_THROWS_AS(enumerate_compositions(3, 2), std::invalid_argument);
}

TEST_CASE("composition counts match the closed form and stay below k^(n-1)") {
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::int64_t k = static_cast<std::int64_t>(n); k <= 12; ++k) {
      const OmegaSet omega = enumerate_compositions(n, k);
      for (const Tuple& t : omega.tuples) {
        std::int64_t sum = 0;
        for (std::int64_t v : t) {
          CHECK(v >= 1);
          sum += v;
        }
        CHECK(sum == k);
      }
      // uniqueness: sorted construction, adjacent distinct
      for (std::size_t i = 1; i < omega.tuples.size(); ++i) {
        CHECK(omega.tuples[i - 1] < omega.tuples[i]);
      }
      const CardinalityReport report = cardinality_bounds_check(n, k);
      CHECK(BigInt(omega.tuples.size()) == report.cardinality);
      CHECK(report.upper_ok);
    }
  }
  const CardinalityReport r25 = cardinality_bounds_check(2, 5);
  CHECK(r25.cardinality == 4);
  CHECK(r25.upper == 5);
  CHECK(r25.ratio == ExactRatio(BigInt(4), BigInt(5)));
  const CardinalityReport r35 = cardinality_bounds_check(3, 5);
  CHECK(r35.cardinality == 6);
  CHECK(r35.upper == 25);
  const CardinalityReport r1 = cardinality_bounds_check(1, 9);
  CHECK(r1.cardinality == 1);
  CHECK(r1.upper == 1);
}

TEST_CASE("omega subsets validate their tuples") {
  CHECK(omega_subset(2, 4, {{1, 3}, {3, 1}}).tuples.size() == 2);
  CHECK_THROWS_AS(omega_subset(2, 4, {{0, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(omega_subset(2, 4, {{1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(omega_subset(2, 4, {{1, 1, 2}}), std::invalid_argument);
}

TEST_CASE("monotone tuples and their growth") {
  const OmegaSet m = monotone_tuples(3, 6);  // (m1 >= m2 >= 1, m3 free), sum 6
  for (const Tuple& t : m.tuples) CHECK(t[0] >= t[1]);
  CHECK(m.tuples.size() == 6);  // (1,1,4),(2,1,3),(2,2,2),(3,1,2),(3,2,1),(4,1,1)
  // card(monotone(n+1,k)) grows like k^n: sanity check the ratio is bounded
  // below over a small k range for dims 3 (n = 2)
  for (std::int64_t k = 4; k <= 16; ++k) {
    const double card = static_cast<double>(monotone_tuples(3, k).tuples.size());
    CHECK(card / (static_cast<double>(k) * k) > 0.1);
  }
}

TEST_CASE("completeness realizes everything for the unconstrained product") {
  const SpectrumFamily f =
      SpectrumFamily::full_product({IntSet::all(), IntSet::all()});
  const OmegaSet omega = enumerate_compositions(2, 4);
  const std::vector<Tuple> seqs = {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}};
  const CompletenessResult r = completeness(f, seqs, omega, Window::uniform(2, 0, 4));
  CHECK(r.complete);
  CHECK(r.realized.tuples == omega.tuples);
  for (const auto& [tuple, witness] : r.witness) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(witness[j] > seqs[j][static_cast<std::size_t>(tuple[j]) - 1]);
      CHECK(witness[j] <= seqs[j][static_cast<std::size_t>(tuple[j])]);
    }
  }
}

TEST_CASE("completeness drops tuples outside the spectrum") {
  // explicit spectrum missing large first coordinates
  std::vector<Tuple> tuples;
  for (std::int64_t a = 1; a <= 2; ++a) {
    for (std::int64_t b = 1; b <= 4; ++b) tuples.push_back({a, b});
  }
  const SpectrumFamily f = SpectrumFamily::explicit_tuples(2, tuples);
  const OmegaSet omega = enumerate_compositions(2, 4);
  const std::vector<Tuple> seqs = {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}};
  const CompletenessResult r = completeness(f, seqs, omega, Window::uniform(2, 0, 4));
  CHECK(!r.complete);
  CHECK(r.unrealized == std::vector<Tuple>{{3, 1}});  // needs a in (2,3]
}

TEST_CASE("completeness is monotone in the spectrum") {
  std::vector<Tuple> small_tuples = {{1, 3}, {2, 2}};
  std::vector<Tuple> big_tuples = small_tuples;
  big_tuples.push_back({3, 1});
  const OmegaSet omega = enumerate_compositions(2, 4);
  const std::vector<Tuple> seqs = {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}};
  const auto r_small = completeness(SpectrumFamily::explicit_tuples(2, small_tuples), seqs,
                                    omega, Window::uniform(2, 0, 4));
  const auto r_big = completeness(SpectrumFamily::explicit_tuples(2, big_tuples), seqs, omega,
                                  Window::uniform(2, 0, 4));
  for (const Tuple& t : r_small.realized.tuples) {
    CHECK(std::find(r_big.realized.tuples.begin(), r_big.realized.tuples.end(), t) !=
          r_big.realized.tuples.end());
  }
  CHECK(r_big.realized.tuples.size() > r_small.realized.tuples.size());
}

TEST_CASE("is-property on the worked cases") {
  const auto sum_le_3 = [](std::int64_t p, std::int64_t q) { return p + q <= 3; };
  const std::vector<ShapePair> anti = {{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  CHECK(is_property_check(anti, sum_le_3).pass);

  const std::vector<ShapePair> nested = {{0, 1}, {0, 2}};
  const IsPropertyReport bad = is_property_check(nested, sum_le_3);
  CHECK(!bad.pass);
  CHECK(!bad.comparability_violations.empty());

  const std::vector<ShapePair> single = {{5, 7}};
  CHECK(is_property_check(single, [](std::int64_t, std::int64_t) { return true; }).pass);

  // closure failure: minima outside the basis
  const std::vector<ShapePair> pairs = {{0, 3}, {3, 0}};
  const auto only_shapes = [&pairs](std::int64_t p, std::int64_t q) {
    return std::find(pairs.begin(), pairs.end(), ShapePair{p, q}) != pairs.end();
  };
  const IsPropertyReport closure = is_property_check(pairs, only_shapes);
  CHECK(!closure.pass);
  CHECK(closure.closure_violations.size() == 1);  // (0,0) missing
}

TEST_CASE("intersection closure and the induced product tuples") {
  const std::vector<ShapePair> anti = {{0, 3}, {1, 2}, {2, 1}, {3, 0}};
  const auto closure = intersection_closure(anti);
  CHECK(closure.size() == 10);  // all (a,b) with a,b >= 0, a+b <= 3
  for (const ShapePair& s : closure) CHECK(s.p + s.q <= 3);
  const std::vector<std::int64_t> third = {0, 1, 2};
  const auto tuples = product_basis_tuples(anti, third);
  CHECK(tuples.size() == 30);
}
