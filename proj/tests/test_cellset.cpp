#include <doctest.h>

#include "rarebasis/cellset.hpp"
#include "support/testrng.hpp"

using namespace rarebasis;

namespace {

CellSet1D make(const AxisFrame& frame, std::vector<Run> runs) {
  return CellSet1D::from_runs(frame, std::move(runs));
}

CellSet1D random_set(testsupport::Rng& rng, const AxisFrame& frame) {
  std::vector<Run> runs;
  std::int64_t cursor = 0;
  while (cursor < frame.cell_count()) {
    const std::int64_t a = cursor + rng.range(0, 3);
    if (a >= frame.cell_count()) break;
    const std::int64_t b = a + 1 + rng.range(0, 3);
    runs.push_back(Run{a, std::min(b, frame.cell_count())});
    cursor = runs.back().end + 1;
  }
  return make(frame, std::move(runs));
}

}  // namespace

TEST_CASE("measure of full, empty and fractional-cell sets") {
  const AxisFrame f02(0, 2);
  CHECK(make(f02, {{0, 4}}).measure() == Dyadic(4));
  CHECK(CellSet1D::empty(f02).measure() == Dyadic(0));
  // two cells of size 1/2
  const AxisFrame fm11(-1, 1);
  CHECK(make(fm11, {{0, 1}, {2, 3}}).measure() == Dyadic(1));
}

TEST_CASE("canonicalization merges adjacent runs and rejects overlap") {
  const AxisFrame f(0, 3);
  const CellSet1D merged = make(f, {{2, 4}, {0, 2}});
  CHECK(merged.runs().size() == 1);
  CHECK(merged.runs()[0] == Run{0, 4});
  CHECK_THROWS_AS(make(f, {{0, 3}, {2, 5}}), std::invalid_argument);
  CHECK_THROWS_AS(make(f, {{0, 9}}), std::invalid_argument);
  CHECK_THROWS_AS(make(f, {{3, 3}}), std::invalid_argument);
}

TEST_CASE("intersect matches the worked cases") {
  const AxisFrame f(0, 3);
  const CellSet1D a = make(f, {{0, 4}});
  const CellSet1D b = make(f, {{2, 6}});
  CHECK(intersect(a, b) == make(f, {{2, 4}}));
  CHECK(intersect(a, a) == a);
  const CellSet1D c = make(f, {{0, 1}, {2, 3}});
  const CellSet1D d = make(f, {{1, 2}, {3, 4}});
  CHECK(intersect(c, d).is_empty());
  const AxisFrame other(0, 4);
  CHECK_THROWS_AS(intersect(a, CellSet1D::full(other)), std::invalid_argument);
}

TEST_CASE("set algebra properties on random sets") {
  testsupport::Rng rng(11);
  const AxisFrame f(-2, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const CellSet1D a = random_set(rng, f);
    const CellSet1D b = random_set(rng, f);
    const CellSet1D inter = intersect(a, b);
    const CellSet1D uni = unite(a, b);
    const CellSet1D diff = difference(a, b);
    // measure is additive over the disjoint split a = (a\b) u (a&b)
    CHECK(diff.measure() + inter.measure() == a.measure());
    CHECK(uni.measure() + inter.measure() == a.measure() + b.measure());
    CHECK(inter.measure() <= a.measure());
    CHECK(inter.measure() <= b.measure());
    CHECK(a.contains(inter));
    CHECK(uni.contains(a));
    CHECK(intersect(diff, b).is_empty());
  }
}

TEST_CASE("cells_in counts by binary search") {
  const AxisFrame f(0, 4);
  const CellSet1D s = make(f, {{1, 3}, {5, 8}, {12, 13}});
  CHECK(s.cells_in(0, 16) == 6);
  CHECK(s.cells_in(2, 6) == 2);
  CHECK(s.cells_in(3, 5) == 0);
  CHECK(s.contains_cell(12));
  CHECK(!s.contains_cell(3));
  CHECK(s.contains_range(5, 8));
  CHECK(!s.contains_range(5, 9));
}

TEST_CASE("saturation on the worked cases") {
  const AxisFrame f(0, 3);
  const Dyadic half = Dyadic::pow2(-1);
  CHECK(saturates(make(f, {{0, 1}}), make(f, {{0, 2}}), half));
  CHECK(!saturates(make(f, {{0, 1}}), make(f, {{0, 4}}), half));  // ratio 1/4
  CHECK(saturates(make(f, {{0, 1}, {4, 5}}), make(f, {{0, 2}, {4, 6}}), half));
  CHECK_THROWS_AS(saturates(make(f, {{0, 1}}), CellSet1D::empty(f), half),
                  std::invalid_argument);
}

TEST_CASE("saturation implies the aggregate ratio") {
  // |H & E| / |H| = alpha whenever E alpha-saturates H.
  const AxisFrame f(-1, 4);
  const CellSet1D h = make(f, {{0, 8}, {16, 24}});
  const CellSet1D e = make(f, {{0, 2}, {18, 20}});
  const Dyadic quarter = Dyadic::pow2(-2);
  REQUIRE(saturates(e, h, quarter));
  CHECK(intersect(h, e).measure() == quarter * h.measure());
}
