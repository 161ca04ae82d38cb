#include <doctest.h>

#include "rarebasis/ladder.hpp"
#include "support/testrng.hpp"

using namespace rarebasis;

namespace {

CellSet1D make(const AxisFrame& frame, std::vector<Run> runs) {
  return CellSet1D::from_runs(frame, std::move(runs));
}

}  // namespace

TEST_CASE("interleave keeps the odd-indexed pieces") {
  const AxisFrame f(0, 2);
  // quarters of [0,4): keep the 1st and 3rd
  CHECK(interleave(0, CellSet1D::full(f)) == make(f, {{0, 1}, {2, 3}}));
  // halves of [0,4): keep the first
  CHECK(interleave(1, CellSet1D::full(f)) == make(f, {{0, 2}}));
  const AxisFrame f3(0, 3);
  CHECK(interleave(0, make(f3, {{0, 2}, {4, 6}})) == make(f3, {{0, 1}, {4, 5}}));
}

TEST_CASE("interleave rejects bad pieces") {
  const AxisFrame f(0, 3);
  CHECK_THROWS_AS(interleave(-1, CellSet1D::full(f)), std::invalid_argument);
  CHECK_THROWS_AS(interleave(3, CellSet1D::full(f)), std::invalid_argument);  // p == q
  CHECK_THROWS_AS(interleave(0, make(f, {{0, 3}})), std::invalid_argument);   // length 3
}

TEST_CASE("interleave halves the measure and half-saturates") {
  testsupport::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t fine = rng.range(-3, 3);
    const AxisFrame f(fine, fine + 6);
    // runs of a fixed power-of-two length at spaced positions
    const std::int64_t len_exp = rng.range(1, 3);
    const std::int64_t len = std::int64_t{1} << len_exp;
    std::vector<Run> runs;
    for (std::int64_t start = 0; start + len <= f.cell_count(); start += 2 * len) {
      if (rng.coin()) runs.push_back(Run{start, start + len});
    }
    if (runs.empty()) continue;
    const CellSet1D h = make(f, std::move(runs));
    const std::int64_t piece = fine + rng.range(0, len_exp - 1);
    const CellSet1D kept = interleave(piece, h);
    CHECK(kept.measure() + kept.measure() == h.measure());
    CHECK(h.contains(kept));
    CHECK(saturates(kept, h, Dyadic::pow2(-1)));
  }
}

TEST_CASE("build_ladder unrolls the worked cases") {
  const Ladder l012 = build_ladder(std::vector<std::int64_t>{0, 1, 2});
  const AxisFrame f = l012.frame();
  CHECK(l012.level(2) == CellSet1D::full(f));
  CHECK(l012.level(1) == make(f, {{0, 2}}));
  CHECK(l012.level(0) == make(f, {{0, 1}}));

  const Ladder l02 = build_ladder(std::vector<std::int64_t>{0, 2});
  CHECK(l02.level(1) == CellSet1D::full(l02.frame()));
  CHECK(l02.level(0) == make(l02.frame(), {{0, 1}, {2, 3}}));

  const Ladder l01 = build_ladder(std::vector<std::int64_t>{0, 1});
  CHECK(l01.level(0).measure() == Dyadic(1));
  CHECK(l01.level(1).measure() == Dyadic(2));

  CHECK_THROWS_AS(build_ladder(std::vector<std::int64_t>{0}), std::invalid_argument);
  CHECK_THROWS_AS(build_ladder(std::vector<std::int64_t>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(build_ladder(std::vector<std::int64_t>{2, 1}), std::invalid_argument);
}

TEST_CASE("ladder invariants: run counts, measures, shells") {
  testsupport::Rng rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = static_cast<std::size_t>(rng.range(1, 5));
    std::vector<std::int64_t> scales{rng.range(-4, 4)};
    for (std::size_t m = 0; m < k; ++m) scales.push_back(scales.back() + rng.range(1, 3));
    const Ladder ladder = build_ladder(scales);
    const std::int64_t span = scales.back() - scales.front();

    CHECK(ladder.level(0).run_count() ==
          std::size_t{1} << (span - static_cast<std::int64_t>(k)));
    for (std::size_t m = 0; m <= k; ++m) {
      CHECK(ladder.level(m).measure() ==
            Dyadic::pow2(scales.back() - static_cast<std::int64_t>(k - m)));
    }
    // shells partition the domain
    CellSet1D acc = CellSet1D::empty(ladder.frame());
    for (std::size_t m = 0; m <= k; ++m) {
      CHECK(intersect(acc, ladder.shell(m)).is_empty());
      acc = unite(acc, ladder.shell(m));
      if (m >= 1) {
        CHECK(ladder.shell(m).measure() + ladder.shell(m).measure() ==
              ladder.level(m).measure());
        CHECK(ladder.level(m).contains(ladder.level(m - 1)));
      }
    }
    CHECK(acc == CellSet1D::full(ladder.frame()));
  }
}

TEST_CASE("saturation composes down the ladder") {
  // E <- H at 1/2 each step composes to level(0) <-^{1/2^m} level(m).
  const Ladder ladder = build_ladder(std::vector<std::int64_t>{0, 2, 3, 5});
  for (std::size_t m = 1; m <= ladder.k(); ++m) {
    CHECK(saturates(ladder.level(m - 1), ladder.level(m), Dyadic::pow2(-1)));
    CHECK(saturates(ladder.level(0), ladder.level(m),
                    Dyadic::pow2(-static_cast<std::int64_t>(m))));
  }
}

TEST_CASE("verify_ladder passes the worked cases and counts intervals") {
  const LadderReport r1 = verify_ladder(build_ladder(std::vector<std::int64_t>{0, 1, 2}));
  CHECK(r1.pass);
  const LadderReport r2 = verify_ladder(build_ladder(std::vector<std::int64_t>{0, 2}));
  CHECK(r2.pass);
  // scales (0,2): J of length 2 at t=1 (aligned inside [0,4)) plus J=[0,4):
  // 2 + 1 intermediate intervals
  CHECK(r2.intervals_checked == 3);
  const LadderReport r3 = verify_ladder(build_ladder(std::vector<std::int64_t>{-3, -1, 2, 3}));
  CHECK(r3.pass);
}

TEST_CASE("symbolic ladders expose measures only") {
  const Ladder big = build_ladder(std::vector<std::int64_t>{0, 16, 36, 64});
  CHECK(!big.materialized());
  CHECK(big.level_measure(0) == Dyadic::pow2(64 - 3));
  CHECK(big.level_measure(2) == Dyadic::pow2(63));
  CHECK(big.shell_measure(2) == Dyadic::pow2(62));
  CHECK(big.shell_measure(0) == big.level_measure(0));
  CHECK_THROWS_AS(big.level(0), std::logic_error);
  CHECK_THROWS_AS(verify_ladder(big), std::invalid_argument);
}

TEST_CASE("measures agree between materialized sets and closed forms") {
  // the closed forms carry the symbolic path, so pin them to real sets
  const Ladder ladder = build_ladder(std::vector<std::int64_t>{-2, 0, 3, 4});
  for (std::size_t m = 0; m <= ladder.k(); ++m) {
    CHECK(ladder.level(m).measure() == ladder.level_measure(m));
    CHECK(ladder.shell(m).measure() == ladder.shell_measure(m));
  }
}
