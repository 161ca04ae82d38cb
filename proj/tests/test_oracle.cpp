#include <doctest.h>

#include <sstream>

#include "rarebasis/oracle.hpp"
#include "support/testrng.hpp"

using namespace rarebasis;

namespace {

std::vector<Tuple> unit_gap_sequences(std::size_t n, std::int64_t k) {
  std::vector<Tuple> seqs;
  for (std::size_t j = 0; j < n; ++j) {
    Tuple seq;
    for (std::int64_t m = 0; m <= k; ++m) seq.push_back(m);
    seqs.push_back(std::move(seq));
  }
  return seqs;
}

std::vector<Tuple> random_sequences(testsupport::Rng& rng, std::size_t n, std::int64_t k,
                                    std::int64_t max_gap, std::int64_t span_budget) {
  while (true) {
    std::vector<Tuple> seqs;
    std::int64_t total_span = 0;
    for (std::size_t j = 0; j < n; ++j) {
      Tuple seq{0};
      for (std::int64_t m = 0; m < k; ++m) seq.push_back(seq.back() + rng.range(1, max_gap));
      total_span += seq.back();
      seqs.push_back(std::move(seq));
    }
    if (total_span <= span_budget) return seqs;
  }
}

}  // namespace

TEST_CASE("materialize marks exactly the cells of E") {
  const ExtremalConfig c22 = build_extremal(unit_gap_sequences(2, 2));
  const GridMask mask = materialize(c22);
  CHECK(mask.total_cells() == 16);
  CHECK(mask.popcount() == 1);
  CHECK(mask.get(0));  // cell (0,0)
  CHECK(mask.measure() == c22.e_measure());

  const ExtremalConfig c1 = build_extremal({{0, 2}});
  const GridMask m1 = materialize(c1);
  CHECK(m1.total_cells() == 4);
  CHECK(m1.get(0));
  CHECK(!m1.get(1));
  CHECK(m1.get(2));
  CHECK(!m1.get(3));
}

TEST_CASE("grid guard rejects oversized configurations") {
  const ExtremalConfig big = build_extremal(unit_gap_sequences(2, 12));
  CHECK_THROWS_AS(materialize(big, 1 << 20), std::runtime_error);
}

TEST_CASE("sliding profile worked cases") {
  const AxisFrame f(0, 2);
  const CellSet1D e = CellSet1D::from_runs(f, {{0, 1}});
  const auto profile = sliding_profile(e, 1);
  REQUIRE(profile.size() == 4);
  const Dyadic half = Dyadic::pow2(-1);
  CHECK(profile[0] == half);
  CHECK(profile[1] == half);
  CHECK(profile[2] == Dyadic(0));
  CHECK(profile[3] == Dyadic(0));
  // whole-domain window: constant measure/2^t
  const auto whole = sliding_profile(e, 2);
  for (const Dyadic& v : whole) CHECK(v == Dyadic::pow2(-2));
  // saturated axis
  const auto full = sliding_profile(CellSet1D::full(f), 1);
  for (const Dyadic& v : full) CHECK(v == Dyadic(1));
  CHECK_THROWS_AS(sliding_profile(e, 3), std::invalid_argument);
  CHECK_THROWS_AS(sliding_profile(e, -1), std::invalid_argument);
}

TEST_CASE("profile values are exact window maxima") {
  testsupport::Rng rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const AxisFrame f(0, 5);
    std::vector<Run> runs;
    std::int64_t cursor = 0;
    while (cursor < f.cell_count()) {
      const std::int64_t a = cursor + rng.range(0, 4);
      if (a >= f.cell_count()) break;
      const std::int64_t b = std::min(a + 1 + rng.range(0, 4), f.cell_count());
      runs.push_back(Run{a, b});
      cursor = b + 1;
    }
    if (runs.empty()) continue;
    const CellSet1D s = CellSet1D::from_runs(f, runs);
    const std::int64_t t = rng.range(0, 5);
    const auto counts = sliding_window_max_counts(s, t);
    const std::int64_t window = std::int64_t{1} << t;
    for (std::int64_t x = 0; x < f.cell_count(); ++x) {
      std::int64_t best = -1;
      for (std::int64_t start = std::max<std::int64_t>(0, x - window + 1);
           start <= std::min(x, f.cell_count() - window); ++start) {
        best = std::max(best, s.cells_in(start, start + window));
      }
      CHECK(counts[static_cast<std::size_t>(x)] == best);
    }
  }
}

TEST_CASE("superlevel worked case: 2x2 shape at threshold 1/4") {
  const ExtremalConfig c22 = build_extremal(unit_gap_sequences(2, 2));
  const GridMask mask = restricted_superlevel(c22, {{1, 1}}, Dyadic::pow2(-2));
  // E = [0,1)^2 inside [0,4)^2; a 2x2 window reaches average 1/4 exactly on
  // the cells whose windows can still touch E
  CHECK(mask.measure() == Dyadic(4));
  for (std::int64_t x = 0; x < 2; ++x) {
    for (std::int64_t y = 0; y < 2; ++y) {
      CHECK(mask.get(mask.flat_index(std::vector<std::int64_t>{x, y})));
    }
  }
}

TEST_CASE("superlevel threshold edges") {
  const ExtremalConfig c22 = build_extremal(unit_gap_sequences(2, 2));
  const GridMask everything = restricted_superlevel(c22, {{1, 1}}, Dyadic(0));
  CHECK(everything.popcount() == everything.total_cells());
  const GridMask nothing = restricted_superlevel(c22, {{1, 1}}, Dyadic(BigInt(3), -1));
  CHECK(nothing.popcount() == 0);  // averages never exceed 1, let alone 3/2
  const GridMask ones = restricted_superlevel(c22, {{0, 0}}, Dyadic(1));
  CHECK(ones.popcount() == 1);  // only the E cell sees average 1 at cell scale
}

TEST_CASE("superlevel is monotone in shapes and antitone in threshold") {
  testsupport::Rng rng(71);
  for (int trial = 0; trial < 15; ++trial) {
    const auto seqs = random_sequences(rng, 2, 3, 2, 12);
    const ExtremalConfig config = build_extremal(seqs);
    const Shape s1 = {seqs[0][1], seqs[1][1]};
    const Shape s2 = {seqs[0][2], seqs[1][2]};
    const Dyadic lo = Dyadic::pow2(-3);
    const Dyadic hi = Dyadic::pow2(-2);
    const GridMask one = restricted_superlevel(config, {s1}, lo);
    const GridMask two = restricted_superlevel(config, {s1, s2}, lo);
    CHECK(two.contains(one));
    const GridMask strict = restricted_superlevel(config, {s1}, hi);
    CHECK(one.contains(strict));
  }
}

TEST_CASE("aligned translates inside the tuple products average exactly 2^-k") {
  // for tuple m and the shape at scales s_{j,m_j}, every aligned translate
  // inside prod level(m_j) has average exactly 2^-k
  const std::vector<Tuple> seqs = {{0, 1, 3}, {0, 2, 3}};
  const ExtremalConfig config = build_extremal(seqs);
  const std::int64_t k = 2;
  for (const Tuple& m : enumerate_compositions(2, k).tuples) {
    std::vector<std::vector<std::int64_t>> counts;
    for (std::size_t j = 0; j < 2; ++j) {
      counts.push_back(sliding_window_max_counts(config.ladders[j].level(0),
                                                 seqs[j][static_cast<std::size_t>(m[j])]));
    }
    // window lengths in cells
    const std::int64_t w0 = std::int64_t{1} << seqs[0][static_cast<std::size_t>(m[0])];
    const std::int64_t w1 = std::int64_t{1} << seqs[1][static_cast<std::size_t>(m[1])];
    const auto& level0 = config.ladders[0].level(static_cast<std::size_t>(m[0]));
    const auto& level1 = config.ladders[1].level(static_cast<std::size_t>(m[1]));
    for (const Run& r0 : level0.runs()) {
      for (std::int64_t a = r0.begin; a < r0.end; a += w0) {
        const std::int64_t c0 = config.ladders[0].level(0).cells_in(a, a + w0);
        for (const Run& r1 : level1.runs()) {
          for (std::int64_t b = r1.begin; b < r1.end; b += w1) {
            const std::int64_t c1 = config.ladders[1].level(0).cells_in(b, b + w1);
            CHECK(Dyadic(c0 * c1) == Dyadic::pow2(-k) * Dyadic(w0 * w1));
          }
        }
      }
    }
  }
}

TEST_CASE("grid union equals the analytic union measure") {
  testsupport::Rng rng(83);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.range(2, 3));
    const std::int64_t k = rng.range(static_cast<std::int64_t>(n), 5);
    const auto seqs = random_sequences(rng, n, k, 2, 16);
    const ExtremalConfig config = build_extremal(seqs);
    OmegaSet omega = enumerate_compositions(n, k);
    if (rng.coin()) {
      std::vector<Tuple> subset;
      for (const Tuple& t : omega.tuples) {
        if (rng.coin()) subset.push_back(t);
      }
      omega.tuples = subset;
    }
    const GridMask mask = grid_union(config, omega);
    CHECK(mask.measure() == union_level_set_measure(config, omega));
  }
}

TEST_CASE("containment holds with realizing shapes and fails with wrong ones") {
  const ExtremalConfig config = build_extremal(unit_gap_sequences(2, 5));
  const OmegaSet omega = enumerate_compositions(2, 5);
  std::map<Tuple, Shape> shapes;
  for (const Tuple& m : omega.tuples) shapes[m] = {m[0], m[1]};  // tops of the ranges
  const ContainmentReport good = check_containment(config, omega, shapes);
  CHECK(good.ok);
  CHECK(good.union_cells == 80);

  // negative control: shrink one tuple's shape below its range
  const ExtremalConfig c22 = build_extremal(unit_gap_sequences(2, 2));
  const OmegaSet single = omega_subset(2, 2, {{1, 1}});
  std::map<Tuple, Shape> wrong;
  wrong[Tuple{1, 1}] = Shape{0, 0};
  CHECK_THROWS_AS(check_containment(c22, single, wrong), std::invalid_argument);
  // same shape fed directly to the superlevel: cells of the union outside E
  // cannot reach 1/4 with a single-cell window
  const GridMask marked = restricted_superlevel(c22, {{0, 0}}, Dyadic::pow2(-2));
  const GridMask union_mask = grid_union(c22, single);
  const auto missing = marked.first_missing(union_mask);
  REQUIRE(missing.has_value());

  // empty omega is vacuously contained
  OmegaSet empty;
  empty.n = 2;
  empty.k = 2;
  const ContainmentReport vac = check_containment(c22, empty, {});
  CHECK(vac.ok);
}

TEST_CASE("missing shapes are rejected") {
  const ExtremalConfig c22 = build_extremal(unit_gap_sequences(2, 2));
  const OmegaSet single = omega_subset(2, 2, {{1, 1}});
  CHECK_THROWS_AS(check_containment(c22, single, {}), std::invalid_argument);
}

TEST_CASE("parallel superlevel equals the single-threaded mask") {
  testsupport::Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    const auto seqs = random_sequences(rng, 2, 4, 2, 14);
    const ExtremalConfig config = build_extremal(seqs);
    std::vector<Shape> shapes;
    for (const Tuple& m : enumerate_compositions(2, 4).tuples) {
      shapes.push_back({seqs[0][static_cast<std::size_t>(m[0])],
                        seqs[1][static_cast<std::size_t>(m[1])]});
    }
    const Dyadic threshold = Dyadic::pow2(-4);
    const GridMask serial = restricted_superlevel(config, shapes, threshold, kDefaultGridGuard, 1);
    const GridMask parallel =
        restricted_superlevel(config, shapes, threshold, kDefaultGridGuard, 3);
    CHECK(serial == parallel);
  }
}

TEST_CASE("rle export round-trips") {
  const ExtremalConfig config = build_extremal({{0, 1, 3}, {0, 2, 3}});
  const GridMask mask = grid_union(config, enumerate_compositions(2, 2));
  std::stringstream buffer;
  mask.export_rle(buffer);
  const GridMask parsed = GridMask::parse_rle(buffer);
  CHECK(parsed == mask);
  CHECK(buffer.str().substr(0, 11) == "cellmask v1");
}
