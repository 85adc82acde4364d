// Unit tests for the probability observables: exit distributions, recurrence
// integrals, decay-exponent fits, the exponents report, and first passage to
// the outer corners (quantum and classical).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "sgw/errors.hpp"
#include "sgw/observables.hpp"
#include "sgw/passage.hpp"

using namespace sgw;

namespace {
constexpr double kGoldenTol = 1e-10;
}

TEST_CASE("level-1 quantum exit distribution reproduces the golden rationals") {
  const auto grid = make_trapezoid_grid(4096);
  const auto dist = quantum_exit_distribution(1, grid);
  // corner block placement: rows 0,1 carry (u4, u3), rows 2,3 carry (u1, u2),
  // columns 0,1 are structurally zero
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(dist.corner_a(i, 2) - 1.0 / 8) < kGoldenTol);
    CHECK(std::abs(dist.corner_a(i, 3) - 0.0) < kGoldenTol);
    CHECK(std::abs(dist.corner_a(i + 2, 2) - 1.0 / 12) < kGoldenTol);
    CHECK(std::abs(dist.corner_a(i + 2, 3) - 1.0 / 12) < kGoldenTol);
    for (int j = 0; j < 2; ++j) CHECK(dist.corner_a(i, j) == 0.0);
  }
  // origin block: |u5|^2 within a direction pair, |u6|^2 across
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(std::abs(dist.origin(i, j) - (i / 2 == j / 2 ? 1.0 / 8 : 1.0 / 12)) < kGoldenTol);
  // unitarity: every start channel exits with total probability 1
  for (int row = 0; row < 4; ++row) CHECK(std::abs(dist.row_total(row) - 1.0) < 1e-9);
  CHECK(std::abs(dist.labeled_channel_sum() - 5.0 / 6) < 1e-9);
  CHECK(dist.level == 1);
  CHECK(dist.kind == walk_kind::quantum);
}

TEST_CASE("level-2 quantum exit distribution matches the figure values") {
  const auto grid = make_trapezoid_grid(4096);
  const auto dist = quantum_exit_distribution(2, grid);
  CHECK(std::abs(dist.corner_a(0, 2) - 0.0183) < 5e-4);  // |u4|^2
  CHECK(std::abs(dist.corner_a(0, 3) - 0.0486) < 5e-4);  // |u3|^2
  CHECK(std::abs(dist.corner_a(2, 2) - 0.0455) < 5e-4);  // |u1|^2
  CHECK(std::abs(dist.corner_a(2, 3) - 0.0503) < 5e-4);  // |u2|^2
  CHECK(std::abs(dist.origin(0, 0) - 0.1831) < 5e-4);    // |u5|^2
  CHECK(std::abs(dist.origin(0, 2) - 0.1542) < 5e-4);    // |u6|^2
  for (int row = 0; row < 4; ++row) CHECK(std::abs(dist.row_total(row) - 1.0) < 1e-9);
}

TEST_CASE("reflection symmetry pairs the four corner blocks") {
  const auto grid = make_trapezoid_grid(2048);
  for (int level : {1, 2}) {
    const auto dist = quantum_exit_distribution(level, grid);
    // the reflected copies mirror the primary ones entry by entry under the
    // slot reindexing of the reflection; their probability content is equal
    double a = 0.0, ap = 0.0, b = 0.0, bp = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        a += dist.corner_a(i, j);
        ap += dist.corner_a_reflected(i, j);
        b += dist.corner_b(i, j);
        bp += dist.corner_b_reflected(i, j);
      }
    CHECK(std::abs(a - ap) < 1e-10);
    CHECK(std::abs(b - bp) < 1e-10);
  }
}

TEST_CASE("classical exit distribution is exact at every level") {
  const auto d1 = classical_exit_distribution(1);
  // u1 = u3 = 1/10, u2 = 1/20 at z = 1
  for (int i = 0; i < 4; ++i) {
    CHECK(d1.corner_a(i, 2) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(d1.corner_a(i, 3) == doctest::Approx(0.05).epsilon(1e-13));
    for (int j = 0; j < 4; ++j)
      CHECK(d1.origin(i, j) == doctest::Approx(0.1).epsilon(1e-13));
    CHECK(std::abs(d1.row_total(i) - 1.0) < 1e-12);
  }
  // deeper levels stay normalized
  for (int n : {2, 5, 10})
    for (int i = 0; i < 4; ++i)
      CHECK(std::abs(classical_exit_distribution(n).row_total(i) - 1.0) < 1e-12);
}

TEST_CASE("recurrence scan reproduces the level-1 integrals") {
  const auto grid = make_trapezoid_grid(4096);
  const auto table = recurrence_scan(grid, 2);
  REQUIRE(table.n_max == 2);
  const std::array<double, 6> level1{1.0 / 12, 1.0 / 12, 0.0, 1.0 / 8, 1.0 / 8, 1.0 / 12};
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(table.integrals[static_cast<std::size_t>(k)][0] -
                   level1[static_cast<std::size_t>(k)]) < kGoldenTol);
  const std::array<double, 6> level2{0.0455, 0.0503, 0.0486, 0.0183, 0.1831, 0.1542};
  for (int k = 0; k < 6; ++k)
    CHECK(std::abs(table.integrals[static_cast<std::size_t>(k)][1] -
                   level2[static_cast<std::size_t>(k)]) < 5e-4);
  // node 0 sits exactly on the z = 1 singularity and node N/2 on the z = -1
  // one; both are excluded and replaced by the interpolation stencil
  CHECK(table.excluded_nodes == (std::vector<std::size_t>{0, 2048}));
}

TEST_CASE("decay-exponent fit on synthetic geometric data") {
  std::vector<double> v;
  for (int n = 1; n <= 12; ++n) v.push_back(3.0 * std::pow(2.0, -1.7 * n));
  const auto fit = fit_decay_exponent(v, 1, 12);
  REQUIRE(!fit.is_na);
  CHECK(fit.slope == doctest::Approx(1.7).epsilon(1e-10));
  CHECK(fit.intercept == doctest::Approx(-std::log(3.0)).epsilon(1e-8));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.points_used == 12);

  // floor masking: values at or below the floor are dropped
  std::vector<double> floored = v;
  for (std::size_t i = 6; i < floored.size(); ++i) floored[i] = 1e-15;
  const auto partial = fit_decay_exponent(floored, 1, 12);
  REQUIRE(!partial.is_na);
  CHECK(partial.points_used == 6);
  CHECK(partial.slope == doctest::Approx(1.7).epsilon(1e-10));

  // fewer than three usable points: NA by default, fit_error in strict mode
  const std::vector<double> tiny{1e-16, 1e-16, 1e-16, 1e-16};
  const auto na = fit_decay_exponent(tiny, 1, 4);
  CHECK(na.is_na);
  CHECK(!na.na_reason.empty());
  CHECK_THROWS_AS(fit_decay_exponent(tiny, 1, 4, 1e-14, true), fit_error);
  // a window with fewer than three levels is NA as well
  const auto narrow = fit_decay_exponent(v, 3, 4);
  CHECK(narrow.is_na);
}

TEST_CASE("exponents report: structure, masks, and limits") {
  const auto grid = make_trapezoid_grid(512);
  const auto rep = quantum_exponents(grid, 6, 2, 6, limit_mode::analytic);
  CHECK(rep.n_max == 6);
  const std::array<double, 6> limits{0, 0, 0, 0, 0.25, 0.25};
  for (int k = 0; k < 6; ++k)
    CHECK(rep.component_limits[static_cast<std::size_t>(k)] ==
          doctest::Approx(limits[static_cast<std::size_t>(k)]).epsilon(1e-12));
  // gamma: columns 0,1 of the corner block are structural zeros -> NA
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(rep.gamma_corner[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_na ==
            (j < 2));
      CHECK(!rep.beta_origin[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_na);
    }
  // the placement helpers agree with the masks
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK((corner_block_component(i, j) < 0) == (j < 2));
      CHECK(origin_block_component(i, j) == (i / 2 == j / 2 ? 4 : 5));
    }
  CHECK(!rep.delta_fit.is_na);
  CHECK(!rep.eta_fit.is_na);
  REQUIRE(rep.total_variation.size() == 6);
  REQUIRE(rep.relative_entropy.size() == 6);
  for (int n = 0; n < 6; ++n) {
    CHECK(rep.total_variation[static_cast<std::size_t>(n)] > 0.0);
    CHECK(rep.relative_entropy[static_cast<std::size_t>(n)] > 0.0);
    // divergence = cross-entropy minus the limit distribution's own entropy
    CHECK(rep.relative_entropy[static_cast<std::size_t>(n)] <
          rep.cross_entropy[static_cast<std::size_t>(n)]);
  }
  // TV and divergence decrease over the early levels
  CHECK(rep.total_variation[5] < rep.total_variation[0]);
  CHECK(rep.relative_entropy[5] < rep.relative_entropy[0]);

  // deepest-level mode reports Richardson discrepancies
  const auto rep2 = quantum_exponents(grid, 6, 2, 6, limit_mode::deepest_level);
  for (int k = 4; k < 6; ++k) {
    CHECK(rep2.component_limits[static_cast<std::size_t>(k)] ==
          doctest::Approx(0.25).epsilon(0.05));
    CHECK(rep2.richardson_discrepancy[static_cast<std::size_t>(k)] >= 0.0);
  }
}

TEST_CASE("classical exponents: exact sequences and machine-precision fits") {
  const auto rep = classical_exponents(25, 12, 25);
  REQUIRE(rep.n_max == 25);
  const double want = (std::log(5.0) - std::log(3.0)) / std::log(2.0);
  // phi1 and the return deviation are pure geometric sequences, so the fit
  // recovers the slope to roundoff
  for (const fit_result* f : {&rep.phi1_fit, &rep.return_deviation_fit}) {
    REQUIRE(!f->is_na);
    CHECK(std::abs(f->slope - want) < 1e-10);
    CHECK(f->r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
  // the corner sequences carry a second geometric mode at ratio (1/3)^n of
  // the dominant one, biasing the [12, 25] fit by about 1e-7
  for (const fit_result* f : {&rep.corner_u1_fit, &rep.corner_u2_fit}) {
    REQUIRE(!f->is_na);
    CHECK(std::abs(f->slope - want) < 5e-7);
  }
  // sequence identities: exact through the affine / on-manifold reductions
  for (int n = 1; n < 25; ++n) {
    CHECK(rep.phi0[static_cast<std::size_t>(n)] + 4.0 * rep.phi1[static_cast<std::size_t>(n)] ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.phi1[static_cast<std::size_t>(n)] ==
          doctest::Approx(0.6 * rep.phi1[static_cast<std::size_t>(n - 1)]).epsilon(1e-14));
  }
  // the expected exit time comes from the jet of the rational map, whose
  // roundoff amplification limits the exactness of 3^n to moderate depths
  for (int n = 1; n <= 10; ++n)
    CHECK(rep.expected_exit_time[static_cast<std::size_t>(n - 1)] ==
          doctest::Approx(std::pow(3.0, n)).epsilon(1e-9));
}

TEST_CASE("passage channel table lists the corner arrival channels") {
  const auto table = passage_channel_table();
  const std::array<int, 4> targets{5, 4, 9, 10};
  for (int t = 0; t < 4; ++t) {
    CHECK(table[static_cast<std::size_t>(t)][0].target_label ==
          targets[static_cast<std::size_t>(t)]);
    // two distinct arrival channels per corner, slots ascending
    CHECK(table[static_cast<std::size_t>(t)][0].arrival_slot <
          table[static_cast<std::size_t>(t)][1].arrival_slot);
    for (int c = 0; c < 2; ++c) {
      const auto& ch = table[static_cast<std::size_t>(t)][c];
      // a walker hopping from the neighbor onto the target arrives with the
      // label of the reverse direction, target -> neighbor
      const cell_geometry& cell = level1_cell();
      CHECK(cell.adjacent(ch.neighbor_label, ch.target_label));
      CHECK(cell.direction_between(ch.target_label, ch.neighbor_label) == ch.arrival_dir);
      CHECK(cell.slot(ch.target_label, ch.arrival_dir) == ch.arrival_slot);
    }
  }
}

TEST_CASE("quantum first passage at level 1 reproduces the golden rationals") {
  const auto grid = make_trapezoid_grid(4096);
  const auto rep = quantum_passage(1, grid);
  CHECK(rep.level == 1);
  CHECK(rep.kind == walk_kind::quantum);

  const std::array<std::array<double, 2>, 4> want_p{{
      {17.0 / 132, 19.0 / 1056},    // corner a
      {19.0 / 1056, 25.0 / 264},    // corner b
      {91.0 / 1056, 91.0 / 1056},   // corner b' (reflected)
      {91.0 / 1056, 91.0 / 1056},   // corner a' (reflected)
  }};
  const std::array<std::array<double, 2>, 4> want_e{{
      {7093.0 / 17424, 27073.0 / 278784},
      {27073.0 / 278784, 18049.0 / 69696},
      {59497.0 / 278784, 83521.0 / 278784},
      {83521.0 / 278784, 59497.0 / 278784},
  }};
  for (int t = 0; t < 4; ++t)
    for (int c = 0; c < 2; ++c) {
      CHECK(std::abs(rep.probability[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] -
                     want_p[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)]) < 1e-9);
      CHECK(std::abs(rep.expected_time[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)] -
                     want_e[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)]) < 1e-9);
    }
  CHECK(std::abs(rep.total_probability - 319.0 / 528) < 1e-9);
  CHECK(std::abs(rep.total_expected_time - 2173.0 / 1152) < 1e-9);
  CHECK(std::abs(rep.conditional_expected_time - 2173.0 / 696) < 1e-8);
  // finalize() computed the totals as plain sums and the quotient
  double sum_p = 0.0, sum_e = 0.0;
  for (int t = 0; t < 4; ++t)
    for (int c = 0; c < 2; ++c) {
      sum_p += rep.probability[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
      sum_e += rep.expected_time[static_cast<std::size_t>(t)][static_cast<std::size_t>(c)];
    }
  CHECK(rep.total_probability == doctest::Approx(sum_p).epsilon(1e-14));
  CHECK(rep.total_expected_time == doctest::Approx(sum_e).epsilon(1e-14));
  CHECK(rep.conditional_expected_time == doctest::Approx(sum_e / sum_p).epsilon(1e-14));
  // reflection symmetry between the two reflected corners
  CHECK(std::abs(rep.probability[2][0] - rep.probability[3][1]) < 1e-12);
  CHECK(std::abs(rep.expected_time[2][0] - rep.expected_time[3][1]) < 1e-12);
}

TEST_CASE("classical first passage is certain with five-fold slowdown per level") {
  for (int n = 1; n <= 3; ++n) {
    const auto rep = classical_passage(n);
    CHECK(std::abs(rep.total_probability - 1.0) < 1e-12);
    CHECK(rep.total_expected_time == doctest::Approx(std::pow(5.0, n)).epsilon(1e-10));
    CHECK(rep.conditional_expected_time ==
          doctest::Approx(rep.total_expected_time).epsilon(1e-12));
  }
}

TEST_CASE("first-passage block solver rejects non-corner targets") {
  const quantum_kernel<std::complex<double>> kernel{
      initial_sextet(std::complex<double>(0.9, 0.1))};
  CHECK_THROWS_AS(first_passage_block(kernel, 2), usage_error);
  CHECK_NOTHROW(first_passage_block(kernel, 5));
}
