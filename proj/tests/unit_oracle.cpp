// Cross-validation of the renormalization engine against the brute-force
// state-vector oracle, plus unit tests of the oracle itself (absorption
// semantics, mass accounting, series extraction).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "doctest.h"
#include "sgw/classical.hpp"
#include "sgw/green.hpp"
#include "sgw/oracle.hpp"
#include "sgw/passage.hpp"

using namespace sgw;
using C = std::complex<double>;

TEST_CASE("series extraction recovers known power series") {
  // f(z) = z^3: a single unit coefficient
  const auto cubic = series_coefficients([](C z) { return z * z * z; }, 8);
  for (int t = 0; t <= 8; ++t)
    CHECK(std::abs(cubic[static_cast<std::size_t>(t)] - (t == 3 ? C(1) : C(0))) < 1e-12);
  // f(z) = 1 / (1 - z/2): coefficients 2^-t
  const auto geo = series_coefficients([](C z) { return C(1) / (C(1) - z / C(2)); }, 10);
  for (int t = 0; t <= 10; ++t)
    CHECK(std::abs(geo[static_cast<std::size_t>(t)] - C(std::pow(0.5, t))) < 1e-10);
}

TEST_CASE("absorption starts counting after the first step") {
  const gasket g = gasket::build_level(1);
  const auto run = absorbing_evolution(g, basis_state(g, g.origin_index(), 0),
                                       absorbing_set::corners_and_origin, 3, walk_kind::quantum);
  CHECK(run.initial_mass == doctest::Approx(1.0).epsilon(1e-14));
  for (const auto& cap : run.captures) {
    CHECK(cap.time >= 1);  // the initial state itself is exempt
    CHECK(cap.arrival_slot >= 0);
    CHECK(cap.arrival_slot < 4);
  }
  // no walker can reach a site at distance >= 2 at time 1; the origin's
  // neighbors are not absorbing, so the earliest captures happen at t = 2
  for (const auto& cap : run.captures) CHECK(cap.time >= 2);
}

TEST_CASE("amplitude mass balance at levels 1 to 3") {
  for (int n = 1; n <= 3; ++n) {
    const gasket g = gasket::build_level(n);
    for (walk_kind kind : {walk_kind::quantum, walk_kind::classical}) {
      const auto run = absorbing_evolution(g, basis_state(g, g.origin_index(), 0),
                                           absorbing_set::corners_and_origin, 120, kind);
      CHECK(run.initial_mass == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(run.captured_mass + run.residual_mass - run.initial_mass) < 1e-10);
      CHECK(run.captured_mass > 0.0);
    }
  }
}

TEST_CASE("classical capture probabilities sum towards certainty") {
  // classically the walk leaves the level-1 cell almost surely; by t = 120
  // nearly all mass is captured
  const gasket g = gasket::build_level(1);
  const auto run = absorbing_evolution(g, basis_state(g, g.origin_index(), 0),
                                       absorbing_set::corners_and_origin, 120, walk_kind::classical);
  CHECK(run.captured_mass > 0.999);
}

TEST_CASE("engine sextet series match oracle captures, levels 1 and 2") {
  struct channel_map {
    const char* name;
    int site;
    int dir;
    int component;  // 0..5 -> u1..u6
  };
  for (int n : {1, 2}) {
    const gasket g = gasket::build_level(n);
    const auto run = absorbing_evolution(g, basis_state(g, g.origin_index(), 0),
                                         absorbing_set::corners_and_origin, 14, walk_kind::quantum);
    const channel_map channels[] = {
        {"u4", g.corner_a_index(), 4, 3},           {"u3", g.corner_a_index(), 5, 2},
        {"u1", g.corner_a_reflected_index(), 1, 0}, {"u2", g.corner_a_reflected_index(), 0, 1},
        {"u5", g.origin_index(), 0, 4},             {"u6", g.origin_index(), 4, 5}};
    for (const auto& ch : channels) {
      CAPTURE(n);
      CAPTURE(ch.name);
      const auto oracle = channel_series(run, ch.site, g.slot_of(ch.site, ch.dir), 14);
      const auto engine = series_coefficients(
          [&](C z) {
            const auto u = sextet_at_level(z, n);
            switch (ch.component) {
              case 0: return u.u1;
              case 1: return u.u2;
              case 2: return u.u3;
              case 3: return u.u4;
              case 4: return u.u5;
              default: return u.u6;
            }
          },
          14);
      double worst = 0.0;
      for (int t = 0; t <= 14; ++t)
        worst = std::max(worst,
                         std::abs(oracle[static_cast<std::size_t>(t)] -
                                  engine[static_cast<std::size_t>(t)]));
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("classical triple series match oracle captures at level 1") {
  const gasket g = gasket::build_level(1);
  const auto run = absorbing_evolution(g, basis_state(g, g.origin_index(), 0),
                                       absorbing_set::corners_and_origin, 14, walk_kind::classical);
  struct channel_map {
    int site;
    int dir;
    int component;  // 0..2 -> u1..u3
  };
  const channel_map channels[] = {{g.corner_a_index(), 4, 0},
                                  {g.corner_a_index(), 5, 1},
                                  {g.origin_index(), 0, 2},
                                  {g.origin_index(), 4, 2}};
  for (const auto& ch : channels) {
    const auto oracle = channel_series(run, ch.site, g.slot_of(ch.site, ch.dir), 14);
    const auto engine = series_coefficients(
        [&](C z) {
          const auto u = classical_triple_at_level(z, 1);
          switch (ch.component) {
            case 0: return u.u1;
            case 1: return u.u2;
            default: return u.u3;
          }
        },
        14);
    double worst = 0.0;
    for (int t = 0; t <= 14; ++t)
      worst = std::max(worst, std::abs(oracle[static_cast<std::size_t>(t)] -
                                       engine[static_cast<std::size_t>(t)]));
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("reflection symmetry of captures for a symmetric start") {
  // starting at the origin in direction slot 0 and its reflected slot then
  // summing gives a reflection-symmetric state; captures must mirror exactly
  const gasket g = gasket::build_level(1);
  const int origin = g.origin_index();
  // slot of e0 and of its mirror e5 at the origin
  state_vector psi = basis_state(g, origin, 0);
  const auto mirrored = basis_state(g, origin, reflect_direction(0));
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += mirrored[i];
  for (auto& a : psi) a *= std::sqrt(0.5);
  const auto run =
      absorbing_evolution(g, psi, absorbing_set::corners_and_origin, 20, walk_kind::quantum);
  const int ca = g.corner_a_index();
  const int cap = g.corner_a_reflected_index();
  for (int dir : {4, 5}) {
    const auto direct = channel_series(run, ca, g.slot_of(ca, dir), 20);
    const auto mirror =
        channel_series(run, cap, g.slot_of(cap, reflect_direction(dir)), 20);
    for (int t = 0; t <= 20; ++t)
      CHECK(std::abs(direct[static_cast<std::size_t>(t)] -
                     mirror[static_cast<std::size_t>(t)]) < 1e-12);
  }
}

TEST_CASE("first passage blocks match an oracle run without origin absorption") {
  // the first-passage Green block row 0 holds the generating functions of the
  // capture amplitudes for a walk started at the origin in slot 0 with only
  // the corners absorbing; its power series must equal the oracle's captures
  const gasket g = gasket::build_level(1);
  const auto run = absorbing_evolution(g, basis_state(g, g.origin_index(), 0),
                                       absorbing_set::corners_only, 14, walk_kind::quantum);
  // target corner a = cell site 5, arrival channels (dir 4, dir 5)
  const auto block_series = [&](int target, int arrival_slot) {
    return series_coefficients(
        [&](C z) {
          const quantum_kernel<C> kernel{initial_sextet(z)};
          const auto blocks = first_passage_blocks(kernel);
          int t_index = 0;
          for (int t = 0; t < 4; ++t)
            if (passage_target_sites[static_cast<std::size_t>(t)] == target) t_index = t;
          // row: start channel at the origin, column: arrival slot at target
          return blocks[static_cast<std::size_t>(t_index)](0, arrival_slot);
        },
        14);
  };
  const int ca = g.corner_a_index();
  for (int dir : {4, 5}) {
    const int slot = g.slot_of(ca, dir);
    const auto oracle = channel_series(run, ca, slot, 14);
    const auto engine = block_series(5, slot);
    double worst = 0.0;
    for (int t = 0; t <= 14; ++t)
      worst = std::max(worst, std::abs(oracle[static_cast<std::size_t>(t)] -
                                       engine[static_cast<std::size_t>(t)]));
    CHECK(worst < 1e-9);
  }
}
