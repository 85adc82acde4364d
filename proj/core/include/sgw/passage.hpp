#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "sgw/cell.hpp"
#include "sgw/classical.hpp"
#include "sgw/coin.hpp"
#include "sgw/errors.hpp"
#include "sgw/green.hpp"
#include "sgw/jet.hpp"
#include "sgw/quadrature.hpp"
#include "sgw/smallmat.hpp"

namespace sgw {

// ---------------------------------------------------------------------------
// First passage to the outer corners of the doubled gasket
//
// At level n the doubled gasket, with every sub-cell interior integrated out,
// reduces to the eleven-site doubled cell whose transition blocks carry the
// level-(n-1) amplitudes.  Making the four outer corners absorbing leaves the
// seven joint sites {0, 1, 2, 3, 1', 2', 3'} as unknowns -- a 28-dimensional
// linear system per spectral node -- whose solution blocks are the
// first-passage generating functions from the origin to each corner.
// ---------------------------------------------------------------------------

inline constexpr int n_passage_interior = 7;
inline constexpr std::array<int, n_passage_interior> passage_interior_sites{0, 1, 2, 3,
                                                                            6, 7, 8};
/// Absorbing corners in report order: a, b, b', a'.
inline constexpr std::array<int, 4> passage_target_sites{5, 4, 9, 10};

/// One real arrival channel of an absorbing corner.
struct passage_channel {
  int target_label = 0;    ///< cell label of the absorbing corner
  int neighbor_label = 0;  ///< joint site the last step comes from
  int arrival_dir = 0;     ///< direction label of the arrival channel
  int arrival_slot = 0;    ///< slot of that direction in the corner's basis
};

/// The two real arrival channels of each absorbing corner (the other two
/// slots point into the next level and stay empty), slot-ascending, indexed
/// like passage_target_sites.
inline std::array<std::array<passage_channel, 2>, 4> passage_channel_table() {
  const cell_geometry& cell = level1_cell();
  std::array<std::array<passage_channel, 2>, 4> table{};
  for (std::size_t t = 0; t < 4; ++t) {
    const int target = passage_target_sites[t];
    int found = 0;
    for (int w : passage_interior_sites) {
      if (!cell.adjacent(target, w)) continue;
      if (found == 2) throw usage_error("corner with more than two joint neighbors");
      passage_channel c;
      c.target_label = target;
      c.neighbor_label = w;
      c.arrival_dir = cell.direction_between(target, w);
      c.arrival_slot = cell.slot(target, c.arrival_dir);
      table[t][static_cast<std::size_t>(found++)] = c;
    }
    if (found != 2) throw usage_error("corner must have exactly two joint neighbors");
    if (table[t][0].arrival_slot > table[t][1].arrival_slot)
      std::swap(table[t][0], table[t][1]);
  }
  return table;
}

/// First-passage Green blocks g1(0, target) for all four corners, in
/// passage_target_sites order: start channels at the origin in rows, arrival
/// channels at the absorbing corner in columns.  All walks stop on first
/// contact with any corner, so one interior inversion serves every target.
/// The inversion is condition-checked: on the unit circle the system hits
/// removable singularities (localized interior modes), which must surface as
/// singular_matrix_error so quadrature callers can exclude the node instead
/// of averaging in garbage.
template <class K>
auto first_passage_blocks(const K& kernel, double condition_limit = 1e12) {
  using T = std::decay_t<decltype(kernel.return_block(0)(0, 0))>;
  const cell_geometry& cell = level1_cell();
  constexpr int dim = 4 * n_passage_interior;
  matrix<T, dim, dim> system = matrix<T, dim, dim>::identity();
  for (int bi = 0; bi < n_passage_interior; ++bi)
    for (int bj = 0; bj < n_passage_interior; ++bj) {
      const int x = passage_interior_sites[static_cast<std::size_t>(bi)];
      const int y = passage_interior_sites[static_cast<std::size_t>(bj)];
      if (bi != bj && !cell.adjacent(x, y)) continue;
      const matrix<T, 4, 4> block =
          bi == bj ? kernel.return_block(x) : kernel.step_block(x, y);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          system(4 * bi + r, 4 * bj + c) = system(4 * bi + r, 4 * bj + c) - block(r, c);
    }
  const auto inv = invert_checked(system, "first-passage system", condition_limit);

  std::array<matrix<T, 4, 4>, 4> blocks{};
  for (std::size_t t = 0; t < 4; ++t) {
    const int target = passage_target_sites[t];
    matrix<T, dim, 4> rhs;
    for (int bi = 0; bi < n_passage_interior; ++bi) {
      const int x = passage_interior_sites[static_cast<std::size_t>(bi)];
      if (!cell.adjacent(x, target)) continue;
      const matrix<T, 4, 4> block = kernel.step_block(x, target);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) rhs(4 * bi + r, c) = block(r, c);
    }
    const auto solution = inv.inv * rhs;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) blocks[t](r, c) = solution(r, c);  // site 0 is block 0
  }
  return blocks;
}

/// Single-target convenience wrapper around first_passage_blocks.
template <class K>
auto first_passage_block(const K& kernel, int target, double condition_limit = 1e12) {
  for (std::size_t t = 0; t < 4; ++t)
    if (passage_target_sites[t] == target)
      return first_passage_blocks(kernel, condition_limit)[t];
  throw usage_error("first-passage target must be an outer corner of the doubled cell");
}

/// Per-channel first-passage statistics from the origin state with start
/// channel 0.  probability[t][c] is the total probability of being absorbed
/// at corner t through channel c; expected_time[t][c] the corresponding sum
/// of t * p_t (unconditional).
struct passage_report {
  int level = 0;
  walk_kind kind = walk_kind::quantum;
  std::array<std::array<passage_channel, 2>, 4> channels{};
  std::array<std::array<double, 2>, 4> probability{};
  std::array<std::array<double, 2>, 4> expected_time{};
  double total_probability = 0.0;
  double total_expected_time = 0.0;
  double conditional_expected_time = 0.0;
  std::size_t excluded_nodes = 0;

  void finalize() {
    total_probability = 0.0;
    total_expected_time = 0.0;
    for (std::size_t t = 0; t < 4; ++t)
      for (std::size_t c = 0; c < 2; ++c) {
        total_probability += probability[t][c];
        total_expected_time += expected_time[t][c];
      }
    conditional_expected_time = total_expected_time / total_probability;
  }
};

/// Quantum first-passage statistics at a level, by quadrature over the grid.
/// Nodes where the passage (or interior) system is singular are reconstructed
/// through the shared replacement stencils; the per-channel integrands are
/// analytic in the angle at such removable points.  More than
/// max_excluded_fraction of excluded nodes aborts the run.
inline passage_report quantum_passage(int level, const circle_grid& grid, double r = coin_r,
                                      double max_excluded_fraction = 0.01) {
  if (level < 1) throw usage_error("first-passage level must be at least 1");
  if (level > 12) throw resource_error("first-passage level capped at 12");
  passage_report rep;
  rep.level = level;
  rep.kind = walk_kind::quantum;
  rep.channels = passage_channel_table();

  const std::size_t n = grid.size();
  std::vector<std::array<double, 16>> partial(n);
  std::vector<char> excluded(n, 0);
  parallel_for(n, [&](std::size_t m) {
    const std::complex<double> z = grid.nodes[m];
    try {
      const quantum_kernel<cjet> kernel{sextet_at_level(cjet{z, z}, level - 1, r)};
      const auto blocks = first_passage_blocks(kernel);
      std::array<double, 16> acc{};
      for (std::size_t t = 0; t < 4; ++t) {
        for (std::size_t c = 0; c < 2; ++c) {
          const cjet g = blocks[t](0, rep.channels[t][c].arrival_slot);
          acc[4 * t + 2 * c] = std::norm(g.v);
          acc[4 * t + 2 * c + 1] = (conjugate(g.v) * g.d).real();
        }
      }
      partial[m] = acc;
    } catch (const singular_matrix_error&) {
      excluded[m] = 1;
    }
  });

  for (const replacement_stencil& st : replacement_plan(grid, excluded, max_excluded_fraction)) {
    std::array<double, 16> acc{};
    for (int i = 0; i < st.count; ++i)
      for (std::size_t k = 0; k < 16; ++k)
        acc[k] += st.weights[static_cast<std::size_t>(i)] *
                  partial[st.sources[static_cast<std::size_t>(i)]][k];
    partial[st.node] = acc;
    ++rep.excluded_nodes;
  }

  const double weight = 1.0 / static_cast<double>(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t t = 0; t < 4; ++t)
      for (std::size_t c = 0; c < 2; ++c) {
        rep.probability[t][c] += weight * partial[m][4 * t + 2 * c];
        rep.expected_time[t][c] += weight * partial[m][4 * t + 2 * c + 1];
      }
  rep.finalize();
  return rep;
}

/// Classical first-passage statistics at a level, evaluated directly at z = 1
/// with a derivative jet (no quadrature needed: the generating functions are
/// probability series).
inline passage_report classical_passage(int level) {
  if (level < 1) throw usage_error("first-passage level must be at least 1");
  if (level > 12) throw resource_error("first-passage level capped at 12");
  passage_report rep;
  rep.level = level;
  rep.kind = walk_kind::classical;
  rep.channels = passage_channel_table();

  const classical_kernel<rjet> kernel{classical_triple_at_level(rjet{1.0, 1.0}, level - 1)};
  const auto blocks = first_passage_blocks(kernel);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t c = 0; c < 2; ++c) {
      const rjet g = blocks[t](0, rep.channels[t][c].arrival_slot);
      rep.probability[t][c] = g.v;
      rep.expected_time[t][c] = g.d;
    }
  }
  rep.finalize();
  return rep;
}

}  // namespace sgw
