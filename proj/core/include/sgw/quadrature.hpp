#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "sgw/green.hpp"
#include "sgw/jet.hpp"

namespace sgw {

enum class grid_scheme { trapezoid, monte_carlo };

/// Quadrature nodes on a circle |z| = radius for averages over the angle:
/// the trapezoid rule on a uniform angular grid (spectrally accurate for the
/// analytic integrands here) or Monte Carlo with a seeded generator.  Both
/// schemes weight every node 1/N.
struct circle_grid {
  grid_scheme scheme = grid_scheme::trapezoid;
  double radius = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> angles;
  std::vector<std::complex<double>> nodes;

  std::size_t size() const { return nodes.size(); }
};

circle_grid make_trapezoid_grid(std::size_t n_nodes, double radius = 1.0);
circle_grid make_mc_grid(std::size_t n_samples, std::uint64_t seed, double radius = 1.0);

/// Run fn(i) for i in [0, n) across the worker pool configured by the
/// SGW_THREADS environment variable (default: hardware concurrency).  Workers
/// only write to disjoint slots; callers reduce sequentially afterwards, so
/// results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Interpolation stencil that reconstructs the value at an excluded node from
/// included neighbors.  On trapezoid grids this is 4-point Lagrange
/// interpolation in the angle (the quantities are analytic in theta at
/// removable singularities such as z = 1, so the reconstruction error is
/// O(h^4) and stays far below the quadrature tolerances); on Monte Carlo
/// grids, where index neighbors sit at arbitrary angles, it degrades to the
/// average of the two nearest included samples.
struct replacement_stencil {
  std::size_t node = 0;                ///< the excluded node being replaced
  std::array<std::size_t, 4> sources{};
  std::array<double, 4> weights{};
  int count = 0;                       ///< number of active sources (2 or 4)
};

/// Build the replacement plan for a set of excluded nodes.  Throws
/// quadrature_reliability_error when more than max_excluded_fraction of the
/// nodes (or all of them) are excluded.
std::vector<replacement_stencil> replacement_plan(const circle_grid& grid,
                                                  const std::vector<char>& excluded,
                                                  double max_excluded_fraction);

/// Per-node sextets for levels 1..n_max over a circle grid.
///
/// Nodes where the interior inversion fails at any level are excluded as a
/// whole column.  If more than max_excluded_fraction of the nodes are excluded
/// the scan is unreliable and throws quadrature_reliability_error; otherwise
/// each excluded column is replaced through replacement_plan and the excluded
/// indices are reported so callers can surface them.
struct circle_scan {
  /// levels[n-1][m] = sextet at level n for node m.
  std::vector<std::vector<green_sextet<std::complex<double>>>> levels;
  std::vector<std::size_t> excluded_nodes;
};

circle_scan sextet_on_circle(const circle_grid& grid, int n_max, double r = coin_r,
                             double max_excluded_fraction = 0.01);

/// Mean over the grid of |u_k|^2 for the six components: the return and exit
/// probabilities of the quantum walk by the Parseval identity.
std::array<double, 6> parseval_means(const std::vector<green_sextet<std::complex<double>>>& row);

/// Sextet at one z carrying the radial derivative s d/ds g(s e^{i theta}) in
/// the jet's derivative slot (seeded as z d/dz).
green_sextet<cjet> radial_derivative(std::complex<double> z, int level, double r = coin_r);

}  // namespace sgw
