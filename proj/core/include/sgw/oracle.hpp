#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "sgw/coin.hpp"
#include "sgw/lattice.hpp"

namespace sgw {

// ---------------------------------------------------------------------------
// Brute-force reference walks
//
// These routines evolve the full state vector step by step on an explicit
// working lattice, capturing whatever reaches an absorbing site.  They know
// nothing about the renormalization engine, which is exactly what makes them
// a useful arbiter: engine series coefficients and exit statistics are tested
// against these runs.
// ---------------------------------------------------------------------------

/// Which sites absorb the walker.
enum class absorbing_set {
  corners_and_origin,  ///< the four outer corners plus the origin (excursions)
  corners_only,        ///< the four outer corners (first passage)
};

/// One captured amplitude: the walker reached an absorbing site at this time
/// step through this arrival slot.  For classical runs the amplitude field
/// holds the (real) captured probability.
struct capture {
  int time = 0;
  int site_index = -1;
  int arrival_slot = -1;
  std::complex<double> amplitude;
};

/// Outcome of an absorbing evolution, with the mass accounting needed for
/// balance checks (quantum mass is the squared 2-norm, classical mass the
/// 1-norm).
struct absorbing_run {
  walk_kind kind = walk_kind::quantum;
  absorbing_set which = absorbing_set::corners_and_origin;
  int n_steps = 0;
  double initial_mass = 0.0;
  double captured_mass = 0.0;
  double residual_mass = 0.0;
  std::vector<capture> captures;
};

/// Evolve an initial state for n_steps full steps, zeroing and recording the
/// amplitude at every absorbing site after each step.  The initial state
/// itself is exempt: a walker that starts on an absorbing site only counts
/// once it comes back.
absorbing_run absorbing_evolution(const gasket& g, const state_vector& initial,
                                  absorbing_set which, int n_steps, walk_kind kind);

/// Time series (index = time step, 0..t_max) of the captured amplitude in one
/// channel (site, arrival slot).  Steps with no capture contribute zero.
std::vector<std::complex<double>> channel_series(const absorbing_run& run, int site_index,
                                                 int arrival_slot, int t_max);

/// Power-series coefficients of a generating function from samples on an
/// off-unit circle: c_t = (1 / (N r^t)) sum_m f(r e^{i theta_m}) e^{-i t theta_m}
/// with equally spaced angles.  The radius keeps the samples away from unit-
/// circle singularities; t_max must stay well below the node count.
std::vector<std::complex<double>> series_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& f, int t_max,
    std::size_t n_nodes = 64, double radius = 0.5);

}  // namespace sgw
