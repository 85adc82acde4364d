#include "sgw/oracle.hpp"

#include <cmath>
#include <numbers>

#include "sgw/errors.hpp"

namespace sgw {

namespace {

double state_mass(const state_vector& psi, walk_kind kind) {
  double m = 0.0;
  if (kind == walk_kind::quantum)
    for (const auto& a : psi) m += std::norm(a);
  else
    for (const auto& a : psi) m += a.real();
  return m;
}

}  // namespace

absorbing_run absorbing_evolution(const gasket& g, const state_vector& initial,
                                  absorbing_set which, int n_steps, walk_kind kind) {
  if (n_steps < 0) throw usage_error("step count must be non-negative");
  if (initial.size() != g.sites().size() * 4)
    throw usage_error("state vector does not match the lattice");

  std::vector<int> absorbing{g.corner_a_index(), g.corner_b_index(),
                             g.corner_a_reflected_index(), g.corner_b_reflected_index()};
  if (which == absorbing_set::corners_and_origin) absorbing.push_back(g.origin_index());

  absorbing_run run;
  run.kind = kind;
  run.which = which;
  run.n_steps = n_steps;
  run.initial_mass = state_mass(initial, kind);

  state_vector psi = initial;  // the initial state is exempt from capture
  for (int t = 1; t <= n_steps; ++t) {
    psi = evolution_step(g, psi, kind);
    for (int s : absorbing) {
      for (int slot = 0; slot < 4; ++slot) {
        std::complex<double>& a = psi[static_cast<std::size_t>(4 * s + slot)];
        if (a == 0.0) continue;
        run.captures.push_back({t, s, slot, a});
        run.captured_mass += kind == walk_kind::quantum ? std::norm(a) : a.real();
        a = 0.0;
      }
    }
  }
  run.residual_mass = state_mass(psi, kind);
  return run;
}

std::vector<std::complex<double>> channel_series(const absorbing_run& run, int site_index,
                                                 int arrival_slot, int t_max) {
  std::vector<std::complex<double>> series(static_cast<std::size_t>(t_max) + 1);
  for (const capture& c : run.captures) {
    if (c.site_index != site_index || c.arrival_slot != arrival_slot || c.time > t_max)
      continue;
    series[static_cast<std::size_t>(c.time)] += c.amplitude;
  }
  return series;
}

std::vector<std::complex<double>> series_coefficients(
    const std::function<std::complex<double>(std::complex<double>)>& f, int t_max,
    std::size_t n_nodes, double radius) {
  if (t_max < 0) throw usage_error("coefficient order must be non-negative");
  if (n_nodes < 2 * static_cast<std::size_t>(t_max) + 2)
    throw usage_error("too few circle nodes for the requested coefficient order");
  std::vector<std::complex<double>> samples(n_nodes);
  for (std::size_t m = 0; m < n_nodes; ++m) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n_nodes);
    samples[m] = f(std::polar(radius, theta));
  }
  std::vector<std::complex<double>> coeffs(static_cast<std::size_t>(t_max) + 1);
  for (int t = 0; t <= t_max; ++t) {
    std::complex<double> acc{};
    for (std::size_t m = 0; m < n_nodes; ++m) {
      const double theta =
          2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n_nodes);
      acc += samples[m] * std::polar(1.0, -theta * static_cast<double>(t));
    }
    coeffs[static_cast<std::size_t>(t)] =
        acc / (static_cast<double>(n_nodes) * std::pow(radius, static_cast<double>(t)));
  }
  return coeffs;
}

}  // namespace sgw
