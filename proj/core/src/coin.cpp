#include "sgw/coin.hpp"

#include "sgw/errors.hpp"

namespace sgw {

matrix<double, 4, 4> coin_matrix(walk_kind kind) {
  matrix<double, 4, 4> c;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      c(i, j) = kind == walk_kind::quantum ? (i == j ? -coin_r : coin_r) : 0.25;
  return c;
}

double phi(const gasket& g, int x_index, int dir_i, int y_index, int dir_j, walk_kind kind) {
  int slot_i = g.slot_of(x_index, dir_i);
  if (slot_i < 0) throw usage_error("start direction is not an out-direction of the start site");
  int k = opposite_direction(dir_j);  // hop direction whose arrival label is dir_j
  if (g.slot_of(x_index, k) < 0) return 0.0;
  if (g.neighbor(x_index, k) != y_index) return 0.0;
  const auto c = coin_matrix(kind);
  return c(g.slot_of(x_index, k), slot_i);
}

state_vector basis_state(const gasket& g, int site_index, int dir) {
  if (g.slot_of(site_index, dir) < 0)
    throw usage_error("direction is not an out-direction of the site");
  state_vector psi(g.sites().size() * 4, 0.0);
  psi[static_cast<std::size_t>(site_index) * 4 +
      static_cast<std::size_t>(g.slot_of(site_index, dir))] = 1.0;
  return psi;
}

state_vector evolution_step(const gasket& g, const state_vector& psi, walk_kind kind) {
  const auto c = coin_matrix(kind);
  state_vector out(psi.size(), 0.0);
  const int n_sites = static_cast<int>(g.sites().size());
  for (int x = 0; x < n_sites; ++x) {
    const std::size_t base = static_cast<std::size_t>(x) * 4;
    bool occupied = false;
    for (int s = 0; s < 4; ++s)
      if (psi[base + static_cast<std::size_t>(s)] != 0.0) occupied = true;
    if (!occupied) continue;
    if (g.is_outer_corner(x))
      throw out_of_domain_error(
          "state has support on an outer corner; its shift leaves the working lattice");
    for (int ks = 0; ks < 4; ++ks) {
      std::complex<double> amp = 0.0;
      for (int is = 0; is < 4; ++is)
        amp += c(ks, is) * psi[base + static_cast<std::size_t>(is)];
      if (amp == 0.0) continue;
      int k = g.out_directions(x)[static_cast<std::size_t>(ks)];
      int y = g.neighbor(x, k);
      if (y < 0)
        throw out_of_domain_error("shift leaves the working lattice");
      int arrival_slot = g.slot_of(y, opposite_direction(k));
      out[static_cast<std::size_t>(y) * 4 + static_cast<std::size_t>(arrival_slot)] += amp;
    }
  }
  return out;
}

}  // namespace sgw
