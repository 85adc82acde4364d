#pragma once

#include <complex>
#include <vector>

#include "sgw/lattice.hpp"
#include "sgw/smallmat.hpp"

namespace sgw {

/// Walk family: the quantum walk uses the 4x4 Grover coin (-1/2 on the
/// diagonal, +1/2 off it); the classical walk replaces amplitudes by the
/// uniform stochastic kernel (every entry 1/4).
enum class walk_kind { quantum, classical };

/// Reflection coefficient of the quantum coin: the diagonal entry is -r and
/// the off-diagonal entries are +r with r = 1/2.
inline constexpr double coin_r = 0.5;

/// Coin matrix on a site's four out-direction slots.
matrix<double, 4, 4> coin_matrix(walk_kind kind);

/// One-step transition weight phi(x^i -> y^j) on a working lattice: the coin
/// entry selecting the hop direction when y is the neighbor of x reached along
/// some out-direction k with arrival label j = k + 3 (mod 6), else zero.
double phi(const gasket& g, int x_index, int dir_i, int y_index, int dir_j, walk_kind kind);

/// State vector on the directed states of a lattice: slot layout
/// site_index * 4 + coin slot (slots index the site's ascending out-list).
using state_vector = std::vector<std::complex<double>>;

/// Delta state at the given site and direction (the direction must be in the
/// site's out-list).
state_vector basis_state(const gasket& g, int site_index, int dir);

/// Apply one full evolution step (coin then shift) to a state on the working
/// lattice.  Throws out_of_domain_error if the state has support on an outer
/// corner, because two of the corner's coin outputs shift off the lattice.
state_vector evolution_step(const gasket& g, const state_vector& psi, walk_kind kind);

}  // namespace sgw
