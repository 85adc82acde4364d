#pragma once

#include <utility>

#include "sgw/green.hpp"
#include "sgw/jet.hpp"

namespace sgw {

/// Return/transmission pair of the classical walk at z = 1: Phi0 the
/// probability of returning to the entry corner of a cell before reaching
/// another corner, Phi1 the probability of exiting through one specific
/// arrival channel of another corner.  Conservation reads Phi0 + 4 Phi1 = 1.
struct phi_pair {
  double phi0 = 0.0;
  double phi1 = 0.25;
};

/// One level of the classical return/transmission recursion.
inline phi_pair phi_iterate(const phi_pair& p) {
  const double a = 1.0 - p.phi0 + p.phi1;
  const double b = 1.0 - p.phi0 - 2.0 * p.phi1;
  const double d = a * b;
  return {p.phi0 + 4.0 * p.phi1 * p.phi1 * (1.0 - p.phi0) / d,
          p.phi1 * p.phi1 * (1.0 - p.phi0 + 2.0 * p.phi1) / d};
}

/// One level of the closed rational recursion for the classical triple
/// (u1, u2, u3) at arbitrary z.  Equivalent to pushing the triple through the
/// interior solve (see iterate(classical_triple) in green.hpp), but in closed
/// form.
///
/// Conditioning: the denominator vanishes quadratically at the z = 1 fixed
/// point (0, 0, 1/4), and the direction transverse to the conservation
/// manifold 4 u3 + 4 (u1 + u2) = 1 is numerically expanding there, so
/// double-precision roundoff grows by roughly 3x per level along the z = 1
/// orbit.  Deep z = 1 scans must use classical_affine_iterate /
/// classical_triple_z1_at_level below, which are exact; the rational map is
/// for general z, where the denominator stays away from zero.
template <class T>
classical_triple<T> classical_triple_iterate(const classical_triple<T>& u) {
  const T& u1 = u.u1;
  const T& u2 = u.u2;
  const T& u3 = u.u3;
  const T den = T(2) * u1 * u1 + T(4) * u1 * u2 - T(4) * u1 * u3 + u1 + T(2) * u2 * u2 -
                T(4) * u2 * u3 + u2 - T(16) * u3 * u3 + T(8) * u3 - T(1);
  const T s = u1 + u2;
  classical_triple<T> out;
  out.u1 = -(s * (T(2) * u2 * u2 + T(2) * u1 * u2 + u1 - T(4) * u1 * u3)) / den;
  out.u2 = -(s * (T(2) * u1 * u1 + T(2) * u1 * u2 + u2 - T(4) * u2 * u3)) / den;
  out.u3 = (T(6) * u1 * u1 * u3 - u1 * u1 + T(12) * u1 * u2 * u3 - T(2) * u1 * u2 -
            T(4) * u1 * u3 * u3 + u1 * u3 + T(6) * u2 * u2 * u3 - u2 * u2 -
            T(4) * u2 * u3 * u3 + u2 * u3 - T(16) * u3 * u3 * u3 + T(8) * u3 * u3 - u3) /
           den;
  return out;
}

/// The z = 1 specialization of the classical recursion is affine:
/// (u1, u2) contract by the 2x2 map [[0.4, 0.2], [0.2, 0.4]] and
/// u3' = 0.1 + 0.6 u3.  It preserves the conservation identity exactly and is
/// numerically stable at every depth, so it is the production path for z = 1
/// level scans (and an independent cross-check of the rational map).
inline classical_triple<double> classical_affine_iterate(const classical_triple<double>& u) {
  return {0.4 * u.u1 + 0.2 * u.u2, 0.2 * u.u1 + 0.4 * u.u2, 0.1 + 0.6 * u.u3};
}

/// Classical triple at z = 1 after n levels, through the affine reduction.
inline classical_triple<double> classical_triple_z1_at_level(int n) {
  classical_triple<double> u = initial_classical_triple(1.0);
  for (int i = 0; i < n; ++i) u = classical_affine_iterate(u);
  return u;
}

/// One level of the return/transmission recursion restricted to the
/// conservation manifold Phi0 + 4 Phi1 = 1, where it reduces to the exact
/// contraction Phi1' = (3/5) Phi1.  This is the stable form for deep scans;
/// phi_iterate, like the rational triple map, amplifies roundoff near its
/// fixed point (1, 0).
inline phi_pair phi_manifold_iterate(const phi_pair& p) {
  const double phi1 = 0.6 * p.phi1;
  return {1.0 - 4.0 * phi1, phi1};
}

/// Classical triple after n levels from the one-step weights.
template <class T>
classical_triple<T> classical_triple_at_level(const T& z, int n) {
  classical_triple<T> u = initial_classical_triple(z);
  for (int i = 0; i < n; ++i) u = classical_triple_iterate(u);
  return u;
}

namespace closed_form {

/// Level-1 classical triple in closed form:
/// u1 = u3 = -z^2 / (2 (z^2 + 2z - 8)),  u2 = -z^3 / (4 (z^2 + 2z - 8)).
template <class T>
classical_triple<T> classical_level1_triple(const T& z) {
  const T den = z * z + T(2) * z - T(8);
  classical_triple<T> u;
  u.u1 = -(z * z) / (T(2) * den);
  u.u2 = -(z * z * z) / (T(4) * den);
  u.u3 = -(z * z) / (T(2) * den);
  return u;
}

}  // namespace closed_form

/// Expected time for the classical walk to leave the level-n cell through any
/// absorbing boundary site, starting at the origin: the z-derivative at z = 1
/// of the total exit generating function, which decomposes over the four
/// return channels and the eight corner channels.
inline double classical_expected_exit_time(int level) {
  jet<double> z{1.0, 1.0};
  const auto u = classical_triple_at_level(z, level);
  return 4.0 * u.u3.d + 4.0 * (u.u1.d + u.u2.d);
}

}  // namespace sgw
