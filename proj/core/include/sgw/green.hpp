#pragma once

#include <array>

#include "sgw/cell.hpp"
#include "sgw/coin.hpp"
#include "sgw/errors.hpp"
#include "sgw/smallmat.hpp"

namespace sgw {

/// The six reduced amplitudes that determine every level-n Green block of the
/// doubled cell.  u1/u2 are the cross-cell transmission amplitudes into the
/// two arrival channels of a corner, u3/u4 their coin-reflected partners, and
/// u5/u6 the two independent entries of the return block at the origin.
template <class T>
struct green_sextet {
  T u1{}, u2{}, u3{}, u4{}, u5{}, u6{};

  friend constexpr bool operator==(const green_sextet&, const green_sextet&) = default;
};

/// The three reduced weights of the classical (uniform-coin) walk: u1/u2 the
/// two corner arrival channels, u3 the uniform return-block entry.
template <class T>
struct classical_triple {
  T u1{}, u2{}, u3{};

  friend constexpr bool operator==(const classical_triple&, const classical_triple&) = default;
};

/// Level-0 amplitudes: a single step carries weight r z into the channel that
/// arrives pointing back along the traversed edge; every other channel is
/// empty.
template <class T>
green_sextet<T> initial_sextet(const T& z, double r = coin_r) {
  return {T(r) * z, T{}, T{}, T(r) * z, T{}, T{}};
}

/// Classical level-0 weights: one step carries probability z/4.
template <class T>
classical_triple<T> initial_classical_triple(const T& z) {
  return {T(0.25) * z, T{}, T{}};
}

// ---------------------------------------------------------------------------
// Universal block patterns
//
// Every transition block between sites of the doubled cell is a 4x4 matrix in
// the two sites' coin slots, filled by one rule.  For an edge x -> y inside
// triangle {x, y, w} only the two arrival columns d(y->x) and d(y->w) are
// populated: the row of d(x->y) carries (-u4, -u3), the row of d(x->w)
// carries (+u4, +u3), and the two rows of the opposite direction pair carry
// (u1, u2).  The return block carries u5 on the diagonal, -u5 within a
// direction pair and u6 across pairs.  The classical walk forgets the
// incoming direction: all rows of an edge block equal (u1, u2) and the return
// block is uniformly u3.
// ---------------------------------------------------------------------------

/// Quantum kernel: builds blocks from a green_sextet.
template <class T>
struct quantum_kernel {
  green_sextet<T> u;

  matrix<T, 4, 4> step_block(int x, int y) const {
    const cell_geometry& cell = level1_cell();
    if (!cell.adjacent(x, y)) return matrix<T, 4, 4>::zero();
    const int w = cell.third_vertex(x, y);
    const int row_xy = cell.slot(x, cell.direction_between(x, y));
    const int row_xw = cell.slot(x, cell.direction_between(x, w));
    const int col_yx = cell.slot(y, cell.direction_between(y, x));
    const int col_yw = cell.slot(y, cell.direction_between(y, w));
    matrix<T, 4, 4> m;
    for (int s = 0; s < 4; ++s) {
      if (s == row_xy) {
        m(s, col_yx) = -u.u4;
        m(s, col_yw) = -u.u3;
      } else if (s == row_xw) {
        m(s, col_yx) = u.u4;
        m(s, col_yw) = u.u3;
      } else {
        m(s, col_yx) = u.u1;
        m(s, col_yw) = u.u2;
      }
    }
    return m;
  }

  matrix<T, 4, 4> return_block(int) const {
    matrix<T, 4, 4> m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = i == j ? u.u5 : (i / 2 == j / 2 ? -u.u5 : u.u6);
    return m;
  }
};

/// Classical kernel: builds blocks from a classical_triple.
template <class T>
struct classical_kernel {
  classical_triple<T> u;

  matrix<T, 4, 4> step_block(int x, int y) const {
    const cell_geometry& cell = level1_cell();
    if (!cell.adjacent(x, y)) return matrix<T, 4, 4>::zero();
    const int w = cell.third_vertex(x, y);
    const int col_yx = cell.slot(y, cell.direction_between(y, x));
    const int col_yw = cell.slot(y, cell.direction_between(y, w));
    matrix<T, 4, 4> m;
    for (int s = 0; s < 4; ++s) {
      m(s, col_yx) = u.u1;
      m(s, col_yw) = u.u2;
    }
    return m;
  }

  matrix<T, 4, 4> return_block(int) const {
    matrix<T, 4, 4> m;
    for (auto& v : m.a) v = u.u3;
    return m;
  }
};

// ---------------------------------------------------------------------------
// Block-circulant interior system
//
// In the rotated slot bases (identity at site 1, both pairs swapped at sites
// 2 and 3) the interior system over sites {1,2,3} is block-circulant with
// generators (A, B, C): A the return block, B the forward edge block, C the
// backward one.  Its shifted inverse -(I - rho)^{-1} = circ(X, Y, Z) is
// computed by two nested 4x4 Schur complements instead of one 12x12 solve.
// ---------------------------------------------------------------------------

/// Slot order of the rotated (circulant) basis at interior site x in {1,2,3}:
/// entry p is the ascending slot found at circulant position p.
constexpr std::array<int, 4> circulant_basis(int x) {
  return x == 1 ? std::array<int, 4>{0, 1, 2, 3} : std::array<int, 4>{2, 3, 0, 1};
}

/// Permute an ascending-basis block into the rotated bases of its two sites.
/// Boundary sites (0, 4, 5 and reflected) always keep the ascending basis.
template <class T>
matrix<T, 4, 4> to_rotated_basis(const matrix<T, 4, 4>& block, int row_site, int col_site) {
  const bool rot_r = row_site == 2 || row_site == 3;
  const bool rot_c = col_site == 2 || col_site == 3;
  matrix<T, 4, 4> m;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      m(p, q) = block(rot_r ? (p + 2) % 4 : p, rot_c ? (q + 2) % 4 : q);
  return m;
}

template <class T>
struct block_triple {
  matrix<T, 4, 4> A, B, C;
};

template <class K>
auto assemble_blocks_from(const K& kernel) {
  using T = std::decay_t<decltype(kernel.return_block(1)(0, 0))>;
  block_triple<T> t;
  t.A = to_rotated_basis(kernel.return_block(1), 1, 1);
  t.B = to_rotated_basis(kernel.step_block(1, 2), 1, 2);
  t.C = to_rotated_basis(kernel.step_block(1, 3), 1, 3);
  return t;
}

template <class T>
block_triple<T> assemble_blocks(const green_sextet<T>& u) {
  return assemble_blocks_from(quantum_kernel<T>{u});
}

template <class T>
block_triple<T> assemble_blocks(const classical_triple<T>& u) {
  return assemble_blocks_from(classical_kernel<T>{u});
}

template <class T>
struct circulant_inverse {
  matrix<T, 4, 4> X, Y, Z;
  double condition = 0.0;  ///< worst condition estimate among the three factors
};

/// Invert the shifted circulant: -(I12 - circ(A,B,C))^{-1} = circ(X,Y,Z).
/// Throws singular_matrix_error naming the factor when a 4x4 factor is
/// singular or its condition estimate exceeds condition_limit.
template <class T>
circulant_inverse<T> invert_shifted(const block_triple<T>& t, double condition_limit = 1e12) {
  using m4 = matrix<T, 4, 4>;
  const m4 I = m4::identity();
  const m4 Abar = t.A - I;
  const auto Abar_inv = invert_checked(Abar, "A - I", condition_limit);
  const m4& Ai = Abar_inv.inv;
  const m4 P = Abar - t.B * Ai * t.C;
  const auto P_inv = invert_checked(P, "A - I - B (A-I)^{-1} C", condition_limit);
  const m4& Pi = P_inv.inv;
  const m4 Q = t.C - t.B * Ai * t.B;
  const m4 W = t.B - t.C * Ai * t.C;
  const m4 H = Abar - t.C * Ai * t.B - W * Pi * Q;
  const auto H_inv = invert_checked(H, "second Schur complement", condition_limit);
  const m4 D = W * Pi * t.B * Ai - t.C * Ai;
  const m4 Z = H_inv.inv * D;
  const m4 Y = -(Pi * Q * Z) - Pi * t.B * Ai;
  const m4 X = Ai * (I - t.B * Z - t.C * Y);
  double cond = Abar_inv.condition;
  cond = std::max(cond, P_inv.condition);
  cond = std::max(cond, H_inv.condition);
  return {X, Y, Z, cond};
}

/// Dense 12x12 evaluation of -(I - rho)^{-1} in the rotated bases; the
/// reference path the block-circulant inverse is validated against.
template <class T>
matrix<T, 12, 12> dense_interior_inverse(const block_triple<T>& t, double condition_limit = 1e12) {
  matrix<T, 12, 12> m;
  const std::array<const matrix<T, 4, 4>*, 3> gen{&t.A, &t.B, &t.C};
  for (int br = 0; br < 3; ++br)
    for (int bc = 0; bc < 3; ++bc) {
      const matrix<T, 4, 4>& g = *gen[static_cast<std::size_t>(((bc - br) % 3 + 3) % 3)];
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(4 * br + r, 4 * bc + c) = g(r, c);
    }
  const matrix<T, 12, 12> shifted = matrix<T, 12, 12>::identity() - m;
  const auto inv = invert_checked(shifted, "dense I - rho", condition_limit);
  return -inv.inv;
}

// ---------------------------------------------------------------------------
// Dirichlet solves, boundary blocks, and the level recursion
// ---------------------------------------------------------------------------

/// Green blocks g(x, target) for the interior sites x = 1, 2, 3 of the cell,
/// in ascending slot bases.  target must be a boundary site of the primary
/// copy: 0 (origin), 4 (corner b) or 5 (corner a).
template <class K>
auto dirichlet_solve_from(const K& kernel, int target, double condition_limit = 1e12) {
  using T = std::decay_t<decltype(kernel.return_block(1)(0, 0))>;
  if (target != 0 && target != 4 && target != 5)
    throw usage_error("dirichlet target must be cell site 0, 4, or 5");
  const auto inv = invert_shifted(assemble_blocks_from(kernel), condition_limit);
  std::array<matrix<T, 4, 4>, 3> rhs;
  for (int x = 1; x <= 3; ++x)
    rhs[static_cast<std::size_t>(x - 1)] =
        to_rotated_basis(kernel.step_block(x, target), x, target);
  const std::array<std::array<const matrix<T, 4, 4>*, 3>, 3> rows{{
      {&inv.X, &inv.Y, &inv.Z},
      {&inv.Z, &inv.X, &inv.Y},
      {&inv.Y, &inv.Z, &inv.X},
  }};
  std::array<matrix<T, 4, 4>, 3> g;
  for (int x = 0; x < 3; ++x) {
    matrix<T, 4, 4> acc;
    for (int y = 0; y < 3; ++y)
      acc = acc + (*rows[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) *
                      rhs[static_cast<std::size_t>(y)];
    // rows of the result are in site (x+1)'s rotated basis; undo the rotation
    g[static_cast<std::size_t>(x)] = to_rotated_basis(-acc, x + 1, target);
  }
  return g;
}

template <class T>
std::array<matrix<T, 4, 4>, 3> dirichlet_solve(const green_sextet<T>& u, int target,
                                               double condition_limit = 1e12) {
  return dirichlet_solve_from(quantum_kernel<T>{u}, target, condition_limit);
}

template <class T>
std::array<matrix<T, 4, 4>, 3> dirichlet_solve(const classical_triple<T>& u, int target,
                                               double condition_limit = 1e12) {
  return dirichlet_solve_from(classical_kernel<T>{u}, target, condition_limit);
}

/// Residual of a Dirichlet solution in the interior equations, for validation:
/// max-abs entry of (g - rho g - rho(. , target)) over the three interior sites.
template <class K, class T>
double dirichlet_residual(const K& kernel, int target,
                          const std::array<matrix<T, 4, 4>, 3>& g) {
  double worst = 0.0;
  for (int x = 1; x <= 3; ++x) {
    matrix<T, 4, 4> acc = kernel.step_block(x, target);
    acc = acc + kernel.return_block(x) * g[static_cast<std::size_t>(x - 1)];
    for (int y = 1; y <= 3; ++y) {
      if (y == x) continue;
      acc = acc + kernel.step_block(x, y) * g[static_cast<std::size_t>(y - 1)];
    }
    worst = std::max(worst, max_abs(g[static_cast<std::size_t>(x - 1)] - acc));
  }
  return worst;
}

/// Boundary Green block g(0, target) of the next level: excursions from the
/// origin through the interior, landing at the target corner (target 5 or 4),
/// or returning to the origin (target 0, excursion part only).
template <class K>
auto boundary_green_from(const K& kernel, int target, double condition_limit = 1e12) {
  const auto g = dirichlet_solve_from(kernel, target, condition_limit);
  return kernel.step_block(0, 1) * g[0] + kernel.step_block(0, 2) * g[1];
}

template <class T>
matrix<T, 4, 4> boundary_green(const green_sextet<T>& u, int target,
                               double condition_limit = 1e12) {
  return boundary_green_from(quantum_kernel<T>{u}, target, condition_limit);
}

template <class T>
matrix<T, 4, 4> boundary_green(const classical_triple<T>& u, int target,
                               double condition_limit = 1e12) {
  return boundary_green_from(classical_kernel<T>{u}, target, condition_limit);
}

/// One renormalization step: the level-(n+1) sextet from the level-n sextet.
/// Shares one interior inversion between the two boundary targets.
template <class T>
green_sextet<T> iterate(const green_sextet<T>& u, double condition_limit = 1e12) {
  const quantum_kernel<T> kernel{u};
  const auto E5 = boundary_green_from(kernel, 5, condition_limit);
  const auto E0 = boundary_green_from(kernel, 0, condition_limit);
  return {E5(2, 2), E5(2, 3), E5(0, 3), E5(0, 2), u.u5 + E0(0, 0), u.u6 + E0(3, 1)};
}

/// One renormalization step of the classical walk through the same engine.
/// The production path is the closed rational map in classical.hpp; this
/// variant exists to cross-validate it.
template <class T>
classical_triple<T> iterate(const classical_triple<T>& u, double condition_limit = 1e12) {
  const classical_kernel<T> kernel{u};
  const auto E5 = boundary_green_from(kernel, 5, condition_limit);
  const auto E0 = boundary_green_from(kernel, 0, condition_limit);
  return {E5(0, 2), E5(0, 3), u.u3 + E0(0, 0)};
}

/// The sextet after n renormalization steps from the level-0 amplitudes.
template <class T>
green_sextet<T> sextet_at_level(const T& z, int n, double r = coin_r,
                                double condition_limit = 1e12) {
  green_sextet<T> u = initial_sextet(z, r);
  for (int i = 0; i < n; ++i) u = iterate(u, condition_limit);
  return u;
}

// ---------------------------------------------------------------------------
// Closed forms used as frozen cross-checks
// ---------------------------------------------------------------------------

namespace closed_form {

/// Level-1 sextet of the quantum walk in closed form.
template <class T>
green_sextet<T> first_iteration_sextet(const T& z, double r = coin_r) {
  const T rz = T(r) * z;
  const T rz2 = rz * rz;
  const T rz3 = rz2 * rz;
  const T rz4 = rz3 * rz;
  const T tail = rz4 / (T(1) + rz);
  green_sextet<T> u;
  u.u1 = rz2 + rz3 - tail;
  u.u2 = rz3 + rz3 + tail + tail;
  u.u3 = T{};
  u.u4 = rz2 - rz3 - tail - tail - tail;
  u.u5 = rz2 + rz3 + tail + tail + tail;
  u.u6 = rz3 - rz2 - tail;
  return u;
}

}  // namespace closed_form

}  // namespace sgw
