#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>

#include "sgw/errors.hpp"

namespace sgw {

/// Magnitude used for pivot selection and norm estimates.  Overloaded for the
/// scalar types the solvers are instantiated with (double, complex, jets).
inline double scalar_magnitude(double x) { return std::abs(x); }
inline double scalar_magnitude(const std::complex<double>& x) { return std::abs(x); }

/// Dense fixed-size matrix over an arbitrary ring scalar.  Sized for the small
/// systems in this library (4x4 blocks up to the 28-dimensional passage system),
/// so everything lives on the stack and stays allocation-free.
template <class T, int R, int C>
struct matrix {
  std::array<T, static_cast<std::size_t>(R) * C> a{};

  constexpr T& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * C + c]; }
  constexpr const T& operator()(int r, int c) const {
    return a[static_cast<std::size_t>(r) * C + c];
  }

  static constexpr int rows() { return R; }
  static constexpr int cols() { return C; }

  static constexpr matrix zero() { return matrix{}; }

  static constexpr matrix identity()
    requires(R == C)
  {
    matrix m{};
    for (int i = 0; i < R; ++i) m(i, i) = T{1};
    return m;
  }

  friend constexpr matrix operator+(const matrix& x, const matrix& y) {
    matrix m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] + y.a[i];
    return m;
  }

  friend constexpr matrix operator-(const matrix& x, const matrix& y) {
    matrix m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = x.a[i] - y.a[i];
    return m;
  }

  friend constexpr matrix operator-(const matrix& x) {
    matrix m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = -x.a[i];
    return m;
  }

  friend constexpr matrix operator*(const T& s, const matrix& x) {
    matrix m;
    for (std::size_t i = 0; i < x.a.size(); ++i) m.a[i] = s * x.a[i];
    return m;
  }

  constexpr bool operator==(const matrix&) const = default;
};

/// Matrix product with the usual (row, inner) x (inner, col) shape rule.
/// The accumulation order is fixed (ascending inner index) so results are
/// bitwise reproducible across runs.
template <class T, int R, int K, int C>
constexpr matrix<T, R, C> operator*(const matrix<T, R, K>& x, const matrix<T, K, C>& y) {
  matrix<T, R, C> m;
  for (int r = 0; r < R; ++r)
    for (int c = 0; c < C; ++c) {
      T acc{};
      for (int k = 0; k < K; ++k) acc = acc + x(r, k) * y(k, c);
      m(r, c) = acc;
    }
  return m;
}

/// Row-sum (infinity) norm using scalar_magnitude entries.
template <class T, int R, int C>
double infinity_norm(const matrix<T, R, C>& m) {
  double best = 0.0;
  for (int r = 0; r < R; ++r) {
    double s = 0.0;
    for (int c = 0; c < C; ++c) s += scalar_magnitude(m(r, c));
    if (s > best) best = s;
  }
  return best;
}

template <class T, int R, int C>
double max_abs(const matrix<T, R, C>& m) {
  double best = 0.0;
  for (const auto& v : m.a) best = std::max(best, scalar_magnitude(v));
  return best;
}

/// LU decomposition with partial pivoting, kept as a struct so one
/// factorization can serve several right-hand sides.
template <class T, int N>
struct lu_decomposition {
  matrix<T, N, N> lu;
  std::array<int, N> perm{};
  bool singular = false;

  explicit lu_decomposition(matrix<T, N, N> m) : lu(m) {
    for (int i = 0; i < N; ++i) perm[i] = i;
    for (int k = 0; k < N; ++k) {
      int pivot = k;
      double best = scalar_magnitude(lu(k, k));
      for (int r = k + 1; r < N; ++r) {
        double mag = scalar_magnitude(lu(r, k));
        if (mag > best) {
          best = mag;
          pivot = r;
        }
      }
      if (best == 0.0) {
        singular = true;
        return;
      }
      if (pivot != k) {
        for (int c = 0; c < N; ++c) std::swap(lu(k, c), lu(pivot, c));
        std::swap(perm[k], perm[pivot]);
      }
      for (int r = k + 1; r < N; ++r) {
        lu(r, k) = lu(r, k) / lu(k, k);
        for (int c = k + 1; c < N; ++c) lu(r, c) = lu(r, c) - lu(r, k) * lu(k, c);
      }
    }
  }

  template <int M>
  matrix<T, N, M> solve(const matrix<T, N, M>& b) const {
    matrix<T, N, M> x;
    for (int r = 0; r < N; ++r)
      for (int c = 0; c < M; ++c) x(r, c) = b(perm[static_cast<std::size_t>(r)], c);
    // forward substitution (unit lower factor)
    for (int r = 1; r < N; ++r)
      for (int k = 0; k < r; ++k)
        for (int c = 0; c < M; ++c) x(r, c) = x(r, c) - lu(r, k) * x(k, c);
    // back substitution
    for (int r = N - 1; r >= 0; --r) {
      for (int k = r + 1; k < N; ++k)
        for (int c = 0; c < M; ++c) x(r, c) = x(r, c) - lu(r, k) * x(k, c);
      for (int c = 0; c < M; ++c) x(r, c) = x(r, c) / lu(r, r);
    }
    return x;
  }
};

/// Inverse together with an infinity-norm condition estimate.
template <class T, int N>
struct inverse_result {
  matrix<T, N, N> inv;
  double condition = 0.0;
};

/// Invert a small matrix, throwing singular_matrix_error (tagged with
/// factor_name) when the factorization breaks down or the condition estimate
/// exceeds the trust threshold.
template <class T, int N>
inverse_result<T, N> invert_checked(const matrix<T, N, N>& m, const char* factor_name,
                                    double condition_limit = 1e12) {
  lu_decomposition<T, N> lu(m);
  if (lu.singular) {
    throw singular_matrix_error(factor_name, std::numeric_limits<double>::infinity());
  }
  inverse_result<T, N> out;
  out.inv = lu.solve(matrix<T, N, N>::identity());
  out.condition = infinity_norm(m) * infinity_norm(out.inv);
  if (!(out.condition < condition_limit)) {
    throw singular_matrix_error(factor_name, out.condition);
  }
  return out;
}

template <class T, int N, int M>
matrix<T, N, M> solve_checked(const matrix<T, N, N>& m, const matrix<T, N, M>& rhs,
                              const char* factor_name, double condition_limit = 1e12) {
  lu_decomposition<T, N> lu(m);
  if (lu.singular) {
    throw singular_matrix_error(factor_name, std::numeric_limits<double>::infinity());
  }
  return lu.solve(rhs);
}

}  // namespace sgw
