#pragma once

#include <complex>

#include "sgw/smallmat.hpp"

namespace sgw {

/// First-order jet (dual number) over an arbitrary scalar: carries a value and
/// one directional derivative through arithmetic.  Seeding the derivative slot
/// with z itself propagates the radial derivative z d/dz, which is what the
/// expected-time and radial-derivative observables need.
template <class T>
struct jet {
  T v{};  ///< value
  T d{};  ///< derivative

  constexpr jet() = default;
  constexpr jet(const T& value) : v(value), d{} {}
  constexpr jet(const T& value, const T& deriv) : v(value), d(deriv) {}

  friend constexpr jet operator+(const jet& x, const jet& y) { return {x.v + y.v, x.d + y.d}; }
  friend constexpr jet operator-(const jet& x, const jet& y) { return {x.v - y.v, x.d - y.d}; }
  friend constexpr jet operator-(const jet& x) { return {-x.v, -x.d}; }
  friend constexpr jet operator*(const jet& x, const jet& y) {
    return {x.v * y.v, x.v * y.d + x.d * y.v};
  }
  friend constexpr jet operator/(const jet& x, const jet& y) {
    T q = x.v / y.v;
    return {q, (x.d - q * y.d) / y.v};
  }

  friend constexpr bool operator==(const jet&, const jet&) = default;
};

template <class T>
double scalar_magnitude(const jet<T>& x) {
  return scalar_magnitude(x.v);
}

/// Entrywise conjugate of the stored value and derivative.
inline std::complex<double> conjugate(const std::complex<double>& x) { return std::conj(x); }
inline double conjugate(double x) { return x; }
template <class T>
jet<T> conjugate(const jet<T>& x) {
  return {conjugate(x.v), conjugate(x.d)};
}

using cjet = jet<std::complex<double>>;
using rjet = jet<double>;

}  // namespace sgw
