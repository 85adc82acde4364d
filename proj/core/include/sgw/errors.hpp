#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sgw {

/// Base class for all library errors.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A request referred to a state, site, or parameter outside the working domain
/// (e.g. evolving amplitude off the edge of the working lattice).
struct out_of_domain_error : error {
  using error::error;
};

/// Malformed input: unknown option values, unparsable state strings, bad ranges.
struct usage_error : error {
  using error::error;
};

/// A requested computation exceeds a configured resource cap (level or step limits).
struct resource_error : error {
  using error::error;
};

/// A linear factor in the block-circulant inversion chain was singular or too
/// ill-conditioned to trust.  Carries which factor failed and the condition
/// number estimate at the point of failure.
struct singular_matrix_error : error {
  singular_matrix_error(const std::string& factor_name, double cond)
      : error("singular or ill-conditioned factor '" + factor_name +
              "' (condition estimate " + std::to_string(cond) + ")"),
        factor(factor_name),
        condition_estimate(cond) {}

  std::string factor;
  double condition_estimate;
};

/// Too many quadrature nodes had to be excluded for the integral to be trusted.
struct quadrature_reliability_error : error {
  quadrature_reliability_error(std::size_t excluded_, std::size_t total_)
      : error("excluded " + std::to_string(excluded_) + " of " + std::to_string(total_) +
              " quadrature nodes; above the reliability threshold"),
        excluded(excluded_),
        total(total_) {}

  std::size_t excluded;
  std::size_t total;
};

/// The entropy sum hit a zero probability where the reference distribution is positive.
struct entropy_domain_error : error {
  using error::error;
};

/// A slope fit had fewer than the minimum number of usable points.
struct fit_error : error {
  using error::error;
};

}  // namespace sgw
