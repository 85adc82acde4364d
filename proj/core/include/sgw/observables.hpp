#pragma once

#include <array>
#include <string>
#include <vector>

#include "sgw/classical.hpp"
#include "sgw/green.hpp"
#include "sgw/quadrature.hpp"

namespace sgw {

/// A 4x4 block of probabilities: rows are the start slots at the origin,
/// columns the arrival slots at the target site.
using prob_block = matrix<double, 4, 4>;

/// Exit probabilities of the level-n walk started at the origin: one block
/// per absorbing boundary site (the origin itself and the four outer corners).
struct exit_distribution {
  int level = 0;
  walk_kind kind = walk_kind::quantum;
  prob_block origin;              ///< return to the origin
  prob_block corner_a;            ///< (2^n, 2^n)
  prob_block corner_b;            ///< (2^{n+1}, 0)
  prob_block corner_a_reflected;  ///< (-2^n, -2^n)
  prob_block corner_b_reflected;  ///< (2^n, -2^n)

  /// Total exit probability from one start slot, over all targets/channels.
  double row_total(int row_slot) const;

  /// Sum of the five principal channels from slot 0 (direction e0): the full
  /// return row plus the leading arrival channel of each corner.
  double labeled_channel_sum() const;
};

/// Quantum exit distribution by Parseval quadrature over the grid.
exit_distribution quantum_exit_distribution(int level, const circle_grid& grid);

/// Same, reusing an existing per-node sextet row for the level.
exit_distribution quantum_exit_distribution_from(
    int level, const std::vector<green_sextet<std::complex<double>>>& row);

/// Classical exit distribution: the generating-function blocks at z = 1.
exit_distribution classical_exit_distribution(int level);

/// Return/exit integrals I_k(n) = mean |u_k|^2 for levels 1..n_max.
struct recurrence_table {
  int n_max = 0;
  std::array<std::vector<double>, 6> integrals;  ///< integrals[k][n-1]
  std::vector<std::size_t> excluded_nodes;
};

recurrence_table recurrence_scan(const circle_grid& grid, int n_max);

/// Least-squares estimate of a decay exponent: fits -ln(v_n) against n ln 2
/// over n in [n1, n2], dropping values at or below the floor.  In strict mode
/// fewer than three usable points throws fit_error; otherwise the result is
/// marked not-available.
struct fit_result {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
  bool is_na = true;
  std::string na_reason;
};

fit_result fit_decay_exponent(const std::vector<double>& values_by_level, int n1, int n2,
                              double floor = 1e-14, bool strict = false);

/// How the infinite-level reference distribution is estimated.
enum class limit_mode {
  deepest_level,  ///< final computed level, with a Richardson extrapolation check
  analytic,       ///< exact limits: return entries 1/4, corner entries 0
};

/// Localization exponents of the quantum walk fitted from the level scan.
struct exponents_report {
  int n_max = 0;
  int fit_n1 = 0, fit_n2 = 0;
  limit_mode mode = limit_mode::deepest_level;
  recurrence_table table;

  /// Reference values used for the six component sequences (I_1..I_6 order).
  std::array<double, 6> component_limits{};
  /// |Richardson extrapolation - deepest level| per component.
  std::array<double, 6> richardson_discrepancy{};

  /// Per-entry fits: decay of the corner-a block entries (gamma) and of the
  /// origin-block deviations from the limit (beta).  Entries that are
  /// structurally zero are not-available.
  std::array<std::array<fit_result, 4>, 4> gamma_corner;
  std::array<std::array<fit_result, 4>, 4> beta_origin;

  /// Total-variation distance to the limit distribution and its fit (delta).
  std::vector<double> total_variation;
  fit_result delta_fit;

  /// Relative entropy (divergence) of the limit against level n and its fit
  /// (eta), plus the raw cross-entropy -sum p_inf ln p_n for reference.
  std::vector<double> relative_entropy;
  std::vector<double> cross_entropy;
  fit_result eta_fit;
};

exponents_report quantum_exponents(const circle_grid& grid, int n_max, int fit_n1, int fit_n2,
                                   limit_mode mode = limit_mode::deepest_level);

/// Classical exponent scan: exact sequences at z = 1 plus their fits.
struct classical_exponents_report {
  int n_max = 0;
  int fit_n1 = 0, fit_n2 = 0;
  std::vector<double> phi0, phi1;               ///< return/transmission pair per level
  std::vector<double> corner_u1, corner_u2;     ///< corner channel weights at z = 1
  std::vector<double> return_deviation;         ///< 1/4 - u3(1) per level
  std::vector<double> expected_exit_time;       ///< E(tau^(n)) = 3^n
  fit_result phi1_fit, return_deviation_fit, corner_u1_fit, corner_u2_fit;
};

classical_exponents_report classical_exponents(int n_max, int fit_n1, int fit_n2);

/// Entry placement of the quantum corner/origin blocks: which component
/// sequence (index 0..5 into I_1..I_6, or -1 for a structural zero) sits at
/// each (row, col) of the probability block.
int corner_block_component(int row_slot, int col_slot);
int origin_block_component(int row_slot, int col_slot);

}  // namespace sgw
