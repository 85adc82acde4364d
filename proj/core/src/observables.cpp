#include "sgw/observables.hpp"

#include <cmath>

#include "sgw/errors.hpp"

namespace sgw {

namespace {

constexpr double k_ln2 = 0.69314718055994530942;

/// Template labels of the four corner targets within the pattern cell:
/// corner a ~ site 1, corner b ~ site 2, and their reflections.
constexpr std::array<int, 4> k_corner_templates{1, 2, 6, 7};

template <class K>
std::array<matrix<std::decay_t<decltype(K{}.return_block(0)(0, 0))>, 4, 4>, 4> corner_blocks(
    const K& kernel) {
  using T = std::decay_t<decltype(kernel.return_block(0)(0, 0))>;
  std::array<matrix<T, 4, 4>, 4> blocks;
  for (std::size_t t = 0; t < 4; ++t)
    blocks[t] = kernel.step_block(0, k_corner_templates[t]);
  return blocks;
}

void accumulate_norms(prob_block& acc, const matrix<std::complex<double>, 4, 4>& block) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc(i, j) += std::norm(block(i, j));
}

void scale(prob_block& b, double s) {
  for (auto& v : b.a) v *= s;
}

}  // namespace

double exit_distribution::row_total(int row_slot) const {
  double s = 0.0;
  for (const prob_block* b : {&origin, &corner_a, &corner_b, &corner_a_reflected,
                              &corner_b_reflected})
    for (int j = 0; j < 4; ++j) s += (*b)(row_slot, j);
  return s;
}

double exit_distribution::labeled_channel_sum() const {
  double s = 0.0;
  for (int j = 0; j < 4; ++j) s += origin(0, j);
  return s + corner_a(0, 2) + corner_b(0, 3) + corner_a_reflected(0, 1) +
         corner_b_reflected(0, 0);
}

exit_distribution quantum_exit_distribution_from(
    int level, const std::vector<green_sextet<std::complex<double>>>& row) {
  exit_distribution dist;
  dist.level = level;
  dist.kind = walk_kind::quantum;
  for (const auto& u : row) {
    quantum_kernel<std::complex<double>> kernel{u};
    const auto corners = corner_blocks(kernel);
    accumulate_norms(dist.corner_a, corners[0]);
    accumulate_norms(dist.corner_b, corners[1]);
    accumulate_norms(dist.corner_a_reflected, corners[2]);
    accumulate_norms(dist.corner_b_reflected, corners[3]);
    accumulate_norms(dist.origin, kernel.return_block(0));
  }
  const double w = 1.0 / static_cast<double>(row.size());
  for (prob_block* b : {&dist.origin, &dist.corner_a, &dist.corner_b, &dist.corner_a_reflected,
                        &dist.corner_b_reflected})
    scale(*b, w);
  return dist;
}

exit_distribution quantum_exit_distribution(int level, const circle_grid& grid) {
  const auto scan = sextet_on_circle(grid, level);
  return quantum_exit_distribution_from(level,
                                        scan.levels[static_cast<std::size_t>(level - 1)]);
}

exit_distribution classical_exit_distribution(int level) {
  // exact z = 1 orbit; the rational map would drift off the conservation
  // manifold at deep levels (see classical.hpp)
  const auto u = classical_triple_z1_at_level(level);
  classical_kernel<double> kernel{u};
  exit_distribution dist;
  dist.level = level;
  dist.kind = walk_kind::classical;
  const auto corners = corner_blocks(kernel);
  dist.corner_a = corners[0];
  dist.corner_b = corners[1];
  dist.corner_a_reflected = corners[2];
  dist.corner_b_reflected = corners[3];
  dist.origin = kernel.return_block(0);
  return dist;
}

recurrence_table recurrence_scan(const circle_grid& grid, int n_max) {
  const auto scan = sextet_on_circle(grid, n_max);
  recurrence_table table;
  table.n_max = n_max;
  table.excluded_nodes = scan.excluded_nodes;
  for (auto& seq : table.integrals) seq.resize(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    const auto means = parseval_means(scan.levels[static_cast<std::size_t>(n - 1)]);
    for (int k = 0; k < 6; ++k)
      table.integrals[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - 1)] =
          means[static_cast<std::size_t>(k)];
  }
  return table;
}

fit_result fit_decay_exponent(const std::vector<double>& values_by_level, int n1, int n2,
                              double floor, bool strict) {
  fit_result fit;
  std::vector<std::pair<double, double>> pts;  // (x = n ln2, y = -ln v)
  for (int n = n1; n <= n2; ++n) {
    if (n < 1 || n > static_cast<int>(values_by_level.size())) continue;
    const double v = values_by_level[static_cast<std::size_t>(n - 1)];
    if (!(v > floor) || !std::isfinite(v)) continue;
    pts.emplace_back(static_cast<double>(n) * k_ln2, -std::log(v));
  }
  fit.points_used = static_cast<int>(pts.size());
  if (pts.size() < 3) {
    fit.is_na = true;
    fit.na_reason = "fewer than 3 usable points in the fit window";
    if (strict) throw fit_error("decay-exponent fit failed: " + fit.na_reason);
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double det = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy * sxx - sx * sxy) / det;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (auto [x, y] : pts) {
    const double e = y - (fit.slope * x + fit.intercept);
    ss_res += e * e;
    ss_tot += (y - mean_y) * (y - mean_y);
  }
  fit.r_squared = ss_tot > 0 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-20 ? 1.0 : 0.0);
  fit.is_na = false;
  return fit;
}

int corner_block_component(int row_slot, int col_slot) {
  if (col_slot < 2) return -1;           // structural zeros
  if (row_slot < 2)                      // coin-reflected channels
    return col_slot == 2 ? 3 : 2;        // u4, u3
  return col_slot == 2 ? 0 : 1;          // u1, u2
}

int origin_block_component(int row_slot, int col_slot) {
  return row_slot / 2 == col_slot / 2 ? 4 : 5;  // u5 within a pair, u6 across
}

namespace {

/// Entry multiplicities over all five blocks: each component value appears
/// eight times (origin block: 8 u5-positions and 8 u6-positions; the four
/// corner blocks together: 8 of each transmission component).
constexpr double k_entry_multiplicity = 8.0;

std::array<double, 6> richardson_limits(const recurrence_table& t) {
  std::array<double, 6> out{};
  for (int k = 0; k < 6; ++k) {
    const auto& seq = t.integrals[static_cast<std::size_t>(k)];
    const std::size_t L = seq.size();
    const double vL = seq[L - 1];
    if (L < 3) {
      out[static_cast<std::size_t>(k)] = vL;
      continue;
    }
    const double d1 = seq[L - 2] - seq[L - 3];
    const double d2 = vL - seq[L - 2];
    if (std::abs(d1) < 1e-300 || std::abs(d2 / d1) >= 1.0) {
      out[static_cast<std::size_t>(k)] = vL;
      continue;
    }
    const double ratio = d2 / d1;
    out[static_cast<std::size_t>(k)] = vL + d2 * ratio / (1.0 - ratio);
  }
  return out;
}

}  // namespace

exponents_report quantum_exponents(const circle_grid& grid, int n_max, int fit_n1, int fit_n2,
                                   limit_mode mode) {
  if (n_max < 3) throw usage_error("exponent scan needs at least three levels");
  exponents_report rep;
  rep.n_max = n_max;
  rep.fit_n1 = fit_n1;
  rep.fit_n2 = fit_n2;
  rep.mode = mode;
  rep.table = recurrence_scan(grid, n_max);

  const auto rich = richardson_limits(rep.table);
  for (int k = 0; k < 6; ++k) {
    const auto& seq = rep.table.integrals[static_cast<std::size_t>(k)];
    const double deepest = seq.back();
    rep.component_limits[static_cast<std::size_t>(k)] =
        mode == limit_mode::analytic ? (k >= 4 ? 0.25 : 0.0) : deepest;
    rep.richardson_discrepancy[static_cast<std::size_t>(k)] =
        std::abs(rich[static_cast<std::size_t>(k)] - deepest);
  }

  // gamma: decay of the corner-block entries themselves
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int comp = corner_block_component(i, j);
      if (comp < 0) {
        fit_result na;
        na.is_na = true;
        na.na_reason = "structurally zero entry";
        rep.gamma_corner[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = na;
        continue;
      }
      rep.gamma_corner[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          fit_decay_exponent(rep.table.integrals[static_cast<std::size_t>(comp)], fit_n1, fit_n2);
    }

  // beta: decay of the origin-block deviation from the limit
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const int comp = origin_block_component(i, j);
      const auto& seq = rep.table.integrals[static_cast<std::size_t>(comp)];
      std::vector<double> dev(seq.size());
      for (std::size_t n = 0; n < seq.size(); ++n)
        dev[n] = std::abs(seq[n] - rep.component_limits[static_cast<std::size_t>(comp)]);
      rep.beta_origin[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          fit_decay_exponent(dev, fit_n1, fit_n2);
    }

  // delta: total-variation distance to the limit distribution
  rep.total_variation.resize(static_cast<std::size_t>(n_max));
  for (int n = 1; n <= n_max; ++n) {
    double sum = 0.0;
    for (int k = 0; k < 6; ++k)
      sum += k_entry_multiplicity *
             std::abs(rep.table.integrals[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - 1)] -
                      rep.component_limits[static_cast<std::size_t>(k)]);
    rep.total_variation[static_cast<std::size_t>(n - 1)] = 0.5 * sum;
  }
  rep.delta_fit = fit_decay_exponent(rep.total_variation, fit_n1, fit_n2);

  // eta: relative entropy of the limit distribution against level n.  The raw
  // cross-entropy converges to the limit's own entropy, so the decaying
  // quantity is the divergence (their difference); both are reported.
  rep.relative_entropy.resize(static_cast<std::size_t>(n_max));
  rep.cross_entropy.resize(static_cast<std::size_t>(n_max));
  constexpr double p_floor = 1e-14;
  for (int n = 1; n <= n_max; ++n) {
    double cross = 0.0;
    double divergence = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double p_inf = rep.component_limits[static_cast<std::size_t>(k)];
      if (p_inf <= p_floor) continue;  // 0 ln 0 convention
      const double p_n =
          rep.table.integrals[static_cast<std::size_t>(k)][static_cast<std::size_t>(n - 1)];
      if (!(p_n > 0.0))
        throw entropy_domain_error(
            "level distribution vanishes where the limit distribution is positive");
      cross += k_entry_multiplicity * (-p_inf * std::log(p_n));
      divergence += k_entry_multiplicity * (p_inf * (std::log(p_inf) - std::log(p_n)));
    }
    rep.cross_entropy[static_cast<std::size_t>(n - 1)] = cross;
    rep.relative_entropy[static_cast<std::size_t>(n - 1)] = divergence;
  }
  rep.eta_fit = fit_decay_exponent(rep.relative_entropy, fit_n1, fit_n2);

  return rep;
}

classical_exponents_report classical_exponents(int n_max, int fit_n1, int fit_n2) {
  if (n_max < 1) throw usage_error("classical exponent scan needs at least one level");
  classical_exponents_report rep;
  rep.n_max = n_max;
  rep.fit_n1 = fit_n1;
  rep.fit_n2 = fit_n2;

  // The z = 1 sequences run through the exact affine / on-manifold reductions:
  // the rational map amplifies roundoff near its z = 1 fixed point (see
  // classical.hpp), which would swamp the deep levels the fits depend on.
  // Only the time derivative needs off-circle information, so the jet
  // iteration keeps the rational map.
  phi_pair p{};  // level 0: certain transmission, Phi1 = 1/4
  classical_triple<double> u = initial_classical_triple(1.0);
  jet<double> z1{1.0, 1.0};
  classical_triple<jet<double>> uj = initial_classical_triple(z1);

  for (int n = 1; n <= n_max; ++n) {
    p = phi_manifold_iterate(p);
    u = classical_affine_iterate(u);
    uj = classical_triple_iterate(uj);
    rep.phi0.push_back(p.phi0);
    rep.phi1.push_back(p.phi1);
    rep.corner_u1.push_back(u.u1);
    rep.corner_u2.push_back(u.u2);
    rep.return_deviation.push_back(0.25 - u.u3);
    rep.expected_exit_time.push_back(4.0 * uj.u3.d + 4.0 * (uj.u1.d + uj.u2.d));
  }

  rep.phi1_fit = fit_decay_exponent(rep.phi1, fit_n1, fit_n2);
  rep.return_deviation_fit = fit_decay_exponent(rep.return_deviation, fit_n1, fit_n2);
  rep.corner_u1_fit = fit_decay_exponent(rep.corner_u1, fit_n1, fit_n2);
  rep.corner_u2_fit = fit_decay_exponent(rep.corner_u2, fit_n1, fit_n2);
  return rep;
}

}  // namespace sgw
