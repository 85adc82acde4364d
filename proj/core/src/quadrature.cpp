#include "sgw/quadrature.hpp"

#include <cstdlib>
#include <numbers>
#include <random>
#include <thread>

#include "sgw/errors.hpp"

namespace sgw {

circle_grid make_trapezoid_grid(std::size_t n_nodes, double radius) {
  if (n_nodes == 0) throw usage_error("quadrature grid needs at least one node");
  circle_grid g;
  g.scheme = grid_scheme::trapezoid;
  g.radius = radius;
  g.angles.resize(n_nodes);
  g.nodes.resize(n_nodes);
  for (std::size_t m = 0; m < n_nodes; ++m) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n_nodes);
    g.angles[m] = theta;
    g.nodes[m] = radius * std::complex<double>(std::cos(theta), std::sin(theta));
  }
  return g;
}

circle_grid make_mc_grid(std::size_t n_samples, std::uint64_t seed, double radius) {
  if (n_samples == 0) throw usage_error("quadrature grid needs at least one node");
  circle_grid g;
  g.scheme = grid_scheme::monte_carlo;
  g.radius = radius;
  g.seed = seed;
  g.angles.resize(n_samples);
  g.nodes.resize(n_samples);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 2.0 * std::numbers::pi);
  for (std::size_t m = 0; m < n_samples; ++m) {
    const double theta = dist(rng);
    g.angles[m] = theta;
    g.nodes[m] = radius * std::complex<double>(std::cos(theta), std::sin(theta));
  }
  return g;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::size_t n_threads = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("SGW_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n_threads = static_cast<std::size_t>(v);
  }
  if (n_threads <= 1 || n < 2 * n_threads) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += n_threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<replacement_stencil> replacement_plan(const circle_grid& grid,
                                                  const std::vector<char>& excluded,
                                                  double max_excluded_fraction) {
  const std::size_t n = grid.size();
  std::vector<std::size_t> bad;
  for (std::size_t m = 0; m < n; ++m)
    if (excluded[m]) bad.push_back(m);
  if (bad.empty()) return {};
  const double fraction = static_cast<double>(bad.size()) / static_cast<double>(n);
  if (fraction > max_excluded_fraction || bad.size() == n)
    throw quadrature_reliability_error(bad.size(), n);

  // nearest included neighbors by index, circular in both directions
  const auto prev_included = [&](std::size_t m) {
    do m = (m + n - 1) % n;
    while (excluded[m]);
    return m;
  };
  const auto next_included = [&](std::size_t m) {
    do m = (m + 1) % n;
    while (excluded[m]);
    return m;
  };

  std::vector<replacement_stencil> plan;
  plan.reserve(bad.size());
  for (std::size_t m : bad) {
    replacement_stencil st;
    st.node = m;
    const std::size_t p1 = prev_included(m);
    const std::size_t n1 = next_included(m);
    if (grid.scheme != grid_scheme::trapezoid || n < 8) {
      st.sources = {p1, n1, 0, 0};
      st.weights = {0.5, 0.5, 0.0, 0.0};
      st.count = 2;
      plan.push_back(st);
      continue;
    }
    const std::size_t p2 = prev_included(p1);
    const std::size_t n2 = next_included(n1);
    st.sources = {p2, p1, n1, n2};
    st.count = 4;
    // unwrap the four source angles around the target angle
    const double theta0 = grid.angles[m];
    std::array<double, 4> theta{};
    for (int i = 0; i < 4; ++i) {
      double t = grid.angles[st.sources[static_cast<std::size_t>(i)]] - theta0;
      while (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;
      while (t < -std::numbers::pi) t += 2.0 * std::numbers::pi;
      theta[static_cast<std::size_t>(i)] = t;
    }
    for (int i = 0; i < 4; ++i) {
      double w = 1.0;
      for (int j = 0; j < 4; ++j) {
        if (j == i) continue;
        w *= (0.0 - theta[static_cast<std::size_t>(j)]) /
             (theta[static_cast<std::size_t>(i)] - theta[static_cast<std::size_t>(j)]);
      }
      st.weights[static_cast<std::size_t>(i)] = w;
    }
    plan.push_back(st);
  }
  return plan;
}

circle_scan sextet_on_circle(const circle_grid& grid, int n_max, double r,
                             double max_excluded_fraction) {
  if (n_max < 1) throw usage_error("circle scan needs at least one level");
  const std::size_t n = grid.size();
  circle_scan scan;
  scan.levels.assign(static_cast<std::size_t>(n_max),
                     std::vector<green_sextet<std::complex<double>>>(n));
  std::vector<char> excluded(n, 0);

  parallel_for(n, [&](std::size_t m) {
    green_sextet<std::complex<double>> u = initial_sextet(grid.nodes[m], r);
    try {
      for (int lvl = 1; lvl <= n_max; ++lvl) {
        u = iterate(u);
        scan.levels[static_cast<std::size_t>(lvl - 1)][m] = u;
      }
    } catch (const singular_matrix_error&) {
      excluded[m] = 1;
    }
  });

  for (std::size_t m = 0; m < n; ++m)
    if (excluded[m]) scan.excluded_nodes.push_back(m);

  for (const replacement_stencil& st : replacement_plan(grid, excluded, max_excluded_fraction))
    for (int lvl = 0; lvl < n_max; ++lvl) {
      auto& row = scan.levels[static_cast<std::size_t>(lvl)];
      green_sextet<std::complex<double>> acc;
      for (int i = 0; i < st.count; ++i) {
        const auto& s = row[st.sources[static_cast<std::size_t>(i)]];
        const double w = st.weights[static_cast<std::size_t>(i)];
        acc.u1 += w * s.u1;
        acc.u2 += w * s.u2;
        acc.u3 += w * s.u3;
        acc.u4 += w * s.u4;
        acc.u5 += w * s.u5;
        acc.u6 += w * s.u6;
      }
      row[st.node] = acc;
    }
  return scan;
}

std::array<double, 6> parseval_means(const std::vector<green_sextet<std::complex<double>>>& row) {
  std::array<double, 6> acc{};
  for (const auto& u : row) {
    acc[0] += std::norm(u.u1);
    acc[1] += std::norm(u.u2);
    acc[2] += std::norm(u.u3);
    acc[3] += std::norm(u.u4);
    acc[4] += std::norm(u.u5);
    acc[5] += std::norm(u.u6);
  }
  for (auto& v : acc) v /= static_cast<double>(row.size());
  return acc;
}

green_sextet<cjet> radial_derivative(std::complex<double> z, int level, double r) {
  return sextet_at_level(cjet{z, z}, level, r);
}

}  // namespace sgw
