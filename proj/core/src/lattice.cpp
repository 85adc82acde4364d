#include "sgw/lattice.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "sgw/errors.hpp"

namespace sgw {

namespace {

struct edge_key {
  site a, b;
  friend bool operator==(const edge_key&, const edge_key&) = default;
};

struct edge_hash {
  std::size_t operator()(const edge_key& e) const noexcept {
    std::size_t h1 = std::hash<site>{}(e.a);
    std::size_t h2 = std::hash<site>{}(e.b);
    return h1 ^ (h2 * 0x100000001b3ull);
  }
};

edge_key make_edge(site a, site b) {
  if (b < a) std::swap(a, b);
  return {a, b};
}

site midpoint(site a, site b) { return {(a.x1 + b.x1) / 2, (a.x2 + b.x2) / 2}; }

/// Recursive bisection of one gasket triangle into sites and edges.
void subdivide(site p0, site pa, site pb, int level, std::unordered_set<site>& sites,
               std::unordered_set<edge_key, edge_hash>& edges) {
  if (level == 0) {
    sites.insert(p0);
    sites.insert(pa);
    sites.insert(pb);
    edges.insert(make_edge(p0, pa));
    edges.insert(make_edge(pa, pb));
    edges.insert(make_edge(p0, pb));
    return;
  }
  site ma = midpoint(p0, pa);
  site mb = midpoint(p0, pb);
  site mab = midpoint(pa, pb);
  subdivide(p0, ma, mb, level - 1, sites, edges);
  subdivide(ma, pa, mab, level - 1, sites, edges);
  subdivide(mb, mab, pb, level - 1, sites, edges);
}

}  // namespace

std::int64_t gasket::sites_per_copy(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return 3 * (p + 1) / 2;
}

gasket gasket::build_level(int n) {
  if (n < 0) throw usage_error("lattice level must be non-negative");
  if (n > 12) throw resource_error("explicit lattice construction capped at level 12");

  const std::int64_t scale = std::int64_t{1} << n;
  const site origin{0, 0};
  const site corner_a{scale, scale};
  const site corner_b{2 * scale, 0};

  std::unordered_set<site> site_set;
  std::unordered_set<edge_key, edge_hash> edge_set;
  subdivide(origin, corner_a, corner_b, n, site_set, edge_set);

  // Reflected copy, joined at the origin.
  {
    std::vector<site> base(site_set.begin(), site_set.end());
    for (site s : base) site_set.insert(reflect(s));
    std::vector<edge_key> base_edges(edge_set.begin(), edge_set.end());
    for (const edge_key& e : base_edges) edge_set.insert(make_edge(reflect(e.a), reflect(e.b)));
  }

  gasket g;
  g.level_ = n;
  g.sites_.assign(site_set.begin(), site_set.end());
  std::sort(g.sites_.begin(), g.sites_.end());

  std::unordered_map<site, int> index;
  index.reserve(g.sites_.size());
  for (int i = 0; i < static_cast<int>(g.sites_.size()); ++i) index[g.sites_[i]] = i;

  g.neighbors_.assign(g.sites_.size(), {-1, -1, -1, -1, -1, -1});
  for (int i = 0; i < static_cast<int>(g.sites_.size()); ++i) {
    for (int k = 0; k < n_directions; ++k) {
      site t = step(g.sites_[i], k);
      auto it = index.find(t);
      if (it != index.end() && edge_set.count(make_edge(g.sites_[i], t)) > 0) {
        g.neighbors_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = it->second;
      }
    }
  }

  g.origin_ = index.at(origin);
  g.corner_a_ = index.at(corner_a);
  g.corner_b_ = index.at(corner_b);
  g.corner_a_p_ = index.at(reflect(corner_a));
  g.corner_b_p_ = index.at(reflect(corner_b));

  // Out-direction lists: geometric for four-neighbor sites, conventional for
  // the five boundary sites (outer corners are completed with the directions
  // they would have inside the next-level lattice).
  g.out_.assign(g.sites_.size(), {0, 0, 0, 0});
  g.outer_corner_.assign(g.sites_.size(), false);
  for (int i = 0; i < static_cast<int>(g.sites_.size()); ++i) {
    std::array<int, 4> out{};
    int count = 0;
    for (int k = 0; k < n_directions; ++k)
      if (g.neighbors_[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] >= 0) {
        if (count < 4) out[static_cast<std::size_t>(count)] = k;
        ++count;
      }
    if (count == 4) {
      g.out_[static_cast<std::size_t>(i)] = out;
      continue;
    }
    if (count != 2) throw error("lattice construction produced a site with unexpected degree");
    g.outer_corner_[static_cast<std::size_t>(i)] = true;
    if (i == g.corner_a_) {
      g.out_[static_cast<std::size_t>(i)] = {0, 1, 4, 5};
    } else if (i == g.corner_b_) {
      g.out_[static_cast<std::size_t>(i)] = {0, 1, 2, 3};
    } else if (i == g.corner_a_p_) {
      g.out_[static_cast<std::size_t>(i)] = {0, 1, 4, 5};
    } else if (i == g.corner_b_p_) {
      g.out_[static_cast<std::size_t>(i)] = {2, 3, 4, 5};
    } else {
      throw error("lattice construction found a two-neighbor site that is not an outer corner");
    }
  }

  return g;
}

std::optional<int> gasket::index_of(site s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || !(*it == s)) return std::nullopt;
  return static_cast<int>(it - sites_.begin());
}

int gasket::slot_of(int site_index, int k) const {
  const auto& out = out_[static_cast<std::size_t>(site_index)];
  for (int s = 0; s < 4; ++s)
    if (out[static_cast<std::size_t>(s)] == k) return s;
  return -1;
}

std::string gasket::to_csv() const {
  std::string out = "x1,x2,out_dirs\n";
  char buf[96];
  for (int i = 0; i < static_cast<int>(sites_.size()); ++i) {
    const auto& o = out_[static_cast<std::size_t>(i)];
    std::snprintf(buf, sizeof buf, "%lld,%lld,%d;%d;%d;%d\n",
                  static_cast<long long>(sites_[static_cast<std::size_t>(i)].x1),
                  static_cast<long long>(sites_[static_cast<std::size_t>(i)].x2), o[0], o[1], o[2],
                  o[3]);
    out += buf;
  }
  return out;
}

std::array<site, 11> relabel_cell() {
  const std::array<site, 6> unprimed{{{0, 0}, {1, 1}, {2, 0}, {3, 1}, {4, 0}, {2, 2}}};
  std::array<site, 11> cell{};
  for (int i = 0; i < 6; ++i) cell[static_cast<std::size_t>(i)] = unprimed[static_cast<std::size_t>(i)];
  for (int i = 1; i <= 5; ++i)
    cell[static_cast<std::size_t>(5 + i)] = reflect(unprimed[static_cast<std::size_t>(i)]);
  return cell;
}

}  // namespace sgw
