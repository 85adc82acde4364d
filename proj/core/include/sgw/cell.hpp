#pragma once

#include <array>

#include "sgw/directions.hpp"

namespace sgw {

/// Static geometry of the doubled level-1 cell that drives the recursion: six
/// labeled sites of the primary copy (0 the shared origin, 1..3 interior, 4
/// and 5 the outer corners) plus the five reflected sites 1'..5' (labels
/// 6..10).  All single-step transition blocks between cell sites follow one
/// universal pattern determined by this geometry, so the cell is the single
/// source of truth for block construction.
class cell_geometry {
 public:
  static constexpr int n_sites = 11;

  cell_geometry();

  site coordinates(int label) const { return coords_[static_cast<std::size_t>(label)]; }

  /// Ascending out-direction list (coin slots 0..3).  Corner sites include
  /// their two next-level (virtual) directions, mirroring the lattice
  /// convention.
  const std::array<int, 4>& out_directions(int label) const {
    return out_[static_cast<std::size_t>(label)];
  }

  /// Slot of direction k at a site, or -1 when k is not in the out-list.
  int slot(int label, int k) const {
    return slot_[static_cast<std::size_t>(label)][static_cast<std::size_t>(k)];
  }

  /// Direction from site x to adjacent site y, or -1 if they are not adjacent
  /// within the cell.
  int direction_between(int x, int y) const {
    return dir_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }

  bool adjacent(int x, int y) const { return direction_between(x, y) >= 0; }

  /// The third vertex of the unique elementary triangle containing edge
  /// (x, y); each cell edge lies in exactly one triangle.
  int third_vertex(int x, int y) const {
    return third_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  }

  /// Label of the reflected site (0 fixed, 1..5 <-> 6..10).
  static constexpr int reflected_label(int label) {
    if (label == 0) return 0;
    return label <= 5 ? label + 5 : label - 5;
  }

  /// The six elementary triangles, three per copy.
  const std::array<std::array<int, 3>, 6>& triangles() const { return triangles_; }

 private:
  std::array<site, n_sites> coords_{};
  std::array<std::array<int, 4>, n_sites> out_{};
  std::array<std::array<int, 6>, n_sites> slot_{};
  std::array<std::array<int, n_sites>, n_sites> dir_{};
  std::array<std::array<int, n_sites>, n_sites> third_{};
  std::array<std::array<int, 3>, 6> triangles_{};
};

/// Shared immutable instance.
const cell_geometry& level1_cell();

}  // namespace sgw
