#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sgw/directions.hpp"

namespace sgw {

/// The doubled Sierpinski gasket at a given construction level: two copies of
/// the level-n gasket joined at the origin, the second copy the image of the
/// first under the reflect() involution.
///
/// Every non-boundary site has exactly four neighbors.  The five boundary
/// sites (the shared origin and the four outer corners) carry a fixed
/// conventional out-direction list; for the outer corners two of the four
/// listed directions leave the working lattice (they exist only in the
/// next-level embedding) and are flagged virtual.
class gasket {
 public:
  /// Build the doubled lattice at level n >= 0.  Throws resource_error for
  /// levels so deep the explicit site list would be unreasonable.
  static gasket build_level(int n);

  int level() const { return level_; }

  /// Sites in deterministic (lexicographic) order.
  const std::vector<site>& sites() const { return sites_; }

  /// Index of a site, or nullopt if absent.
  std::optional<int> index_of(site s) const;

  /// Neighbor site index along direction k, or -1 when the edge leaves the
  /// working lattice.
  int neighbor(int site_index, int k) const {
    return neighbors_[static_cast<std::size_t>(site_index)][static_cast<std::size_t>(k)];
  }

  /// Ascending list of the four out-directions of a site (coin slots 0..3).
  const std::array<int, 4>& out_directions(int site_index) const {
    return out_[static_cast<std::size_t>(site_index)];
  }

  /// Slot (0..3) of direction k in the site's out-direction list, or -1.
  int slot_of(int site_index, int k) const;

  /// True for the four outer corners, where two listed out-directions are
  /// virtual (their shift leaves the working lattice).
  bool is_outer_corner(int site_index) const {
    return outer_corner_[static_cast<std::size_t>(site_index)];
  }

  int origin_index() const { return origin_; }
  int corner_a_index() const { return corner_a_; }        ///< (2^n, 2^n)
  int corner_b_index() const { return corner_b_; }        ///< (2^{n+1}, 0)
  int corner_a_reflected_index() const { return corner_a_p_; }
  int corner_b_reflected_index() const { return corner_b_p_; }

  /// Number of sites in one copy: 3 (3^n + 1) / 2.
  static std::int64_t sites_per_copy(int n);

  /// Serialize as CSV with columns x1,x2,out_dirs (out_dirs semicolon-joined).
  std::string to_csv() const;

 private:
  int level_ = 0;
  std::vector<site> sites_;
  std::vector<std::array<int, 6>> neighbors_;
  std::vector<std::array<int, 4>> out_;
  std::vector<bool> outer_corner_;
  int origin_ = -1, corner_a_ = -1, corner_b_ = -1, corner_a_p_ = -1, corner_b_p_ = -1;
};

/// Coordinates of the eleven labeled sites of the doubled level-1 cell used by
/// the renormalization step, in label order 0..5 then the reflected 1'..5'.
std::array<site, 11> relabel_cell();

}  // namespace sgw
