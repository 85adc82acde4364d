#include "sgw/cell.hpp"

#include "sgw/errors.hpp"
#include "sgw/lattice.hpp"

namespace sgw {

cell_geometry::cell_geometry() {
  coords_ = relabel_cell();

  // Conventional out-direction lists.  Interior sites carry their four real
  // directions; corner sites are completed with next-level directions so each
  // list splits into two pairs, each pair pointing into one triangle.
  out_[0] = {0, 1, 4, 5};
  out_[1] = {0, 1, 4, 5};
  out_[2] = {0, 1, 2, 3};
  out_[3] = {2, 3, 4, 5};
  out_[4] = {0, 1, 2, 3};   // corner b, virtual {0,1}
  out_[5] = {0, 1, 4, 5};   // corner a, virtual {0,1}
  out_[6] = {0, 1, 4, 5};   // 1'
  out_[7] = {2, 3, 4, 5};   // 2'
  out_[8] = {0, 1, 2, 3};   // 3'
  out_[9] = {2, 3, 4, 5};   // corner b', virtual {4,5}
  out_[10] = {0, 1, 4, 5};  // corner a', virtual {4,5}

  for (int x = 0; x < n_sites; ++x) {
    slot_[static_cast<std::size_t>(x)].fill(-1);
    for (int s = 0; s < 4; ++s)
      slot_[static_cast<std::size_t>(x)]
           [static_cast<std::size_t>(out_[static_cast<std::size_t>(x)][static_cast<std::size_t>(s)])] = s;
  }

  triangles_ = {{{0, 1, 2}, {1, 5, 3}, {2, 3, 4}, {0, 6, 7}, {6, 10, 8}, {7, 8, 9}}};

  for (auto& row : third_) row.fill(-1);
  for (const auto& t : triangles_)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        third_[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])]
              [static_cast<std::size_t>(t[static_cast<std::size_t>(j)])] =
            t[static_cast<std::size_t>(3 - i - j)];
      }

  // Adjacency means "edge of an elementary triangle", not merely "one lattice
  // step apart": the two copies touch only at the origin, so e.g. sites 2 and
  // 2' differ by a step vector without being connected.
  for (auto& row : dir_) row.fill(-1);
  for (const auto& t : triangles_)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (i == j) continue;
        const int x = t[static_cast<std::size_t>(i)];
        const int y = t[static_cast<std::size_t>(j)];
        int found = -1;
        for (int k = 0; k < n_directions; ++k)
          if (step(coords_[static_cast<std::size_t>(x)], k) ==
              coords_[static_cast<std::size_t>(y)])
            found = k;
        if (found < 0) throw error("cell geometry: triangle edge is not one lattice step");
        dir_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = found;
      }

  // Sanity of the pair structure the block patterns rely on: the ascending
  // out-list of every site splits as (slot 0, slot 1) | (slot 2, slot 3) with
  // each real pair pointing into a single triangle.
  for (int x = 0; x < n_sites; ++x)
    for (int p = 0; p < 2; ++p) {
      int ka = out_[static_cast<std::size_t>(x)][static_cast<std::size_t>(2 * p)];
      int kb = out_[static_cast<std::size_t>(x)][static_cast<std::size_t>(2 * p + 1)];
      int ya = -1, yb = -1;
      for (int y = 0; y < n_sites; ++y) {
        if (dir_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == ka) ya = y;
        if (dir_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] == kb) yb = y;
      }
      if (ya < 0 || yb < 0) continue;  // virtual pair at a corner site
      if (third_[static_cast<std::size_t>(x)][static_cast<std::size_t>(ya)] != yb)
        throw error("cell geometry: out-direction pair does not span a triangle");
    }
}

const cell_geometry& level1_cell() {
  static const cell_geometry cell;
  return cell;
}

}  // namespace sgw
