#pragma once

#include "cubiclat/finite_form.hpp"
#include "cubiclat/lattice.hpp"

namespace cubiclat {

// An overlattice of left + right glued along the graph of an anti-isometric
// injection gamma from a subgroup H of A_left into A_right. Subgroup
// generators and their images are coefficient vectors over the canonical
// generators of the respective discriminant groups.
struct GluingData {
  IntLattice left, right;
  std::vector<IVec> subgroup_gens;
  std::vector<IVec> images;
};

struct GlueResult {
  IntLattice glued;
  IMat embed_left;   // rows: images of the left basis in glued coordinates
  IMat embed_right;  // rows: images of the right basis in glued coordinates
  Int subgroup_order;
};

// det(glued) = det(left) * det(right) / |H|^2. Requires the map to be a
// well-defined injective homomorphism whose graph is isotropic: for even
// inputs q_right(gamma x) = -q_left(x), and b_right(gamma x, gamma y) =
// -b_left(x, y) in general.
GlueResult glue(const GluingData& data);

}  // namespace cubiclat
