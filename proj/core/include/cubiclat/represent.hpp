#pragma once

#include "cubiclat/local.hpp"

namespace cubiclat {

struct RepresentationResult {
  bool representable = false;
  // witness coordinates mod p^e in the Jordan block order used internally
  std::optional<IVec> witness;
  unsigned exponent = 0;  // the e of the mod p^e search
};

// Decides Q(x,x) = N over the p-adic integers for a positive-definite L.
// N <= 0 is trivially not represented; indefinite input is rejected.
RepresentationResult represents_padically(const IntLattice& L, const Int& N, const Int& p);

// Same decision on a block-presented p-adic lattice (used by the genus
// machinery, where representatives of K(q_p) need not be definite over Z).
RepresentationResult padic_represents(const PadicLattice& k, const Int& N);

}  // namespace cubiclat
