#pragma once

#include "cubiclat/finite_form.hpp"
#include "cubiclat/lattice.hpp"

namespace cubiclat {

// One scale of the p-adic Jordan splitting.
struct JordanConstituent {
  unsigned scale = 0;
  unsigned rank = 0;
  // odd p: +1 when the unit determinant is a square mod p, -1 otherwise
  int det_class = 1;
  // p = 2 only
  bool type_II = true;          // no odd diagonal block
  int det_mod8 = 1;             // unit part of the determinant mod 8
  int oddity_mod8 = 0;          // trace of the odd diagonal part mod 8
  unsigned n_U = 0, n_V = 0;    // even binary blocks
  std::vector<int> units_mod8;  // odd diagonal units (p = 2)
};

struct JordanDecomposition {
  Int p;
  std::vector<JordanConstituent> constituents;  // sorted by scale

  const JordanConstituent* at_scale(unsigned k) const;
  unsigned total_rank() const;
  size_t local_length() const;  // l(A_p) = rank of the scale >= 1 part
};

JordanDecomposition jordan_decompose(const IntLattice& L, const Int& p);

// A p-adic lattice presented by standard blocks; enough for determinant
// classes, Hasse invariants and representation tests.
struct LocalBlock {
  unsigned scale = 0;
  enum Kind { kDiag, kU, kV } kind = kDiag;
  Int unit = 1;  // for kDiag: block <unit * p^scale>, gcd(unit, p) = 1
};

struct PadicLattice {
  Int p;
  std::vector<LocalBlock> blocks;

  unsigned rank() const;
  // determinant = p^k * (unit part); returns the unit part
  Int discr_unit() const;
  long discr_exponent() const;
  IMat gram_representative() const;
  bool has_odd_block_at(unsigned scale) const;
};

// K(q_p): the scale >= 1 part of a Jordan decomposition, the unique rank
// l(A_p) p-adic lattice with the same discriminant form (two candidates in
// the exceptional 2-adic case; `other_candidate` flips one scale-1 unit by 5).
PadicLattice kq_from_jordan(const JordanDecomposition& jd);
PadicLattice kq_from_pieces(const std::vector<FormPiece>& pieces, const Int& p);
std::optional<PadicLattice> other_candidate(const PadicLattice& k);

// Remark 2.1 invariants of an even lattice at p.
struct LocalInvariants {
  Int p;
  unsigned t_p = 0;
  int v_p = 0;
  Int theta = 1;       // representative: odd p -> 1 or a nonresidue; p=2 -> class mod 8
  bool exceptional = false;  // q_2 = q_theta(2) + q_2' (p = 2 only)
  Int theta_alt = 0;   // the second K_alpha candidate's theta (exceptional case)
};
LocalInvariants local_invariants(const IntLattice& L, const Int& p);

// Hasse invariant from any rational diagonalization; independent of the
// diagonalization path.
int hasse_invariant(const IntLattice& L, const Int& p);
int hasse_invariant(const PadicLattice& k);

// Diagonalization used by the Hasse invariant (exposed for tests that check
// path independence with permuted bases).
QVec rational_diagonal(const IMat& gram);

std::string jordan_symbol_text(const JordanDecomposition& jd);

}  // namespace cubiclat
