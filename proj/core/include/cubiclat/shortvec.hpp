#pragma once

#include "cubiclat/finite_form.hpp"
#include "cubiclat/lattice.hpp"

namespace cubiclat {

// Gram-level LLL: gram = transform * G * transform^T with unimodular
// transform; exact rational arithmetic, reduction quality delta = 99/100.
struct LLLResult {
  IMat gram;
  IMat transform;
};
LLLResult lll_reduce_gram(const IMat& gram);

// All vectors with 0 < Q(v,v) <= bound, one representative per +-pair
// (first nonzero coordinate positive), sorted lexicographically. The total
// number of such vectors including both signs is twice the size.
struct ShortVector {
  IVec v;
  Int norm;
};
std::vector<ShortVector> short_vectors(const IntLattice& L, const Int& bound);

// Norm-2 vectors, both signs listed.
std::vector<IVec> roots(const IntLattice& L);
bool has_roots(const IntLattice& L);

// Norm-6 vectors pairing into 3Z with the whole lattice, both signs listed.
std::vector<IVec> long_roots(const IntLattice& L);

// Theorem-style relative long roots.
//
// Form variant: delta in S with Q(delta,delta) = 6 such that sigma(delta) is
// divisible by 3 for every sigma in S* whose class pairs to zero with h under
// the bilinear discriminant form; h is a coefficient vector over the
// generators of discriminant_group(S) and must have order dividing 3.
std::vector<IVec> relative_long_roots(const IntLattice& S, const IVec& h);
// Ambient variant: delta in the orthogonal complement of a with
// Q(delta,delta) = 6 and alpha(delta) in 3Z for every alpha in A* with
// alpha(a) = 0; a must have norm 3.
std::vector<IVec> relative_long_roots_ambient(const IntLattice& A, const IVec& a);

}  // namespace cubiclat
