#pragma once

#include "cubiclat/mat.hpp"

namespace cubiclat {

// A finite quadratic form q : A -> Q/2Z on A = (+) Z/d_i with its bilinear
// form b : A x A -> Q/Z. Elements are coefficient vectors over the stored
// generators; q and b on arbitrary elements always expand through the stored
// generator values.
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;  // trivial form
  FiniteQuadraticForm(std::vector<Int> factors, QVec q_values, QMat b_values);

  size_t ngens() const { return factors_.size(); }
  const std::vector<Int>& factors() const { return factors_; }
  Int group_order() const;
  size_t length() const { return factors_.size(); }  // l(A)
  size_t local_length(const Int& p) const;           // l(A_p)

  const Rat& q_gen(size_t i) const { return q_[i]; }
  const Rat& b_gen(size_t i, size_t j) const { return b_(i, j); }

  Rat q_of(const IVec& x) const;                 // in [0,2)
  Rat b_of(const IVec& x, const IVec& y) const;  // in [0,1)
  Int order_of(const IVec& x) const;
  IVec reduce(IVec x) const;  // coefficients into [0, d_i)

  bool is_trivial() const { return factors_.empty(); }
  bool is_nondegenerate() const;

  FiniteQuadraticForm negated() const;
  static FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

  // Odometer over all group elements; start from the zero vector. Returns
  // false when the enumeration wraps around.
  bool next_element(IVec& x) const;

 private:
  std::vector<Int> factors_;
  QVec q_;
  QMat b_;
};

// The discriminant quadratic form of an even nondegenerate lattice.
class IntLattice;
FiniteQuadraticForm discriminant_form(const IntLattice& L);

// A subgroup of a form's group carrying the restricted form: new generators
// are recorded as coefficient vectors over the ambient generators.
struct FormSubgroup {
  FiniteQuadraticForm form;
  std::vector<IVec> gens_in_ambient;

  IVec to_ambient(const IVec& x) const;
};

// Normalizes an arbitrary generating set into invariant-factor shape.
FormSubgroup subgroup_form(const FiniteQuadraticForm& q, const std::vector<IVec>& gens);
// { x : b(x, h_i) = 0 for all i }.
FormSubgroup orthogonal_subgroup(const FiniteQuadraticForm& q, const std::vector<IVec>& hs);
FormSubgroup orthogonal_subgroup(const FiniteQuadraticForm& q, const IVec& h);
// The p-primary component.
FormSubgroup p_part(const FiniteQuadraticForm& q, const Int& p);

// Orthogonal splitting into the standard rank-one and rank-two constituents.
struct FormPiece {
  Int p;
  unsigned scale;  // group (Z/p^scale) for cyclic, (Z/2^scale)^2 for binary
  enum Kind { kCyclic, kBinaryU, kBinaryV } kind;
  // Cyclic: q(gen) = a / p^scale with a mod 2*p^scale (odd p: a even; p = 2: a odd).
  Int a;
};
std::vector<FormPiece> split_into_pieces(const FiniteQuadraticForm& q);

// Signature mod 8 (Milgram); exact symbol bookkeeping, throws on degenerate q.
int signature_mod8(const FiniteQuadraticForm& q);
int signature_mod8(const FormPiece& piece);

// All h with 3h = 0 and q(h) = 2/3 mod 2Z, in lexicographic coefficient order.
std::vector<IVec> order3_witnesses(const FiniteQuadraticForm& q);

// Explicit q-preserving isomorphism: row i is the image of source generator i
// over the target generators.
struct FormIsomorphism {
  IMat map;
};
std::optional<FormIsomorphism> form_isomorphic(const FiniteQuadraticForm& a,
                                               const FiniteQuadraticForm& b);

// True iff q_2 decomposes as q_theta(2) + q', i.e. some splitting carries an
// odd cyclic piece at scale 1.
bool exceptional_2adic(const std::vector<FormPiece>& pieces);

}  // namespace cubiclat
