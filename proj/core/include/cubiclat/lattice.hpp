#pragma once

#include <optional>
#include <string>

#include "cubiclat/mat.hpp"

namespace cubiclat {

inline constexpr size_t kMaxRank = 64;

// An integral lattice given by the Gram matrix of a fixed basis. Rank 0 is
// legal (the zero lattice). Values are immutable after construction.
class IntLattice {
 public:
  IntLattice() = default;
  explicit IntLattice(IMat gram, std::string name = "");
  static IntLattice diagonal(const IVec& entries, std::string name = "");

  const IMat& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  size_t rank() const { return gram_.rows(); }

  Int determinant() const;
  bool is_degenerate() const { return rank() > 0 && determinant() == 0; }
  bool is_even() const;
  // (t+, t-) counts of a rational diagonalization; throws on degenerate input.
  std::pair<unsigned, unsigned> signature() const;
  bool is_positive_definite() const;

  // Q(x, y) and Q(x, x) in basis coordinates.
  Int pairing(const IVec& x, const IVec& y) const;
  Int norm(const IVec& x) const;
  Rat pairing(const QVec& x, const QVec& y) const;

  IntLattice negated(std::string name = "") const;
  static IntLattice direct_sum(const IntLattice& a, const IntLattice& b, std::string name = "");

 private:
  IMat gram_;
  std::string name_;
};

struct Sublattice {
  IntLattice ambient;
  IMat basis;  // rows are vectors in ambient basis coordinates; Q-independent

  IMat induced_gram() const;  // basis * G * basis^T
  IntLattice induced(std::string name = "") const;
};

Sublattice make_sublattice(IntLattice ambient, IMat basis);
Sublattice span_of(IntLattice ambient, const std::vector<IVec>& vectors);

// Smallest saturated sublattice containing s; second member is the index
// [saturation : s], which satisfies det(s) = det(saturation) * index^2.
struct SaturationResult {
  Sublattice saturation;
  Int index;
};
SaturationResult saturate(const Sublattice& s);

// All ambient vectors pairing to zero with every row of s; saturated.
Sublattice orthogonal_complement(const Sublattice& s);
Sublattice orthogonal_complement(const IntLattice& ambient, const IVec& v);

// Invariant factors > 1 of S*/S together with rational dual generators
// (rows, in basis coordinates), one per factor.
struct DiscriminantGroup {
  std::vector<Int> factors;  // d1 | d2 | ...
  QMat generators;
  size_t length() const { return factors.size(); }  // l(A)
  size_t local_length(const Int& p) const;          // l(A_p)
};
DiscriminantGroup discriminant_group(const IntLattice& L);

// Bilinear discriminant form values b(g_i, g_j) in [0,1); defined for odd
// lattices as well.
struct DiscriminantBilinear {
  std::vector<Int> factors;
  QMat b;
};
DiscriminantBilinear discriminant_bilinear(const IntLattice& L);

// Built-in lattices of the catalog: L, L0, U, E8, A2.
namespace catalog {
IntLattice L();
IntLattice L0();
IntLattice U();
IntLattice E8();
IntLattice A2();
// The distinguished norm-3 vector of L whose orthogonal complement is even.
IVec h2();
std::vector<std::string> names();
std::optional<IntLattice> by_name(const std::string& name);
}  // namespace catalog

}  // namespace cubiclat
