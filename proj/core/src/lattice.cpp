#include "cubiclat/lattice.hpp"

namespace cubiclat {

IntLattice::IntLattice(IMat gram, std::string name) : gram_(std::move(gram)), name_(std::move(name)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("Gram matrix must be square");
  if (gram_.rows() > kMaxRank) throw std::invalid_argument("rank exceeds the supported cap of 64");
  if (!gram_.is_symmetric()) throw std::invalid_argument("Gram matrix must be symmetric");
}

IntLattice IntLattice::diagonal(const IVec& entries, std::string name) {
  IMat g(entries.size(), entries.size());
  for (size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return IntLattice(std::move(g), std::move(name));
}

Int IntLattice::determinant() const { return det(gram_); }

bool IntLattice::is_even() const {
  for (size_t i = 0; i < rank(); ++i)
    if (gram_(i, i) % 2 != 0) return false;
  return true;
}

std::pair<unsigned, unsigned> IntLattice::signature() const {
  if (is_degenerate()) throw std::invalid_argument("degenerate lattice");
  size_t n = rank();
  QMat a = to_rational(gram_);
  unsigned pos = 0, neg = 0;
  for (size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      // find j > k with a(k,j) != 0 and fold row/col j in to create a pivot;
      // one of the signs always yields 2t*a(k,j) + a(j,j) != 0
      size_t j = k + 1;
      while (j < n && a(k, j) == 0) ++j;
      if (j == n) throw std::invalid_argument("degenerate lattice");
      if (2 * a(k, j) + a(j, j) != 0) {
        a.add_row(k, j, Rat(1));
        a.add_col(k, j, Rat(1));
      } else {
        a.add_row(k, j, Rat(-1));
        a.add_col(k, j, Rat(-1));
      }
    }
    if (a(k, k) > 0)
      ++pos;
    else
      ++neg;
    Rat inv = Rat(1) / a(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      Rat f = a(i, k) * inv;
      if (f == 0) continue;
      for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (size_t j = k; j < n; ++j) a(j, i) = a(i, j);
    }
  }
  return {pos, neg};
}

bool IntLattice::is_positive_definite() const {
  if (rank() == 0) return true;
  if (is_degenerate()) return false;
  auto [p, m] = signature();
  return m == 0;
}

Int IntLattice::pairing(const IVec& x, const IVec& y) const {
  return dot(vec_mat(x, gram_), y);
}

Int IntLattice::norm(const IVec& x) const { return pairing(x, x); }

Rat IntLattice::pairing(const QVec& x, const QVec& y) const {
  return dot(vec_mat(x, to_rational(gram_)), y);
}

IntLattice IntLattice::negated(std::string name) const {
  return IntLattice(-gram_, std::move(name));
}

IntLattice IntLattice::direct_sum(const IntLattice& a, const IntLattice& b, std::string name) {
  return IntLattice(block_diag(a.gram(), b.gram()), std::move(name));
}

IMat Sublattice::induced_gram() const {
  return basis * ambient.gram() * basis.transposed();
}

IntLattice Sublattice::induced(std::string name) const {
  return IntLattice(induced_gram(), std::move(name));
}

Sublattice make_sublattice(IntLattice ambient, IMat basis) {
  if (basis.cols() != ambient.rank()) throw std::invalid_argument("sublattice basis shape mismatch");
  IMat b = row_lattice_basis(basis);
  if (b.rows() != basis.rows()) throw std::invalid_argument("sublattice basis rows are dependent");
  return Sublattice{std::move(ambient), std::move(basis)};
}

Sublattice span_of(IntLattice ambient, const std::vector<IVec>& vectors) {
  IMat b(vectors.size(), ambient.rank());
  for (size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient.rank()) throw std::invalid_argument("vector size mismatch");
    for (size_t j = 0; j < ambient.rank(); ++j) b(i, j) = vectors[i][j];
  }
  return make_sublattice(std::move(ambient), std::move(b));
}

SaturationResult saturate(const Sublattice& s) {
  if (s.ambient.is_degenerate()) throw std::invalid_argument("degenerate lattice");
  size_t k = s.basis.rows(), n = s.basis.cols();
  SmithResult snf = smith_normal_form(s.basis);
  std::vector<Int> diag = snf.diagonal();
  if (diag.size() != k) throw std::invalid_argument("sublattice basis rows are dependent");
  // basis = u^{-1} [d 0] v^{-1}; the rational row span meets Z^n in the span
  // of the first k rows of v^{-1}.
  IMat vinv = to_integral(inverse(to_rational(snf.v)));
  IMat sat(k, n);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < n; ++j) sat(i, j) = vinv(i, j);
  Int index = 1;
  for (const Int& d : diag) index *= d;
  return {Sublattice{s.ambient, std::move(sat)}, index};
}

Sublattice orthogonal_complement(const Sublattice& s) {
  if (s.ambient.is_degenerate()) throw std::invalid_argument("degenerate lattice");
  IMat pairings = s.basis * s.ambient.gram();  // k x n
  IMat kern = kernel_basis(pairings);
  return Sublattice{s.ambient, std::move(kern)};
}

Sublattice orthogonal_complement(const IntLattice& ambient, const IVec& v) {
  return orthogonal_complement(span_of(ambient, {v}));
}

size_t DiscriminantGroup::local_length(const Int& p) const {
  size_t l = 0;
  for (const Int& d : factors)
    if (d % p == 0) ++l;
  return l;
}

DiscriminantGroup discriminant_group(const IntLattice& L) {
  if (L.is_degenerate()) throw std::invalid_argument("degenerate lattice");
  size_t n = L.rank();
  SmithResult snf = smith_normal_form(L.gram());
  std::vector<Int> diag = snf.diagonal();
  DiscriminantGroup out;
  std::vector<size_t> idx;
  for (size_t i = 0; i < diag.size(); ++i)
    if (diag[i] > 1) {
      out.factors.push_back(diag[i]);
      idx.push_back(i);
    }
  // generator for factor i: column i of v scaled by 1/d_i
  out.generators = QMat(out.factors.size(), n);
  for (size_t t = 0; t < idx.size(); ++t)
    for (size_t j = 0; j < n; ++j)
      out.generators(t, j) = Rat(snf.v(j, idx[t]), diag[idx[t]]);
  return out;
}

DiscriminantBilinear discriminant_bilinear(const IntLattice& L) {
  DiscriminantGroup g = discriminant_group(L);
  size_t k = g.factors.size();
  QMat gram = to_rational(L.gram());
  DiscriminantBilinear out{g.factors, QMat(k, k)};
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j)
      out.b(i, j) = normalize_mod1(dot(vec_mat(g.generators.row(i), gram), g.generators.row(j)));
  return out;
}

namespace catalog {

IntLattice U() {
  return IntLattice(IMat{{Int(0), Int(1)}, {Int(1), Int(0)}}, "U");
}

IntLattice A2() {
  return IntLattice(IMat{{Int(2), Int(1)}, {Int(1), Int(2)}}, "A2");
}

IntLattice E8() {
  // Cartan matrix, Bourbaki numbering: chain 1-3-4-5-6-7-8, node 2 on node 4.
  IMat g(8, 8);
  for (size_t i = 0; i < 8; ++i) g(i, i) = 2;
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [a, b] : edges) {
    g(a - 1, b - 1) = -1;
    g(b - 1, a - 1) = -1;
  }
  return IntLattice(std::move(g), "E8");
}

IntLattice L0() {
  IMat g = block_diag(A2().gram(), U().gram());
  g = block_diag(g, U().gram());
  g = block_diag(g, E8().gram());
  g = block_diag(g, E8().gram());
  return IntLattice(std::move(g), "L0");
}

IntLattice L() {
  IVec d(23, Int(1));
  d[21] = -1;
  d[22] = -1;
  return IntLattice::diagonal(d, "L");
}

IVec h2() {
  IVec h(23, Int(1));
  h[21] = 3;
  h[22] = 3;
  return h;
}

std::vector<std::string> names() { return {"L", "L0", "U", "E8", "A2"}; }

std::optional<IntLattice> by_name(const std::string& name) {
  if (name == "L") return L();
  if (name == "L0") return L0();
  if (name == "U") return U();
  if (name == "E8") return E8();
  if (name == "A2") return A2();
  return std::nullopt;
}

}  // namespace catalog

}  // namespace cubiclat
