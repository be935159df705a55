#include "cubiclat/glue.hpp"

namespace cubiclat {

namespace {

// Relation lattice of a tuple of elements in (+) Z/d_i, as a full-rank basis.
IMat relation_lattice(const std::vector<IVec>& elems, const std::vector<Int>& factors) {
  size_t m = elems.size(), k = factors.size();
  IMat st(k, m + k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < m; ++j) st(i, j) = elems[j][i];
    st(i, m + i) = -factors[i];
  }
  IMat kern = kernel_basis(st);
  IMat cpart(kern.rows(), m);
  for (size_t i = 0; i < kern.rows(); ++i)
    for (size_t j = 0; j < m; ++j) cpart(i, j) = kern(i, j);
  return row_lattice_basis(cpart);
}

bool same_row_lattice(const IMat& a, const IMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // mutual inclusion via rational solves with integrality
  auto contains = [](const IMat& big, const IMat& small) {
    QMat bq = to_rational(big);
    for (size_t i = 0; i < small.rows(); ++i) {
      QVec rhs(small.cols());
      for (size_t j = 0; j < small.cols(); ++j) rhs[j] = Rat(small(i, j));
      auto x = solve_left(bq, rhs);
      if (!x) return false;
      for (const Rat& c : *x)
        if (c.get_den() != 1) return false;
    }
    return true;
  };
  return contains(a, b) && contains(b, a);
}

}  // namespace

GlueResult glue(const GluingData& data) {
  const IntLattice& L = data.left;
  const IntLattice& R = data.right;
  if (data.subgroup_gens.size() != data.images.size())
    throw std::invalid_argument("subgroup generators and images must correspond");
  DiscriminantGroup dl = discriminant_group(L);
  DiscriminantGroup dr = discriminant_group(R);
  size_t m = data.subgroup_gens.size();
  for (size_t i = 0; i < m; ++i) {
    if (data.subgroup_gens[i].size() != dl.factors.size())
      throw std::invalid_argument("subgroup generator has wrong coefficient count");
    if (data.images[i].size() != dr.factors.size())
      throw std::invalid_argument("image has wrong coefficient count");
  }

  // gamma is a well-defined injective homomorphism iff the relation lattices
  // of sources and images coincide
  Int subgroup_order = 1;
  if (m > 0) {
    IMat rel_src = relation_lattice(data.subgroup_gens, dl.factors);
    IMat rel_img = relation_lattice(data.images, dr.factors);
    if (rel_src.rows() != m || rel_img.rows() != m)
      throw std::invalid_argument("relation lattice is not full rank");
    if (!same_row_lattice(rel_src, rel_img))
      throw std::invalid_argument("gluing map is not an injective homomorphism");
    subgroup_order = abs(det(rel_src));
  }

  // anti-isometry on generators; for even lattices the quadratic condition,
  // always the bilinear one
  bool both_even = L.is_even() && R.is_even();
  DiscriminantBilinear bl = discriminant_bilinear(L);
  DiscriminantBilinear br = discriminant_bilinear(R);
  auto bval = [](const DiscriminantBilinear& b, const IVec& x, const IVec& y) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j)
        if (x[i] != 0 && y[j] != 0) s += Rat(x[i] * y[j]) * b.b(i, j);
    return normalize_mod1(s);
  };
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i; j < m; ++j) {
      Rat lhs = bval(br, data.images[i], data.images[j]);
      Rat rhs = normalize_mod1(-bval(bl, data.subgroup_gens[i], data.subgroup_gens[j]));
      if (lhs != rhs) throw std::invalid_argument("gluing group not isotropic");
    }
  }
  if (both_even) {
    FiniteQuadraticForm ql = discriminant_form(L);
    FiniteQuadraticForm qr = discriminant_form(R);
    for (size_t i = 0; i < m; ++i) {
      Rat lhs = qr.q_of(qr.reduce(data.images[i]));
      Rat rhs = normalize_mod2(-ql.q_of(ql.reduce(data.subgroup_gens[i])));
      if (lhs != rhs) throw std::invalid_argument("gluing group not isotropic");
    }
  }

  // generators of the overlattice in (L + R) basis coordinates: the unit
  // vectors together with lifted graph vectors
  size_t nl = L.rank(), nr = R.rank(), n = nl + nr;
  QMat gens(n + m, n);
  for (size_t i = 0; i < n; ++i) gens(i, i) = 1;
  for (size_t t = 0; t < m; ++t) {
    for (size_t j = 0; j < nl; ++j) {
      Rat s = 0;
      for (size_t i = 0; i < dl.factors.size(); ++i)
        s += Rat(data.subgroup_gens[t][i]) * dl.generators(i, j);
      gens(n + t, j) = s;
    }
    for (size_t j = 0; j < nr; ++j) {
      Rat s = 0;
      for (size_t i = 0; i < dr.factors.size(); ++i)
        s += Rat(data.images[t][i]) * dr.generators(i, j);
      gens(n + t, nl + j) = s;
    }
  }
  // common denominator and Hermite-style row basis
  Int den = 1;
  for (size_t i = 0; i < gens.rows(); ++i)
    for (size_t j = 0; j < n; ++j) {
      Int d = gens(i, j).get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  IMat scaled(gens.rows(), n);
  for (size_t i = 0; i < gens.rows(); ++i)
    for (size_t j = 0; j < n; ++j) {
      Rat v = gens(i, j) * den;
      scaled(i, j) = v.get_num();
    }
  IMat basis_scaled = row_lattice_basis(scaled);
  QMat basis(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) basis(i, j) = Rat(basis_scaled(i, j), den);

  IMat big = block_diag(L.gram(), R.gram());
  QMat gram_q = basis * to_rational(big) * basis.transposed();
  IMat gram = to_integral(gram_q);  // throws if the gluing were not integral
  IntLattice glued(gram);

  // embeddings: solve X * basis = [I 0] and [0 I]
  QMat binv = inverse(basis);
  IMat embed_left(nl, n), embed_right(nr, n);
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (binv(i, j).get_den() != 1) throw std::logic_error("left lattice not contained in glue");
      embed_left(i, j) = binv(i, j).get_num();
    }
  for (size_t i = 0; i < nr; ++i)
    for (size_t j = 0; j < n; ++j) {
      if (binv(nl + i, j).get_den() != 1)
        throw std::logic_error("right lattice not contained in glue");
      embed_right(i, j) = binv(nl + i, j).get_num();
    }

  GlueResult out{std::move(glued), std::move(embed_left), std::move(embed_right), subgroup_order};
  Int expect = L.determinant() * R.determinant() / (subgroup_order * subgroup_order);
  if (out.glued.determinant() != expect)
    throw std::logic_error("glue determinant law violated");
  return out;
}

}  // namespace cubiclat
