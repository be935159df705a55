#include "cubiclat/shortvec.hpp"

#include <algorithm>

namespace cubiclat {

namespace {

struct GramSchmidt {
  QMat mu;   // mu(i,j) for j < i
  QVec B;    // squared GS norms

  static GramSchmidt of(const IMat& g) {
    size_t n = g.rows();
    GramSchmidt gs{QMat(n, n), QVec(n)};
    // r(i,j) = <b_i, b_j*> computed from the Gram matrix alone
    QMat r(n, n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        Rat s = Rat(g(i, j));
        for (size_t k = 0; k < j; ++k) s -= gs.mu(i, k) * r(j, k);
        r(i, j) = s;
        if (j < i) gs.mu(i, j) = s / gs.B[j];
      }
      gs.B[i] = r(i, i);
      if (gs.B[i] <= 0) throw std::invalid_argument("LLL requires a positive-definite Gram");
    }
    return gs;
  }
};

}  // namespace

LLLResult lll_reduce_gram(const IMat& gram) {
  const Rat delta(99, 100);
  size_t n = gram.rows();
  LLLResult res{gram, IMat::identity(n)};
  if (n <= 1) return res;
  IMat& g = res.gram;
  GramSchmidt gs = GramSchmidt::of(g);

  auto apply_rowop = [&](size_t i, size_t j, const Int& r) {
    // b_i -= r b_j
    res.transform.add_row(i, j, -r);
    g.add_row(i, j, -r);
    g.add_col(i, j, -r);
  };

  size_t k = 1;
  while (k < n) {
    // size-reduce b_k against b_{k-1}..b_0
    for (size_t j = k; j-- > 0;) {
      Rat m = gs.mu(k, j);
      if (2 * abs(m) > 1) {
        // nearest integer
        Rat half = m + Rat(1, 2);
        Int r;
        mpz_fdiv_q(r.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
        apply_rowop(k, j, r);
        gs = GramSchmidt::of(g);
      }
    }
    if (gs.B[k] >= (delta - gs.mu(k, k - 1) * gs.mu(k, k - 1)) * gs.B[k - 1]) {
      ++k;
    } else {
      g.swap_rows(k, k - 1);
      g.swap_cols(k, k - 1);
      res.transform.swap_rows(k, k - 1);
      gs = GramSchmidt::of(g);
      k = k > 1 ? k - 1 : 1;
    }
  }
  return res;
}

std::vector<ShortVector> short_vectors(const IntLattice& L, const Int& bound) {
  if (bound < 1) throw std::invalid_argument("short_vectors requires bound >= 1");
  if (!L.is_positive_definite())
    throw std::invalid_argument("short vector enumeration requires a positive-definite lattice");
  size_t n = L.rank();
  std::vector<ShortVector> out;
  if (n == 0) return out;

  LLLResult lll = lll_reduce_gram(L.gram());
  GramSchmidt gs = GramSchmidt::of(lll.gram);

  // Q(x) = sum_i B_i (x_i + sum_{j>i} mu(j,i) x_j)^2
  IVec x(n, Int(0));
  QVec centers(n, Rat(0));
  QVec remaining(n + 1, Rat(0));
  remaining[n] = Rat(bound);

  std::vector<ShortVector> reps;
  // iterative depth-first enumeration from coordinate n-1 downward
  struct Frame {
    Int xi, hi;
  };
  std::vector<Frame> frames(n);
  long level = static_cast<long>(n) - 1;
  bool descending = true;
  while (level < static_cast<long>(n)) {
    if (level < 0) {
      // full vector; norm = bound - remaining[0]
      Int norm;
      Rat nrm = Rat(bound) - remaining[0];
      if (nrm.get_den() != 1) throw std::logic_error("non-integral norm");
      norm = nrm.get_num();
      if (norm > 0) {
        IVec orig = vec_mat(x, lll.transform);
        // sign normalization: first nonzero coordinate positive
        for (size_t i = 0; i < n; ++i) {
          if (orig[i] == 0) continue;
          if (orig[i] < 0)
            for (auto& c : orig) c = -c;
          break;
        }
        reps.push_back(ShortVector{std::move(orig), norm});
      }
      ++level;
      descending = false;
      continue;
    }
    size_t i = static_cast<size_t>(level);
    if (descending) {
      Rat c = 0;
      for (size_t j = i + 1; j < n; ++j) c += gs.mu(j, i) * Rat(x[j]);
      centers[i] = c;
      Rat radius2 = remaining[i + 1] / gs.B[i];
      frames[i].xi = ceil_c_minus_sqrt(-c, radius2);
      frames[i].hi = floor_c_plus_sqrt(-c, radius2);
      x[i] = frames[i].xi;
    } else {
      x[i] += 1;
    }
    if (x[i] > frames[i].hi) {
      ++level;
      descending = false;
      continue;
    }
    Rat term = gs.B[i] * (Rat(x[i]) + centers[i]) * (Rat(x[i]) + centers[i]);
    if (term > remaining[i + 1]) {
      // next candidate at this level
      descending = false;
      continue;
    }
    remaining[i] = remaining[i + 1] - term;
    --level;
    descending = true;
  }

  // deduplicate signs: keep canonical representatives only
  std::sort(reps.begin(), reps.end(), [](const ShortVector& a, const ShortVector& b) {
    if (a.v != b.v) return a.v < b.v;
    return a.norm < b.norm;
  });
  reps.erase(std::unique(reps.begin(), reps.end(),
                         [](const ShortVector& a, const ShortVector& b) { return a.v == b.v; }),
             reps.end());
  return reps;
}

std::vector<IVec> roots(const IntLattice& L) {
  std::vector<IVec> out;
  for (const auto& sv : short_vectors(L, Int(2)))
    if (sv.norm == 2) {
      out.push_back(sv.v);
      IVec neg = sv.v;
      for (auto& c : neg) c = -c;
      out.push_back(std::move(neg));
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool has_roots(const IntLattice& L) {
  for (const auto& sv : short_vectors(L, Int(2)))
    if (sv.norm == 2) return true;
  return false;
}

namespace {

bool pairs_into_3Z(const IntLattice& L, const IVec& v) {
  IVec gv = vec_mat(v, L.gram());
  for (const Int& c : gv)
    if (c % 3 != 0) return false;
  return true;
}

}  // namespace

std::vector<IVec> long_roots(const IntLattice& L) {
  std::vector<IVec> out;
  for (const auto& sv : short_vectors(L, Int(6)))
    if (sv.norm == 6 && pairs_into_3Z(L, sv.v)) {
      out.push_back(sv.v);
      IVec neg = sv.v;
      for (auto& c : neg) c = -c;
      out.push_back(std::move(neg));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> relative_long_roots(const IntLattice& S, const IVec& h) {
  DiscriminantGroup dg = discriminant_group(S);
  if (h.size() != dg.factors.size()) throw std::invalid_argument("h has wrong coefficient count");
  DiscriminantBilinear db = discriminant_bilinear(S);
  for (size_t i = 0; i < h.size(); ++i)
    if ((3 * h[i]) % dg.factors[i] != 0)
      throw std::invalid_argument("h must have order dividing 3");

  // lifts of generators of { x in A_S : b(x, h) = 0 } together with a basis
  // of S generate the constraint dual subgroup
  size_t k = dg.factors.size();
  FiniteQuadraticForm qb = [&] {
    // bilinear-only stand-in: only b matters for the orthogonality kernel,
    // but the q lift must satisfy the scaling law, so bump by 1 when needed
    QVec q(k, Rat(0));
    for (size_t i = 0; i < k; ++i) {
      Rat cand = normalize_mod2(db.b(i, i));
      if (normalize_mod2(cand * db.factors[i] * (db.factors[i] + 2)) != 0) cand = normalize_mod2(cand + 1);
      q[i] = cand;
    }
    return FiniteQuadraticForm(db.factors, q, db.b);
  }();
  FormSubgroup orth = orthogonal_subgroup(qb, h);

  QMat gram = to_rational(S.gram());
  const QMat& gen = dg.generators;
  std::vector<IVec> out;
  for (const auto& sv : short_vectors(S, Int(6))) {
    if (sv.norm != 6) continue;
    // basis functionals: S subset of the constraint group
    bool ok = pairs_into_3Z(S, sv.v);
    // subgroup generators lifted to S*
    for (size_t t = 0; t < orth.gens_in_ambient.size() && ok; ++t) {
      QVec sigma(S.rank(), Rat(0));
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < S.rank(); ++j)
          sigma[j] += Rat(orth.gens_in_ambient[t][i]) * gen(i, j);
      QVec dv(S.rank());
      for (size_t j = 0; j < S.rank(); ++j) dv[j] = Rat(sv.v[j]);
      Rat val = dot(vec_mat(sigma, gram), dv);
      if (val.get_den() != 1 || val.get_num() % 3 != 0) ok = false;
    }
    if (ok) {
      out.push_back(sv.v);
      IVec neg = sv.v;
      for (auto& c : neg) c = -c;
      out.push_back(std::move(neg));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> relative_long_roots_ambient(const IntLattice& A, const IVec& a) {
  if (A.norm(a) != 3) throw std::invalid_argument("distinguished vector must have norm 3");
  Sublattice comp = orthogonal_complement(A, a);
  IntLattice A0 = comp.induced();
  // functionals alpha in A* with alpha(a) = 0: in the dual basis these are
  // integer vectors y with y . a = 0
  IMat arow(1, a.size());
  for (size_t i = 0; i < a.size(); ++i) arow(0, i) = a[i];
  IMat kern = kernel_basis(arow);

  std::vector<IVec> out;
  if (A0.rank() == 0) return out;
  for (const auto& sv : short_vectors(A0, Int(6))) {
    if (sv.norm != 6) continue;
    IVec amb = vec_mat(sv.v, comp.basis);  // delta in ambient coordinates
    bool ok = true;
    for (size_t t = 0; t < kern.rows() && ok; ++t) {
      Int val = 0;
      for (size_t j = 0; j < amb.size(); ++j) val += kern(t, j) * amb[j];
      if (val % 3 != 0) ok = false;
    }
    if (ok) {
      out.push_back(amb);
      IVec neg = amb;
      for (auto& c : neg) c = -c;
      out.push_back(std::move(neg));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cubiclat
