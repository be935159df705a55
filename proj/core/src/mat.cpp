#include "cubiclat/mat.hpp"

namespace cubiclat {

QMat to_rational(const IMat& m) {
  QMat q(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
  return q;
}

IMat to_integral(const QMat& m) {
  IMat z(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::invalid_argument("non-integral entry");
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

Int det(const IMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  size_t n = m.rows();
  if (n == 0) return 1;
  IMat a = m;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      size_t piv = k;
      while (piv < n && a(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      a.swap_rows(k, piv);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        Int num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = num / prev;  // exact by Bareiss
      }
    prev = a(k, k);
  }
  return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

Rat det(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det of non-square matrix");
  size_t n = m.rows();
  QMat a = m;
  Rat d = 1;
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      a.swap_rows(k, piv);
      d = -d;
    }
    d *= a(k, k);
    Rat inv = Rat(1) / a(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      Rat f = a(i, k) * inv;
      if (f == 0) continue;
      for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return d;
}

QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  size_t n = m.rows();
  QMat a = m;
  QMat inv = QMat::identity(n);
  for (size_t k = 0; k < n; ++k) {
    size_t piv = k;
    while (piv < n && a(piv, k) == 0) ++piv;
    if (piv == n) throw std::invalid_argument("singular matrix");
    if (piv != k) {
      a.swap_rows(k, piv);
      inv.swap_rows(k, piv);
    }
    Rat f = Rat(1) / a(k, k);
    a.scale_row(k, f);
    inv.scale_row(k, f);
    for (size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rat g = -a(i, k);
      a.add_row(i, k, g);
      inv.add_row(i, k, g);
    }
  }
  return inv;
}

std::vector<Int> SmithResult::diagonal() const {
  std::vector<Int> out;
  size_t n = std::min(d.rows(), d.cols());
  for (size_t i = 0; i < n; ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

namespace {

bool find_pivot(const IMat& a, size_t s, size_t& pi, size_t& pj) {
  bool found = false;
  Int best;
  for (size_t i = s; i < a.rows(); ++i)
    for (size_t j = s; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Int v = abs(a(i, j));
      if (!found || v < best) {
        found = true;
        best = v;
        pi = i;
        pj = j;
      }
    }
  return found;
}

bool is_lone(const IMat& a, size_t s) {
  for (size_t i = s + 1; i < a.rows(); ++i)
    if (a(i, s) != 0) return false;
  for (size_t j = s + 1; j < a.cols(); ++j)
    if (a(s, j) != 0) return false;
  return true;
}

}  // namespace

SmithResult smith_normal_form(const IMat& m) {
  size_t r = m.rows(), c = m.cols();
  SmithResult res{m, IMat::identity(r), IMat::identity(c)};
  IMat& d = res.d;
  size_t n = std::min(r, c);
  for (size_t s = 0; s < n; ++s) {
    size_t pi, pj;
    if (!find_pivot(d, s, pi, pj)) break;
    while (true) {
      find_pivot(d, s, pi, pj);
      if (pi != s) {
        d.swap_rows(s, pi);
        res.u.swap_rows(s, pi);
      }
      if (pj != s) {
        d.swap_cols(s, pj);
        res.v.swap_cols(s, pj);
      }
      for (size_t i = s + 1; i < r; ++i) {
        if (d(i, s) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(i, s).get_mpz_t(), d(s, s).get_mpz_t());
        d.add_row(i, s, -q);
        res.u.add_row(i, s, -q);
      }
      for (size_t j = s + 1; j < c; ++j) {
        if (d(s, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), d(s, j).get_mpz_t(), d(s, s).get_mpz_t());
        d.add_col(j, s, -q);
        res.v.add_col(j, s, -q);
      }
      if (!is_lone(d, s)) continue;
      // enforce the divisibility chain
      bool divides = true;
      for (size_t i = s + 1; i < r && divides; ++i)
        for (size_t j = s + 1; j < c && divides; ++j)
          if (d(i, j) % d(s, s) != 0) {
            d.add_row(s, i, Int(1));
            res.u.add_row(s, i, Int(1));
            divides = false;
          }
      if (divides) break;
    }
    if (d(s, s) < 0) {
      d.scale_row(s, Int(-1));
      res.u.scale_row(s, Int(-1));
    }
  }
  return res;
}

IMat kernel_basis(const IMat& m) {
  SmithResult s = smith_normal_form(m);
  size_t rank = s.diagonal().size();
  size_t n = m.cols();
  IMat k(n - rank, n);
  for (size_t t = 0; t + rank < n; ++t)
    for (size_t i = 0; i < n; ++i) k(t, i) = s.v(i, rank + t);
  return k;
}

IMat row_lattice_basis(const IMat& m) {
  SmithResult s = smith_normal_form(m);
  std::vector<Int> diag = s.diagonal();
  size_t rank = diag.size();
  // row lattice of m = row lattice of d * v^{-1}
  IMat vinv = to_integral(inverse(to_rational(s.v)));
  IMat b(rank, m.cols());
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < m.cols(); ++j) b(i, j) = diag[i] * vinv(i, j);
  return b;
}

std::optional<QVec> solve_left(const QMat& m, const QVec& rhs) {
  // x * m = rhs  <=>  m^T x^T = rhs^T; eliminate on the augmented transpose.
  size_t r = m.rows(), c = m.cols();
  if (rhs.size() != c) throw std::invalid_argument("solve_left shape mismatch");
  QMat a(c, r + 1);
  for (size_t i = 0; i < c; ++i) {
    for (size_t j = 0; j < r; ++j) a(i, j) = m(j, i);
    a(i, r) = rhs[i];
  }
  std::vector<size_t> pivot_of_col(r, SIZE_MAX);
  size_t row = 0;
  for (size_t col = 0; col < r && row < c; ++col) {
    size_t piv = row;
    while (piv < c && a(piv, col) == 0) ++piv;
    if (piv == c) continue;
    a.swap_rows(row, piv);
    Rat f = Rat(1) / a(row, col);
    a.scale_row(row, f);
    for (size_t i = 0; i < c; ++i) {
      if (i == row || a(i, col) == 0) continue;
      a.add_row(i, row, -a(i, col));
    }
    pivot_of_col[col] = row;
    ++row;
  }
  // consistency: any remaining nonzero rhs in a zero row means no solution
  for (size_t i = row; i < c; ++i)
    if (a(i, r) != 0) return std::nullopt;
  QVec x(r, Rat(0));
  for (size_t col = 0; col < r; ++col)
    if (pivot_of_col[col] != SIZE_MAX) x[col] = a(pivot_of_col[col], r);
  return x;
}

IMat block_diag(const IMat& a, const IMat& b) {
  IMat m(a.rows() + b.rows(), a.cols() + b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (size_t i = 0; i < b.rows(); ++i)
    for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

}  // namespace cubiclat
