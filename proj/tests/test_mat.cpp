#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <cubiclat/finite_form.hpp>
#include <cubiclat/lattice.hpp>
#include <cubiclat/mat.hpp>

using namespace cubiclat;

namespace {

// Independent SNF oracle: the k-th determinantal divisor (gcd of all k x k
// minors) equals d_1 * ... * d_k.
Int determinantal_divisor(const IMat& m, size_t k) {
  size_t r = m.rows(), c = m.cols();
  std::vector<size_t> ri(k), ci(k);
  Int g = 0;
  std::vector<size_t> rows_sel, cols_sel;
  std::vector<size_t> rperm, cperm;
  // enumerate k-subsets of rows and columns
  std::vector<size_t> rsel(k), csel(k);
  auto next_subset = [](std::vector<size_t>& s, size_t n) {
    size_t k = s.size();
    for (size_t i = k; i-- > 0;) {
      if (s[i] + (k - i) < n) {
        ++s[i];
        for (size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  for (size_t i = 0; i < k; ++i) rsel[i] = i;
  do {
    for (size_t i = 0; i < k; ++i) csel[i] = i;
    do {
      IMat sub(k, k);
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) sub(i, j) = m(rsel[i], csel[j]);
      Int d = det(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (next_subset(csel, c));
  } while (next_subset(rsel, r));
  return g;
}

void check_snf(const IMat& m) {
  SmithResult s = smith_normal_form(m);
  CHECK(s.u * m * s.v == s.d);
  CHECK(abs(det(s.u)) == 1);
  CHECK(abs(det(s.v)) == 1);
  auto diag = s.diagonal();
  for (size_t i = 0; i + 1 < diag.size(); ++i) CHECK(diag[i + 1] % diag[i] == 0);
  // oracle: determinantal divisors
  Int prev = 1;
  for (size_t k = 1; k <= diag.size(); ++k) {
    Int dk = determinantal_divisor(m, k);
    CHECK(dk == prev * diag[k - 1]);
    prev = dk;
  }
}

}  // namespace

TEST_CASE("smith normal form on the spec instances") {
  IMat d46{{Int(4), Int(0)}, {Int(0), Int(6)}};
  SmithResult s = smith_normal_form(d46);
  CHECK(s.diagonal() == std::vector<Int>{Int(2), Int(12)});
  check_snf(d46);

  IMat id = IMat::identity(3);
  CHECK(smith_normal_form(id).diagonal() == std::vector<Int>{Int(1), Int(1), Int(1)});

  IMat d4468(4, 4);
  d4468(0, 0) = 4;
  d4468(1, 1) = 4;
  d4468(2, 2) = 6;
  d4468(3, 3) = 8;
  SmithResult s2 = smith_normal_form(d4468);
  CHECK(s2.diagonal() == std::vector<Int>{Int(2), Int(4), Int(4), Int(24)});
  check_snf(d4468);
}

TEST_CASE("smith normal form on random matrices vs determinantal-divisor oracle") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    size_t n = 1 + rng() % 4;
    IMat m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = Int(static_cast<long>(rng() % 19) - 9);
    check_snf(m);
  }
}

TEST_CASE("determinant, inverse, kernel") {
  IMat m{{Int(2), Int(1)}, {Int(1), Int(2)}};
  CHECK(det(m) == 3);
  QMat inv = inverse(to_rational(m));
  CHECK(inv(0, 0) == Rat(2, 3));
  CHECK(inv(0, 1) == Rat(-1, 3));

  IMat k{{Int(3), Int(1), Int(0)}};
  IMat ker = kernel_basis(k);
  CHECK(ker.rows() == 2);
  for (size_t i = 0; i < ker.rows(); ++i)
    CHECK(Int(3) * ker(i, 0) + ker(i, 1) == 0);
}

TEST_CASE("catalog lattices have the expected basic invariants") {
  auto L = catalog::L();
  auto L0 = catalog::L0();
  auto U = catalog::U();
  auto E8 = catalog::E8();
  auto A2 = catalog::A2();

  CHECK(L.signature() == std::pair<unsigned, unsigned>{21, 2});
  CHECK(U.signature() == std::pair<unsigned, unsigned>{1, 1});
  CHECK(E8.signature() == std::pair<unsigned, unsigned>{8, 0});
  CHECK(E8.determinant() == 1);
  CHECK(E8.is_even());
  CHECK(L0.signature() == std::pair<unsigned, unsigned>{20, 2});
  CHECK(L0.determinant() == 3);
  CHECK(L0.is_even());
  CHECK(A2.determinant() == 3);
  CHECK(IntLattice::diagonal({Int(3)}).signature() == std::pair<unsigned, unsigned>{1, 0});

  // the distinguished h2 has norm 3 and even orthogonal complement with L0's invariants
  IVec h2 = catalog::h2();
  CHECK(L.norm(h2) == 3);
  Sublattice comp = orthogonal_complement(L, h2);
  IntLattice C = comp.induced();
  CHECK(C.is_even());
  CHECK(C.signature() == std::pair<unsigned, unsigned>{20, 2});
  CHECK(abs(C.determinant()) == 3);
  auto dg = discriminant_group(C);
  CHECK(dg.factors == std::vector<Int>{Int(3)});
}

TEST_CASE("determinant examples from the catalog") {
  CHECK(catalog::L0().determinant() == 3);
  CHECK(catalog::E8().determinant() == 1);
  IntLattice d = IntLattice::diagonal({Int(4), Int(4), Int(6), Int(8)});
  CHECK(d.determinant() == 768);
}

TEST_CASE("discriminant group instances") {
  CHECK(discriminant_group(catalog::A2()).factors == std::vector<Int>{Int(3)});
  CHECK(discriminant_group(catalog::U()).factors.empty());
  IntLattice d = IntLattice::diagonal({Int(4), Int(4), Int(6), Int(8)});
  CHECK(discriminant_group(d).factors == std::vector<Int>{Int(2), Int(4), Int(4), Int(24)});
}

TEST_CASE("discriminant form instances") {
  FiniteQuadraticForm qA2 = discriminant_form(catalog::A2());
  REQUIRE(qA2.ngens() == 1);
  CHECK(qA2.factors()[0] == 3);
  CHECK(qA2.q_gen(0) == Rat(2, 3));

  CHECK(discriminant_form(catalog::E8()).is_trivial());

  FiniteQuadraticForm q6 = discriminant_form(IntLattice::diagonal({Int(6)}));
  REQUIRE(q6.ngens() == 1);
  CHECK(q6.factors()[0] == 6);
  CHECK(q6.q_gen(0) == Rat(1, 6));

  CHECK_THROWS_AS(discriminant_form(IntLattice::diagonal({Int(3)})), std::invalid_argument);
}

TEST_CASE("saturation and orthogonal complement basics") {
  IntLattice d11 = IntLattice::diagonal({Int(1), Int(1)});
  Sublattice s = span_of(d11, {{Int(3), Int(0)}});
  auto sat = saturate(s);
  CHECK(sat.index == 3);
  CHECK(abs(sat.saturation.basis(0, 0)) == 1);
  CHECK(sat.saturation.basis(0, 1) == 0);
  // idempotence
  auto sat2 = saturate(sat.saturation);
  CHECK(sat2.index == 1);

  Sublattice c = orthogonal_complement(d11, {Int(1), Int(0)});
  CHECK(c.basis.rows() == 1);
  CHECK(c.basis(0, 0) == 0);
  CHECK(abs(c.basis(0, 1)) == 1);

  // v = e + 3f in U has norm 6 and complement spanned by e - 3f
  auto U = catalog::U();
  IVec v{Int(1), Int(3)};
  CHECK(U.norm(v) == 6);
  Sublattice cu = orthogonal_complement(U, v);
  IntLattice cuL = cu.induced();
  CHECK(cuL.gram()(0, 0) == -6);
}

TEST_CASE("formula (0): det S = det saturation * index^2") {
  std::mt19937_64 rng(11);
  auto L = catalog::L();
  for (int t = 0; t < 25; ++t) {
    IVec v(23, Int(0));
    for (auto& x : v) x = Int(static_cast<long>(rng() % 7) - 3);
    IVec w(23, Int(0));
    for (auto& x : w) x = Int(static_cast<long>(rng() % 7) - 3);
    IMat b(2, 23);
    for (int j = 0; j < 23; ++j) {
      b(0, j) = v[j];
      b(1, j) = w[j];
    }
    SmithResult snf = smith_normal_form(b);
    if (snf.diagonal().size() != 2) continue;
    Sublattice s{L, b};
    Int dS = det(s.induced_gram());
    if (dS == 0) continue;
    auto sat = saturate(s);
    Int dSat = det(sat.saturation.induced_gram());
    CHECK(dS == dSat * sat.index * sat.index);
  }
}
