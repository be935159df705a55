#include "cubiclat/finite_form.hpp"

#include <algorithm>
#include <climits>
#include <tuple>

#include "cubiclat/lattice.hpp"

namespace cubiclat {

FiniteQuadraticForm::FiniteQuadraticForm(std::vector<Int> factors, QVec q_values, QMat b_values)
    : factors_(std::move(factors)), q_(std::move(q_values)), b_(std::move(b_values)) {
  size_t k = factors_.size();
  if (q_.size() != k || b_.rows() != k || b_.cols() != k)
    throw std::invalid_argument("finite form shape mismatch");
  for (size_t i = 0; i < k; ++i) {
    if (factors_[i] < 2) throw std::invalid_argument("invariant factors must be > 1");
    if (i + 1 < k && factors_[i + 1] % factors_[i] != 0)
      throw std::invalid_argument("invariant factors must form a divisibility chain");
  }
  for (size_t i = 0; i < k; ++i) {
    q_[i] = normalize_mod2(q_[i]);
    // q(g_i) has denominator dividing 2 d_i, and scaling by units of Z/d_i is
    // well-defined exactly when d_i (d_i + 2) q(g_i) = 0 mod 2.
    Rat t = q_[i] * factors_[i] * (factors_[i] + 2);
    if (normalize_mod2(t) != 0) throw std::invalid_argument("q value not well-defined on Z/d");
    for (size_t j = 0; j < k; ++j) {
      b_(i, j) = normalize_mod1(b_(i, j));
      if (b_(i, j) != normalize_mod1(b_(j, i))) throw std::invalid_argument("b must be symmetric");
      if (normalize_mod1(b_(i, j) * factors_[i]) != 0)
        throw std::invalid_argument("b value incompatible with generator order");
    }
    if (normalize_mod1(q_[i]) != b_(i, i))
      throw std::invalid_argument("q and b disagree on the diagonal");
  }
}

Int FiniteQuadraticForm::group_order() const {
  Int n = 1;
  for (const Int& d : factors_) n *= d;
  return n;
}

size_t FiniteQuadraticForm::local_length(const Int& p) const {
  size_t l = 0;
  for (const Int& d : factors_)
    if (d % p == 0) ++l;
  return l;
}

IVec FiniteQuadraticForm::reduce(IVec x) const {
  if (x.size() != factors_.size()) throw std::invalid_argument("element size mismatch");
  for (size_t i = 0; i < x.size(); ++i) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x[i].get_mpz_t(), factors_[i].get_mpz_t());
    x[i] = r;
  }
  return x;
}

Rat FiniteQuadraticForm::q_of(const IVec& x) const {
  if (x.size() != factors_.size()) throw std::invalid_argument("element size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    s += Rat(x[i] * x[i]) * q_[i];
    for (size_t j = i + 1; j < x.size(); ++j)
      if (x[j] != 0) s += 2 * Rat(x[i] * x[j]) * b_(i, j);
  }
  return normalize_mod2(s);
}

Rat FiniteQuadraticForm::b_of(const IVec& x, const IVec& y) const {
  if (x.size() != factors_.size() || y.size() != factors_.size())
    throw std::invalid_argument("element size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      if (y[j] != 0) s += Rat(x[i] * y[j]) * b_(i, j);
  }
  return normalize_mod1(s);
}

Int FiniteQuadraticForm::order_of(const IVec& x) const {
  Int ord = 1;
  for (size_t i = 0; i < x.size(); ++i) {
    Int g;
    mpz_gcd(g.get_mpz_t(), x[i].get_mpz_t(), factors_[i].get_mpz_t());
    Int o = factors_[i] / g;
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
  }
  return ord;
}

bool FiniteQuadraticForm::is_nondegenerate() const {
  size_t k = factors_.size();
  if (k == 0) return true;
  // kernel of x -> b(x, .) : count solutions of sum_i x_i b(i,j) = 0 mod 1.
  Int m = 1;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      Int den = b_(i, j).get_den();
      mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), den.get_mpz_t());
    }
  IMat c(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) c(i, j) = b_(i, j).get_num() * (m / b_(i, j).get_den());
  // [Z^k : {x : x c = 0 mod m}] equals the size of the image of c^T mod m.
  SmithResult s = smith_normal_form(c);
  Int image = 1;
  for (const Int& d : s.diagonal()) {
    Int g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
    image *= m / g;
  }
  return image == group_order();
}

FiniteQuadraticForm FiniteQuadraticForm::negated() const {
  QVec q(q_.size());
  for (size_t i = 0; i < q_.size(); ++i) q[i] = normalize_mod2(-q_[i]);
  QMat b(b_.rows(), b_.cols());
  for (size_t i = 0; i < b_.rows(); ++i)
    for (size_t j = 0; j < b_.cols(); ++j) b(i, j) = normalize_mod1(-b_(i, j));
  return FiniteQuadraticForm(factors_, std::move(q), std::move(b));
}

FiniteQuadraticForm FiniteQuadraticForm::direct_sum(const FiniteQuadraticForm& a,
                                                    const FiniteQuadraticForm& b) {
  // concatenate, then renormalize into a divisibility chain
  std::vector<IVec> gens;
  size_t ka = a.ngens(), kb = b.ngens();
  std::vector<Int> factors;
  QVec q;
  QMat bb(ka + kb, ka + kb);
  for (size_t i = 0; i < ka; ++i) {
    factors.push_back(a.factors()[i]);
    q.push_back(a.q_gen(i));
  }
  for (size_t i = 0; i < kb; ++i) {
    factors.push_back(b.factors()[i]);
    q.push_back(b.q_gen(i));
  }
  for (size_t i = 0; i < ka; ++i)
    for (size_t j = 0; j < ka; ++j) bb(i, j) = a.b_gen(i, j);
  for (size_t i = 0; i < kb; ++i)
    for (size_t j = 0; j < kb; ++j) bb(ka + i, ka + j) = b.b_gen(i, j);
  // build a raw object bypassing the chain check via subgroup normalization
  FiniteQuadraticForm raw;
  raw.factors_ = std::move(factors);
  raw.q_ = std::move(q);
  raw.b_ = std::move(bb);
  std::vector<IVec> all;
  for (size_t i = 0; i < raw.ngens(); ++i) {
    IVec e(raw.ngens(), Int(0));
    e[i] = 1;
    all.push_back(std::move(e));
  }
  return subgroup_form(raw, all).form;
}

bool FiniteQuadraticForm::next_element(IVec& x) const {
  for (size_t i = 0; i < factors_.size(); ++i) {
    x[i] += 1;
    if (x[i] < factors_[i]) return true;
    x[i] = 0;
  }
  return false;
}

FiniteQuadraticForm discriminant_form(const IntLattice& L) {
  if (!L.is_even()) throw std::invalid_argument("discriminant quadratic form requires even lattice");
  DiscriminantGroup g = discriminant_group(L);
  size_t k = g.factors.size();
  QMat gram = to_rational(L.gram());
  QVec q(k);
  QMat b(k, k);
  for (size_t i = 0; i < k; ++i) {
    QVec gi = g.generators.row(i);
    QVec gig = vec_mat(gi, gram);
    q[i] = normalize_mod2(dot(gig, gi));
    for (size_t j = 0; j < k; ++j) b(i, j) = normalize_mod1(dot(gig, g.generators.row(j)));
  }
  return FiniteQuadraticForm(g.factors, std::move(q), std::move(b));
}

IVec FormSubgroup::to_ambient(const IVec& x) const {
  if (gens_in_ambient.empty()) return {};
  size_t n = gens_in_ambient[0].size();
  IVec out(n, Int(0));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < n; ++j) out[j] += x[i] * gens_in_ambient[i][j];
  return out;
}

FormSubgroup subgroup_form(const FiniteQuadraticForm& q, const std::vector<IVec>& gens) {
  size_t m = gens.size(), k = q.ngens();
  if (m == 0) return FormSubgroup{FiniteQuadraticForm(), {}};
  // relation lattice R = { c in Z^m : sum c_j gens_j = 0 in A }
  // = { c : exists y, S^T c = D y } with S rows = gens, D = diag(d_i).
  IMat st(k, m + k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < m; ++j) st(i, j) = gens[j][i];
    st(i, m + i) = -q.factors()[i];
  }
  IMat kern = kernel_basis(st);  // rows (c, y)
  IMat cpart(kern.rows(), m);
  for (size_t i = 0; i < kern.rows(); ++i)
    for (size_t j = 0; j < m; ++j) cpart(i, j) = kern(i, j);
  IMat rel = row_lattice_basis(cpart);
  if (rel.rows() != m) throw std::logic_error("relation lattice must have full rank");
  // Z^m / R with R as column span; new generator i = sum_j (Uinv)_{ji} gens_j.
  SmithResult s = smith_normal_form(rel.transposed());
  QMat uinv_q = inverse(to_rational(s.u));
  IMat uinv = to_integral(uinv_q);
  std::vector<Int> newfac;
  std::vector<IVec> newgens;
  for (size_t i = 0; i < m; ++i) {
    Int d = s.d(i, i);
    if (d <= 1) continue;
    newfac.push_back(d);
    IVec g(k, Int(0));
    for (size_t j = 0; j < m; ++j)
      for (size_t t = 0; t < k; ++t) g[t] += uinv(j, i) * gens[j][t];
    newgens.push_back(q.reduce(std::move(g)));
  }
  size_t kk = newfac.size();
  QVec qq(kk);
  QMat bb(kk, kk);
  for (size_t i = 0; i < kk; ++i) {
    qq[i] = q.q_of(newgens[i]);
    for (size_t j = 0; j < kk; ++j) bb(i, j) = q.b_of(newgens[i], newgens[j]);
  }
  return FormSubgroup{FiniteQuadraticForm(std::move(newfac), std::move(qq), std::move(bb)),
                      std::move(newgens)};
}

FormSubgroup orthogonal_subgroup(const FiniteQuadraticForm& q, const std::vector<IVec>& hs) {
  size_t k = q.ngens();
  if (k == 0) return FormSubgroup{FiniteQuadraticForm(), {}};
  // conditions sum_i x_i b(g_i, h_t) = 0 mod 1 for each t
  Int m = 1;
  std::vector<QVec> beta;
  for (const IVec& h : hs) {
    QVec row(k);
    for (size_t i = 0; i < k; ++i) {
      IVec e(k, Int(0));
      e[i] = 1;
      row[i] = q.b_of(e, h);
      Int den = row[i].get_den();
      mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), den.get_mpz_t());
    }
    beta.push_back(std::move(row));
  }
  // solution lattice of x * B = 0 mod m: kernel of [B | -mI] over Z
  size_t t = beta.size();
  IMat sys(k + t, t);
  for (size_t j = 0; j < t; ++j) {
    for (size_t i = 0; i < k; ++i)
      sys(i, j) = beta[j][i].get_num() * (m / beta[j][i].get_den());
    sys(k + j, j) = m;
  }
  IMat kern = kernel_basis(sys.transposed());
  std::vector<IVec> gens;
  for (size_t i = 0; i < kern.rows(); ++i) {
    IVec g(k);
    for (size_t j = 0; j < k; ++j) g[j] = kern(i, j);
    gens.push_back(q.reduce(std::move(g)));
  }
  return subgroup_form(q, gens);
}

FormSubgroup orthogonal_subgroup(const FiniteQuadraticForm& q, const IVec& h) {
  return orthogonal_subgroup(q, std::vector<IVec>{h});
}

FormSubgroup p_part(const FiniteQuadraticForm& q, const Int& p) {
  std::vector<IVec> gens;
  for (size_t i = 0; i < q.ngens(); ++i) {
    Int d = q.factors()[i];
    if (d % p != 0) continue;
    Int pe = 1;
    while (d % p == 0) {
      pe *= p;
      d /= p;
    }
    IVec g(q.ngens(), Int(0));
    g[i] = q.factors()[i] / pe;  // order p^e component of g_i
    gens.push_back(std::move(g));
  }
  return subgroup_form(q, gens);
}

namespace {

// Numerator of q(x) = a / p^e over the exact denominator p^e, a mod 2 p^e.
Int numerator_over(const Rat& qv, const Int& pe) {
  Rat t = qv * pe;
  if (t.get_den() != 1) throw std::logic_error("denominator does not divide p^e");
  Int a = t.get_num() % (2 * pe);
  if (a < 0) a += 2 * pe;
  return a;
}

struct PSplitter {
  Int p;
  std::vector<FormPiece> pieces;

  void split(const FiniteQuadraticForm& f) {
    if (f.ngens() == 0) return;
    long emax = 0;
    for (const Int& d : f.factors()) emax = std::max(emax, valuation(d, p));
    Int pe = 1;
    for (long i = 0; i < emax; ++i) pe *= p;

    size_t k = f.ngens();
    auto candidates = [&]() {
      std::vector<IVec> cs;
      for (size_t i = 0; i < k; ++i) {
        IVec e(k, Int(0));
        e[i] = 1;
        cs.push_back(std::move(e));
      }
      for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j) {
          IVec e(k, Int(0));
          e[i] = 1;
          e[j] = 1;
          cs.push_back(std::move(e));
        }
      return cs;
    }();

    auto val_of = [&](const Rat& r) { return r == 0 ? LONG_MAX : valuation(r, p); };

    if (p != 2) {
      // split off <x> with v_p(b(x,x)) = -emax; gens and pairs always suffice
      for (const IVec& x : candidates) {
        if (val_of(f.b_of(x, x)) != -emax) continue;
        pieces.push_back(FormPiece{p, static_cast<unsigned>(emax), FormPiece::kCyclic,
                                   numerator_over(f.q_of(x), pe)});
        FormSubgroup rest = orthogonal_subgroup(f, x);
        split(rest.form);
        return;
      }
      throw std::logic_error("degenerate top layer in odd-p splitting");
    }

    // p = 2: prefer an odd cyclic piece at the top scale
    for (const IVec& x : candidates) {
      if (val_of(f.q_of(x)) != -emax) continue;
      pieces.push_back(FormPiece{p, static_cast<unsigned>(emax), FormPiece::kCyclic,
                                 numerator_over(f.q_of(x), pe)});
      FormSubgroup rest = orthogonal_subgroup(f, x);
      split(rest.form);
      return;
    }
    // otherwise an even binary block exists at the top scale
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j) {
        IVec x(k, Int(0)), y(k, Int(0));
        x[i] = 1;
        y[j] = 1;
        if (val_of(f.b_of(x, y)) != -emax) continue;
        // v-type iff both q-values are 2*odd/2^e
        bool vtype = val_of(f.q_of(x)) == 1 - emax && val_of(f.q_of(y)) == 1 - emax;
        pieces.push_back(FormPiece{p, static_cast<unsigned>(emax),
                                   vtype ? FormPiece::kBinaryV : FormPiece::kBinaryU, Int(0)});
        FormSubgroup rest = orthogonal_subgroup(f, std::vector<IVec>{x, y});
        split(rest.form);
        return;
      }
    throw std::logic_error("degenerate top layer in 2-adic splitting");
  }
};

}  // namespace

std::vector<FormPiece> split_into_pieces(const FiniteQuadraticForm& q) {
  if (!q.is_nondegenerate()) throw std::invalid_argument("degenerate discriminant form");
  std::vector<FormPiece> all;
  if (q.is_trivial()) return all;
  for (auto& [p, e] : factorize(q.group_order())) {
    FormSubgroup part = p_part(q, p);
    PSplitter ps{p, {}};
    ps.split(part.form);
    for (auto& piece : ps.pieces) all.push_back(piece);
  }
  return all;
}

int signature_mod8(const FormPiece& piece) {
  const Int& p = piece.p;
  if (piece.kind == FormPiece::kBinaryU) return 0;
  if (piece.kind == FormPiece::kBinaryV) return (piece.scale % 2 == 1) ? 4 : 0;
  Int pe = 1;
  for (unsigned i = 0; i < piece.scale; ++i) pe *= p;
  if (p != 2) {
    // q(gen) = a/p^e with a even; Gauss sum gives the class of a/2 and p^e mod 4
    Int c = (piece.a / 2) % pe;
    int ls = legendre(c, p);
    if (piece.scale % 2 == 0) ls = 1;  // (c|p)^e with e even
    bool one_mod4 = (pe % 4) == 1;
    if (one_mod4) return ls == 1 ? 0 : 4;
    return ls == 1 ? 2 : 6;
  }
  Int a8m = piece.a % 8;
  int a8 = static_cast<int>(a8m.get_si());
  if (piece.scale % 2 == 0) return a8 % 8;
  return (a8 == 3 || a8 == 5) ? (a8 + 4) % 8 : a8;
}

int signature_mod8(const FiniteQuadraticForm& q) {
  int s = 0;
  for (const FormPiece& piece : split_into_pieces(q)) s = (s + signature_mod8(piece)) % 8;
  return s;
}

std::vector<IVec> order3_witnesses(const FiniteQuadraticForm& q) {
  std::vector<IVec> out;
  if (q.is_trivial()) return out;
  FormSubgroup part3 = p_part(q, 3);
  const FiniteQuadraticForm& f = part3.form;
  if (f.ngens() > 16) throw std::invalid_argument("3-part too large to enumerate");
  // elements of order dividing 3 in the 3-part
  std::vector<IVec> layer;
  IVec x(f.ngens(), Int(0));
  do {
    bool ord3 = true;
    for (size_t i = 0; i < x.size(); ++i)
      if ((3 * x[i]) % f.factors()[i] != 0) {
        ord3 = false;
        break;
      }
    if (ord3 && f.q_of(x) == Rat(2, 3)) layer.push_back(x);
  } while (f.next_element(x));
  for (const IVec& y : layer) out.push_back(q.reduce(part3.to_ambient(y)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

constexpr long kIsoSearchBound = 10000;

struct IsoSearcher {
  const FiniteQuadraticForm& src;
  const FiniteQuadraticForm& tgt;
  std::vector<IVec> images;
  std::vector<IVec> elements;  // all elements of tgt

  bool dfs(size_t i) {
    if (i == src.ngens()) return verify_surjective();
    for (const IVec& cand : elements) {
      if (tgt.order_of(cand) != src.factors()[i]) continue;
      if (tgt.q_of(cand) != src.q_gen(i)) continue;
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j)
        ok = tgt.b_of(cand, images[j]) == src.b_gen(i, j);
      if (!ok) continue;
      images.push_back(cand);
      if (dfs(i + 1)) return true;
      images.pop_back();
    }
    return false;
  }

  bool verify_surjective() {
    // the image subgroup has order |tgt| iff the relation lattice of the
    // images has covolume |tgt|
    if (src.group_order() != tgt.group_order()) return false;
    std::vector<IVec> gens = images;
    FormSubgroup hull = subgroup_form(tgt, gens);
    return hull.form.group_order() == tgt.group_order();
  }
};

std::optional<IMat> iso_exhaustive(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  IsoSearcher s{a, b, {}, {}};
  IVec x(b.ngens(), Int(0));
  do s.elements.push_back(x);
  while (b.next_element(x));
  std::sort(s.elements.begin(), s.elements.end());
  if (!s.dfs(0)) return std::nullopt;
  IMat m(a.ngens(), b.ngens());
  for (size_t i = 0; i < a.ngens(); ++i)
    for (size_t j = 0; j < b.ngens(); ++j) m(i, j) = s.images[i][j];
  return m;
}

// Piece-label matching fallback for large p-parts: sufficient, not necessary.
std::optional<IMat> iso_by_pieces(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
  auto pa = split_into_pieces(a);
  auto pb = split_into_pieces(b);
  if (pa.size() != pb.size()) return std::nullopt;
  auto label = [](const FormPiece& x) {
    Int cls = x.a;
    if (x.kind == FormPiece::kCyclic) {
      if (x.p != 2) {
        Int pe = 1;
        for (unsigned i = 0; i < x.scale; ++i) pe *= x.p;
        cls = legendre((x.a / 2) % pe, x.p);
      } else {
        cls = x.a % (x.scale >= 2 ? Int(8) : Int(4));
      }
    }
    return std::tuple<Int, unsigned, int, Int>(x.p, x.scale, static_cast<int>(x.kind), cls);
  };
  std::vector<std::tuple<Int, unsigned, int, Int>> la, lb;
  for (auto& x : pa) la.push_back(label(x));
  for (auto& x : pb) lb.push_back(label(x));
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) return std::nullopt;
  // matched labels certify isomorphism; an explicit generator map is not
  // reconstructed on this path
  return IMat(0, 0);
}

}  // namespace

std::optional<FormIsomorphism> form_isomorphic(const FiniteQuadraticForm& a,
                                               const FiniteQuadraticForm& b) {
  if (a.factors() != b.factors()) return std::nullopt;
  if (a.is_trivial()) return FormIsomorphism{IMat(0, 0)};
  if (a.group_order() <= kIsoSearchBound) {
    auto m = iso_exhaustive(a, b);
    if (!m) return std::nullopt;
    return FormIsomorphism{*m};
  }
  // per-prime: exhaust small parts, label-match big ones, then CRT-combine
  IMat full(a.ngens(), b.ngens());
  bool have_full_map = true;
  for (auto& [p, e] : factorize(a.group_order())) {
    FormSubgroup ap = p_part(a, p);
    FormSubgroup bp = p_part(b, p);
    if (ap.form.factors() != bp.form.factors()) return std::nullopt;
    std::optional<IMat> m;
    if (ap.form.group_order() <= kIsoSearchBound)
      m = iso_exhaustive(ap.form, bp.form);
    else
      m = iso_by_pieces(ap.form, bp.form);
    if (!m) return std::nullopt;
    if (m->rows() == 0 && ap.form.ngens() > 0) {
      have_full_map = false;
      continue;
    }
    // transport: ambient source gen g_i has p-component c_p * g_i expressed in
    // ap-generators; accumulate image through the p-part map.
    // Write each a-generator's p-part over ap gens by solving a small system.
    for (size_t i = 0; i < a.ngens(); ++i) {
      Int d = a.factors()[i];
      long v = 0;
      Int dd = d;
      while (dd % p == 0) {
        dd /= p;
        ++v;
      }
      if (v == 0) continue;
      Int pe = d / dd;
      // the p-component of g_i is t * g_i with t = dd * (dd^{-1} mod p^v)
      Int t = dd * mod_inverse(dd % pe, pe);
      IVec comp(a.ngens(), Int(0));
      comp[i] = t;
      comp = a.reduce(comp);
      // express comp over ap generators by brute force over the p-part
      IVec coeff(ap.form.ngens(), Int(0));
      bool found = false;
      IVec y(ap.form.ngens(), Int(0));
      do {
        if (a.reduce(ap.to_ambient(y)) == comp) {
          coeff = y;
          found = true;
          break;
        }
      } while (ap.form.next_element(y));
      if (!found) throw std::logic_error("p-part coordinates not found");
      // image in b of this p-component
      IVec img(b.ngens(), Int(0));
      for (size_t r = 0; r < coeff.size(); ++r) {
        if (coeff[r] == 0) continue;
        IVec row((*m).cols());
        for (size_t cidx = 0; cidx < (*m).cols(); ++cidx) row[cidx] = (*m)(r, cidx);
        IVec amb = bp.to_ambient(row);
        for (size_t cidx = 0; cidx < b.ngens(); ++cidx) img[cidx] += coeff[r] * amb[cidx];
      }
      for (size_t cidx = 0; cidx < b.ngens(); ++cidx) full(i, cidx) += img[cidx];
    }
  }
  if (!have_full_map) return FormIsomorphism{IMat(0, 0)};
  // final verification
  for (size_t i = 0; i < a.ngens(); ++i) {
    IVec gi = full.row(i);
    IVec ei(a.ngens(), Int(0));
    ei[i] = 1;
    if (b.q_of(b.reduce(gi)) != a.q_of(ei)) return std::nullopt;
    for (size_t j = 0; j < i; ++j) {
      IVec ej(a.ngens(), Int(0));
      ej[j] = 1;
      if (b.b_of(b.reduce(gi), b.reduce(full.row(j))) != a.b_of(ei, ej)) return std::nullopt;
    }
  }
  return FormIsomorphism{full};
}

bool exceptional_2adic(const std::vector<FormPiece>& pieces) {
  for (const FormPiece& x : pieces)
    if (x.p == 2 && x.scale == 1 && x.kind == FormPiece::kCyclic) return true;
  return false;
}

}  // namespace cubiclat
