#include "cubiclat/local.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <sstream>

namespace cubiclat {

const JordanConstituent* JordanDecomposition::at_scale(unsigned k) const {
  for (const auto& c : constituents)
    if (c.scale == k) return &c;
  return nullptr;
}

unsigned JordanDecomposition::total_rank() const {
  unsigned r = 0;
  for (const auto& c : constituents) r += c.rank;
  return r;
}

size_t JordanDecomposition::local_length() const {
  size_t l = 0;
  for (const auto& c : constituents)
    if (c.scale >= 1) l += c.rank;
  return l;
}

namespace {

long val_of(const Rat& r, const Int& p) { return r == 0 ? LONG_MAX : valuation(r, p); }

struct Builder {
  Int p;
  std::map<unsigned, JordanConstituent> acc;

  void add_diag(long scale, const Rat& value) {
    JordanConstituent& c = acc[static_cast<unsigned>(scale)];
    c.scale = static_cast<unsigned>(scale);
    c.rank += 1;
    if (p == 2) {
      Rat unit = value;
      for (long i = 0; i < scale; ++i) unit /= 2;
      int m8 = odd_unit_mod8(unit);
      c.type_II = false;
      c.units_mod8.push_back(m8);
      c.det_mod8 = (c.det_mod8 * m8) % 8;
      c.oddity_mod8 = (c.oddity_mod8 + m8) % 8;
    } else {
      c.det_class *= legendre_unit(value, p);
    }
  }

  void add_even_block(long scale, bool is_v) {
    JordanConstituent& c = acc[static_cast<unsigned>(scale)];
    c.scale = static_cast<unsigned>(scale);
    c.rank += 2;
    if (is_v) {
      c.n_V += 1;
      c.det_mod8 = (c.det_mod8 * 3) % 8;
    } else {
      c.n_U += 1;
      c.det_mod8 = (c.det_mod8 * 7) % 8;
    }
  }
};

}  // namespace

JordanDecomposition jordan_decompose(const IntLattice& L, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("jordan_decompose: p must be prime");
  if (L.is_degenerate()) throw std::invalid_argument("degenerate lattice");
  size_t n = L.rank();
  QMat a = to_rational(L.gram());
  Builder bld{p, {}};

  size_t pos = 0;
  while (pos < n) {
    long best = LONG_MAX;
    size_t bi = pos, bj = pos;
    bool diag_hit = false;
    for (size_t i = pos; i < n; ++i)
      for (size_t j = i; j < n; ++j) {
        long v = val_of(a(i, j), p);
        if (v < best || (v == best && !diag_hit && i == j)) {
          best = v;
          bi = i;
          bj = j;
          diag_hit = (i == j);
        }
      }
    if (best == LONG_MAX) throw std::logic_error("degenerate block in jordan splitting");

    bool use_diag = diag_hit;
    if (!diag_hit && p != 2) {
      // fold row bj into bi: the cross term 2 a(bi,bj) carries the minimum
      a.add_row(bi, bj, Rat(1));
      a.add_col(bi, bj, Rat(1));
      use_diag = true;
    }

    if (use_diag) {
      if (bi != pos) {
        a.swap_rows(pos, bi);
        a.swap_cols(pos, bi);
      }
      Rat piv = a(pos, pos);
      for (size_t i = pos + 1; i < n; ++i) {
        if (a(i, pos) == 0) continue;
        Rat f = a(i, pos) / piv;
        for (size_t j = pos; j < n; ++j) a(i, j) -= f * a(pos, j);
        for (size_t j = pos; j < n; ++j) a(j, i) = a(i, j);
      }
      bld.add_diag(best, piv);
      pos += 1;
      continue;
    }

    // p = 2, minimum strictly off the diagonal: split an even 2x2 block
    if (bi != pos) {
      a.swap_rows(pos, bi);
      a.swap_cols(pos, bi);
    }
    if (bj != pos + 1) {
      a.swap_rows(pos + 1, bj);
      a.swap_cols(pos + 1, bj);
    }
    Rat b00 = a(pos, pos), b01 = a(pos, pos + 1), b11 = a(pos + 1, pos + 1);
    Rat bdet = b00 * b11 - b01 * b01;
    for (size_t i = pos + 2; i < n; ++i) {
      Rat r0 = a(i, pos), r1 = a(i, pos + 1);
      if (r0 == 0 && r1 == 0) continue;
      Rat c0 = (r0 * b11 - r1 * b01) / bdet;
      Rat c1 = (-r0 * b01 + r1 * b00) / bdet;
      for (size_t j = pos; j < n; ++j) a(i, j) -= c0 * a(pos, j) + c1 * a(pos + 1, j);
      for (size_t j = pos; j < n; ++j) a(j, i) = a(i, j);
    }
    Rat scaled = bdet;
    for (long i = 0; i < 2 * best; ++i) scaled /= 2;
    int m8 = odd_unit_mod8(scaled);
    if (m8 != 7 && m8 != 3) throw std::logic_error("unexpected even block determinant");
    bld.add_even_block(best, m8 == 3);
    pos += 2;
  }

  JordanDecomposition out{p, {}};
  for (auto& [scale, c] : bld.acc) out.constituents.push_back(c);
  return out;
}

unsigned PadicLattice::rank() const {
  unsigned r = 0;
  for (const auto& b : blocks) r += b.kind == LocalBlock::kDiag ? 1 : 2;
  return r;
}

Int PadicLattice::discr_unit() const {
  Int u = 1;
  for (const auto& b : blocks) {
    if (b.kind == LocalBlock::kDiag)
      u *= b.unit;
    else if (b.kind == LocalBlock::kU)
      u *= -1;
    else
      u *= 3;
  }
  return u;
}

long PadicLattice::discr_exponent() const {
  long e = 0;
  for (const auto& b : blocks) e += b.kind == LocalBlock::kDiag ? b.scale : 2L * b.scale;
  return e;
}

IMat PadicLattice::gram_representative() const {
  IMat g(rank(), rank());
  size_t pos = 0;
  for (const auto& b : blocks) {
    Int pk = 1;
    for (unsigned i = 0; i < b.scale; ++i) pk *= p;
    if (b.kind == LocalBlock::kDiag) {
      Int u = b.unit;
      while (u < 0) u += 8;
      g(pos, pos) = u * pk;
      pos += 1;
    } else if (b.kind == LocalBlock::kU) {
      g(pos, pos + 1) = pk;
      g(pos + 1, pos) = pk;
      pos += 2;
    } else {
      g(pos, pos) = 2 * pk;
      g(pos + 1, pos + 1) = 2 * pk;
      g(pos, pos + 1) = pk;
      g(pos + 1, pos) = pk;
      pos += 2;
    }
  }
  return g;
}

bool PadicLattice::has_odd_block_at(unsigned scale) const {
  for (const auto& b : blocks)
    if (b.kind == LocalBlock::kDiag && b.scale == scale) return true;
  return false;
}

PadicLattice kq_from_jordan(const JordanDecomposition& jd) {
  PadicLattice k{jd.p, {}};
  for (const auto& c : jd.constituents) {
    if (c.scale == 0) continue;
    if (jd.p == 2) {
      for (int u : c.units_mod8) k.blocks.push_back({c.scale, LocalBlock::kDiag, Int(u)});
      for (unsigned i = 0; i < c.n_U; ++i) k.blocks.push_back({c.scale, LocalBlock::kU, Int(1)});
      for (unsigned i = 0; i < c.n_V; ++i) k.blocks.push_back({c.scale, LocalBlock::kV, Int(1)});
    } else {
      for (unsigned i = 0; i + 1 < c.rank; ++i)
        k.blocks.push_back({c.scale, LocalBlock::kDiag, Int(1)});
      Int last = c.det_class == 1 ? Int(1) : smallest_nonresidue(jd.p);
      k.blocks.push_back({c.scale, LocalBlock::kDiag, last});
    }
  }
  return k;
}

PadicLattice kq_from_pieces(const std::vector<FormPiece>& pieces, const Int& p) {
  PadicLattice k{p, {}};
  for (const auto& piece : pieces) {
    if (piece.p != p) continue;
    if (piece.kind == FormPiece::kBinaryU) {
      k.blocks.push_back({piece.scale, LocalBlock::kU, Int(1)});
      continue;
    }
    if (piece.kind == FormPiece::kBinaryV) {
      k.blocks.push_back({piece.scale, LocalBlock::kV, Int(1)});
      continue;
    }
    Int pe = 1;
    for (unsigned i = 0; i < piece.scale; ++i) pe *= p;
    if (p == 2) {
      // q(gen) = a/2^e with a odd mod 2^{e+1}; realizes <c 2^e> with c = a^{-1}
      Int mod = 2 * pe;
      Int c = mod_inverse(piece.a % mod, mod) % (piece.scale >= 2 ? Int(8) : Int(4));
      k.blocks.push_back({piece.scale, LocalBlock::kDiag, c});
    } else {
      // q(gen) = a/p^e, a even; the realizing unit has the square class of a
      int cls = legendre(unit_part(piece.a, p) % p, p);
      k.blocks.push_back(
          {piece.scale, LocalBlock::kDiag, cls == 1 ? Int(1) : smallest_nonresidue(p)});
    }
  }
  std::sort(k.blocks.begin(), k.blocks.end(), [](const auto& x, const auto& y) {
    if (x.scale != y.scale) return x.scale < y.scale;
    return x.kind < y.kind;
  });
  return k;
}

std::optional<PadicLattice> other_candidate(const PadicLattice& k) {
  if (k.p != 2) return std::nullopt;
  PadicLattice alt = k;
  for (auto& b : alt.blocks)
    if (b.kind == LocalBlock::kDiag && b.scale == 1) {
      b.unit = (b.unit * 5) % 8;
      return alt;
    }
  return std::nullopt;
}

LocalInvariants local_invariants(const IntLattice& L, const Int& p) {
  if (!L.is_even()) throw std::invalid_argument("local invariants require an even lattice");
  JordanDecomposition jd = jordan_decompose(L, p);
  LocalInvariants out;
  out.p = p;
  const JordanConstituent* s0 = jd.at_scale(0);
  if (p != 2) {
    out.t_p = s0 ? s0->rank : 0;
    int cls = s0 ? s0->det_class : 1;
    out.v_p = cls == -1 ? 1 : 0;
    out.theta = cls == -1 ? smallest_nonresidue(p) : Int(1);
    return out;
  }
  if (s0 && !s0->type_II) throw std::logic_error("even lattice with odd scale-0 block at 2");
  out.t_p = s0 ? s0->rank / 2 : 0;
  const JordanConstituent* s1 = jd.at_scale(1);
  out.exceptional = s1 && !s1->type_II;
  auto [tp, tm] = L.signature();
  Int absA = abs(L.determinant());
  long n = static_cast<long>(L.rank());
  long l2 = static_cast<long>(jd.local_length());
  if ((n - l2) % 2 != 0) throw std::logic_error("rank - l(A_2) must be even for an even lattice");
  PadicLattice kq = kq_from_jordan(jd);
  auto theta_of = [&](const PadicLattice& k) {
    // (-1)^{t_- + (N - l(A_2))/2} |A| / discr(K(q_2)), an odd unit mod 8
    Rat ratio = Rat(absA) / Rat(k.discr_unit());
    for (long i = 0; i < k.discr_exponent(); ++i) ratio /= 2;
    int m8 = odd_unit_mod8(ratio);
    bool negate = (tm + (n - l2) / 2) % 2 != 0;
    return Int(negate ? (8 - m8) % 8 : m8);
  };
  out.theta = theta_of(kq);
  if (out.exceptional) {
    auto alt = other_candidate(kq);
    if (alt) {
      Int t2 = theta_of(*alt);
      if (out.theta != 1 && t2 == 1) std::swap(out.theta, t2);
      out.theta_alt = t2;
    }
  }
  out.v_p = out.theta == 5 ? 1 : 0;
  return out;
}

QVec rational_diagonal(const IMat& gram) {
  size_t n = gram.rows();
  QMat a = to_rational(gram);
  QVec diag;
  for (size_t k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      size_t j = k + 1;
      while (j < n && a(k, j) == 0) ++j;
      if (j == n) throw std::invalid_argument("degenerate lattice");
      Rat t = (2 * a(k, j) + a(j, j) != 0) ? Rat(1) : Rat(-1);
      a.add_row(k, j, t);
      a.add_col(k, j, t);
    }
    diag.push_back(a(k, k));
    Rat inv = Rat(1) / a(k, k);
    for (size_t i = k + 1; i < n; ++i) {
      Rat f = a(i, k) * inv;
      if (f == 0) continue;
      for (size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (size_t j = k; j < n; ++j) a(j, i) = a(i, j);
    }
  }
  return diag;
}

namespace {

int hasse_of_diagonal(const QVec& diag, const Int& p) {
  int eps = 1;
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) eps *= hilbert(diag[i], diag[j], p);
  return eps;
}

}  // namespace

int hasse_invariant(const IntLattice& L, const Int& p) {
  if (L.rank() == 0) return 1;
  return hasse_of_diagonal(rational_diagonal(L.gram()), p);
}

int hasse_invariant(const PadicLattice& k) {
  if (k.blocks.empty()) return 1;
  return hasse_of_diagonal(rational_diagonal(k.gram_representative()), k.p);
}

std::string jordan_symbol_text(const JordanDecomposition& jd) {
  std::ostringstream os;
  os << "p=" << jd.p << ":";
  for (const auto& c : jd.constituents) {
    Int q = 1;
    for (unsigned i = 0; i < c.scale; ++i) q *= jd.p;
    os << " " << q.get_str() << "^{";
    if (jd.p == 2) {
      os << (c.det_mod8 == 1 || c.det_mod8 == 7 ? "+" : "-") << c.rank << "}";
      os << (c.type_II ? "II" : ("I" + std::to_string(c.oddity_mod8)));
    } else {
      os << (c.det_class > 0 ? "+" : "-") << c.rank << "}";
    }
  }
  return os.str();
}

}  // namespace cubiclat
