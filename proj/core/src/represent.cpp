#include "cubiclat/represent.hpp"

#include <algorithm>

namespace cubiclat {

namespace {

constexpr unsigned long kSearchCap = 1ul << 24;

unsigned long reduce_mod(const Int& x, unsigned long m) {
  Int r = x % static_cast<unsigned long>(m);
  if (r < 0) r += static_cast<unsigned long>(m);
  return r.get_ui();
}

// Value set {block(x) mod p^e : x over Z_p} as a membership table.
std::vector<bool> block_values(const LocalBlock& b, const Int& p, unsigned long pe) {
  std::vector<bool> vals(pe, false);
  Int pk = 1;
  for (unsigned i = 0; i < b.scale; ++i) pk *= p;
  if (b.kind == LocalBlock::kDiag) {
    unsigned long coef = reduce_mod(b.unit * pk, pe);
    for (unsigned long t = 0; t < pe; ++t) vals[(t * t) % pe * coef % pe] = true;
    return vals;
  }
  if (b.kind == LocalBlock::kU) {
    // Q = 2 p^k x y realizes exactly the multiples of 2 p^k
    unsigned long step = reduce_mod(2 * pk, pe);
    unsigned long v = 0;
    do {
      vals[v] = true;
      v = (v + step) % pe;
    } while (v != 0);
    return vals;
  }
  // V block: Q = 2^{k+1}(x^2 + x y + y^2); the norm form takes 0 and every
  // 2-adic value of even valuation, so Q takes 0 and all r with
  // v_2(r) >= scale + 1 and v_2(r) = scale + 1 (mod 2)
  vals[0] = true;
  for (unsigned long r = 1; r < pe; ++r) {
    unsigned long v2 = 0, x = r;
    while (x % 2 == 0) {
      x /= 2;
      ++v2;
    }
    if (v2 >= b.scale + 1 && (v2 - b.scale - 1) % 2 == 0) vals[r] = true;
  }
  return vals;
}

RepresentationResult decide(const std::vector<LocalBlock>& blocks, const Int& p, const Int& N) {
  // Hensel bound: a solution of Q(x) = N mod p^e with e = 2 v_p(4 N s) + 1
  // lifts to Z_p. If x solves mod p^e then some coordinate j has
  // v_p((G x)_j) <= v_p(N), so the derivative 2 (G x)_j has valuation at
  // most v_p(2 N) and Newton iteration converges once e > 2 v_p(2 N). The
  // factor s = p^{max scale} follows the stated bound and only enlarges the
  // modulus; conversely a Z_p solution reduces mod p^e.
  long maxscale = 0;
  for (const auto& b : blocks) maxscale = std::max<long>(maxscale, b.scale);
  Int s = 1;
  for (long i = 0; i < maxscale; ++i) s *= p;
  long e = 2 * valuation(4 * N * s, p) + 1;
  Int pe_int = 1;
  for (long i = 0; i < e; ++i) pe_int *= p;
  if (pe_int > kSearchCap) throw std::runtime_error("p-adic search modulus too large");
  unsigned long pe = pe_int.get_ui();
  unsigned long tgt = reduce_mod(N, pe);

  std::vector<std::vector<bool>> vals;
  for (const auto& b : blocks) vals.push_back(block_values(b, p, pe));

  // suffix reachability over Z/p^e
  size_t nb = blocks.size();
  std::vector<std::vector<bool>> reach(nb + 1, std::vector<bool>(pe, false));
  reach[nb][0] = true;
  for (size_t i = nb; i-- > 0;) {
    for (unsigned long v = 0; v < pe; ++v) {
      if (!vals[i][v]) continue;
      for (unsigned long r = 0; r < pe; ++r)
        if (reach[i + 1][r]) reach[i][(v + r) % pe] = true;
    }
  }
  RepresentationResult out;
  out.exponent = static_cast<unsigned>(e);
  if (!reach[0][tgt]) return out;
  out.representable = true;

  // lexicographically least witness: one coordinate per diagonal block, a
  // pair per binary block
  IVec witness;
  unsigned long need = tgt;
  for (size_t i = 0; i < nb; ++i) {
    const LocalBlock& b = blocks[i];
    Int pk = 1;
    for (unsigned t = 0; t < b.scale; ++t) pk *= p;
    unsigned long coef2 = reduce_mod(2 * pk, pe);
    bool found = false;
    if (b.kind == LocalBlock::kDiag) {
      unsigned long coef = reduce_mod(b.unit * pk, pe);
      for (unsigned long x = 0; x < pe && !found; ++x) {
        unsigned long v = (x * x) % pe * coef % pe;
        unsigned long rest = (need + pe - v) % pe;
        if (reach[i + 1][rest]) {
          witness.push_back(Int(x));
          need = rest;
          found = true;
        }
      }
    } else {
      for (unsigned long x = 0; x < pe && !found; ++x)
        for (unsigned long y = 0; y < pe && !found; ++y) {
          unsigned long m = b.kind == LocalBlock::kU
                                ? (x * y) % pe
                                : ((x * x) % pe + (x * y) % pe + (y * y) % pe) % pe;
          unsigned long v = m * coef2 % pe;
          unsigned long rest = (need + pe - v) % pe;
          if (reach[i + 1][rest]) {
            witness.push_back(Int(x));
            witness.push_back(Int(y));
            need = rest;
            found = true;
          }
        }
    }
    if (!found) throw std::logic_error("witness extraction failed");
  }
  out.witness = std::move(witness);
  return out;
}

}  // namespace

RepresentationResult padic_represents(const PadicLattice& k, const Int& N) {
  if (N <= 0) throw std::invalid_argument("padic_represents expects N >= 1");
  if (k.blocks.empty()) return RepresentationResult{};
  return decide(k.blocks, k.p, N);
}

RepresentationResult represents_padically(const IntLattice& L, const Int& N, const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  if (!L.is_positive_definite())
    throw std::invalid_argument("p-adic representation test implemented for definite forms only");
  if (N <= 0) return RepresentationResult{};
  if (L.rank() == 0) return RepresentationResult{};
  // The Jordan symbol data pins the lattice up to Z_p-isometry (units mod 8
  // at p = 2, per-scale determinant classes at odd p), so the block
  // presentation below has the same value sets.
  JordanDecomposition jd = jordan_decompose(L, p);
  std::vector<LocalBlock> blocks;
  if (p == 2) {
    for (const auto& c : jd.constituents) {
      for (int u : c.units_mod8) blocks.push_back({c.scale, LocalBlock::kDiag, Int(u)});
      for (unsigned i = 0; i < c.n_U; ++i) blocks.push_back({c.scale, LocalBlock::kU, Int(1)});
      for (unsigned i = 0; i < c.n_V; ++i) blocks.push_back({c.scale, LocalBlock::kV, Int(1)});
    }
  } else {
    for (const auto& c : jd.constituents) {
      for (unsigned i = 0; i + 1 < c.rank; ++i)
        blocks.push_back({c.scale, LocalBlock::kDiag, Int(1)});
      blocks.push_back(
          {c.scale, LocalBlock::kDiag, c.det_class == 1 ? Int(1) : smallest_nonresidue(p)});
    }
  }
  return decide(blocks, p, N);
}

}  // namespace cubiclat
