#include "cubiclat/numth.hpp"

#include <algorithm>
#include <map>

namespace cubiclat {

bool is_prime(const Int& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative value");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Int floor_c_plus_sqrt(const Rat& c, const Rat& r) {
  if (r < 0) throw std::invalid_argument("negative radicand");
  // initial guess from floor(c) + floor(sqrt(num*den))/den, then fix exactly
  Int num = r.get_num(), den = r.get_den();
  Int s = isqrt_floor(num * den);  // s <= sqrt(num*den) < s+1
  Rat guess = c + Rat(s, den);
  Int m;
  mpz_fdiv_q(m.get_mpz_t(), guess.get_num().get_mpz_t(), guess.get_den().get_mpz_t());
  auto ok = [&](const Int& x) {
    Rat d = Rat(x) - c;
    if (d <= 0) return true;
    return d * d <= r;
  };
  while (ok(m + 1)) ++m;
  while (!ok(m)) --m;
  return m;
}

Int ceil_c_minus_sqrt(const Rat& c, const Rat& r) {
  return -floor_c_plus_sqrt(-c, r);
}

long valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Int a = abs(n);
  long v = 0;
  Int q, rem;
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (rem != 0) break;
    a = q;
    ++v;
  }
  return v;
}

long valuation(const Rat& r, const Int& p) {
  return valuation(r.get_num(), p) - valuation(r.get_den(), p);
}

Int unit_part(const Int& n, const Int& p) {
  Int a = n;
  Int q, rem;
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (rem != 0) break;
    a = q;
  }
  return a;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::invalid_argument("not invertible mod m");
  return r;
}

int odd_unit_mod8(const Int& u) {
  Int w = unit_part(u, 2);
  Int m = w % 8;
  if (m < 0) m += 8;
  return static_cast<int>(m.get_si());
}

int odd_unit_mod8(const Rat& u) {
  Int n = u.get_num(), d = u.get_den();
  int nn = odd_unit_mod8(n);
  int dd = odd_unit_mod8(d);
  static const int inv8[8] = {0, 1, 0, 3, 0, 5, 0, 7};
  return (nn * inv8[dd]) % 8;
}

int legendre(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

int legendre_unit(const Rat& u, const Int& p) {
  int n = legendre(unit_part(u.get_num(), p), p);
  int d = legendre(unit_part(u.get_den(), p), p);
  return n * d;
}

namespace {

// (a,b)_p for integers with the p-parts stripped off into alpha, beta.
int hilbert_int(Int a, Int b, const Int& p) {
  long alpha = valuation(a, p), beta = valuation(b, p);
  Int u = unit_part(a, p), v = unit_part(b, p);
  if (p == 2) {
    auto eps = [](const Int& x) { return ((x - 1) / 2) % 2 != 0; };
    auto omega = [](const Int& x) { return ((x * x - 1) / 8) % 2 != 0; };
    bool e = (eps(u) && eps(v)) ^ ((alpha % 2 != 0) && omega(v)) ^ ((beta % 2 != 0) && omega(u));
    return e ? -1 : 1;
  }
  int r = 1;
  if ((alpha % 2 != 0) && (beta % 2 != 0) && legendre(Int(-1), p) == -1) r = -r;
  if (beta % 2 != 0) r *= legendre(u, p);
  if (alpha % 2 != 0) r *= legendre(v, p);
  return r;
}

}  // namespace

int hilbert(const Rat& a, const Rat& b, const Int& p) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  if (!is_prime(p)) throw std::invalid_argument("hilbert: p must be prime");
  // (a t^2, b)_p = (a, b)_p, so clear denominators by squares.
  Int ai = a.get_num() * a.get_den();
  Int bi = b.get_num() * b.get_den();
  return hilbert_int(ai, bi, p);
}

int hilbert_infinity(const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) throw std::invalid_argument("hilbert symbol of zero");
  return (a < 0 && b < 0) ? -1 : 1;
}

Int smallest_nonresidue(const Int& p) {
  for (Int a = 2;; ++a)
    if (legendre(a, p) == -1) return a;
}

std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
  if (n <= 0) throw std::invalid_argument("factorize expects n > 0");
  std::map<Int, unsigned> acc;
  Int m = n;
  for (Int d = 2; d * d <= m && d < 2000000; d == 2 ? d = 3 : d += 2) {
    while (m % d == 0) {
      ++acc[d];
      m /= d;
    }
  }
  // Pollard rho for any remaining composite part.
  std::vector<Int> stack;
  if (m > 1) stack.push_back(m);
  while (!stack.empty()) {
    Int x = stack.back();
    stack.pop_back();
    if (is_prime(x)) {
      ++acc[x];
      continue;
    }
    Int c = 1;
    while (true) {
      Int y = 2, z = 2, d = 1;
      while (d == 1) {
        y = (y * y + c) % x;
        z = (z * z + c) % x;
        z = (z * z + c) % x;
        Int diff = y - z;
        if (diff < 0) diff = -diff;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), x.get_mpz_t());
      }
      if (d != x) {
        stack.push_back(d);
        stack.push_back(x / d);
        break;
      }
      ++c;
    }
  }
  return {acc.begin(), acc.end()};
}

Rat normalize_mod2(const Rat& x) {
  Rat half = x / 2;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
  Rat r = x - 2 * Rat(fl);
  r.canonicalize();
  return r;
}

Rat normalize_mod1(const Rat& x) {
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  Rat r = x - Rat(fl);
  r.canonicalize();
  return r;
}

std::vector<Int> sqrt_mod_pk(const Int& a, const Int& p, unsigned k) {
  Int pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  Int a0 = a % pk;
  if (a0 < 0) a0 += pk;
  if (legendre(a0, p) != 1) return {};
  // Tonelli-Shanks mod p.
  Int t = 0;
  for (Int x = 0; x < p; ++x)
    if ((x * x - a0) % p == 0) {
      t = x;
      break;
    }
  // Hensel lift: t -> t + correction, doubling precision would be nicer but k is tiny.
  Int pe = p;
  for (unsigned i = 1; i < k; ++i) {
    pe *= p;
    Int f = (t * t - a0) % pe;
    if (f < 0) f += pe;
    Int inv = mod_inverse(2 * t % pe, pe);
    t = (t - f * inv) % pe;
    if (t < 0) t += pe;
  }
  return {t, (pk - t) % pk};
}

std::vector<Int> sqrt_mod_2k(const Int& a, unsigned k) {
  Int m = Int(1) << k;
  Int a0 = a % m;
  if (a0 < 0) a0 += m;
  std::vector<Int> out;
  for (Int t = 0; t < m; ++t)
    if ((t * t - a0) % m == 0) out.push_back(t);
  return out;
}

}  // namespace cubiclat
