#include "adelic/field/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "adelic/errors.hpp"

namespace adelic {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

}  // namespace

ZPoly parse_zpoly(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw ParseError("empty polynomial");
  ZPoly out;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw ParseError("polynomial '" + text + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected + or -");
    }
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits.push_back(s[i++]);
    bool has_x = false;
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) fail("dangling *");
      ++i;
      if (i >= s.size() || s[i] != 'x') fail("expected x after *");
    }
    unsigned long power = 0;
    if (i < s.size() && s[i] == 'x') {
      has_x = true;
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e.push_back(s[i++]);
        if (e.empty()) fail("missing exponent");
        power = std::stoul(e);
        if (power > 64) fail("exponent too large");
      }
    }
    if (digits.empty() && !has_x) fail("empty term");
    mpz_class c = digits.empty() ? mpz_class(1) : mpz_class(digits);
    if (out.size() <= power) out.resize(power + 1, 0);
    out[power] += sign * c;
  }
  trim(out);
  return out;
}

std::string zpoly_to_string(const ZPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (int i = degree(f); i >= 0; --i) {
    const mpz_class& c = f[i];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (i == 0 || a != 1) os << a.get_str();
    if (i > 0 && a != 1) os << "*";
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

int degree(const ZPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

int degree(const QPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

int degree(const FpPoly& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    if (f[i] != 0) return i;
  }
  return -1;
}

void trim(ZPoly& f) { f.resize(degree(f) + 1); }
void trim(QPoly& f) { f.resize(degree(f) + 1); }
void trim(FpPoly& f) { f.resize(degree(f) + 1); }

ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

ZPoly zpoly_rem_monic(const ZPoly& a, const ZPoly& g) {
  int dg = degree(g);
  ZPoly r = a;
  trim(r);
  for (int i = degree(r); i >= dg; --i) {
    mpz_class c = r[i];
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] -= c * g[j];
  }
  trim(r);
  return r;
}

bool zpoly_divides(const ZPoly& b, const ZPoly& a, ZPoly* quotient) {
  int db = degree(b);
  if (db < 0) throw InvalidArgument("division by the zero polynomial");
  ZPoly r = a;
  trim(r);
  int da = degree(r);
  ZPoly q(da >= db ? da - db + 1 : 0, 0);
  for (int i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    if (!mpz_divisible_p(r[i].get_mpz_t(), b[db].get_mpz_t())) return false;
    mpz_class c = r[i] / b[db];
    q[i - db] = c;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
  }
  if (degree(r) >= 0) return false;
  trim(q);
  if (quotient) *quotient = q;
  return true;
}

ZPoly zpoly_mod(const ZPoly& a, const mpz_class& m) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(r[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  }
  trim(r);
  return r;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

QPoly qpoly_rem_monic(const QPoly& a, const ZPoly& g) {
  int dg = degree(g);
  QPoly r = a;
  trim(r);
  for (int i = degree(r); i >= dg; --i) {
    mpq_class c = r[i];
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] -= c * mpq_class(g[j]);
  }
  trim(r);
  return r;
}

// ---------------------------------------------------------------- F_p

u64 Fp::add(u64 a, u64 b) const {
  u64 s = a + b;
  return (s >= p_ || s < a) ? s - p_ : s;
}

u64 Fp::sub(u64 a, u64 b) const { return a >= b ? a - b : a + (p_ - b); }

u64 Fp::mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) * b) % p_); }

u64 Fp::inv(u64 a) const {
  if (a % p_ == 0) throw InvalidArgument("inverse of 0 mod p");
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, nt = 1, r = p_, nr = a % p_;
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<u64>(t);
}

u64 Fp::reduce(const mpz_class& a) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p_);
  return r.get_ui();
}

FpPoly Fp::from_z(const ZPoly& f) const {
  FpPoly r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = reduce(f[i]);
  trim(r);
  return r;
}

FpPoly Fp::add(const FpPoly& a, const FpPoly& b) const {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

FpPoly Fp::sub(const FpPoly& a, const FpPoly& b) const {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  }
  trim(r);
  return r;
}

FpPoly Fp::mul(const FpPoly& a, const FpPoly& b) const {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

FpPoly Fp::scale(const FpPoly& a, u64 c) const {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mul(a[i], c);
  trim(r);
  return r;
}

void Fp::divmod(const FpPoly& a, const FpPoly& b, FpPoly* q, FpPoly* r) const {
  int db = degree(b);
  if (db < 0) throw InvalidArgument("division by the zero polynomial mod p");
  FpPoly rem = a;
  trim(rem);
  int da = degree(rem);
  FpPoly quo(da >= db ? da - db + 1 : 0, 0);
  u64 lead_inv = inv(b[db]);
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    u64 c = mul(rem[i], lead_inv);
    quo[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] = sub(rem[i - db + j], mul(c, b[j]));
  }
  trim(rem);
  trim(quo);
  if (q) *q = quo;
  if (r) *r = rem;
}

FpPoly Fp::rem(const FpPoly& a, const FpPoly& b) const {
  FpPoly r;
  divmod(a, b, nullptr, &r);
  return r;
}

FpPoly Fp::monic(const FpPoly& a) const {
  int d = degree(a);
  if (d < 0) return {};
  return scale(a, inv(a[d]));
}

FpPoly Fp::gcd(FpPoly a, FpPoly b) const {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FpPoly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

FpPoly Fp::ext_gcd(const FpPoly& a, const FpPoly& b, FpPoly* s, FpPoly* t) const {
  FpPoly r0 = a, r1 = b, s0 = {1}, s1 = {}, t0 = {}, t1 = {1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    FpPoly q, r;
    divmod(r0, r1, &q, &r);
    FpPoly s2 = sub(s0, mul(q, s1));
    FpPoly t2 = sub(t0, mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  int d = degree(r0);
  if (d < 0) throw InvalidArgument("gcd of two zero polynomials");
  u64 c = inv(r0[d]);
  if (s) *s = scale(s0, c);
  if (t) *t = scale(t0, c);
  return scale(r0, c);
}

FpPoly Fp::derivative(const FpPoly& a) const {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mul(a[i], i % p_);
  trim(r);
  return r;
}

FpPoly Fp::powmod(const FpPoly& base, const mpz_class& e, const FpPoly& mod) const {
  FpPoly result = {1};
  result = rem(result, mod);
  FpPoly b = rem(base, mod);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result), mod);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = rem(mul(result, b), mod);
  }
  return result;
}

bool Fp::is_squarefree(const FpPoly& f) const {
  FpPoly d = derivative(f);
  if (d.empty()) return degree(f) <= 0;
  return degree(gcd(f, d)) == 0;
}

std::vector<FpPoly> Fp::equal_degree(const FpPoly& f, int d) const {
  int n = degree(f);
  if (n == d) return {f};
  std::mt19937_64 rng(0x5eed ^ p_ ^ (static_cast<u64>(n) << 32));
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p_, d);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    FpPoly a(n);
    for (int i = 0; i < n; ++i) a[i] = rng() % p_;
    trim(a);
    if (degree(a) < 1) continue;
    FpPoly b;
    if (p_ == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      FpPoly term = a;
      b = a;
      for (int i = 1; i < d; ++i) {
        term = rem(mul(term, term), f);
        b = add(b, term);
      }
    } else {
      b = sub(powmod(a, (pd - 1) / 2, f), FpPoly{1});
    }
    FpPoly g = gcd(f, b);
    int dg = degree(g);
    if (dg > 0 && dg < n) {
      FpPoly q;
      divmod(f, g, &q, nullptr);
      auto left = equal_degree(g, d);
      auto right = equal_degree(monic(q), d);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
  throw PrecisionExhausted("equal-degree splitting did not converge");
}

std::vector<FpPoly> Fp::factor_squarefree(const FpPoly& input) const {
  FpPoly f = monic(input);
  std::vector<FpPoly> out;
  FpPoly x = {0, 1};
  FpPoly h = rem(x, f);
  for (int d = 1; degree(f) >= 2 * d; ++d) {
    h = powmod(h, mpz_class(static_cast<unsigned long>(p_)), f);
    FpPoly g = gcd(f, sub(h, x));
    if (degree(g) > 0) {
      auto parts = equal_degree(g, d);
      out.insert(out.end(), parts.begin(), parts.end());
      FpPoly q;
      divmod(f, g, &q, nullptr);
      f = monic(q);
      h = rem(h, f);
    }
  }
  if (degree(f) > 0) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (degree(a) != degree(b)) return degree(a) < degree(b);
    for (int i = degree(a); i >= 0; --i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });
  return out;
}

ZPoly hensel_lift(const ZPoly& f, const FpPoly& g_mod_p, u64 p, long k) {
  Fp F(p);
  FpPoly fbar = F.from_z(f);
  FpPoly g = F.monic(g_mod_p);
  FpPoly h, r;
  F.divmod(fbar, g, &h, &r);
  if (!r.empty()) throw InvalidArgument("hensel_lift: g does not divide f mod p");
  FpPoly s, t;
  FpPoly one = F.ext_gcd(g, h, &s, &t);
  if (degree(one) != 0) throw RamifiedOrNonMonogenic("hensel_lift: factors not coprime mod p");
  auto to_z = [](const FpPoly& a) {
    ZPoly z(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) z[i] = mpz_class(static_cast<unsigned long>(a[i]));
    return z;
  };
  ZPoly G = to_z(g), H = to_z(h);
  mpz_class pk = p;
  for (long step = 1; step < k; ++step) {
    ZPoly gh = zpoly_mul(G, H);
    ZPoly diff(std::max(f.size(), gh.size()), 0);
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = (i < f.size() ? f[i] : 0) - (i < gh.size() ? gh[i] : 0);
    }
    ZPoly e_z(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) e_z[i] = diff[i] / pk;  // exact
    FpPoly e = F.from_z(e_z);
    FpPoly dg = F.rem(F.mul(t, e), g);
    FpPoly dh, rr;
    F.divmod(F.sub(e, F.mul(h, dg)), g, &dh, &rr);
    ZPoly DG = to_z(dg), DH = to_z(dh);
    if (G.size() < DG.size()) G.resize(DG.size(), 0);
    if (H.size() < DH.size()) H.resize(DH.size(), 0);
    for (std::size_t i = 0; i < DG.size(); ++i) G[i] += pk * DG[i];
    for (std::size_t i = 0; i < DH.size(); ++i) H[i] += pk * DH[i];
    pk *= p;
    G = zpoly_mod(G, pk);
    H = zpoly_mod(H, pk);
  }
  return G;
}

}  // namespace adelic
