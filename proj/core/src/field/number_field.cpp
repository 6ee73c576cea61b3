#include "adelic/field/number_field.hpp"

#include <algorithm>
#include <complex>
#include <map>
#include <mutex>
#include <sstream>

#include "adelic/errors.hpp"
#include "adelic/field/padic.hpp"
#include "adelic/numeric/integers.hpp"
#include "adelic/numeric/linalg.hpp"

namespace adelic {

void PrecisionContext::validate() const {
  if (arch_bits < 64) throw InvalidArgument("arch_bits must be at least 64");
  if (padic_digits < 1) throw InvalidArgument("padic_digits must be at least 1");
}

LogLinear AbsValue::log() const {
  if (is_zero) throw InvalidArgument("log of |0|_v");
  if (exact) return LogLinear::log_of(p) * exponent;
  return LogLinear::from_interval(adelic::log(value));
}

namespace {

struct RootSet {
  std::vector<ComplexInterval> all;  // real roots, upper roots, lower roots
  int r1 = 0;
  int r2 = 0;
};

using CLD = std::complex<long double>;

std::vector<CLD> aberth(const ZPoly& f) {
  int d = degree(f);
  std::vector<long double> a(d + 1);
  long double bound = 0;
  for (int i = 0; i <= d; ++i) {
    a[i] = static_cast<long double>(mpz_get_d(f[i].get_mpz_t()));
    if (i < d) bound = std::max(bound, std::fabs(a[i]));
  }
  long double radius = 1 + bound;
  std::vector<CLD> z(d);
  const long double two_pi = 6.283185307179586476925286766559L;
  for (int k = 0; k < d; ++k) z[k] = std::polar(radius * 0.9L, two_pi * k / d + 0.4L);
  for (int iter = 0; iter < 2000; ++iter) {
    long double worst = 0;
    for (int k = 0; k < d; ++k) {
      CLD p = 0, dp = 0;
      for (int i = d; i >= 0; --i) {
        dp = dp * z[k] + p;
        p = p * z[k] + a[i];
      }
      if (std::abs(dp) == 0) dp = 1e-30L;
      CLD ratio = p / dp;
      CLD s = 0;
      for (int j = 0; j < d; ++j) {
        if (j != k) s += 1.0L / (z[k] - z[j]);
      }
      CLD w = ratio / (1.0L - ratio * s);
      z[k] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (worst < 1e-18L) break;
  }
  return z;
}

ComplexInterval mid(const ComplexInterval& z) { return {z.re.mid(), z.im.mid()}; }

void horner(const ZPoly& f, const ComplexInterval& z, ComplexInterval* val, ComplexInterval* dval) {
  mpfr_prec_t p = z.prec();
  ComplexInterval v(p), dv(p);
  for (int i = degree(f); i >= 0; --i) {
    dv = dv * z + v;
    v = v * z + ComplexInterval(Interval(f[i], p));
  }
  *val = v;
  *dval = dv;
}

Interval symmetric(const Interval& r) {
  Interval h = Interval::hull(-r, r);
  return Interval::hull(h, -h);
}

struct Disc {
  ComplexInterval center;  // point
  Interval radius;         // use the upper end
  bool real = false;
};

// Certified enclosures of all roots of the squarefree polynomial f at the
// given precision, or PrecisionExhausted.
RootSet certify_roots(const ZPoly& f, mpfr_prec_t prec) {
  int d = degree(f);
  RootSet rs;
  if (d == 1) {
    rs.all.push_back(ComplexInterval(Interval(mpz_class(-f[0]), prec), Interval::zero(prec)));
    rs.r1 = 1;
    return rs;
  }
  std::vector<CLD> approx = aberth(f);
  mpfr_prec_t wp = prec + 32;
  std::vector<Disc> discs;
  for (const CLD& a : approx) {
    ComplexInterval z(Interval::from_double(static_cast<double>(a.real()), wp),
                      Interval::from_double(static_cast<double>(a.imag()), wp));
    for (int iter = 0; iter < 200; ++iter) {
      ComplexInterval v, dv;
      horner(f, z, &v, &dv);
      if (dv.contains_zero()) break;
      ComplexInterval step = mid(v / dv);
      z = mid(z - step);
      Interval size = step.abs();
      Interval scale = max(Interval(1L, wp), z.abs());
      if (size.hi_d() == 0.0 || certainly_less(size, scale * pow(Interval(2L, wp), -(long)(prec + 16)))) {
        break;
      }
    }
    ComplexInterval v, dv;
    horner(f, z, &v, &dv);
    if (dv.contains_zero()) throw PrecisionExhausted("derivative vanishes near a root");
    Interval r = Interval(static_cast<long>(d), wp) * v.abs() / dv.abs();
    Disc disc{z, Interval::hull(Interval::zero(wp), r)};
    // A disc meeting the real axis is recentred on it so it becomes
    // conjugation-invariant; being isolated it then holds a real root.
    Interval abs_im = abs(z.im);
    if (certainly_leq(abs_im, Interval(0L, wp)) || !certainly_less(disc.radius, abs_im)) {
      disc.radius = disc.radius + abs_im;
      disc.center = ComplexInterval(z.re, Interval::zero(wp));
      disc.real = true;
    }
    discs.push_back(disc);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Interval dist = (discs[i].center - discs[j].center).abs();
      Interval rr = discs[i].radius + discs[j].radius;
      if (!certainly_less(rr, dist)) throw PrecisionExhausted("root discs overlap");
    }
  }
  auto box = [&](const Disc& disc) {
    Interval pm = symmetric(Interval::hull(disc.radius, disc.radius));
    if (disc.real) return ComplexInterval(disc.center.re + pm, Interval::zero(wp));
    return ComplexInterval(disc.center.re + pm, disc.center.im + pm);
  };
  std::vector<const Disc*> reals, upper;
  int lower = 0;
  for (const Disc& disc : discs) {
    if (disc.real) {
      reals.push_back(&disc);
    } else if (disc.center.im.is_positive()) {
      upper.push_back(&disc);
    } else {
      ++lower;
    }
  }
  if (static_cast<int>(upper.size()) != lower) throw PrecisionExhausted("conjugate pairing failed");
  auto less_center = [](const Disc* a, const Disc* b) {
    int c = mpfr_cmp(a->center.re.lo(), b->center.re.lo());
    if (c != 0) return c < 0;
    return mpfr_cmp(a->center.im.lo(), b->center.im.lo()) < 0;
  };
  std::sort(reals.begin(), reals.end(), less_center);
  std::sort(upper.begin(), upper.end(), less_center);
  for (const Disc* r : reals) rs.all.push_back(box(*r).re.with_prec(prec));
  for (const Disc* u : upper) {
    ComplexInterval b = box(*u);
    rs.all.push_back({b.re.with_prec(prec), b.im.with_prec(prec)});
  }
  for (const Disc* u : upper) {
    ComplexInterval b = box(*u).conj();
    rs.all.push_back({b.re.with_prec(prec), b.im.with_prec(prec)});
  }
  rs.r1 = static_cast<int>(reals.size());
  rs.r2 = static_cast<int>(upper.size());
  for (std::size_t i = 0; i < static_cast<std::size_t>(rs.r1); ++i) {
    rs.all[i].im = Interval::zero(prec);
  }
  return rs;
}

// 0 irreducible, 1 reducible, -1 undecided at this precision.
int irreducibility_status(const ZPoly& f, const RootSet& rs) {
  int d = degree(f);
  if (d <= 1) return 0;
  bool undecided = false;
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    int k = __builtin_popcount(mask);
    if (k > d / 2) continue;
    mpfr_prec_t p = rs.all[0].prec();
    std::vector<ComplexInterval> coeffs{ComplexInterval(Interval(1L, p))};
    for (int i = 0; i < d; ++i) {
      if (!(mask & (1u << i))) continue;
      std::vector<ComplexInterval> next(coeffs.size() + 1, ComplexInterval(p));
      for (std::size_t j = 0; j < coeffs.size(); ++j) {
        next[j + 1] += coeffs[j];
        next[j] -= coeffs[j] * rs.all[i];
      }
      coeffs = std::move(next);
    }
    bool possible = true, pinned = true;
    ZPoly candidate(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size() && possible; ++j) {
      if (!coeffs[j].im.contains_zero()) {
        possible = false;
        break;
      }
      const Interval& t = coeffs[j].re;
      mpz_class c_lo, c_hi;
      mpfr_t tmp;
      mpfr_init2(tmp, t.prec());
      mpfr_ceil(tmp, t.lo());
      mpfr_get_z(c_lo.get_mpz_t(), tmp, MPFR_RNDN);
      mpfr_floor(tmp, t.hi());
      mpfr_get_z(c_hi.get_mpz_t(), tmp, MPFR_RNDN);
      mpfr_clear(tmp);
      if (c_lo > c_hi) {
        possible = false;
      } else if (c_lo != c_hi) {
        pinned = false;
      } else {
        candidate[j] = c_lo;
      }
    }
    if (!possible) continue;
    if (!pinned) {
      undecided = true;
      continue;
    }
    if (zpoly_divides(candidate, f, nullptr)) return 1;
    undecided = true;
  }
  return undecided ? -1 : 0;
}

mpz_class pow_z(const mpz_class& p, long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

}  // namespace

struct NumberField::Impl {
  ZPoly f;
  int d = 0;
  int r1 = 0;
  int r2 = 0;
  mutable std::mutex mu;
  mutable std::map<mpfr_prec_t, RootSet> cache;

  const RootSet& roots(mpfr_prec_t prec) const {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.lower_bound(prec);
    if (it != cache.end()) return it->second;
    for (mpfr_prec_t p = prec; p <= std::max<mpfr_prec_t>(8192, 4 * prec); p *= 2) {
      try {
        RootSet rs = certify_roots(f, p);
        return cache.emplace(prec, std::move(rs)).first->second;
      } catch (const PrecisionExhausted&) {
      }
    }
    throw PrecisionExhausted("could not certify the roots of " + zpoly_to_string(f));
  }
};

NumberField::NumberField(const ZPoly& poly) {
  auto impl = std::make_shared<Impl>();
  impl->f = poly;
  trim(impl->f);
  impl->d = adelic::degree(impl->f);
  if (impl->d < 1) throw InvalidArgument("defining polynomial must have degree >= 1");
  if (impl->d > kMaxDegree) throw InvalidArgument("defining polynomial degree exceeds 8");
  if (impl->f[impl->d] != 1) throw InvalidArgument("defining polynomial must be monic");
  // Distinct roots: the certified discs are disjoint.
  for (mpfr_prec_t p = 128;; p *= 2) {
    const RootSet& rs = impl->roots(p);
    int status = irreducibility_status(impl->f, rs);
    if (status == 1) throw ReducibleField(zpoly_to_string(impl->f) + " is reducible over Q");
    if (status == 0) {
      impl->r1 = rs.r1;
      impl->r2 = rs.r2;
      break;
    }
    if (p >= 8192) throw PrecisionExhausted("irreducibility of " + zpoly_to_string(impl->f) + " undecided");
  }
  impl_ = impl;
}

NumberField NumberField::parse(const std::string& text) { return NumberField(parse_zpoly(text)); }

NumberField NumberField::rationals() { return NumberField(ZPoly{0, 1}); }

int NumberField::degree() const { return impl_->d; }
const ZPoly& NumberField::poly() const { return impl_->f; }
std::string NumberField::poly_string() const { return zpoly_to_string(impl_->f); }

FieldElement NumberField::zero() const { return FieldElement{std::vector<mpq_class>(degree(), 0)}; }

FieldElement NumberField::one() const { return from_rational(1); }

FieldElement NumberField::from_rational(const mpq_class& q) const {
  FieldElement x = zero();
  x.coeffs[0] = q;
  return x;
}

FieldElement NumberField::generator() const {
  if (degree() == 1) return from_rational(mpq_class(-impl_->f[0]));
  FieldElement x = zero();
  x.coeffs[1] = 1;
  return x;
}

FieldElement NumberField::from_coeffs(std::vector<mpq_class> coeffs) const {
  if (static_cast<int>(coeffs.size()) > degree()) {
    throw DimensionMismatch("element has more coordinates than the field degree");
  }
  coeffs.resize(degree(), 0);
  return FieldElement{std::move(coeffs)};
}

FieldElement NumberField::parse_element(const std::string& text) const {
  std::string s = text;
  auto first = s.find_first_not_of(" \t\n");
  if (first == std::string::npos) throw ParseError("empty element literal");
  s = s.substr(first);
  if (s[0] != '[') return from_rational(parse_rational(s));
  auto close = s.find(']');
  if (close == std::string::npos) throw ParseError("unterminated element literal '" + text + "'");
  std::vector<mpq_class> coeffs;
  std::string body = s.substr(1, close - 1);
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) coeffs.push_back(parse_rational(item));
  if (coeffs.empty()) throw ParseError("empty element literal '" + text + "'");
  return from_coeffs(std::move(coeffs));
}

std::string NumberField::to_string(const FieldElement& x) const {
  if (degree() == 1) return x.coeffs[0].get_str();
  std::string out = "[";
  for (int i = 0; i < degree(); ++i) {
    if (i) out += ", ";
    out += x.coeffs[i].get_str();
  }
  return out + "]";
}

bool NumberField::is_zero(const FieldElement& x) const {
  return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](const mpq_class& c) { return c == 0; });
}

bool NumberField::equal(const FieldElement& a, const FieldElement& b) const { return a.coeffs == b.coeffs; }

bool NumberField::is_rational(const FieldElement& x) const {
  return std::all_of(x.coeffs.begin() + 1, x.coeffs.end(), [](const mpq_class& c) { return c == 0; });
}

mpq_class NumberField::rational_value(const FieldElement& x) const {
  if (!is_rational(x)) throw InvalidArgument("element is not rational");
  return x.coeffs[0];
}

FieldElement NumberField::add(const FieldElement& a, const FieldElement& b) const {
  FieldElement r = zero();
  for (int i = 0; i < degree(); ++i) r.coeffs[i] = a.coeffs[i] + b.coeffs[i];
  return r;
}

FieldElement NumberField::sub(const FieldElement& a, const FieldElement& b) const {
  FieldElement r = zero();
  for (int i = 0; i < degree(); ++i) r.coeffs[i] = a.coeffs[i] - b.coeffs[i];
  return r;
}

FieldElement NumberField::neg(const FieldElement& a) const {
  FieldElement r = zero();
  for (int i = 0; i < degree(); ++i) r.coeffs[i] = -a.coeffs[i];
  return r;
}

FieldElement NumberField::mul(const FieldElement& a, const FieldElement& b) const {
  if (degree() == 1) return from_rational(a.coeffs[0] * b.coeffs[0]);
  QPoly prod = qpoly_rem_monic(qpoly_mul(a.coeffs, b.coeffs), impl_->f);
  prod.resize(degree(), 0);
  return FieldElement{std::move(prod)};
}

std::vector<std::vector<mpq_class>> NumberField::multiplication_matrix(const FieldElement& x) const {
  int d = degree();
  QMatrix m(d, std::vector<mpq_class>(d, 0));
  FieldElement col = x;
  FieldElement theta = zero();
  if (d > 1) theta.coeffs[1] = 1;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m[i][j] = col.coeffs[i];
    if (j + 1 < d) col = mul(col, theta);
  }
  return m;
}

FieldElement NumberField::inv(const FieldElement& a) const {
  if (is_zero(a)) throw InvalidArgument("inverse of 0");
  if (degree() == 1) return from_rational(1 / a.coeffs[0]);
  auto la = qlinalg();
  QMatrix inv = la.inverse(multiplication_matrix(a));
  FieldElement r = zero();
  for (int i = 0; i < degree(); ++i) r.coeffs[i] = inv[i][0];
  return r;
}

FieldElement NumberField::div(const FieldElement& a, const FieldElement& b) const { return mul(a, inv(b)); }

FieldElement NumberField::pow(const FieldElement& a, long k) const {
  if (k < 0) return pow(inv(a), -k);
  FieldElement result = one();
  FieldElement base = a;
  while (k > 0) {
    if (k & 1) result = mul(result, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return result;
}

mpq_class NumberField::norm(const FieldElement& x) const {
  if (degree() == 1) return x.coeffs[0];
  return qlinalg().det(multiplication_matrix(x));
}

void NumberField::split_denominator(const FieldElement& x, ZPoly* numerator, mpz_class* d) const {
  mpz_class den = 1;
  for (const auto& c : x.coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  ZPoly a(degree());
  for (int i = 0; i < degree(); ++i) {
    mpq_class v = x.coeffs[i] * den;
    a[i] = v.get_num();
  }
  if (numerator) *numerator = a;
  if (d) *d = den;
}

std::vector<Place> NumberField::archimedean_places() const {
  std::vector<Place> out;
  for (int i = 0; i < impl_->r1 + impl_->r2; ++i) {
    Place v;
    v.kind = i < impl_->r1 ? PlaceKind::Real : PlaceKind::Complex;
    v.local_degree = i < impl_->r1 ? 1 : 2;
    v.index = i;
    v.label = "inf" + std::to_string(i);
    out.push_back(v);
  }
  return out;
}

ComplexInterval NumberField::root(const Place& v, mpfr_prec_t prec) const {
  if (!v.is_archimedean()) throw InvalidArgument("root enclosure requested at a finite place");
  const RootSet& rs = impl_->roots(prec + 32);
  if (v.index < 0 || v.index >= rs.r1 + rs.r2) throw InvalidArgument("no archimedean place " + v.label);
  return rs.all[v.index];
}

std::vector<ComplexInterval> NumberField::all_roots(mpfr_prec_t prec) const {
  return impl_->roots(prec + 32).all;
}

ComplexInterval NumberField::embed(const FieldElement& x, const Place& v, mpfr_prec_t prec) const {
  if (degree() == 1) {
    return ComplexInterval(Interval(x.coeffs[0], prec), Interval::zero(prec));
  }
  ComplexInterval z = root(v, prec);
  mpfr_prec_t wp = z.prec();
  ComplexInterval acc(wp);
  for (int i = degree() - 1; i >= 0; --i) acc = acc * z + ComplexInterval(Interval(x.coeffs[i], wp));
  if (v.kind == PlaceKind::Real) acc.im = Interval::zero(wp);
  return acc;
}

std::vector<Place> NumberField::places_above(const mpz_class& p) const {
  if (!is_probable_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
  if (mpz_sizeinbase(p.get_mpz_t(), 2) > 62) throw InvalidArgument("prime too large for place construction");
  Fp F(p.get_ui());
  FpPoly fbar = F.from_z(impl_->f);
  if (!F.is_squarefree(fbar)) {
    throw RamifiedOrNonMonogenic(zpoly_to_string(impl_->f) + " is not squarefree mod " + p.get_str());
  }
  std::vector<Place> out;
  auto factors = F.factor_squarefree(fbar);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    Place v;
    v.kind = PlaceKind::Finite;
    v.p = p;
    v.factor = factors[i];
    v.local_degree = adelic::degree(factors[i]);
    v.index = static_cast<int>(i);
    v.label = p.get_str() + ":" + std::to_string(i);
    out.push_back(v);
  }
  return out;
}

long NumberField::valuation(const FieldElement& x, const Place& v) const {
  if (v.is_archimedean()) throw InvalidArgument("valuation at an archimedean place");
  if (is_zero(x)) throw InvalidArgument("valuation of 0");
  ZPoly a;
  mpz_class den;
  split_denominator(x, &a, &den);
  long vd = adelic::valuation(den, v.p);
  if (degree() == 1) return adelic::valuation(a[0], v.p) - vd;
  mpq_class nrm = norm(from_coeffs(std::vector<mpq_class>(a.begin(), a.end())));
  mpz_class n_int = nrm.get_num();
  if (!mpz_divisible_p(n_int.get_mpz_t(), v.p.get_mpz_t())) return -vd;
  long big_n = adelic::valuation(n_int, v.p) + 1;
  ZPoly g = hensel_lift(impl_->f, v.factor, v.p.get_ui(), big_n);
  mpz_class modulus = pow_z(v.p, big_n);
  ZPoly r = zpoly_mod(zpoly_rem_monic(a, g), modulus);
  long best = big_n;
  for (const auto& c : r) {
    if (c != 0) best = std::min(best, adelic::valuation(c, v.p));
  }
  if (best >= big_n) throw PrecisionExhausted("valuation exceeds the norm bound");
  return best - vd;
}

std::set<mpz_class> NumberField::finite_support(const FieldElement& x) const {
  if (is_zero(x)) throw InvalidArgument("support of 0");
  ZPoly a;
  mpz_class den;
  split_denominator(x, &a, &den);
  std::set<mpz_class> out;
  for (const auto& [p, e] : factor_integer(den)) out.insert(p);
  mpq_class nrm = norm(from_coeffs(std::vector<mpq_class>(a.begin(), a.end())));
  for (const auto& [p, e] : factor_integer(nrm.get_num())) out.insert(p);
  return out;
}

PadicNumber NumberField::to_padic(const FieldElement& x, const Place& v, long digits) const {
  if (v.is_archimedean()) throw InvalidArgument("p-adic image requested at an archimedean place");
  if (v.local_degree != 1) {
    throw NonRationalCompletion("place " + v.label + " has local degree " + std::to_string(v.local_degree));
  }
  if (is_zero(x)) return PadicNumber(v.p, digits);
  ZPoly a;
  mpz_class den;
  split_denominator(x, &a, &den);
  long vd = adelic::valuation(den, v.p);
  long m = digits + vd;
  mpz_class modulus = pow_z(v.p, m);
  ZPoly g = hensel_lift(impl_->f, v.factor, v.p.get_ui(), m);
  mpz_class r = -g[0];
  mpz_class acc = 0;
  for (int i = degree() - 1; i >= 0; --i) {
    acc = acc * r + a[i];
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
  }
  PadicNumber num = PadicNumber::from_rational(mpq_class(acc), v.p, m);
  PadicNumber inv_den = PadicNumber::from_rational(mpq_class(1, den), v.p, m);
  return num * inv_den;
}

AbsValue NumberField::abs_value(const FieldElement& x, const Place& v, const PrecisionContext& ctx) const {
  ctx.validate();
  AbsValue out;
  if (is_zero(x)) {
    out.is_zero = true;
    out.exact = !v.is_archimedean();
    out.value = Interval::zero(ctx.arch_bits);
    return out;
  }
  if (v.is_archimedean()) {
    out.value = embed(x, v, ctx.arch_bits).abs();
    return out;
  }
  long val = valuation(x, v);
  out.exact = true;
  out.p = v.p;
  out.exponent = -val;
  mpq_class q = val >= 0 ? mpq_class(1, pow_z(v.p, val)) : mpq_class(pow_z(v.p, -val));
  out.value = Interval(q, ctx.arch_bits);
  return out;
}

std::vector<Place> NumberField::enumerate_places(unsigned long prime_bound) const {
  if (prime_bound < 2) throw InvalidArgument("prime_bound must be at least 2");
  std::vector<Place> out = archimedean_places();
  for (unsigned long p : primes_up_to(prime_bound)) {
    auto above = places_above(mpz_class(p));
    out.insert(out.end(), above.begin(), above.end());
  }
  return out;
}

std::vector<Place> NumberField::enumerate_places_lenient(unsigned long prime_bound,
                                                         std::vector<unsigned long>* skipped) const {
  if (prime_bound < 2) throw InvalidArgument("prime_bound must be at least 2");
  std::vector<Place> out = archimedean_places();
  for (unsigned long p : primes_up_to(prime_bound)) {
    try {
      auto above = places_above(mpz_class(p));
      out.insert(out.end(), above.begin(), above.end());
    } catch (const RamifiedOrNonMonogenic&) {
      if (skipped) skipped->push_back(p);
    }
  }
  return out;
}

Place NumberField::place(const std::string& label) const {
  if (label.rfind("inf", 0) == 0) {
    int idx = label.size() == 3 ? 0 : std::stoi(label.substr(3));
    auto arch = archimedean_places();
    if (idx < 0 || idx >= static_cast<int>(arch.size())) throw ParseError("no archimedean place " + label);
    return arch[idx];
  }
  auto colon = label.find(':');
  try {
    mpz_class p(label.substr(0, colon));
    int idx = colon == std::string::npos ? 0 : std::stoi(label.substr(colon + 1));
    auto above = places_above(p);
    if (idx < 0 || idx >= static_cast<int>(above.size())) throw ParseError("no place " + label);
    return above[idx];
  } catch (const std::invalid_argument&) {
    throw ParseError("bad place label '" + label + "'");
  }
}

}  // namespace adelic
