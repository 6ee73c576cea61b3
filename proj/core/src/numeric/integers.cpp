#include "adelic/numeric/integers.hpp"

#include "adelic/errors.hpp"

namespace adelic {

namespace {

// Brent's variant of Pollard rho; returns 0 on failure.
mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1; c < 20; ++c) {
    mpz_class x = 2, y = 2, d = 1, q = 1, ys;
    auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
    unsigned long r = 1;
    const unsigned long m = 128;
    unsigned long steps = 0;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          mpz_class diff = x - y;
          if (diff < 0) diff = -diff;
          q = (q * diff) % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
        steps += m;
      } while (k < r && d == 1);
      r *= 2;
    } while (d == 1 && steps < 2000000);
    if (d == n) {
      do {
        ys = f(ys);
        mpz_class diff = x - ys;
        if (diff < 0) diff = -diff;
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (d == 1);
    }
    if (d != 1 && d != n) return d;
  }
  return 0;
}

void factor_rec(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_rho(n);
  if (d == 0) {
    ++out[n];
    return;
  }
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

bool is_probable_prime(const mpz_class& n) {
  return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

std::map<mpz_class, unsigned> factor_integer(const mpz_class& value) {
  if (value == 0) throw InvalidArgument("cannot factor 0");
  std::map<mpz_class, unsigned> out;
  mpz_class n = abs(value);
  for (unsigned long p = 2; p < 10000 && n > 1; p += (p == 2 ? 1 : 2)) {
    if (static_cast<unsigned long>(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      ++out[mpz_class(p)];
      n /= p;
    }
  }
  factor_rec(n, out);
  return out;
}

std::vector<unsigned long> primes_up_to(unsigned long bound) {
  std::vector<unsigned long> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  for (unsigned long i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

long valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw InvalidArgument("valuation of 0");
  mpz_class m = n;
  long v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

long valuation(const mpq_class& q, const mpz_class& p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

mpq_class parse_rational(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ' && c != '\t' && c != '\n') text.push_back(c);
  }
  auto fail = [&]() -> mpq_class { throw ParseError("not a rational number: '" + raw + "'"); };
  if (text.empty()) return fail();
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      mpz_class num(text.substr(0, slash)), den(text.substr(slash + 1));
      if (den == 0) return fail();
      mpq_class q(num, den);
      q.canonicalize();
      return q;
    }
    // Decimal with optional exponent.
    std::size_t epos = text.find_first_of("eE");
    std::string mant = text.substr(0, epos);
    long exponent = 0;
    if (epos != std::string::npos) exponent = std::stol(text.substr(epos + 1));
    bool neg = false;
    if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
      neg = mant[0] == '-';
      mant = mant.substr(1);
    }
    auto dot = mant.find('.');
    std::string digits = mant;
    if (dot != std::string::npos) {
      digits = mant.substr(0, dot) + mant.substr(dot + 1);
      exponent -= static_cast<long>(mant.size() - dot - 1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) return fail();
    mpq_class q{mpz_class(digits)};
    mpz_class ten_pow;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) {
      q *= ten_pow;
    } else {
      q /= ten_pow;
    }
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
  } catch (const std::invalid_argument&) {
    return fail();
  } catch (const std::out_of_range&) {
    return fail();
  }
}

mpz_class binomial(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class factorial(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace adelic
