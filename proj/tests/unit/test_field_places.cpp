#include <gtest/gtest.h>

#include <random>

#include "adelic/errors.hpp"
#include "adelic/field/number_field.hpp"
#include "adelic/field/padic.hpp"
#include "adelic/numeric/integers.hpp"

using namespace adelic;

namespace {

// Roots of f mod p by trying every residue; the oracle for how x^2+1 splits.
int count_roots_mod(const ZPoly& f, long p) {
  int n = 0;
  for (long r = 0; r < p; ++r) {
    mpz_class acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * r + f[i]) % p;
    if (acc == 0) ++n;
  }
  return n;
}

// exp(z) for rational z summed exactly, then reduced mod p^N.
mpq_class exp_series_exact(const mpq_class& z, int terms) {
  mpq_class sum = 0, term = 1;
  for (int i = 0; i < terms; ++i) {
    sum += term;
    term *= z;
    term /= i + 1;
  }
  return sum;
}

}  // namespace

TEST(Places, RationalFieldBasics) {
  NumberField q = NumberField::rationals();
  auto places = q.enumerate_places(5);
  ASSERT_EQ(places.size(), 4u);
  EXPECT_EQ(places[0].kind, PlaceKind::Real);
  EXPECT_EQ(places[0].local_degree, 1);
  std::vector<long> primes;
  for (size_t i = 1; i < places.size(); ++i) {
    EXPECT_EQ(places[i].kind, PlaceKind::Finite);
    EXPECT_EQ(places[i].local_degree, 1);
    primes.push_back(places[i].p.get_si());
  }
  EXPECT_EQ(primes, (std::vector<long>{2, 3, 5}));
}

TEST(Places, GaussianSplitting) {
  NumberField k = NumberField::parse("x^2+1");
  auto arch = k.archimedean_places();
  ASSERT_EQ(arch.size(), 1u);
  EXPECT_EQ(arch[0].kind, PlaceKind::Complex);
  EXPECT_EQ(arch[0].local_degree, 2);

  auto at3 = k.places_above(3);
  ASSERT_EQ(at3.size(), 1u);
  EXPECT_EQ(at3[0].local_degree, 2);
  auto at5 = k.places_above(5);
  ASSERT_EQ(at5.size(), 2u);
  EXPECT_EQ(at5[0].local_degree + at5[1].local_degree, 2);
  EXPECT_THROW(k.places_above(2), RamifiedOrNonMonogenic);

  // Brute-force residue count agrees with the number of degree-1 places.
  for (long p : {3L, 5L, 7L, 13L, 17L, 19L, 29L}) {
    auto above = k.places_above(p);
    int linear = 0;
    for (auto& v : above) linear += v.local_degree == 1;
    EXPECT_EQ(linear, count_roots_mod(k.poly(), p)) << "p=" << p;
  }
}

TEST(Places, RealQuadratic) {
  NumberField k = NumberField::parse("x^2-2");
  auto arch = k.archimedean_places();
  ASSERT_EQ(arch.size(), 2u);
  for (auto& v : arch) {
    EXPECT_EQ(v.kind, PlaceKind::Real);
    EXPECT_EQ(v.local_degree, 1);
  }
  Interval r0 = k.root(arch[0], 128).re;
  EXPECT_NEAR(r0.mid_d(), -1.4142135623730951, 1e-15);
}

TEST(Places, LocalDegreesSumToDegree) {
  for (const char* f : {"x^2+1", "x^3-2", "x^4+1", "x^3-x-1", "x^2-x-1", "x^5-x-1"}) {
    NumberField k = NumberField::parse(f);
    std::vector<unsigned long> skipped;
    auto places = k.enumerate_places_lenient(60, &skipped);
    std::map<long, int> by_p;
    int arch = 0;
    for (auto& v : places) {
      if (v.is_archimedean()) arch += v.local_degree;
      else by_p[v.p.get_si()] += v.local_degree;
    }
    EXPECT_EQ(arch, k.degree()) << f;
    for (auto& [p, s] : by_p) EXPECT_EQ(s, k.degree()) << f << " p=" << p;
  }
}

TEST(Places, ReducibleRejected) {
  EXPECT_THROW(NumberField::parse("x^2-4"), ReducibleField);
  EXPECT_THROW(NumberField::parse("x^4+4"), ReducibleField);
}

TEST(AbsValue, Examples) {
  PrecisionContext ctx;
  NumberField q = NumberField::rationals();
  auto two = q.from_rational(2);
  AbsValue a2 = q.abs_value(two, q.places_above(2)[0], ctx);
  EXPECT_TRUE(a2.exact);
  EXPECT_EQ(a2.exponent, -1);
  EXPECT_TRUE(a2.value.contains(mpq_class(1, 2)));
  EXPECT_TRUE(a2.value.is_point());
  AbsValue ainf = q.abs_value(two, q.archimedean_places()[0], ctx);
  EXPECT_TRUE(ainf.value.contains(mpq_class(2)));

  NumberField k = NumberField::parse("x^2+1");
  auto x = k.parse_element("[2, 1]");
  auto above5 = k.places_above(5);
  std::vector<mpq_class> vals;
  for (auto& v : above5) vals.push_back(k.abs_value(x, v, ctx).exponent);
  std::sort(vals.begin(), vals.end());
  EXPECT_EQ(vals, (std::vector<mpq_class>{-1, 0}));
}

TEST(AbsValue, MultiplicativeAtFinitePlaces) {
  NumberField k = NumberField::parse("x^3-2");
  PrecisionContext ctx;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> c(-20, 20);
  std::vector<unsigned long> skipped;
  auto places = k.enumerate_places_lenient(30, &skipped);
  for (int trial = 0; trial < 30; ++trial) {
    FieldElement a = k.from_coeffs({c(rng), c(rng), c(rng)});
    FieldElement b = k.from_coeffs({c(rng), c(rng), c(rng) + 21});
    if (k.is_zero(a)) continue;
    FieldElement ab = k.mul(a, b);
    for (auto& v : places) {
      AbsValue va = k.abs_value(a, v, ctx), vb = k.abs_value(b, v, ctx), vab = k.abs_value(ab, v, ctx);
      if (v.is_archimedean()) {
        EXPECT_TRUE(vab.value.overlaps(va.value * vb.value));
      } else {
        EXPECT_EQ(vab.exponent, va.exponent + vb.exponent);
      }
    }
  }
}

TEST(AbsValue, NormMatchesFiniteValuations) {
  // |N(x)|_p = prod over v | p of |x|_v^{n_v}.
  NumberField k = NumberField::parse("x^3-x-1");
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> c(-15, 15);
  for (int trial = 0; trial < 20; ++trial) {
    FieldElement a = k.from_coeffs({c(rng), c(rng), c(rng)});
    if (k.is_zero(a)) continue;
    mpq_class n = k.norm(a);
    for (unsigned long p : {3ul, 5ul, 7ul, 11ul, 13ul}) {
      long total = 0;
      for (auto& v : k.places_above(p)) total += v.local_degree * k.valuation(a, v);
      EXPECT_EQ(total, valuation(n, mpz_class(p)));
    }
  }
}

TEST(Padic, ExpMatchesExactSeries) {
  for (long p : {3L, 5L, 7L}) {
    for (long zi : {p, 2 * p, p * p, -p}) {
      const long N = 12;
      PadicNumber z = PadicNumber::from_rational(zi, p, N);
      PadicNumber e = padic_exp(z);
      // v(z^i/i!) >= i(1 - 1/(p-1)) grows past N well before 200 terms.
      mpq_class oracle = exp_series_exact(zi, 200);
      EXPECT_TRUE(e.congruent(PadicNumber::from_rational(oracle, p, N))) << p << " " << zi;
    }
  }
}

TEST(Padic, DomainBoundary) {
  PadicNumber two = PadicNumber::from_rational(2, 2, 30);
  EXPECT_THROW(padic_exp(two), OutsideConvergenceDomain);
  EXPECT_NO_THROW(padic_exp(PadicNumber::from_rational(4, 2, 30)));
  EXPECT_THROW(padic_exp(PadicNumber::from_rational(1, 3, 30)), OutsideConvergenceDomain);
  EXPECT_NO_THROW(padic_exp(PadicNumber::from_rational(3, 3, 30)));
  // Rejected exactly when v(z) <= 1/(p-1).
  for (long p : {2L, 3L, 5L, 7L}) {
    for (long v = 0; v <= 4; ++v) {
      mpz_class pv;
      mpz_ui_pow_ui(pv.get_mpz_t(), p, v);
      PadicNumber z = PadicNumber::from_rational(mpq_class(pv), p, 30);
      bool inside = mpq_class(v) > mpq_class(1, p - 1);
      if (inside) EXPECT_NO_THROW(padic_exp(z)) << p << " " << v;
      else EXPECT_THROW(padic_exp(z), OutsideConvergenceDomain) << p << " " << v;
    }
  }
}

TEST(Padic, TrivialPoints) {
  PadicNumber zero(5, 20);
  PadicNumber e = padic_exp(zero);
  EXPECT_EQ(e.to_rational(), 1);
  EXPECT_TRUE(padic_log(PadicNumber::from_rational(1, 5, 20)).is_zero());
}

TEST(Padic, RoundTrips) {
  std::mt19937_64 rng(2024);
  for (long p : {2L, 3L, 5L, 7L}) {
    const long N = 30;
    long vmin = padic_exp_min_valuation(p);
    for (int i = 0; i < 100; ++i) {
      mpz_class num = mpz_class(static_cast<unsigned long>(rng() % 1000000007ul)) + 1;
      mpz_class den = mpz_class(static_cast<unsigned long>(rng() % 1000ul)) + 1;
      while (den % p == 0) den += 1;
      mpz_class pv;
      mpz_ui_pow_ui(pv.get_mpz_t(), p, vmin + static_cast<long>(rng() % 3));
      mpq_class zq(num * pv, den);
      zq.canonicalize();
      PadicNumber z = PadicNumber::from_rational(zq, p, N);
      EXPECT_TRUE(padic_log(padic_exp(z)).congruent(z));
      PadicNumber u = PadicNumber::from_rational(1 + zq, p, N);
      EXPECT_TRUE(padic_exp(padic_log(u)).congruent(u));
    }
  }
}

TEST(Padic, LogOfSixAtFive) {
  PadicNumber l = padic_log(PadicNumber::from_rational(6, 5, 30));
  EXPECT_EQ(l.valuation(), 1);
}
