#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace adelic {

// Factorization of |n| into primes. Factors that resist Pollard rho within
// its budget are returned as (composite) keys, so the product is always n.
std::map<mpz_class, unsigned> factor_integer(const mpz_class& n);

bool is_probable_prime(const mpz_class& n);
std::vector<unsigned long> primes_up_to(unsigned long bound);

// p-adic valuation of a nonzero integer or rational.
long valuation(const mpz_class& n, const mpz_class& p);
long valuation(const mpq_class& q, const mpz_class& p);

// Exact rational from "3", "-1/2", "0.69" or "1.5e-3".
mpq_class parse_rational(const std::string& text);

mpz_class binomial(unsigned long n, unsigned long k);
mpz_class factorial(unsigned long n);

}  // namespace adelic
