#include "oracles/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace oracle {

using adelic::Interval;
using adelic::LogLinear;

namespace {

double unit_ball_volume(int n) { return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

Eigen::MatrixXd to_eigen(const DMatrix& m) {
  Eigen::MatrixXd e(static_cast<long>(m.size()), m.empty() ? 0 : static_cast<long>(m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) e(static_cast<long>(i), static_cast<long>(j)) = m[i][j];
  return e;
}

// All multi-indices of size nu summing to ell.
void monomials(int nu, int ell, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == nu - 1) {
    cur.push_back(ell);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = ell; a >= 0; --a) {
    cur.push_back(a);
    monomials(nu, ell - a, cur, out);
    cur.pop_back();
  }
}

mpz_class minor_det(const ZMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() == 1) return m[rows[0]][cols[0]];
  mpz_class d = 0;
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::vector<int> sub_cols;
    for (std::size_t l = 0; l < cols.size(); ++l)
      if (l != j) sub_cols.push_back(cols[l]);
    mpz_class term = m[rows[0]][cols[j]] * minor_det(m, sub_rows, sub_cols);
    d += j % 2 ? -term : term;
  }
  return d;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

LogLinear rational_height(const mpq_class& q) {
  mpz_class n = abs(q.get_num()), d = q.get_den();
  if (n == 0) return LogLinear();
  return LogLinear::log_of(n > d ? n : d);
}

Interval gaussian_height(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
  if (im == 0) return rational_height(re).eval(prec);
  // X^2 - 2 re X + |x|^2, made primitive and integral.
  mpq_class c1 = -2 * re, c0 = re * re + im * im;
  mpz_class l;
  mpz_lcm(l.get_mpz_t(), c1.get_den().get_mpz_t(), c0.get_den().get_mpz_t());
  mpz_class a2 = l, a1 = mpq_class(c1 * l).get_num(), a0 = mpq_class(c0 * l).get_num();
  mpz_class g = gcd(gcd(a2, a1), a0);
  a2 /= g;
  // Both roots have modulus |x|.
  mpq_class m = c0 > 1 ? mpq_class(a2 * c0) : mpq_class(a2);
  m.canonicalize();
  return Interval::log_of(m, prec) * Interval(mpq_class(1, 2), prec);
}

double mc_volume_ratio(const DMatrix& m, long samples, std::uint64_t seed) {
  Eigen::MatrixXd e = to_eigen(m);
  const long n = e.rows();
  Eigen::MatrixXd inv = e.inverse();
  Eigen::VectorXd half(n);
  for (long i = 0; i < n; ++i) half(i) = inv.row(i).norm();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  long hits = 0;
  Eigen::VectorXd x(n);
  for (long s = 0; s < samples; ++s) {
    for (long i = 0; i < n; ++i) x(i) = half(i) * u(rng);
    if ((e * x).squaredNorm() <= 1.0) ++hits;
  }
  double box = 1.0;
  for (long i = 0; i < n; ++i) box *= 2 * half(i);
  return static_cast<double>(hits) / static_cast<double>(samples) * box / unit_ball_volume(static_cast<int>(n));
}

double mc_twisted_ratio(const DMatrix& a, double alpha, long samples, std::uint64_t seed) {
  Eigen::MatrixXd e = to_eigen(a);
  const long n = e.cols();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long hits = 0;
  Eigen::VectorXd x(n);
  for (long s = 0; s < samples; ++s) {
    for (long i = 0; i < n; ++i) x(i) = g(rng);
    x *= std::pow(u(rng), 1.0 / static_cast<double>(n)) / x.norm();
    if (x.squaredNorm() + alpha * alpha * (e * x).squaredNorm() <= 1.0) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

mpz_class lattice_kernel_count(const ZMatrix& b, long p, int e) {
  if (b.empty()) throw std::invalid_argument("empty matrix");
  const std::size_t cols = b[0].size();
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  const long qs = q.get_si();
  std::vector<long> y(cols, 0);
  mpz_class count = 0;
  for (;;) {
    bool ok = true;
    for (auto& row : b) {
      mpz_class s = 0;
      for (std::size_t j = 0; j < cols; ++j) s += row[j] * y[j];
      if (s % q != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    std::size_t j = 0;
    while (j < cols && ++y[j] == qs) y[j++] = 0;
    if (j == cols) break;
  }
  return count;
}

double tensor_quotient_norm(const std::map<std::vector<int>, std::complex<double>>& coeffs, int nu, int ell) {
  std::vector<std::vector<int>> mons;
  std::vector<int> cur;
  monomials(nu, ell, cur, mons);
  long positions = 1;
  for (int i = 0; i < ell; ++i) positions *= nu;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<long>(mons.size()), positions);
  for (long pos = 0; pos < positions; ++pos) {
    std::vector<int> counts(nu, 0);
    long r = pos;
    for (int i = 0; i < ell; ++i) {
      ++counts[r % nu];
      r /= nu;
    }
    for (std::size_t m = 0; m < mons.size(); ++m)
      if (mons[m] == counts) a(static_cast<long>(m), pos) = 1.0;
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<long>(mons.size()));
  for (std::size_t m = 0; m < mons.size(); ++m) {
    auto it = coeffs.find(mons[m]);
    if (it != coeffs.end()) rhs(static_cast<long>(m)) = it->second;
  }
  Eigen::MatrixXcd normal = a * a.adjoint();
  Eigen::VectorXcd t = a.adjoint() * normal.fullPivLu().solve(rhs);
  return t.norm();
}

std::vector<double> singular_values(const DMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  Eigen::VectorXd s = svd.singularValues();
  return std::vector<double>(s.data(), s.data() + s.size());
}

std::vector<long> invariant_factor_exponents(const ZMatrix& m, long p) {
  const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<long> out;
  long prev = 0;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::vector<int>> rs, cs;
    std::vector<int> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long best = -1;
    for (auto& r : rs)
      for (auto& c : cs) {
        mpz_class d = minor_det(m, r, c);
        if (d == 0) continue;
        long v = 0;
        while (d % p == 0) {
          d /= p;
          ++v;
        }
        if (best < 0 || v < best) best = v;
      }
    if (best < 0) break;
    out.push_back(best - prev);
    prev = best;
  }
  return out;
}

long brute_min_sup_solution(const std::vector<std::vector<long>>& a, long r) {
  if (a.empty()) return 1;
  const std::size_t n = a[0].size();
  std::vector<long> x(n, -r);
  long best = -1;
  for (;;) {
    long sup = 0;
    for (long v : x) sup = std::max(sup, std::labs(v));
    if (sup > 0 && (best < 0 || sup < best)) {
      bool ok = true;
      for (auto& row : a) {
        long s = 0;
        for (std::size_t j = 0; j < n; ++j) s += row[j] * x[j];
        if (s != 0) {
          ok = false;
          break;
        }
      }
      if (ok) best = sup;
    }
    std::size_t j = 0;
    while (j < n && ++x[j] > r) x[j++] = -r;
    if (j == n) break;
  }
  return best;
}

long free_coordinate_min_sup_solution(const std::vector<std::vector<long>>& a, long r) {
  if (a.empty()) return 1;
  const std::size_t n = a[0].size();
  std::vector<std::vector<mpq_class>> m;
  for (auto& row : a) m.emplace_back(row.begin(), row.end());
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < n && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    mpq_class inv = 1 / m[rank][c];
    for (auto& e : m[rank]) e *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[rank][j];
    }
    pivots.push_back(c);
    ++rank;
  }
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < n; ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
  if (free.empty()) return -1;
  if (std::pow(2.0 * r + 1, static_cast<double>(free.size())) > 1e9) throw std::runtime_error("search box too large");

  // Row i scaled to integers: den_i x_{pivot_i} = -sum_f num_{i,f} x_f.
  std::vector<__int128> den(rank);
  std::vector<std::vector<__int128>> num(rank, std::vector<__int128>(free.size()));
  for (std::size_t i = 0; i < rank; ++i) {
    mpz_class l = 1;
    for (std::size_t f : free) l = lcm(l, mpz_class(m[i][f].get_den()));
    if (abs(l) * mpz_class(r) * static_cast<long>(free.size()) > mpz_class("1000000000000000000"))
      throw std::runtime_error("entries too large");
    den[i] = l.get_si();
    for (std::size_t k = 0; k < free.size(); ++k) {
      mpz_class v = m[i][free[k]].get_num() * (l / m[i][free[k]].get_den());
      if (abs(v) > mpz_class("1000000000000000000")) throw std::runtime_error("entries too large");
      num[i][k] = v.get_si();
    }
  }
  std::vector<long> x(free.size(), -r);
  long best = -1;
  for (;;) {
    long sup = 0;
    for (long v : x) sup = std::max(sup, std::labs(v));
    bool ok = best < 0 || sup < best;
    for (std::size_t i = 0; ok && i < rank; ++i) {
      __int128 s = 0;
      for (std::size_t k = 0; k < free.size(); ++k) s += num[i][k] * x[k];
      if (s % den[i] != 0) {
        ok = false;
        break;
      }
      __int128 xp = -s / den[i];
      __int128 axp = xp < 0 ? -xp : xp;
      if (axp > r) ok = false;
      else sup = std::max(sup, static_cast<long>(axp));
    }
    if (ok && sup > 0 && (best < 0 || sup < best)) best = sup;
    std::size_t j = 0;
    while (j < x.size() && ++x[j] > r) x[j++] = -r;
    if (j == x.size()) break;
  }
  return best;
}

}  // namespace oracle

namespace oracle {

namespace {

constexpr mpfr_prec_t kBig = 640;

// Minimal RAII number for the direct formula evaluations.
struct F {
  mpfr_t v;
  F() { mpfr_init2(v, kBig); mpfr_set_ui(v, 0, MPFR_RNDN); }
  F(long x) : F() { mpfr_set_si(v, x, MPFR_RNDN); }  // NOLINT
  F(const mpq_class& q) : F() { mpfr_set_q(v, q.get_mpq_t(), MPFR_RNDN); }  // NOLINT
  F(const mpz_class& z) : F() { mpfr_set_z(v, z.get_mpz_t(), MPFR_RNDN); }  // NOLINT
  F(const F& o) : F() { mpfr_set(v, o.v, MPFR_RNDN); }
  F& operator=(const F& o) { mpfr_set(v, o.v, MPFR_RNDN); return *this; }
  ~F() { mpfr_clear(v); }
  friend F operator+(const F& a, const F& b) { F r; mpfr_add(r.v, a.v, b.v, MPFR_RNDN); return r; }
  friend F operator-(const F& a, const F& b) { F r; mpfr_sub(r.v, a.v, b.v, MPFR_RNDN); return r; }
  friend F operator*(const F& a, const F& b) { F r; mpfr_mul(r.v, a.v, b.v, MPFR_RNDN); return r; }
  friend F operator/(const F& a, const F& b) { F r; mpfr_div(r.v, a.v, b.v, MPFR_RNDN); return r; }
  bool operator<(const F& o) const { return mpfr_less_p(v, o.v); }
  mpq_class q() const { mpq_class r; mpfr_get_q(r.get_mpq_t(), v); return r; }
};

F flog(const F& x) { F r; mpfr_log(r.v, x.v, MPFR_RNDN); return r; }
F fpow(const F& x, const F& y) { F r; mpfr_pow(r.v, x.v, y.v, MPFR_RNDN); return r; }
F fe_const() { F r; F one(1L); mpfr_exp(r.v, one.v, MPFR_RNDN); return r; }
mpz_class ffloor(const F& x) { mpz_class z; mpfr_get_z(z.get_mpz_t(), x.v, MPFR_RNDD); return z; }
F fact(long n) { F r(1L); for (long i = 2; i <= n; ++i) r = r * F(i); return r; }

F log_fe(const BakerData& d) {
  if (d.log_fe_base == 0) return F(d.log_fe_coeff);
  return F(d.log_fe_coeff) * flog(F(d.log_fe_base));
}

mpz_class frak_a(const BakerData& d, const F& sum_log_a, bool with_p) {
  F l = log_fe(d), ratio = F(static_cast<long>(d.degree)) / l;
  F inner = fe_const() + ratio + sum_log_a;
  if (with_p) inner = inner + flog(F(d.p));
  return ffloor(ratio * flog(inner)) + 1;
}

F sum_log_a(const BakerData& d) {
  F s;
  for (const auto& a : d.log_a) s = s + F(a);
  return s;
}

std::vector<int> free_of(const BakerData& d) {
  if (!d.free_family.empty()) return d.free_family;
  std::vector<int> all(d.n);
  for (int i = 0; i < d.n; ++i) all[i] = i;
  return all;
}

}  // namespace

BakerDirect baker_direct(const BakerData& d) {
  const long n = d.n, t = d.t;
  F l = log_fe(d), deg(static_cast<long>(d.degree));
  F c0 = fpow(F(6 * n), F(22 * n));
  int y = (t == 1 && d.beta10_nonzero) ? 0 : 1;
  BakerDirect r;
  r.frak_a = frak_a(d, sum_log_a(d), !d.archimedean);
  F a(r.frak_a);
  F s = c0 * c0 * c0 * a;
  F b = F(d.log_b) + deg * flog(s) + (y ? s * l : l);
  F prod(1L);
  for (const auto& la : d.log_a) prod = prod * (F(1L) + deg * F(la) / l);
  F um1 = fpow(c0, F(mpq_class(3 * n - 1, t))) * fpow(fact(t) * s / fact(n + t) * prod, F(mpq_class(1, t))) * b;
  F u0 = um1;
  if (!d.archimedean && um1 < flog(F(d.p))) u0 = flog(F(d.p));
  F t0 = c0 * u0 / (s * l);
  F tt = c0 * c0 * t0;
  std::vector<F> dt{u0 / b};
  for (const auto& la : d.log_a) dt.push_back(u0 / (s * l + deg * s * F(la)));
  F hg = fact(n + t) / fact(t) * fpow(dt[0], F(t));
  for (long i = 1; i <= n; ++i) hg = hg * dt[i];
  F xt = fpow(tt, F(n)) * s / (c0 * hg);
  r.log_u_minus1 = flog(um1).q();
  r.log_u0 = flog(u0).q();
  r.log_t_tilde0 = flog(t0).q();
  r.log_t_tilde = flog(tt).q();
  for (const auto& x : dt) r.log_d_tilde.push_back(flog(x).q());
  r.log_x_trivial = (flog(xt) / F(t)).q();
  return r;
}

mpq_class principal_log_magnitude(const BakerData& d) {
  F l = log_fe(d), deg(static_cast<long>(d.degree));
  F a(frak_a(d, sum_log_a(d), !d.archimedean));
  F inv_s(mpq_class(1, d.s));
  F u = fpow(a, inv_s) * (F(d.log_b) + a * l + deg * flog(l));
  for (int i : free_of(d)) u = u * fpow(F(1L) + deg * F(d.log_a[i]) / l, inv_s);
  if (!d.archimedean && u < flog(F(d.p))) u = flog(F(d.p));
  return (F(203L * d.n * d.n) * flog(F(6L * d.n)) + flog(u)).q();
}

mpq_class reduit_log_magnitude(const BakerData& d) {
  F l = log_fe(d), deg(static_cast<long>(d.degree));
  F a(frak_a(d, sum_log_a(d), !d.archimedean));
  F inv_t(mpq_class(1, d.t));
  F w = (d.t == 1 && d.beta10_nonzero) ? F(d.log_b) + l + deg * flog(a) : F(d.log_b) + a * l;
  F v = fpow(a, inv_t) * w;
  for (const auto& la : d.log_a) v = v * fpow(F(1L) + deg * F(la) / l, inv_t);
  if (!d.archimedean && v < flog(F(d.p))) v = flog(F(d.p));
  return (F(200L * d.n * d.n) * flog(F(6L * d.n)) + flog(v)).q();
}

mpz_class delta_by_prime_powers(int l, int h) {
  mpz_class out = 1;
  for (long q = 2; q <= l; ++q) {
    bool prime = true;
    for (long f = 2; f * f <= q; ++f) prime = prime && q % f != 0;
    if (!prime) continue;
    std::vector<long> powers;
    for (long pw = q; pw <= l; pw *= q) powers.push_back(pw);
    // best[c][b]: largest exponent sum with c parts and total b.
    long best_exp = 0;
    std::vector<std::vector<long>> best(h + 1, std::vector<long>(l + 1, -1));
    best[0][0] = 0;
    for (int c = 0; c < h; ++c) {
      for (int b = 0; b <= l; ++b) {
        if (best[c][b] < 0) continue;
        for (std::size_t e = 0; e < powers.size(); ++e) {
          long nb = b + powers[e];
          if (nb > l) break;
          best[c + 1][nb] = std::max(best[c + 1][nb], best[c][b] + static_cast<long>(e) + 1);
        }
      }
    }
    for (int c = 0; c <= h; ++c) {
      for (int b = 0; b <= l; ++b) best_exp = std::max(best_exp, best[c][b]);
    }
    mpz_class qe;
    mpz_ui_pow_ui(qe.get_mpz_t(), q, best_exp);
    out *= qe;
  }
  return out;
}

}  // namespace oracle
