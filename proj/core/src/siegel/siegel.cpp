#include "adelic/siegel/siegel.hpp"

#include <algorithm>
#include <complex>
#include <functional>
#include <numeric>

#include "adelic/heights/heights.hpp"

namespace adelic {

namespace {

constexpr mpfr_prec_t kMaxPrec = 4096;

mpq_class ratio(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

// a expressed on an orthonormal frame of the base at v0.
KMatrix effective_map(const TwistedBundle& tb) {
  const NormSpec* s = tb.base.deviation(tb.v0);
  if (!s) return tb.a;
  if (!s->frame()) throw InvalidArgument("twisted bundle needs a frame for the base norm at " + tb.v0.label);
  auto la = klinalg(tb.base.field());
  return la.mul(tb.a, la.inverse(*s->frame()));
}

// log max{1, upper endpoint of x}; exactly 0 when x <= 1.
LogLinear log_max_one(const Interval& x) {
  if (mpfr_cmp_ui(x.hi(), 1) <= 0) return LogLinear();
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.hi());
  if (q.get_den() == 1 && mpz_sizeinbase(q.get_num_mpz_t(), 2) <= 32) return LogLinear::log_of(q);
  return LogLinear::from_interval(log(Interval(q, x.prec())));
}

// log |(1, alpha)|_2 at v0.
LogLinear log_pair_norm(const NumberField& k, const FieldElement& alpha, const Place& v, mpfr_prec_t prec) {
  if (!v.is_archimedean()) {
    if (k.is_zero(alpha)) return LogLinear();
    long val = k.valuation(alpha, v);
    return val < 0 ? LogLinear::log_of(v.p) * mpq_class(-val) : LogLinear();
  }
  if (k.is_rational(alpha)) {
    mpq_class a = k.rational_value(alpha);
    return LogLinear::log_of(mpq_class(1 + a * a)) * mpq_class(1, 2);
  }
  Interval a2 = k.embed(alpha, v, prec).norm2();
  return LogLinear::from_interval(log(Interval(1L, prec) + a2) * Interval(mpq_class(1, 2), prec));
}

// Gram matrix of the smaller side: a^* a (nu x nu) or a a^* (mu x mu).
CMatrix small_gram(const CMatrix& a) {
  std::size_t mu = a.size(), nu = a.empty() ? 0 : a[0].size();
  return nu <= mu ? adjoint(a) * a : a * adjoint(a);
}

// Elementary divisor exponents of a at a finite place, ascending.
std::vector<long> local_elementary_divisors(const NumberField& k, KMatrix m, const Place& v) {
  std::vector<long> out;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    std::size_t pi = rows, pj = cols;
    long best = 0;
    for (std::size_t i = t; i < rows; ++i) {
      for (std::size_t j = t; j < cols; ++j) {
        if (k.is_zero(m[i][j])) continue;
        long val = k.valuation(m[i][j], v);
        if (pi == rows || val < best) {
          best = val;
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == rows) break;
    std::swap(m[t], m[pi]);
    for (auto& row : m) std::swap(row[t], row[pj]);
    const FieldElement piv = m[t][t];
    // The quotients below have nonnegative valuation, so these are
    // operations over the valuation ring.
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (k.is_zero(m[i][t])) continue;
      FieldElement f = k.div(m[i][t], piv);
      for (std::size_t j = t; j < cols; ++j) m[i][j] = k.sub(m[i][j], k.mul(f, m[t][j]));
    }
    for (std::size_t j = t + 1; j < cols; ++j) m[t][j] = k.zero();
    out.push_back(best);
  }
  return out;
}

SingularSpectrum finite_spectrum(const NumberField& k, const KMatrix& a, const Place& v, const PrecisionContext& ctx) {
  SingularSpectrum s;
  s.finite = true;
  s.valuations = local_elementary_divisors(k, a, v);
  s.rho = static_cast<int>(s.valuations.size());
  for (long n : s.valuations) {
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), v.p.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
    mpq_class q = n >= 0 ? mpq_class(1, pw) : mpq_class(pw);
    q.canonicalize();
    s.sigma.emplace_back(q, ctx.arch_bits);
  }
  return s;
}

// --- integer lattices ---------------------------------------------------

mpz_class sup_of(const IntVector& x) {
  mpz_class m = 0;
  for (auto& c : x) m = std::max(m, mpz_class(abs(c)));
  return m;
}

mpz_class l1_of(const IntVector& x) {
  mpz_class s = 0;
  for (auto& c : x) s += abs(c);
  return s;
}

bool first_nonzero_positive(const IntVector& x) {
  for (auto& c : x) {
    if (c != 0) return c > 0;
  }
  return false;
}

// Row echelon form over Z of `rows`, reducing columns [0, ncols). Returns
// the number of nonzero leading rows; their pivots are made positive.
std::size_t integer_echelon(std::vector<IntVector>& rows, std::size_t ncols, std::vector<std::size_t>* pivots) {
  std::size_t t = 0;
  for (std::size_t c = 0; c < ncols && t < rows.size(); ++c) {
    for (;;) {
      std::size_t arg = rows.size();
      for (std::size_t i = t; i < rows.size(); ++i) {
        if (rows[i][c] != 0 && (arg == rows.size() || abs(rows[i][c]) < abs(rows[arg][c]))) arg = i;
      }
      if (arg == rows.size()) break;
      std::swap(rows[t], rows[arg]);
      bool done = true;
      for (std::size_t i = t + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[t][c].get_mpz_t());
        for (std::size_t j = 0; j < rows[i].size(); ++j) rows[i][j] -= q * rows[t][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[t][c] == 0) continue;
    if (rows[t][c] < 0) {
      for (auto& e : rows[t]) e = -e;
    }
    if (pivots) pivots->push_back(c);
    ++t;
  }
  return t;
}

// Z-basis of {x in Z^n : a x = 0} in echelon form.
std::vector<IntVector> integer_kernel(const std::vector<IntVector>& a, std::size_t n, std::vector<std::size_t>* pivots) {
  const std::size_t mu = a.size();
  std::vector<IntVector> rows(n, IntVector(mu + n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < mu; ++i) rows[j][i] = a[i][j];
    rows[j][mu + j] = 1;
  }
  std::size_t r = integer_echelon(rows, mu, nullptr);
  std::vector<IntVector> basis;
  for (std::size_t j = r; j < n; ++j) basis.emplace_back(rows[j].begin() + static_cast<long>(mu), rows[j].end());
  integer_echelon(basis, n, pivots);
  return basis;
}

// Visits every nonzero lattice vector with sup norm <= r. Returns false when
// the node budget runs out.
bool enumerate_cube(const std::vector<IntVector>& basis, const std::vector<std::size_t>& pivots, std::size_t n,
                    const mpz_class& r, long& budget, const std::function<void(const IntVector&)>& visit) {
  const std::size_t k = basis.size();
  std::function<bool(std::size_t, const IntVector&, bool)> rec = [&](std::size_t i, const IntVector& s,
                                                                     bool nonzero) -> bool {
    if (--budget < 0) return false;
    std::size_t from = i == 0 ? 0 : pivots[i - 1] + 1, to = i == k ? n : pivots[i];
    for (std::size_t c = from; c < to; ++c) {
      if (abs(s[c]) > r) return true;
    }
    if (i == k) {
      if (nonzero) visit(s);
      return true;
    }
    const std::size_t p = pivots[i];
    const mpz_class& h = basis[i][p];
    mpz_class lo, hi, a = -r - s[p], b = r - s[p];
    mpz_cdiv_q(lo.get_mpz_t(), a.get_mpz_t(), h.get_mpz_t());
    mpz_fdiv_q(hi.get_mpz_t(), b.get_mpz_t(), h.get_mpz_t());
    for (mpz_class z = lo; z <= hi; ++z) {
      IntVector next = s;
      for (std::size_t c = p; c < n; ++c) next[c] += z * basis[i][c];
      if (!rec(i + 1, next, nonzero || z != 0)) return false;
    }
    return true;
  };
  return rec(0, IntVector(n, 0), false);
}

// Calls visit(x) for every x in Z^n with sup norm exactly s whose first
// nonzero coordinate is positive. Stops early when visit returns false.
bool for_each_shell_vector(std::size_t n, long s, const std::function<bool(const std::vector<long>&)>& visit) {
  std::vector<long> x(n);
  // j is the first coordinate with |x_j| = s.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<long> lo(n), hi(n);
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = i < j ? -(s - 1) : -s;
      hi[i] = i < j ? s - 1 : s;
    }
    for (long sign : {1L, -1L}) {
      for (std::size_t i = 0; i < n; ++i) x[i] = i == j ? sign * s : lo[i];
      for (;;) {
        long first = 0;
        for (long c : x) {
          if (c != 0) {
            first = c;
            break;
          }
        }
        if (first > 0 && !visit(x)) return false;
        std::size_t i = 0;
        while (i < n && (i == j || ++x[i] > hi[i])) {
          if (i != j) x[i] = lo[i];
          ++i;
        }
        if (i == n) break;
      }
    }
  }
  return true;
}

IntVector to_int_vector(const std::vector<long>& x) { return IntVector(x.begin(), x.end()); }

}  // namespace

void TwistedBundle::validate() const {
  const NumberField& k = base.field();
  for (auto& row : a) {
    if (static_cast<int>(row.size()) != base.dim()) throw DimensionMismatch("twist matrix has the wrong width");
  }
  if (v0.is_archimedean() && v0.index >= static_cast<int>(k.archimedean_places().size()))
    throw InvalidArgument("no such archimedean place");
}

Interval twisted_norm(const TwistedBundle& tb, const KVector& x, const PrecisionContext& ctx) {
  tb.validate();
  const NumberField& k = tb.base.field();
  if (static_cast<int>(x.size()) != tb.base.dim()) throw DimensionMismatch("vector length differs from bundle dimension");
  const mpfr_prec_t prec = ctx.arch_bits;
  Interval base = tb.base.norm(x, tb.v0, ctx);
  if (k.is_zero(tb.alpha) || tb.a.empty()) return base;
  KVector ax = klinalg(k).apply(tb.a, x);
  if (tb.v0.is_archimedean()) {
    Interval s = Interval::zero(prec);
    for (auto& z : embed_vector(k, ax, tb.v0, prec)) s += z.norm2();
    Interval a2 = k.embed(tb.alpha, tb.v0, prec).norm2();
    return sqrt(sqr(base) + a2 * s);
  }
  bool zero = false;
  long val = min_valuation(k, ax, tb.v0, &zero);
  if (zero) return base;
  val += k.valuation(tb.alpha, tb.v0);
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), tb.v0.p.get_mpz_t(), static_cast<unsigned long>(val < 0 ? -val : val));
  mpq_class q = val >= 0 ? mpq_class(1, pw) : mpq_class(pw);
  q.canonicalize();
  return max(base, Interval(q, prec));
}

AdelicBundle as_bundle(const TwistedBundle& tb) {
  tb.validate();
  const NumberField& k = tb.base.field();
  const int n = tb.base.dim();
  std::vector<NormSpec> specs;
  for (auto& [label, s] : tb.base.deviations()) {
    if (label != tb.v0.label) specs.push_back(s);
  }
  const NormSpec* s0 = tb.base.deviation(tb.v0);
  if (!tb.v0.is_archimedean()) {
    KMatrix stacked = s0 ? *s0->frame() : klinalg(k).identity(n);
    for (auto& row : tb.a) {
      KVector r;
      for (auto& c : row) r.push_back(k.mul(tb.alpha, c));
      stacked.push_back(r);
    }
    specs.push_back(NormSpec::finite(k, tb.v0, reduce_to_square(k, stacked, tb.v0)));
    return AdelicBundle(k, n, specs);
  }
  std::optional<QMatrix> exact;
  bool diagonal = false;
  if (k.is_q() && (!s0 || s0->exact_gram())) {
    auto la = qlinalg();
    QMatrix g = s0 ? *s0->exact_gram() : la.identity(n);
    mpq_class a2 = k.rational_value(tb.alpha);
    a2 *= a2;
    QMatrix aq = kmatrix_to_rational(k, tb.a);
    QMatrix ata = tb.a.empty() ? QMatrix(n, std::vector<mpq_class>(n, 0)) : la.mul(la.transpose(aq), aq);
    diagonal = true;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        g[i][j] += a2 * ata[i][j];
        if (i != j && g[i][j] != 0) diagonal = false;
      }
    }
    exact = g;
  }
  std::optional<NormSpec> base_spec;
  if (s0) base_spec = *s0;
  NormSpec::GramFn fn = [k, v = tb.v0, alpha = tb.alpha, a = tb.a, base_spec, n](mpfr_prec_t prec) {
    CMatrix g = base_spec ? base_spec->gram(prec) : cmat_identity(n, prec);
    if (a.empty()) return g;
    CMatrix ae = embed_matrix(k, a, v, prec);
    return g + scale(adjoint(ae) * ae, k.embed(alpha, v, prec).norm2());
  };
  specs.push_back(NormSpec::archimedean_gram(tb.v0, n, fn, exact, diagonal));
  return AdelicBundle(k, n, specs);
}

SingularSpectrum singular_spectrum(const NumberField& k, const KMatrix& a, const Place& v0,
                                   const PrecisionContext& ctx) {
  if (!v0.is_archimedean()) return finite_spectrum(k, a, v0, ctx);
  SingularSpectrum s;
  if (a.empty() || a[0].empty()) return s;
  const int rho = static_cast<int>(klinalg(k).rank(a));
  s.rho = rho;
  if (rho == 0) return s;
  for (mpfr_prec_t prec = ctx.arch_bits; prec <= kMaxPrec; prec *= 2) {
    std::vector<Interval> ev;
    try {
      ev = hermitian_eigenvalues(small_gram(embed_matrix(k, a, v0, prec)));
    } catch (const PrecisionExhausted&) {
      continue;
    }
    std::vector<Interval> top(ev.end() - rho, ev.end());
    if (!std::all_of(top.begin(), top.end(), [](auto& e) { return e.is_positive(); })) continue;
    s.sigma.clear();
    for (auto it = top.rbegin(); it != top.rend(); ++it) s.sigma.push_back(sqrt(*it));
    return s;
  }
  throw RankUncertified("singular values not separated from 0 at the maximal precision");
}

SingularSpectrum singular_spectrum(const CMatrix& a, const PrecisionContext& ctx) {
  (void)ctx;
  SingularSpectrum s;
  if (a.empty() || a[0].empty()) return s;
  std::vector<Interval> ev = hermitian_eigenvalues(small_gram(a));
  for (auto it = ev.rbegin(); it != ev.rend(); ++it) {
    if (it->contains_zero()) throw RankUncertified("a singular value enclosure contains 0");
    s.sigma.push_back(sqrt(*it));
  }
  s.rho = static_cast<int>(s.sigma.size());
  return s;
}

LogLinear slope_difference(const TwistedBundle& tb, const PrecisionContext& ctx) {
  tb.validate();
  const NumberField& k = tb.base.field();
  const int nu = tb.base.dim();
  if (nu == 0) throw ZeroBundle("slope difference of the zero bundle");
  if (k.is_zero(tb.alpha) || tb.a.empty()) return LogLinear();
  KMatrix a = effective_map(tb);
  SingularSpectrum sp = singular_spectrum(k, a, tb.v0, ctx);
  const mpq_class factor = -ratio(tb.v0.local_degree, static_cast<long>(nu) * k.degree());
  if (sp.finite) {
    long va = k.valuation(tb.alpha, tb.v0);
    long total = 0;
    for (long n : sp.valuations) total += std::max(0L, -(va + n));
    return LogLinear::log_of(tb.v0.p) * (factor * total);
  }
  const mpfr_prec_t prec = ctx.arch_bits;
  Interval a2 = k.embed(tb.alpha, tb.v0, prec).norm2();
  Interval sum = Interval::zero(prec);
  for (auto& s : sp.sigma) sum += log(Interval(1L, prec) + a2 * sqr(s));
  Interval value = sum * Interval(factor / 2, prec);
  // Over Q the product of the 1 + alpha^2 sigma_i^2 is det(I + alpha^2 a^T a).
  if (k.is_q()) {
    auto la = qlinalg();
    QMatrix aq = kmatrix_to_rational(k, a);
    mpq_class al = k.rational_value(tb.alpha);
    QMatrix g = la.mul(la.transpose(aq), aq);
    for (int i = 0; i < nu; ++i) {
      for (int j = 0; j < nu; ++j) g[i][j] = (i == j ? 1 : 0) + al * al * g[i][j];
    }
    LogLinear exact = LogLinear::log_of(la.det(g)) * (factor / 2);
    if (!exact.eval(prec).overlaps(value)) throw PrecisionExhausted("spectral and determinant routes disagree");
    return exact;
  }
  return LogLinear::from_interval(value);
}

Interval operator_norm_bound(const TwistedBundle& tb, const PrecisionContext& ctx) {
  tb.validate();
  const NumberField& k = tb.base.field();
  const mpfr_prec_t prec = ctx.arch_bits;
  KMatrix a = effective_map(tb);
  if (a.empty()) return Interval::zero(prec);
  if (!tb.v0.is_archimedean()) {
    KVector all;
    for (auto& row : a) all.insert(all.end(), row.begin(), row.end());
    bool zero = false;
    long val = min_valuation(k, all, tb.v0, &zero);
    if (zero) return Interval::zero(prec);
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), tb.v0.p.get_mpz_t(), static_cast<unsigned long>(val < 0 ? -val : val));
    mpq_class q = val >= 0 ? mpq_class(1, pw) : mpq_class(pw);
    q.canonicalize();
    return Interval(q, prec);
  }
  std::vector<Interval> ev = hermitian_eigenvalues(small_gram(embed_matrix(k, a, tb.v0, prec)));
  Interval top = max(ev.back(), Interval::zero(prec));
  return sqrt(top);
}

SlopeDifferenceCheck slope_difference_lower_bound(const TwistedBundle& tb, const Interval& opnorm,
                                                  const PrecisionContext& ctx) {
  tb.validate();
  const NumberField& k = tb.base.field();
  const int nu = tb.base.dim();
  if (nu == 0) throw ZeroBundle("slope difference of the zero bundle");
  SlopeDifferenceCheck out;
  out.value = slope_difference(tb, ctx);
  int rho = tb.a.empty() ? 0 : static_cast<int>(klinalg(k).rank(tb.a));
  LogLinear op = log_max_one(opnorm);
  LogLinear inner = log_pair_norm(k, tb.alpha, tb.v0, ctx.arch_bits) + op;
  out.bound = inner * -ratio(static_cast<long>(tb.v0.local_degree) * rho, static_cast<long>(nu) * k.degree());
  try {
    out.holds = compare(out.value, out.bound, ctx.arch_bits) >= 0;
  } catch (const PrecisionExhausted&) {
    out.holds = false;
  }
  return out;
}

Interval classical_siegel_bound(int mu, int nu, const mpz_class& a_max, mpfr_prec_t prec) {
  if (mu < 0 || mu >= nu) throw HypothesisViolated("classical Siegel lemma needs mu < nu");
  if (a_max < 0) throw InvalidArgument("A must be nonnegative");
  if (mu == 0) return Interval(2L, prec);
  if (a_max == 0) return Interval(1L, prec);
  return Interval(1L, prec) + pow(Interval(mpz_class(nu * a_max), prec), ratio(mu, nu - mu));
}

LogLinear bombieri_vaaler_bound(const AdelicBundle& e, const std::optional<mpq_class>& rd,
                                const PrecisionContext& ctx) {
  mpq_class r;
  if (rd) {
    r = *rd;
  } else if (e.field().is_q()) {
    r = 1;
  } else if (e.field().poly_string() == NumberField::parse("x^2+1").poly_string()) {
    r = 2;
  } else {
    throw InvalidArgument("root discriminant must be supplied for " + e.field().poly_string());
  }
  if (r <= 0) throw InvalidArgument("root discriminant must be positive");
  return -slope(e, ctx) + (LogLinear::log_of(static_cast<long>(e.dim())) + LogLinear::log_of(r)) * mpq_class(1, 2);
}

LogLinear absolute_siegel_bound(const AdelicBundle& e, const PrecisionContext& ctx) {
  return -slope(e, ctx) + LogLinear::log_of(static_cast<long>(e.dim())) * mpq_class(1, 2);
}

LogLinear approx_absolute_siegel_bound(const TwistedBundle& tb, const Interval& opnorm, const PrecisionContext& ctx) {
  tb.validate();
  const NumberField& k = tb.base.field();
  const int nu = tb.base.dim();
  if (nu == 0) throw ZeroBundle("approximate Siegel bound for the zero bundle");
  int rho = tb.a.empty() ? 0 : static_cast<int>(klinalg(k).rank(tb.a));
  LogLinear op = log_max_one(opnorm);
  LogLinear twist = (log_pair_norm(k, tb.alpha, tb.v0, ctx.arch_bits) + op) *
                    ratio(static_cast<long>(tb.v0.local_degree) * rho, static_cast<long>(nu) * k.degree());
  return twist + absolute_siegel_bound(tb.base, ctx);
}

bool witness_precedes(const IntVector& a, const IntVector& b) {
  mpz_class sa = sup_of(a), sb = sup_of(b);
  if (sa != sb) return sa < sb;
  mpz_class la = l1_of(a), lb = l1_of(b);
  if (la != lb) return la < lb;
  bool pa = first_nonzero_positive(a), pb = first_nonzero_positive(b);
  if (pa != pb) return pa;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

SiegelWitness classical_siegel_search(const std::vector<IntVector>& a, long budget) {
  if (a.empty()) throw InvalidArgument("classical search needs at least one equation");
  const std::size_t nu = a[0].size();
  for (auto& row : a) {
    if (row.size() != nu) throw DimensionMismatch("rows of different lengths");
  }
  const int mu = static_cast<int>(a.size());
  mpz_class amax = 0;
  for (auto& row : a)
    for (auto& c : row) amax = std::max(amax, mpz_class(abs(c)));
  Interval bound = classical_siegel_bound(mu, static_cast<int>(nu), amax, 128);

  std::vector<std::size_t> pivots;
  std::vector<IntVector> basis = integer_kernel(a, nu, &pivots);
  std::optional<IntVector> best;
  auto consider = [&](const IntVector& x) {
    if (!best || witness_precedes(x, *best)) best = x;
  };
  auto make = [&](const IntVector& x) {
    SiegelWitness w;
    w.x = x;
    mpz_class s = sup_of(x);
    w.size = Interval(s, 128);
    w.bound = bound;
    // (sup - 1)^{nu - mu} <= (nu A)^mu decides sup <= 1 + (nu A)^{mu/(nu-mu)} exactly.
    mpz_class lhs, rhs, base = s - 1, na = static_cast<long>(nu) * amax;
    mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), nu - static_cast<unsigned long>(mu));
    mpz_pow_ui(rhs.get_mpz_t(), na.get_mpz_t(), static_cast<unsigned long>(mu));
    w.within_bound = s == 1 || lhs <= rhs;
    return w;
  };
  for (mpz_class r = 1;; r *= 2) {
    if (!enumerate_cube(basis, pivots, nu, r, budget, consider)) {
      std::optional<SiegelWitness> b;
      if (best) b = make(*best);
      throw SearchBudgetExceeded("enumeration budget exhausted at radius " + r.get_str(), b);
    }
    if (best) return make(*best);
  }
}

bool approx_hypothesis_holds(int mu, int nu, int rho, long h, const Interval& a_bound, const Interval& eps) {
  if (rho == 0) return true;
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(a_bound.prec(), 128);
  if (!eps.is_positive()) return false;
  Interval inner = Interval(2L * mu * h, prec) * a_bound / eps + Interval(1L, prec);
  Interval lhs = log(inner) * Interval(2L * rho, prec);
  Interval rhs = Interval::log_of(mpz_class(h + 1), prec) * Interval(static_cast<long>(nu), prec);
  return mpfr_cmp(lhs.hi(), rhs.lo()) < 0;
}

ApproxSearchResult approx_siegel_search(const CMatrix& a, long h, const Interval& eps,
                                        const ApproxSearchOptions& opts) {
  if (a.empty() || a[0].empty()) throw InvalidArgument("approximate search needs a nonempty matrix");
  if (h < 1) throw InvalidArgument("H must be at least 1");
  if (!eps.is_positive()) throw InvalidArgument("epsilon must be positive");
  const std::size_t mu = a.size(), nu = a[0].size();
  for (auto& row : a) {
    if (row.size() != nu) throw DimensionMismatch("rows of different lengths");
  }
  const mpfr_prec_t prec = std::max<mpfr_prec_t>(a[0][0].prec(), 64);
  ApproxSearchResult out;
  out.row_sum_bound = Interval::zero(prec);
  for (auto& row : a) {
    Interval s = Interval::zero(prec);
    for (auto& c : row) s += c.abs();
    out.row_sum_bound = max(out.row_sum_bound, s);
  }
  out.rank = opts.rank ? *opts.rank : singular_spectrum(a, PrecisionContext{prec, 30}).rho;
  out.hypothesis_holds = approx_hypothesis_holds(static_cast<int>(mu), static_cast<int>(nu), out.rank, h,
                                                 out.row_sum_bound, eps);
  if (opts.require_hypothesis && !out.hypothesis_holds)
    throw HypothesisViolated("(2 mu H A / eps + 1)^{2 rho} < (H + 1)^nu does not hold");

  std::vector<std::vector<std::complex<double>>> ad(mu, std::vector<std::complex<double>>(nu));
  for (std::size_t i = 0; i < mu; ++i)
    for (std::size_t j = 0; j < nu; ++j) ad[i][j] = {a[i][j].re.mid_d(), a[i][j].im.mid_d()};
  double scale = 1.0 + out.row_sum_bound.hi_d() * static_cast<double>(h);
  double cutoff = eps.hi_d() + 1e-9 * scale;

  long budget = opts.budget;
  std::optional<IntVector> best;
  Interval best_residual;
  for (long s = 1; s <= h && !best; ++s) {
    bool ok = for_each_shell_vector(nu, s, [&](const std::vector<long>& x) {
      if (--budget < 0) return false;
      double worst = 0;
      for (std::size_t i = 0; i < mu; ++i) {
        std::complex<double> z = 0;
        for (std::size_t j = 0; j < nu; ++j) z += ad[i][j] * static_cast<double>(x[j]);
        worst = std::max(worst, std::abs(z));
      }
      if (worst > cutoff) return true;
      IntVector xi = to_int_vector(x);
      if (best && !witness_precedes(xi, *best)) return true;
      Interval res = Interval::zero(prec);
      for (std::size_t i = 0; i < mu; ++i) {
        ComplexInterval z(prec);
        for (std::size_t j = 0; j < nu; ++j) z += a[i][j] * ComplexInterval(Interval(x[j], prec));
        res = max(res, z.abs());
      }
      if (mpfr_cmp(res.hi(), eps.lo()) <= 0) {
        best = xi;
        best_residual = res;
      }
      return true;
    });
    if (!ok) throw SearchBudgetExceeded("approximate search budget exhausted at sup norm " + std::to_string(s), {});
  }
  if (!best) throw SearchBudgetExceeded("no certified solution with sup norm <= H", {});
  out.witness.x = *best;
  out.witness.size = best_residual;
  out.witness.bound = eps;
  out.witness.within_bound = true;
  return out;
}

SiegelWitness absolute_siegel_witness(const AdelicBundle& e, long max_sup, const PrecisionContext& ctx) {
  const NumberField& k = e.field();
  if (!k.is_q()) throw InvalidArgument("absolute Siegel witness search works over Q only");
  if (e.dim() == 0) throw ZeroBundle("no nonzero vectors in the zero bundle");
  const std::size_t nu = static_cast<std::size_t>(e.dim());
  LogLinear bound = absolute_siegel_bound(e, ctx);
  const mpfr_prec_t prec = ctx.arch_bits;

  std::optional<IntVector> best_any;
  LogLinear best_any_h;
  for (long s = 1; s <= max_sup; ++s) {
    std::optional<IntVector> best;
    LogLinear best_h;
    for_each_shell_vector(nu, s, [&](const std::vector<long>& x) {
      long g = 0;
      for (long c : x) g = std::gcd(g, std::labs(c));
      if (g != 1) return true;
      KVector kx;
      for (long c : x) kx.push_back(k.from_rational(c));
      LogLinear hx = vector_height(kx, e, ctx).value;
      IntVector xi = to_int_vector(x);
      if (!best_any || compare(hx, best_any_h) < 0) {
        best_any = xi;
        best_any_h = hx;
      }
      if (compare(hx, bound) > 0) return true;
      if (!best) {
        best = xi;
        best_h = hx;
        return true;
      }
      int c = compare(hx, best_h);
      if (c < 0 || (c == 0 && witness_precedes(xi, *best))) {
        best = xi;
        best_h = hx;
      }
      return true;
    });
    if (best) {
      SiegelWitness w;
      w.x = *best;
      w.size = best_h.eval(prec);
      w.bound = bound.eval(prec);
      w.within_bound = true;
      return w;
    }
  }
  std::optional<SiegelWitness> b;
  if (best_any) {
    SiegelWitness w;
    w.x = *best_any;
    w.size = best_any_h.eval(prec);
    w.bound = bound.eval(prec);
    w.within_bound = false;
    b = w;
  }
  throw SearchBudgetExceeded("no witness with sup norm <= " + std::to_string(max_sup), b);
}

}  // namespace adelic
