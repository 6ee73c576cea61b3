#include "adelic/bundles/bundle.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "adelic/errors.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic {

namespace {

void check_square_invertible(const NumberField& k, const KMatrix& m, int* dim) {
  const std::size_t n = m.size();
  for (auto& row : m) {
    if (row.size() != n) throw SingularNormSpec("frame matrix is not square");
  }
  if (n == 0) throw SingularNormSpec("empty frame matrix");
  if (k.is_zero(klinalg(k).det(m))) throw SingularNormSpec("frame matrix is singular");
  *dim = static_cast<int>(n);
}

bool is_identity(const QMatrix& q) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q[i].size(); ++j) {
      if (q[i][j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

bool q_is_diagonal(const QMatrix& q) {
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q[i].size(); ++j) {
      if (i != j && q[i][j] != 0) return false;
    }
  }
  return true;
}

KMatrix columns_to_matrix(const NumberField& k, int rows, const std::vector<KVector>& cols) {
  KMatrix m(rows, KVector(cols.size(), k.zero()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (int i = 0; i < rows; ++i) m[i][j] = cols[j][i];
  }
  return m;
}

std::vector<KVector> matrix_columns(const KMatrix& m) {
  std::vector<KVector> cols;
  std::size_t c = m.empty() ? 0 : m[0].size();
  for (std::size_t j = 0; j < c; ++j) {
    KVector col;
    for (auto& row : m) col.push_back(row[j]);
    cols.push_back(std::move(col));
  }
  return cols;
}

KMatrix block_diag(const NumberField& k, const KMatrix& a, const KMatrix& b) {
  std::size_t n = a.size(), m = b.size();
  KMatrix r(n + m, KVector(n + m, k.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
  }
  return r;
}

CMatrix cblock_diag(const CMatrix& a, const CMatrix& b, mpfr_prec_t prec) {
  std::size_t n = a.size(), m = b.size();
  CMatrix r = cmat_zeros(n + m, n + m, prec);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
  }
  return r;
}

QMatrix qblock_diag(const QMatrix& a, const QMatrix& b) {
  std::size_t n = a.size(), m = b.size();
  QMatrix r(n + m, std::vector<mpq_class>(n + m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i][j] = a[i][j];
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) r[n + i][n + j] = b[i][j];
  }
  return r;
}

// Gram data of the archimedean norm at v, standard when there is no spec.
struct ArchData {
  NormSpec::GramFn gram;
  std::optional<QMatrix> exact;
  std::optional<KMatrix> frame;
  bool diagonal = true;
};

ArchData arch_data(const AdelicBundle& e, const Place& v) {
  ArchData d;
  const NormSpec* s = e.deviation(v);
  const int n = e.dim();
  if (!s) {
    d.gram = [n](mpfr_prec_t prec) { return cmat_identity(n, prec); };
    d.exact = qlinalg().identity(n);
    d.frame = klinalg(e.field()).identity(n);
    return d;
  }
  d.gram = [s_copy = *s](mpfr_prec_t prec) { return s_copy.gram(prec); };
  d.exact = s->exact_gram();
  d.frame = s->frame();
  d.diagonal = s->diagonal();
  return d;
}

KMatrix finite_frame(const AdelicBundle& e, const Place& v) {
  const NormSpec* s = e.deviation(v);
  if (s) return *s->frame();
  return klinalg(e.field()).identity(e.dim());
}

std::set<mpz_class> primes_of(const mpz_class& n) {
  std::set<mpz_class> out;
  if (n == 0) return out;
  for (auto& [p, m] : factor_integer(n)) out.insert(p);
  return out;
}

void for_each_combination(int n, int r, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(r);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    f(idx);
    int i = r - 1;
    while (i >= 0 && idx[i] == n - r + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

NormSpec NormSpec::finite(const NumberField& k, const Place& v, KMatrix frame) {
  if (v.is_archimedean()) throw InvalidArgument("NormSpec::finite at an archimedean place");
  NormSpec s;
  check_square_invertible(k, frame, &s.dim_);
  s.place_ = v;
  s.diagonal_ = kmatrix_is_diagonal(k, frame);
  s.frame_ = std::move(frame);
  return s;
}

NormSpec NormSpec::archimedean(const NumberField& k, const Place& v, KMatrix frame) {
  if (!v.is_archimedean()) throw InvalidArgument("NormSpec::archimedean at a finite place");
  NormSpec s;
  check_square_invertible(k, frame, &s.dim_);
  s.place_ = v;
  s.diagonal_ = kmatrix_is_diagonal(k, frame);
  if (k.is_q()) {
    QMatrix q = kmatrix_to_rational(k, frame);
    auto la = qlinalg();
    s.exact_gram_ = la.mul(la.transpose(q), q);
  }
  s.gram_ = [k, v, frame](mpfr_prec_t prec) {
    CMatrix c = embed_matrix(k, frame, v, prec);
    return adjoint(c) * c;
  };
  s.frame_ = std::move(frame);
  return s;
}

NormSpec NormSpec::archimedean_gram(const Place& v, int dim, GramFn gram, std::optional<QMatrix> exact,
                                    bool diagonal) {
  if (!v.is_archimedean()) throw InvalidArgument("NormSpec::archimedean_gram at a finite place");
  NormSpec s;
  s.place_ = v;
  s.dim_ = dim;
  s.gram_ = std::move(gram);
  s.exact_gram_ = std::move(exact);
  s.diagonal_ = diagonal;
  return s;
}

CMatrix NormSpec::gram(mpfr_prec_t prec) const {
  if (!place_.is_archimedean()) throw InvalidArgument("Gram matrix requested at a finite place");
  if (exact_gram_) return cmat_from_rational(*exact_gram_, prec);
  return gram_(prec);
}

AdelicBundle::AdelicBundle(NumberField k, int dim) : k_(std::move(k)), dim_(dim) {
  if (dim < 0) throw InvalidArgument("negative bundle dimension");
}

AdelicBundle::AdelicBundle(NumberField k, int dim, const std::vector<NormSpec>& deviations)
    : AdelicBundle(std::move(k), dim) {
  for (auto& s : deviations) {
    if (s.dim() != dim) throw DimensionMismatch("deviation at " + s.place().label + " has the wrong size");
    if (!dev_.emplace(s.place().label, s).second) {
      throw InvalidArgument("two deviations at place " + s.place().label);
    }
  }
}

const NormSpec* AdelicBundle::deviation(const Place& v) const {
  auto it = dev_.find(v.label);
  return it == dev_.end() ? nullptr : &it->second;
}

bool AdelicBundle::is_diagonal() const {
  return std::all_of(dev_.begin(), dev_.end(), [](auto& kv) { return kv.second.diagonal(); });
}

LogLinear AdelicBundle::log_norm(const KVector& x, const Place& v, const PrecisionContext& ctx) const {
  if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("vector length differs from bundle dimension");
  const NormSpec* s = deviation(v);
  if (!v.is_archimedean()) {
    KVector y = s ? klinalg(k_).apply(*s->frame(), x) : x;
    bool zero = false;
    long val = min_valuation(k_, y, v, &zero);
    if (zero) throw InvalidArgument("log norm of the zero vector");
    return LogLinear::log_of(v.p) * mpq_class(-val);
  }
  bool rational = std::all_of(x.begin(), x.end(), [&](auto& c) { return k_.is_rational(c); });
  if (rational && (!s || s->exact_gram())) {
    std::vector<mpq_class> q;
    for (auto& c : x) q.push_back(k_.rational_value(c));
    mpq_class form = 0;
    if (!s) {
      for (auto& c : q) form += c * c;
    } else {
      auto& g = *s->exact_gram();
      for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) form += q[i] * g[i][j] * q[j];
      }
    }
    if (form == 0) throw InvalidArgument("log norm of the zero vector");
    return LogLinear::log_of(form) * mpq_class(1, 2);
  }
  mpfr_prec_t prec = ctx.arch_bits;
  auto xe = embed_vector(k_, x, v, prec);
  Interval form = Interval::zero(prec);
  if (!s) {
    for (auto& z : xe) form += z.norm2();
  } else {
    form = hermitian_form(s->gram(prec), xe);
  }
  if (!form.is_positive()) {
    bool zero = std::all_of(x.begin(), x.end(), [&](auto& c) { return k_.is_zero(c); });
    if (zero) throw InvalidArgument("log norm of the zero vector");
    throw PrecisionExhausted("norm enclosure does not exclude 0");
  }
  return LogLinear::from_interval(log(form) * Interval(mpq_class(1, 2), prec));
}

Interval AdelicBundle::norm(const KVector& x, const Place& v, const PrecisionContext& ctx) const {
  bool zero = std::all_of(x.begin(), x.end(), [&](auto& c) { return k_.is_zero(c); });
  if (zero) {
    if (static_cast<int>(x.size()) != dim_) throw DimensionMismatch("vector length differs from bundle dimension");
    return Interval::zero(ctx.arch_bits);
  }
  return exp(log_norm(x, v, ctx).eval(ctx.arch_bits));
}

LogLinear degree(const AdelicBundle& e, const PrecisionContext& ctx) {
  const NumberField& k = e.field();
  LogLinear sum;
  if (e.dim() == 0) return sum;
  for (auto& [label, s] : e.deviations()) {
    const Place& v = s.place();
    const mpq_class nv = v.local_degree;
    if (!v.is_archimedean()) {
      FieldElement d = klinalg(k).det(*s.frame());
      sum += LogLinear::log_of(v.p) * (nv * k.valuation(d, v));
    } else if (s.exact_gram()) {
      mpq_class d = qlinalg().det(*s.exact_gram());
      sum += LogLinear::log_of(d) * (-nv / 2);
    } else {
      Interval d = det(s.gram(ctx.arch_bits)).re;
      sum += LogLinear::from_interval(log(d) * Interval(-nv / 2, ctx.arch_bits));
    }
  }
  return sum * mpq_class(1, k.degree());
}

LogLinear slope(const AdelicBundle& e, const PrecisionContext& ctx) {
  if (e.dim() == 0) throw ZeroBundle("slope of the zero bundle is -infinity");
  return degree(e, ctx) * mpq_class(1, e.dim());
}

std::vector<LogLinear> line_degrees(const AdelicBundle& e, const PrecisionContext& ctx) {
  if (!e.is_diagonal()) throw InvalidArgument("line_degrees needs a diagonal bundle");
  const NumberField& k = e.field();
  std::vector<LogLinear> out(e.dim());
  for (auto& [label, s] : e.deviations()) {
    const Place& v = s.place();
    const mpq_class nv = v.local_degree;
    for (int i = 0; i < e.dim(); ++i) {
      if (!v.is_archimedean()) {
        out[i] += LogLinear::log_of(v.p) * (nv * k.valuation((*s.frame())[i][i], v));
      } else if (s.exact_gram()) {
        out[i] += LogLinear::log_of((*s.exact_gram())[i][i]) * (-nv / 2);
      } else {
        Interval g = s.gram(ctx.arch_bits)[i][i].re;
        out[i] += LogLinear::from_interval(log(g) * Interval(-nv / 2, ctx.arch_bits));
      }
    }
  }
  for (auto& d : out) d *= mpq_class(1, k.degree());
  return out;
}

MaxSlope max_slope(const AdelicBundle& e, const PrecisionContext& ctx) {
  if (e.dim() == 0) throw ZeroBundle("maximal slope of the zero bundle is -infinity");
  const NumberField& k = e.field();
  const int n = e.dim();
  MaxSlope best;
  if (e.is_diagonal()) {
    auto degs = line_degrees(e, ctx);
    std::size_t arg = 0;
    for (std::size_t i = 1; i < degs.size(); ++i) {
      if (compare(degs[i], degs[arg]) > 0) arg = i;
    }
    best.value = degs[arg];
    best.exact = true;
    best.witness = KMatrix(n, KVector(1, k.zero()));
    best.witness[arg][0] = k.one();
    return best;
  }

  std::vector<std::vector<KVector>> candidates;
  auto unit = [&](int i) {
    KVector x(n, k.zero());
    x[i] = k.one();
    return x;
  };
  const int max_subset_dim = n <= 10 ? n : 1;
  for (int r = 1; r <= max_subset_dim; ++r) {
    for_each_combination(n, r, [&](const std::vector<int>& idx) {
      std::vector<KVector> c;
      for (int i : idx) c.push_back(unit(i));
      candidates.push_back(std::move(c));
    });
  }
  for (auto& [label, s] : e.deviations()) {
    if (!s.frame()) continue;
    KMatrix inv = klinalg(k).inverse(*s.frame());
    for (auto& col : matrix_columns(inv)) candidates.push_back({col});
  }

  bool have = false;
  Interval best_iv = Interval::zero(ctx.arch_bits);
  for (auto& c : candidates) {
    AdelicBundle f = sub(e, c);
    LogLinear sl = slope(f, ctx);
    Interval iv = sl.eval(ctx.arch_bits);
    if (!have || mpfr_cmp(iv.lo(), best_iv.lo()) > 0) {
      have = true;
      best.value = sl;
      best_iv = iv;
      best.witness = columns_to_matrix(k, n, c);
    }
  }
  best.exact = false;
  return best;
}

AdelicBundle dual(const AdelicBundle& e) {
  const NumberField& k = e.field();
  std::vector<NormSpec> specs;
  for (auto& [label, s] : e.deviations()) {
    const Place& v = s.place();
    if (s.frame()) {
      auto la = klinalg(k);
      KMatrix f = la.transpose(la.inverse(*s.frame()));
      specs.push_back(v.is_archimedean() ? NormSpec::archimedean(k, v, f) : NormSpec::finite(k, v, f));
      continue;
    }
    std::optional<QMatrix> exact;
    if (s.exact_gram()) exact = qlinalg().inverse(*s.exact_gram());
    NormSpec copy = s;
    specs.push_back(NormSpec::archimedean_gram(
        v, e.dim(), [copy](mpfr_prec_t prec) { return transpose(inverse(copy.gram(prec))); }, exact,
        s.diagonal()));
  }
  return AdelicBundle(k, e.dim(), specs);
}

AdelicBundle direct_sum(const AdelicBundle& a, const AdelicBundle& b) {
  if (a.field() != b.field()) throw InvalidArgument("direct sum of bundles over different fields");
  const NumberField& k = a.field();
  std::map<std::string, Place> places;
  for (auto& [label, s] : a.deviations()) places.emplace(label, s.place());
  for (auto& [label, s] : b.deviations()) places.emplace(label, s.place());
  std::vector<NormSpec> specs;
  for (auto& [label, v] : places) {
    if (!v.is_archimedean()) {
      specs.push_back(NormSpec::finite(k, v, block_diag(k, finite_frame(a, v), finite_frame(b, v))));
      continue;
    }
    ArchData da = arch_data(a, v), db = arch_data(b, v);
    if (da.frame && db.frame) {
      specs.push_back(NormSpec::archimedean(k, v, block_diag(k, *da.frame, *db.frame)));
      continue;
    }
    std::optional<QMatrix> exact;
    if (da.exact && db.exact) exact = qblock_diag(*da.exact, *db.exact);
    auto ga = da.gram, gb = db.gram;
    specs.push_back(NormSpec::archimedean_gram(
        v, a.dim() + b.dim(), [ga, gb](mpfr_prec_t prec) { return cblock_diag(ga(prec), gb(prec), prec); },
        exact, da.diagonal && db.diagonal));
  }
  return AdelicBundle(k, a.dim() + b.dim(), specs);
}

KMatrix independent_columns(const NumberField& k, int dim, const std::vector<KVector>& vectors) {
  auto la = klinalg(k);
  std::vector<KVector> chosen;
  for (auto& x : vectors) {
    if (static_cast<int>(x.size()) != dim) throw NotASubspace("spanning vector has the wrong length");
    std::vector<KVector> trial = chosen;
    trial.push_back(x);
    if (la.rank(trial) == trial.size()) chosen = std::move(trial);
  }
  return columns_to_matrix(k, dim, chosen);
}

AdelicBundle sub(const AdelicBundle& e, const std::vector<KVector>& vectors) {
  const NumberField& k = e.field();
  auto la = klinalg(k);
  KMatrix b = independent_columns(k, e.dim(), vectors);
  const int r = b.empty() ? 0 : static_cast<int>(b[0].size());
  if (r == 0) return AdelicBundle(k, 0);
  std::vector<NormSpec> specs;

  for (const Place& v : k.archimedean_places()) {
    ArchData d = arch_data(e, v);
    if (d.frame) {
      KMatrix fb = la.mul(*d.frame, b);
      std::optional<QMatrix> exact;
      if (kmatrix_is_rational(k, fb)) {
        auto ql = qlinalg();
        QMatrix q = kmatrix_to_rational(k, fb);
        exact = ql.mul(ql.transpose(q), q);
        if (is_identity(*exact)) continue;
      }
      bool diag = exact && q_is_diagonal(*exact);
      specs.push_back(NormSpec::archimedean_gram(
          v, r,
          [k, v, fb](mpfr_prec_t prec) {
            CMatrix c = embed_matrix(k, fb, v, prec);
            return adjoint(c) * c;
          },
          exact, diag));
      continue;
    }
    std::optional<QMatrix> exact;
    if (d.exact && kmatrix_is_rational(k, b)) {
      auto ql = qlinalg();
      QMatrix q = kmatrix_to_rational(k, b);
      exact = ql.mul(ql.mul(ql.transpose(q), *d.exact), q);
      if (is_identity(*exact)) continue;
    }
    bool diag = exact && q_is_diagonal(*exact);
    auto g = d.gram;
    specs.push_back(NormSpec::archimedean_gram(
        v, r,
        [k, v, b, g](mpfr_prec_t prec) {
          CMatrix c = embed_matrix(k, b, v, prec);
          return adjoint(c) * g(prec) * c;
        },
        exact, diag));
  }

  // Finite places where the induced norm can differ from the standard one:
  // the ambient deviations, primes in the denominators of the basis, and
  // primes dividing every r x r minor of the integral basis.
  std::set<mpz_class> primes;
  for (auto& [label, s] : e.deviations()) {
    if (!s.place().is_archimedean()) primes.insert(s.place().p);
  }
  mpz_class den = 1;
  for (auto& row : b) {
    for (auto& x : row) {
      ZPoly num;
      mpz_class d;
      k.split_denominator(x, &num, &d);
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  }
  for (auto& p : primes_of(den)) primes.insert(p);
  KMatrix bint = b;
  for (auto& row : bint) {
    for (auto& x : row) x = k.mul(x, k.from_rational(mpq_class(den)));
  }
  mpz_class g = 0;
  for_each_combination(e.dim(), r, [&](const std::vector<int>& rows) {
    KMatrix minor;
    for (int i : rows) minor.push_back(bint[i]);
    FieldElement d = la.det(minor);
    if (k.is_zero(d)) return;
    mpq_class nq = k.norm(d);
    mpz_class nz = nq.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), nz.get_mpz_t());
  });
  for (auto& p : primes_of(g)) primes.insert(p);

  for (auto& p : primes) {
    for (const Place& v : k.places_above(p)) {
      KMatrix n = reduce_to_square(k, la.mul(finite_frame(e, v), b), v);
      bool integral = true;
      for (auto& row : n) {
        for (auto& x : row) integral = integral && (k.is_zero(x) || k.valuation(x, v) >= 0);
      }
      if (integral && k.valuation(la.det(n), v) == 0) continue;
      specs.push_back(NormSpec::finite(k, v, n));
    }
  }
  return AdelicBundle(k, r, specs);
}

KMatrix quotient_map(const AdelicBundle& e, const std::vector<KVector>& vectors) {
  const NumberField& k = e.field();
  auto la = klinalg(k);
  KMatrix b = independent_columns(k, e.dim(), vectors);
  if (b.empty() || b[0].empty()) return la.identity(e.dim());
  return la.kernel(la.transpose(b), e.dim());
}

AdelicBundle quotient(const AdelicBundle& e, const std::vector<KVector>& vectors) {
  KMatrix c = quotient_map(e, vectors);
  std::vector<KVector> cols = matrix_columns(c);
  if (cols.empty()) return AdelicBundle(e.field(), 0);
  return dual(sub(dual(e), cols));
}

}  // namespace adelic
