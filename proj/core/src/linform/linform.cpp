#include "adelic/linform/linform.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "adelic/errors.hpp"
#include "adelic/heights/heights.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic {

namespace {

constexpr int kRefinements = 4;  // precision grows by at most 2^4

bool is_padic(const LinFormInstance& inst) { return inst.log_kind == LogKind::Padic; }

// arg of a nonzero embedded value in (-pi, pi].
Interval argument(const ComplexInterval& z, const Place& v) {
  mpfr_prec_t prec = z.prec();
  bool on_axis = v.kind == PlaceKind::Real || (z.im.is_point() && z.im.contains(mpq_class(0)));
  if (on_axis) {
    if (z.re.is_positive()) return Interval::zero(prec);
    if (z.re.is_negative()) return Interval::pi(prec);
    throw PrecisionExhausted("sign of a real embedding is undecided");
  }
  return atan2(z.im, z.re);
}

// max{a, b} for values whose order may be undecidable on enclosures.
LogLinear max_value(const LogLinear& a, const LogLinear& b, mpfr_prec_t prec) {
  try {
    return compare(a, b, prec, prec * 4) >= 0 ? a : b;
  } catch (const PrecisionExhausted&) {
    return LogLinear::from_interval(max(a.eval(prec), b.eval(prec)));
  }
}

LogLinear max_value(const LogLinear& a, const Interval& b) {
  Interval av = a.eval(b.prec());
  if (certainly_leq(b, av)) return a;
  if (certainly_leq(av, b)) return LogLinear::from_interval(b);
  return LogLinear::from_interval(max(av, b));
}

// u_j valuations at the finite place, nullopt for u_j = 0.
std::vector<std::optional<long>> log_valuations(const LinFormInstance& inst, long digits) {
  std::vector<std::optional<long>> out;
  for (const auto& u : padic_logs(inst, digits)) {
    if (u.is_zero()) {
      out.emplace_back();
    } else {
      out.emplace_back(u.valuation());
    }
  }
  return out;
}

// |u| < r^2 = p^{-2/(p-1)}.
bool inside_square_radius(const std::optional<long>& val, const mpz_class& p) {
  if (!val) return true;
  return mpz_class(*val * (p - 1)) > 2;
}

}  // namespace

void LinFormInstance::validate(const PrecisionContext& ctx) const {
  ctx.validate();
  const int nn = n(), tt = t();
  if (nn < 1) throw InvalidArgument("need at least one logarithm");
  if (tt < 1 || tt > nn) throw InvalidArgument("need 1 <= t <= n linear forms");
  for (const auto& row : beta) {
    if (static_cast<int>(row.size()) != nn + 1) throw DimensionMismatch("each beta row needs n + 1 entries");
  }
  for (const auto& a : alpha) {
    if (k.is_zero(a)) throw InvalidArgument("alpha_j must be nonzero");
  }
  if (is_padic(*this)) {
    if (v0.is_archimedean()) throw InvalidArgument("p-adic logarithms need a finite place v0");
    if (v0.local_degree != 1) throw NonRationalCompletion("p-adic evaluation needs n_v0 = 1");
    std::vector<PadicNumber> u = padic_logs(*this, ctx.padic_digits);
    for (int j = 0; j < nn; ++j) {
      PadicNumber a = k.to_padic(alpha[j], v0, ctx.padic_digits);
      if (!padic_exp(u[j]).congruent(a)) throw InvalidArgument("exp(log alpha_j) != alpha_j at the working precision");
    }
  } else {
    if (!v0.is_archimedean()) throw InvalidArgument("archimedean logarithms need an archimedean place v0");
    if (static_cast<int>(branches.size()) != nn) throw InvalidArgument("need one branch per logarithm");
    std::vector<ComplexInterval> u = archimedean_logs(*this, ctx.arch_bits);
    for (int j = 0; j < nn; ++j) {
      ComplexInterval a = k.embed(alpha[j], v0, ctx.arch_bits);
      Interval m = exp(u[j].re);
      if (!(m * cos(u[j].im)).overlaps(a.re) || !(m * sin(u[j].im)).overlaps(a.im)) {
        throw InvalidArgument("exp(u_j) does not enclose alpha_j");
      }
    }
  }
}

std::vector<ComplexInterval> archimedean_logs(const LinFormInstance& inst, mpfr_prec_t prec) {
  std::vector<ComplexInterval> out;
  Interval two_pi = Interval(2L, prec) * Interval::pi(prec);
  for (int j = 0; j < inst.n(); ++j) {
    ComplexInterval z = inst.k.embed(inst.alpha[j], inst.v0, prec);
    Interval re = inst.k.is_rational(inst.alpha[j])
                      ? Interval::log_of(mpq_class(abs(inst.k.rational_value(inst.alpha[j]))), prec)
                      : log(z.norm2()) * Interval(mpq_class(1, 2), prec);
    Interval im = argument(z, inst.v0) + two_pi * Interval(inst.branches[j], prec);
    out.emplace_back(re, im);
  }
  return out;
}

std::vector<PadicNumber> padic_logs(const LinFormInstance& inst, long digits) {
  std::vector<PadicNumber> out;
  for (const auto& a : inst.alpha) out.push_back(padic_log(inst.k.to_padic(a, inst.v0, digits)));
  return out;
}

LambdaEvaluation eval_linear_forms(const LinFormInstance& inst, const PrecisionContext& ctx) {
  LambdaEvaluation ev;
  const int n = inst.n(), t = inst.t();
  if (is_padic(inst)) {
    const mpz_class& p = inst.v0.p;
    long digits = ctx.padic_digits;
    for (int round = 0; round <= kRefinements; ++round, digits *= 2) {
      std::vector<PadicNumber> u = padic_logs(inst, digits);
      ev.abs.clear();
      ev.valuations.clear();
      ev.strong_domain = true;
      for (const auto& uj : u) {
        ev.strong_domain = ev.strong_domain && inside_square_radius(uj.is_zero() ? std::nullopt : std::optional<long>(uj.valuation()), p);
      }
      ev.separated = false;
      for (int i = 0; i < t; ++i) {
        PadicNumber lam = inst.k.to_padic(inst.beta[i][0], inst.v0, digits);
        for (int j = 0; j < n; ++j) lam = lam + inst.k.to_padic(inst.beta[i][j + 1], inst.v0, digits) * u[j];
        if (lam.is_zero()) {
          ev.valuations.emplace_back();
          // Only known to lie below p^{-precision}.
          mpz_class pn;
          mpz_pow_ui(pn.get_mpz_t(), p.get_mpz_t(), std::max(0L, lam.precision()));
          ev.abs.push_back(Interval::hull(Interval(0L), Interval(mpq_class(1, pn))));
        } else {
          ev.valuations.emplace_back(lam.valuation());
          mpz_class pv;
          mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), std::labs(lam.valuation()));
          mpq_class a = lam.valuation() >= 0 ? mpq_class(1, pv) : mpq_class(pv);
          a.canonicalize();
          ev.abs.emplace_back(a, ctx.arch_bits);
          ev.separated = true;
        }
      }
      ev.precision_used = digits;
      if (ev.separated) break;
    }
    return ev;
  }
  mpfr_prec_t prec = ctx.arch_bits;
  for (int round = 0; round <= kRefinements; ++round, prec *= 2) {
    std::vector<ComplexInterval> u = archimedean_logs(inst, prec);
    ev.abs.clear();
    ev.separated = false;
    for (int i = 0; i < t; ++i) {
      ComplexInterval lam = inst.k.embed(inst.beta[i][0], inst.v0, prec);
      for (int j = 0; j < n; ++j) lam += inst.k.embed(inst.beta[i][j + 1], inst.v0, prec) * u[j];
      ev.abs.push_back(lam.abs());
      ev.separated = ev.separated || ev.abs.back().is_positive();
    }
    ev.precision_used = prec;
    if (ev.separated) break;
  }
  return ev;
}

std::string to_string(HypothesisStatus s) { return s == HypothesisStatus::Certified ? "certified" : "assumed"; }

HypothesisReport certify_hypotheses(const LinFormInstance& inst) {
  const NumberField& k = inst.k;
  const int n = inst.n(), t = inst.t();
  auto kla = klinalg(k);
  KMatrix b(t, KVector(n));
  for (int i = 0; i < t; ++i) {
    for (int j = 0; j < n; ++j) b[i][j] = inst.beta[i][j + 1];
  }
  HypothesisReport r;
  r.beta_rank = static_cast<int>(kla.rank(b));

  bool rational = std::all_of(inst.alpha.begin(), inst.alpha.end(), [&](const auto& a) { return k.is_rational(a); });
  if (!rational) {
    r.status = HypothesisStatus::Assumed;
    if (inst.declared_I) {
      r.free_family = *inst.declared_I;
    } else {
      for (int j = 0; j < n; ++j) r.free_family.push_back(j);
    }
    r.rank = static_cast<int>(r.free_family.size());
    // Without a declaration the u_j are taken to be free, so T_u = Q^n.
    r.s = inst.declared_s ? *inst.declared_s : r.beta_rank;
    return r;
  }

  // Coordinates of u_j on the Q-independent family {log q} (and i pi).
  std::map<mpz_class, std::vector<mpq_class>> rows;
  std::vector<mpq_class> pi_row(n, 0);
  for (int j = 0; j < n; ++j) {
    mpq_class a = k.rational_value(inst.alpha[j]);
    for (const mpz_class* part : {&a.get_num(), &a.get_den()}) {
      mpz_class m = abs(*part);
      if (m == 1) continue;
      int sign = part == &a.get_num() ? 1 : -1;
      for (const auto& [q, e] : factor_integer(m)) {
        auto& row = rows.try_emplace(q, std::vector<mpq_class>(n, 0)).first->second;
        row[j] += sign * static_cast<long>(e);
      }
    }
    if (!is_padic(inst)) pi_row[j] = (a < 0 ? 1 : 0) + 2 * inst.branches[j];
  }
  QMatrix m;
  for (auto& [q, row] : rows) m.push_back(row);
  if (!is_padic(inst)) m.push_back(pi_row);
  auto qla = qlinalg();
  r.status = HypothesisStatus::Certified;
  r.rank = m.empty() ? 0 : static_cast<int>(qla.rank(m));

  int have = 0;
  for (int j = 0; j < n && have < r.rank; ++j) {
    QMatrix sub(m.size());
    std::vector<int> cols = r.free_family;
    cols.push_back(j);
    for (std::size_t row = 0; row < m.size(); ++row) {
      for (int c : cols) sub[row].push_back(m[row][c]);
    }
    int rk = static_cast<int>(qla.rank(sub));
    if (rk > have) {
      r.free_family.push_back(j);
      have = rk;
    }
  }

  // s = rank of the linear forms restricted to T_u = row space of m.
  if (r.rank == 0) {
    r.s = 0;
    return r;
  }
  QMatrix basis = m;
  std::vector<std::size_t> pivots = qla.rref(basis);
  basis.resize(pivots.size());
  KMatrix restricted = kla.mul(b, kla.transpose(kmatrix_from_rational(k, basis)));
  r.s = static_cast<int>(kla.rank(restricted));
  return r;
}

BoundInstance derive_bound_instance(const LinFormInstance& inst, const HypothesisReport& hyp,
                                    const PrecisionContext& ctx) {
  const NumberField& k = inst.k;
  const int n = inst.n(), t = inst.t(), d = k.degree();
  const mpfr_prec_t prec = std::max<long>(ctx.arch_bits, 128);
  BoundInstance bi;
  bi.n = n;
  bi.t = t;
  bi.degree = d;
  bi.s = hyp.s;
  bi.free_family = hyp.free_family;
  bi.archimedean = !is_padic(inst);
  bi.beta10_nonzero = t == 1 && !k.is_zero(inst.beta[0][0]);

  std::vector<LogLinear> heights;
  for (const auto& a : inst.alpha) heights.push_back(weil_height(a, k, ctx).value);

  if (bi.archimedean) {
    bi.log_frak_e = LogLinear::rational(1);
    std::vector<ComplexInterval> u = archimedean_logs(inst, prec);
    for (int j = 0; j < n; ++j) {
      Interval w = Interval::euler_e(prec) * u[j].abs() / Interval(static_cast<long>(d), prec);
      bi.log_a.push_back(max_value(heights[j], w));
    }
    bi.torsion_degenerate = n == 1 && t == 1 && !bi.beta10_nonzero && k.equal(inst.alpha[0], k.one()) &&
                            inst.branches[0] != 0;
  } else {
    const mpz_class& p = inst.v0.p;
    bi.p = p;
    bi.log_a = heights;
    std::vector<std::optional<long>> vals = log_valuations(inst, ctx.padic_digits);
    // fe <= r^2/|u_i| = p^{val(u_i) - 2/(p-1)} for i in I.
    std::optional<mpq_class> best;
    for (int i : hyp.free_family) {
      if (!vals[i]) continue;
      mpq_class e = mpq_class(*vals[i]) - mpq_class(2, mpz_class(p - 1));
      e.canonicalize();
      if (!best || e < *best) best = e;
    }
    if (!best || *best <= 0) {
      throw HypothesisViolated("no admissible frak_e: some |u_i| is not below r^2 for i in I");
    }
    bi.log_frak_e = LogLinear::log_of(p) * *best;
    bi.log_frak_e_max = bi.log_frak_e;
  }

  LogLinear hb = LogLinear::rational(1);
  for (const auto& row : inst.beta) {
    for (const auto& x : row) hb = max_value(hb, weil_height(x, k, ctx).value, prec);
  }
  bi.log_b = hb * mpq_class(d);
  return bi;
}

VerificationReport verify_instance(const LinFormInstance& inst, BoundKind kind, const PrecisionContext& ctx) {
  inst.validate(ctx);
  VerificationReport rep;
  rep.hypotheses = certify_hypotheses(inst);
  const HypothesisReport& hyp = rep.hypotheses;
  const int n = inst.n(), t = inst.t();
  if (hyp.rank == 0) throw HypothesisViolated("every u_j vanishes");
  if (kind != BoundKind::Principal) {
    if (hyp.status == HypothesisStatus::Certified && hyp.rank < n) {
      throw HypothesisViolated("this bound needs Q-linearly independent u_j");
    }
    if (hyp.beta_rank < t) throw HypothesisViolated("this bound needs linearly independent forms");
  }
  if (hyp.s < 1) throw HypothesisViolated("the forms vanish on T_u (s = 0)");

  rep.lambda = eval_linear_forms(inst, ctx);
  if (!rep.lambda.separated) {
    throw DegenerateInstance("every |Lambda_i| enclosure contains 0 at the precision budget");
  }
  const mpfr_prec_t prec = std::max<long>(ctx.arch_bits, 128);
  if (is_padic(inst)) {
    long v = 0;
    bool first = true;
    for (const auto& val : rep.lambda.valuations) {
      if (val && (first || *val < v)) {
        v = *val;
        first = false;
      }
    }
    rep.max_log_lambda = LogLinear::log_of(inst.v0.p) * mpq_class(-v);
  } else {
    Interval m = rep.lambda.abs[0];
    for (int i = 1; i < t; ++i) m = max(m, rep.lambda.abs[i]);
    rep.max_log_lambda = LogLinear::from_interval(log(m));
  }

  rep.bound_instance = derive_bound_instance(inst, hyp, ctx);
  if (kind == BoundKind::Intro) {
    LogLinear top = rep.bound_instance.log_a[0];
    for (const auto& a : rep.bound_instance.log_a) top = max_value(top, a, prec);
    std::fill(rep.bound_instance.log_a.begin(), rep.bound_instance.log_a.end(), top);
  }
  rep.bound = theorem_bound(kind, rep.bound_instance, prec);

  // margin = m - bound = e^L (1 + m e^{-L}) with bound = -e^L.
  Interval big = rep.bound.value.log_magnitude(prec);
  Interval m = rep.max_log_lambda.eval(prec);
  Interval scale = Interval(1L, prec) + m * exp(-big);
  if (scale.is_positive()) {
    rep.margin = LogScaleReal(1, rep.bound.value.log_mag() + LogLinear::from_interval(log(scale)));
    rep.pass = true;
  } else if (scale.is_negative()) {
    rep.margin = LogScaleReal(-1, rep.bound.value.log_mag() + LogLinear::from_interval(log(-scale)));
    rep.pass = false;
  } else {
    throw PrecisionExhausted("cannot separate max log|Lambda| from the bound");
  }
  return rep;
}

}  // namespace adelic
