#include "adelic/baker/baker_bound.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "adelic/errors.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic {

namespace {

constexpr mpfr_prec_t kMaxPrec = 4096;

bool is_rational(const LogLinear& v) { return v.terms().empty() && v.is_exact(); }

// The positive real v as a log-scale value.
LogScaleReal positive(const LogLinear& v, mpfr_prec_t prec) {
  if (is_rational(v)) {
    if (v.constant() <= 0) throw InvalidArgument("expected a positive quantity");
    return LogScaleReal::from_rational(v.constant());
  }
  Interval x = v.eval(prec);
  if (!x.is_positive()) throw InvalidArgument("expected a positive quantity, got " + x.to_string(10));
  return LogScaleReal(1, LogLinear::from_interval(log(x)));
}

LogScaleReal positive(const Interval& x) {
  if (!x.is_positive()) throw InvalidArgument("expected a positive quantity, got " + x.to_string(10));
  return LogScaleReal(1, LogLinear::from_interval(log(x)));
}

LogLinear log_6n(int n) { return LogLinear::log_of(6L * n); }
LogLinear log_c0(int n) { return log_6n(n) * mpq_class(22 * n); }

// 1 + D log a / log fe, exact when both inputs are rational.
LogScaleReal degree_ratio(int degree, const LogLinear& log_a, const LogLinear& log_fe, mpfr_prec_t prec) {
  if (is_rational(log_a) && is_rational(log_fe)) {
    mpq_class r = 1 + degree * log_a.constant() / log_fe.constant();
    r.canonicalize();
    return LogScaleReal::from_rational(r);
  }
  return positive(Interval(1L, prec) + Interval(static_cast<long>(degree), prec) * log_a.eval(prec) / log_fe.eval(prec));
}

LogLinear sum_of(const std::vector<LogLinear>& v) {
  LogLinear s;
  for (const auto& x : v) s += x;
  return s;
}

// Unvalidated principal factor; the monotonicity suite perturbs instances
// outside the validated range.
LogScaleReal principal_factor(const BoundInstance& inst, const mpz_class& frak_a, mpfr_prec_t prec) {
  Interval lfe = inst.log_frak_e.eval(prec);
  Interval w = inst.log_b.eval(prec) + Interval(frak_a, prec) * lfe +
               Interval(static_cast<long>(inst.degree), prec) * log(lfe);
  mpq_class inv_s(1, inst.s);
  LogScaleReal u = LogScaleReal::from_integer(frak_a).pow(inv_s) * positive(w);
  for (int i : inst.free_indices()) u *= degree_ratio(inst.degree, inst.log_a[i], inst.log_frak_e, prec).pow(inv_s);
  return u;
}

}  // namespace

std::vector<int> BoundInstance::free_indices() const {
  if (!free_family.empty()) return free_family;
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return all;
}

void BoundInstance::validate() const {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  if (t < 1 || t > n) throw InvalidArgument("t must lie in 1..n");
  if (degree < 1) throw InvalidArgument("degree must be at least 1");
  if (static_cast<int>(log_a.size()) != n) throw InvalidArgument("log_a needs n entries");
  if (s < 1 || s > t) throw InvalidArgument("s must lie in 1..t");
  std::set<int> seen;
  for (int i : free_family) {
    if (i < 0 || i >= n || !seen.insert(i).second) throw InvalidArgument("free family indices must be distinct in 1..n");
  }
  for (const auto& a : log_a) {
    if (compare(a, LogLinear()) < 0) throw InvalidArgument("log a_j must be nonnegative");
  }
  if (compare(log_b, LogLinear()) <= 0) throw InvalidArgument("log b must be positive");
  if (archimedean) {
    if (compare(log_frak_e, LogLinear::rational(1)) < 0) throw InvalidFrakE("archimedean places need frak_e >= e");
  } else {
    if (p < 2 || !is_probable_prime(p)) throw InvalidArgument("ultrametric places need a prime p");
    if (compare(log_frak_e, LogLinear()) <= 0) throw InvalidFrakE("ultrametric places need frak_e > 1");
    if (log_frak_e_max && compare(log_frak_e, *log_frak_e_max) > 0) {
      throw InvalidFrakE("frak_e exceeds min r^2/|u_i|");
    }
  }
}

mpz_class compute_frak_a(int degree, const LogLinear& log_frak_e, bool archimedean, const mpz_class& p,
                         const LogLinear& sum_log_a, mpfr_prec_t prec) {
  if (degree < 1) throw InvalidArgument("degree must be at least 1");
  if (archimedean) {
    if (compare(log_frak_e, LogLinear::rational(1)) < 0) throw InvalidFrakE("archimedean places need frak_e >= e");
  } else if (compare(log_frak_e, LogLinear()) <= 0) {
    throw InvalidFrakE("ultrametric places need frak_e > 1");
  }
  if (compare(sum_log_a, LogLinear()) < 0) throw InvalidArgument("sum of log a_j must be nonnegative");
  for (mpfr_prec_t pr = prec; pr <= kMaxPrec; pr *= 2) {
    Interval lfe = log_frak_e.eval(pr);
    Interval ratio = Interval(static_cast<long>(degree), pr) / lfe;
    Interval inner = Interval::euler_e(pr) + ratio + sum_log_a.eval(pr);
    if (!archimedean) inner += Interval::log_of(p, pr);
    Interval x = ratio * log(inner);
    try {
      return x.floor_exact() + 1;
    } catch (const PrecisionExhausted&) {
    }
  }
  throw PrecisionExhausted("cannot decide the integer part defining frak_a");
}

ParamSet compute_params(const BoundInstance& inst, mpfr_prec_t prec) {
  inst.validate();
  if (inst.torsion_degenerate) {
    throw HypothesisViolated("n = 1, beta_{1,0} = 0 and u_1 in 2 i pi Z: fewer than S sample points");
  }
  const int n = inst.n, t = inst.t, d = inst.degree;
  ParamSet ps;
  mpz_ui_pow_ui(ps.c0.get_mpz_t(), 6UL * n, 22UL * n);
  ps.y = (t == 1 && inst.beta10_nonzero) ? 0 : 1;
  ps.frak_a = compute_frak_a(d, inst.log_frak_e, inst.archimedean, inst.p, sum_of(inst.log_a), prec);
  ps.s0 = ps.c0 * ps.frak_a;
  ps.s = ps.c0 * ps.c0 * ps.s0;

  // S log fe and log b + D log S + S^y log fe differ by a factor 1 + O(1/S);
  // property (i) needs that gap resolved on the log side.
  const mpfr_prec_t wp = prec + static_cast<mpfr_prec_t>(mpz_sizeinbase(ps.s.get_mpz_t(), 2)) + 64;
  LogLinear lc0 = log_c0(n);
  LogLinear ls = lc0 * mpq_class(3) + LogLinear::log_of(ps.frak_a);
  LogScaleReal c0(1, lc0), s(1, ls);
  LogScaleReal fe = positive(inst.log_frak_e, wp);

  LogScaleReal sy = ps.y ? s * fe : fe;
  ps.d0_denominator = LogScaleReal::add(LogScaleReal::add(positive(inst.log_b, wp), positive(ls * mpq_class(d), wp), wp),
                                        sy, wp);

  LogLinear lu = lc0 * mpq_class(3 * n - 1, t);
  LogLinear inner = LogLinear::log_of(factorial(t)) + ls - LogLinear::log_of(factorial(n + t));
  for (int i = 0; i < n; ++i) inner += degree_ratio(d, inst.log_a[i], inst.log_frak_e, wp).log_mag();
  lu += inner * mpq_class(1, t);
  lu += ps.d0_denominator.log_mag();
  ps.u_minus1 = LogScaleReal(1, lu);

  ps.u0 = ps.u_minus1;
  if (!inst.archimedean) {
    LogScaleReal lp = positive(LogLinear::log_of(inst.p), wp);
    if (compare(lp, ps.u_minus1) > 0) {
      ps.u0 = lp;
      ps.u0_is_log_p = true;
    }
  }

  ps.t_tilde0 = c0 * ps.u0 / (s * fe);
  ps.t_tilde = c0 * c0 * ps.t_tilde0;
  ps.d_tilde.push_back(ps.u0 / ps.d0_denominator);
  for (int i = 0; i < n; ++i) {
    // S log fe + D S log a_i = S (log fe + D log a_i).
    LogScaleReal den = s * positive(inst.log_frak_e + inst.log_a[i] * mpq_class(d), wp);
    ps.d_tilde.push_back(ps.u0 / den);
  }
  return ps;
}

Interval log_x_trivial(const ParamSet& ps, const BoundInstance& inst, mpfr_prec_t prec) {
  const int n = inst.n, t = inst.t;
  LogLinear lc0 = log_c0(n);
  LogLinear ls = LogLinear::log_of(ps.s);
  // x^t = T~^n card(Sigma) H({0}) / (c0 H(G; D~)), H(G; D~) = (n+t)!/t! D~0^t prod D~i.
  LogLinear num = ps.t_tilde.log_mag() * mpq_class(n) + ls;
  LogLinear den = lc0 + LogLinear::log_of(factorial(n + t)) - LogLinear::log_of(factorial(t)) +
                  ps.d_tilde[0].log_mag() * mpq_class(t);
  for (int i = 1; i <= n; ++i) den += ps.d_tilde[i].log_mag();
  return ((num - den) * mpq_class(1, t)).eval(prec);
}

LogScaleReal u_minus1_from_x_condition(const ParamSet& ps, const BoundInstance& inst, mpfr_prec_t prec) {
  return ps.u0 * LogScaleReal(1, LogLinear::from_interval(log_x_trivial(ps, inst, prec)));
}

ParamProperties check_param_properties(const ParamSet& ps, const BoundInstance& inst, mpfr_prec_t prec) {
  const int n = inst.n, d = inst.degree;
  ParamProperties r;
  LogScaleReal c0 = LogScaleReal::from_integer(ps.c0);
  LogScaleReal s = LogScaleReal::from_integer(ps.s);
  LogScaleReal one = LogScaleReal::from_integer(1);

  // Termwise, so that equal D~i never need a tie decided.
  auto below_t0 = [&](const LogScaleReal& x) { return compare(c0 * x, ps.t_tilde0) <= 0; };
  r.degrees_below_t0 = below_t0(one) && below_t0(ps.y ? ps.d_tilde[0] : ps.d_tilde[0] / s);
  for (int i = 1; i <= n; ++i) r.degrees_below_t0 = r.degrees_below_t0 && below_t0(ps.d_tilde[i]);

  r.log_x_trivial = log_x_trivial(ps, inst, prec);
  r.x_at_most_one = mpfr_cmp_d(r.log_x_trivial.hi(), 1e-12) <= 0;
  // D0 = [x D~0] with x = x({0}).
  Interval log_xd0 = r.log_x_trivial + ps.d_tilde[0].log_magnitude(prec);
  bool c0_below = false;
  for (int i = 1; i <= n && !c0_below; ++i) c0_below = compare(c0, ps.d_tilde[i]) <= 0;
  r.d0_nonzero = log_xd0.is_nonnegative() && c0_below;

  Interval lfe = inst.log_frak_e.eval(prec);
  Interval lhs3 = Interval(static_cast<long>(d), prec) * Interval::log_of(ps.frak_a, prec);
  Interval rhs3 = Interval(2L, prec) * Interval(ps.frak_a, prec) * lfe;
  r.frak_a_log_bound = certainly_leq(lhs3, rhs3);

  // log(4 D~0) <= 0 makes the left side nonpositive.
  Interval log4d0 = Interval::log_of(mpz_class(4), prec) + ps.d_tilde[0].log_magnitude(prec);
  if (!log4d0.is_positive()) {
    r.jet_order_bound = true;
  } else {
    LogScaleReal rhs = positive(log_c0(n) * mpq_class(10L * n, d), prec) * ps.u0;
    LogScaleReal factor = positive(log4d0);
    // T = [T~] <= T~; the floor is only taken when T~ alone does not decide.
    if (compare(ps.t_tilde * factor, rhs) <= 0) {
      r.jet_order_bound = true;
    } else {
      Interval lt = ps.t_tilde.log_magnitude(prec);
      double bits = lt.hi_d() / 0.693 + 64;
      if (bits < 1e5) {
        mpfr_prec_t pr = std::max<mpfr_prec_t>(prec, static_cast<mpfr_prec_t>(bits));
        Interval tt = exp(ps.t_tilde.log_mag().eval(pr));
        mpz_class tf;
        mpfr_get_z(tf.get_mpz_t(), tt.hi(), MPFR_RNDD);
        r.jet_order_bound = tf == 0 || compare(LogScaleReal::from_integer(tf) * factor, rhs) <= 0;
      }
    }
  }
  return r;
}

mpz_class hilbert_samuel_full(int n, int t, const std::vector<mpz_class>& degrees) {
  if (n < 1 || t < 0 || static_cast<int>(degrees.size()) != n + 1) throw InvalidArgument("need n + 1 degrees");
  for (const auto& x : degrees) {
    if (x < 0) throw InvalidArgument("degrees must be nonnegative");
  }
  mpz_class h = factorial(n + t) / factorial(t);
  mpz_class d0t;
  mpz_pow_ui(d0t.get_mpz_t(), degrees[0].get_mpz_t(), t);
  h *= d0t;
  for (int i = 1; i <= n; ++i) h *= degrees[i] > 1 ? degrees[i] : mpz_class(1);
  return h;
}

mpz_class dimension_E(int n, int t, const std::vector<mpz_class>& degrees) {
  if (n < 1 || t < 0 || static_cast<int>(degrees.size()) != n + 1) throw InvalidArgument("need n + 1 degrees");
  for (const auto& x : degrees) {
    if (x < 0) throw InvalidArgument("degrees must be nonnegative");
  }
  mpz_class nu;
  mpz_bin_ui(nu.get_mpz_t(), mpz_class(degrees[0] + t).get_mpz_t(), t);
  for (int i = 1; i <= n; ++i) nu *= degrees[i] + 1;
  return nu;
}

mpz_class delta_lcm(int l, int h) {
  if (l < 1 || h < 1) throw InvalidArgument("delta needs l, h >= 1");
  if (l > 30 || h > 6) throw DeskScaleExceeded("delta is enumerated only for l <= 30 and h <= 6");
  mpz_class acc = 1;
  // Nondecreasing factor sequences; every product is reached once.
  std::function<void(int, int, int, const mpz_class&)> walk = [&](int parts, int min_part, int budget,
                                                                 const mpz_class& prod) {
    if (parts > 0) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), prod.get_mpz_t());
    if (parts == h) return;
    for (int i = min_part; i <= budget; ++i) walk(parts + 1, i, budget - i, prod * i);
  };
  walk(0, 1, l, mpz_class(1));
  return acc;
}

BoundKind parse_bound_kind(const std::string& s) {
  if (s == "intro") return BoundKind::Intro;
  if (s == "principal") return BoundKind::Principal;
  if (s == "reduit") return BoundKind::Reduit;
  throw InvalidArgument("unknown bound kind '" + s + "' (intro, principal, reduit)");
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::Intro: return "intro";
    case BoundKind::Principal: return "principal";
    case BoundKind::Reduit: return "reduit";
  }
  return "?";
}

TheoremBound theorem_bound(BoundKind kind, const BoundInstance& inst, mpfr_prec_t prec) {
  inst.validate();
  const int n = inst.n, d = inst.degree;
  TheoremBound r;
  Interval lfe = inst.log_frak_e.eval(prec);
  if (kind == BoundKind::Intro) {
    if (!inst.archimedean) throw KindMismatch("the introductory bound is archimedean only");
    const LogLinear& la = inst.log_a[0];
    for (const auto& a : inst.log_a) {
      LogLinear diff = a - la;
      if (diff.is_exact_zero()) continue;
      Interval dv = diff.eval(prec);
      if (!dv.contains_zero() || dv.width_d() > 1e-30) throw KindMismatch("the introductory bound needs a uniform log a");
    }
    r.frak_a = compute_frak_a(d, inst.log_frak_e, true, mpz_class(0), la, prec);
    r.constant_log = log_6n(n) * mpq_class(200L * n * n);
    Interval w = inst.log_b.eval(prec) + Interval(r.frak_a, prec) * lfe;
    r.factor = LogScaleReal::from_integer(r.frak_a).pow(mpq_class(1, inst.t)) * positive(w) *
               degree_ratio(d, la, inst.log_frak_e, prec).pow(mpq_class(n, inst.t));
    r.branch = "intro";
    r.value = LogScaleReal(-1, r.constant_log + r.factor.log_mag());
    return r;
  }

  r.frak_a = compute_frak_a(d, inst.log_frak_e, inst.archimedean, inst.p, sum_of(inst.log_a), prec);
  LogScaleReal main;
  if (kind == BoundKind::Principal) {
    r.constant_log = log_6n(n) * mpq_class(203L * n * n);
    main = principal_factor(inst, r.frak_a, prec);
    r.branch = "U";
  } else {
    r.constant_log = log_6n(n) * mpq_class(200L * n * n);
    Interval w;
    if (inst.t == 1 && inst.beta10_nonzero) {
      w = inst.log_b.eval(prec) + lfe + Interval(static_cast<long>(d), prec) * Interval::log_of(r.frak_a, prec);
      r.refined = true;
    } else {
      w = inst.log_b.eval(prec) + Interval(r.frak_a, prec) * lfe;
    }
    mpq_class inv_t(1, inst.t);
    main = LogScaleReal::from_integer(r.frak_a).pow(inv_t) * positive(w);
    for (int j = 0; j < n; ++j) main *= degree_ratio(d, inst.log_a[j], inst.log_frak_e, prec).pow(inv_t);
    r.branch = "V";
  }
  r.factor = main;
  if (!inst.archimedean) {
    LogScaleReal lp = positive(LogLinear::log_of(inst.p), prec);
    if (compare(lp, main) > 0) {
      r.factor = lp;
      r.branch = "log p";
    }
  }
  r.value = LogScaleReal(-1, r.constant_log + r.factor.log_mag());
  return r;
}

MonotonicityReport bound_monotonicity_suite(const BoundInstance& inst, mpfr_prec_t prec) {
  inst.validate();
  auto magnitude = [&](const BoundInstance& b) {
    mpz_class fa = compute_frak_a(b.degree, b.log_frak_e, b.archimedean, b.p, sum_of(b.log_a), prec);
    LogScaleReal f = principal_factor(b, fa, prec);
    if (!b.archimedean) f = max(f, positive(LogLinear::log_of(b.p), prec));
    return LogLinear(log_6n(b.n) * mpq_class(203L * b.n * b.n) + f.log_mag());
  };
  LogLinear base = magnitude(inst);
  MonotonicityReport r;
  BoundInstance b = inst;
  b.log_b += LogLinear::rational(1);
  r.in_log_b = compare(magnitude(b), base) > 0;
  r.in_log_a = true;
  for (int j = 0; j < inst.n; ++j) {
    BoundInstance a = inst;
    a.log_a[j] += LogLinear::rational(1);
    r.in_log_a = r.in_log_a && compare(magnitude(a), base) >= 0;
  }
  BoundInstance dd = inst;
  dd.degree += 1;
  r.in_degree = compare(magnitude(dd), base) >= 0;
  return r;
}

}  // namespace adelic
