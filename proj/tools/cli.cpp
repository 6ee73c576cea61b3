#include "cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <ostream>
#include <sstream>

#include "acceptance.hpp"
#include "adelic/bundles/sym_power.hpp"
#include "adelic/errors.hpp"
#include "adelic/io/json_io.hpp"
#include "adelic/siegel/siegel.hpp"

namespace adelic::cli {

namespace {

using io::Json;

struct Globals {
  long prec = 128;
  long padic_digits = 30;
  std::string json_path;
  std::uint64_t seed = acceptance::Options{}.seed;

  PrecisionContext ctx() const {
    PrecisionContext c{prec, padic_digits};
    c.validate();
    return c;
  }
};

std::string log_text(const LogLinear& l, mpfr_prec_t prec) {
  return io::decimal(l.eval(prec)) + (l.is_exact() ? "  (= " + l.to_string() + ")" : "");
}

std::string log_scale_text(const LogScaleReal& x) {
  if (x.is_zero()) return "0";
  return std::string(x.sign() < 0 ? "-" : "") + "exp(" + io::decimal(x.log_magnitude(256)) + ")";
}

void emit(const Globals& g, const Json& j) {
  if (!g.json_path.empty()) io::write_json_file(g.json_path, j);
}

// --- places / height ---------------------------------------------------------

int run_places(const Globals& g, const std::string& field, unsigned long bound, bool lenient, std::ostream& out) {
  NumberField k = NumberField::parse(field);
  std::vector<unsigned long> skipped;
  std::vector<Place> places = lenient ? k.enumerate_places_lenient(bound, &skipped) : k.enumerate_places(bound);
  Json list = Json::array();
  out << "field " << k.poly_string() << ", degree " << k.degree() << "\n";
  out << std::left << std::setw(10) << "place" << std::setw(10) << "kind" << std::setw(6) << "n_v" << "p\n";
  for (const Place& v : places) {
    const char* kind = v.kind == PlaceKind::Real ? "real" : v.kind == PlaceKind::Complex ? "complex" : "finite";
    std::string p = v.is_archimedean() ? "-" : v.p.get_str();
    out << std::setw(10) << v.label << std::setw(10) << kind << std::setw(6) << v.local_degree << p << "\n";
    list.push_back({{"label", v.label}, {"kind", kind}, {"n_v", v.local_degree}, {"p", p}});
  }
  if (!skipped.empty()) {
    out << "skipped primes:";
    for (auto p : skipped) out << " " << p;
    out << "\n";
  }
  emit(g, {{"format", io::kFormat}, {"field", k.poly_string()}, {"places", list}, {"skipped", skipped}});
  return kExitOk;
}

int run_height(const Globals& g, const std::string& field, const std::string& element, std::ostream& out) {
  NumberField k = NumberField::parse(field);
  FieldElement x = k.parse_element(element);
  HeightReport h = weil_height(x, k, g.ctx());
  out << "h(" << k.to_string(x) << ") = " << log_text(h.value, g.prec) << "\n";
  out << std::left << std::setw(10) << "place" << std::setw(6) << "n_v" << "n_v log max{1, |x|_v}\n";
  for (const auto& c : h.per_place) {
    out << std::setw(10) << c.place.label << std::setw(6) << c.local_degree << io::decimal(c.contribution.eval(g.prec))
        << "\n";
  }
  Json j = io::to_json(h);
  j["format"] = io::kFormat;
  j["field"] = k.poly_string();
  j["element"] = k.to_string(x);
  emit(g, j);
  return kExitOk;
}

// --- bundle --------------------------------------------------------------------

int run_bundle(const Globals& g, const std::string& action, const std::string& in, int ell, std::ostream& out) {
  AdelicBundle e = io::bundle_from_json(io::read_json_file(in));
  PrecisionContext ctx = g.ctx();
  Json j{{"format", io::kFormat}, {"action", action}};
  if (action == "degree" || action == "slope") {
    LogLinear v = action == "degree" ? degree(e, ctx) : slope(e, ctx);
    out << action << " = " << log_text(v, g.prec) << "\n";
    j["value"] = io::decimal(v.eval(g.prec));
    j["exact"] = v.to_string();
  } else if (action == "maxslope") {
    MaxSlope ms = max_slope(e, ctx);
    out << "max slope " << (ms.exact ? "= " : ">= ") << log_text(ms.value, g.prec) << "\n";
    j["value"] = io::decimal(ms.value.eval(g.prec));
    j["exact"] = ms.exact;
  } else if (action == "dual") {
    AdelicBundle d = dual(e);
    out << "degree of the dual = " << log_text(degree(d, ctx), g.prec) << "\n";
    j["bundle"] = io::bundle_to_json(d);
    out << j["bundle"].dump(2) << "\n";
  } else if (action == "sym") {
    LogLinear v = sym_max_slope_bound(e, ell, ctx);
    out << "max slope of Sym^" << ell << " <= " << log_text(v, g.prec) << "\n";
    j["ell"] = ell;
    j["value"] = io::decimal(v.eval(g.prec));
  } else {
    throw ParseError("bundle action must be degree, slope, maxslope, dual or sym");
  }
  emit(g, j);
  return kExitOk;
}

// --- siegel --------------------------------------------------------------------

std::vector<IntVector> integer_matrix(const Json& j) {
  std::vector<IntVector> m;
  for (const auto& row : j) {
    IntVector r;
    for (const auto& e : row) {
      mpq_class q = io::rational_from_json(e);
      if (q.get_den() != 1) throw ParseError("the classical lemma needs integer entries");
      r.push_back(q.get_num());
    }
    m.push_back(r);
  }
  if (m.empty()) throw ParseError("empty matrix");
  return m;
}

Json witness_json(const SiegelWitness& w) {
  Json x = Json::array();
  for (const auto& c : w.x) x.push_back(c.get_str());
  return {{"x", x}, {"size", io::decimal(w.size)}, {"bound", io::decimal(w.bound)}, {"within_bound", w.within_bound}};
}

void print_witness(const SiegelWitness& w, std::ostream& out) {
  out << "x = (";
  for (std::size_t i = 0; i < w.x.size(); ++i) out << (i ? ", " : "") << w.x[i].get_str();
  out << "), size " << io::decimal(w.size, 12) << ", bound " << io::decimal(w.bound, 12)
      << (w.within_bound ? " (within bound)" : " (OUTSIDE bound)") << "\n";
}

TwistedBundle twisted_from_json(const Json& j) {
  AdelicBundle base = io::bundle_from_json(j.at("bundle"));
  const NumberField& k = base.field();
  TwistedBundle tb{base, k.place(j.value("v0", std::string("inf0"))), io::element_from_json(k, j.at("alpha")),
                   io::matrix_from_json(k, j.at("matrix"))};
  tb.validate();
  return tb;
}

int run_siegel(const Globals& g, const std::string& mode, const std::string& kind, const std::string& in,
               std::ostream& out) {
  Json j = io::read_json_file(in);
  PrecisionContext ctx = g.ctx();
  Json rep{{"format", io::kFormat}, {"mode", mode}, {"kind", kind}};
  if (mode == "bound") {
    if (kind == "classical") {
      auto a = integer_matrix(j.at("matrix"));
      mpz_class amax = 0;
      for (const auto& row : a)
        for (const auto& e : row) amax = std::max(amax, mpz_class(abs(e)));
      Interval b = classical_siegel_bound(static_cast<int>(a.size()), static_cast<int>(a[0].size()), amax, g.prec);
      out << "1 + (nu A)^{mu/(nu-mu)} = " << io::decimal(b) << "\n";
      rep["value"] = io::decimal(b);
    } else {
      LogLinear v;
      if (kind == "bv") {
        std::optional<mpq_class> rd;
        if (j.contains("rd")) rd = io::rational_from_json(j["rd"]);
        v = bombieri_vaaler_bound(io::bundle_from_json(j.at("bundle")), rd, ctx);
      } else if (kind == "absolute") {
        v = absolute_siegel_bound(io::bundle_from_json(j.at("bundle")), ctx);
      } else if (kind == "approx") {
        TwistedBundle tb = twisted_from_json(j);
        v = approx_absolute_siegel_bound(tb, operator_norm_bound(tb, ctx), ctx);
      } else {
        throw ParseError("siegel bound --kind must be classical, bv, absolute or approx");
      }
      out << "height bound " << log_text(v, g.prec) << "\n";
      rep["value"] = io::decimal(v.eval(g.prec));
    }
  } else if (mode == "search") {
    SiegelWitness w;
    if (kind == "classical") {
      w = classical_siegel_search(integer_matrix(j.at("matrix")));
    } else if (kind == "pv") {
      CMatrix a;
      for (const auto& row : j.at("matrix")) {
        std::vector<ComplexInterval> r;
        for (const auto& e : row) r.emplace_back(io::interval_from_json(e, g.prec));
        a.push_back(r);
      }
      ApproxSearchResult r =
          approx_siegel_search(a, j.at("H").get<long>(), io::interval_from_json(j.at("eps"), g.prec));
      w = r.witness;
      rep["hypothesis_holds"] = r.hypothesis_holds;
      rep["rank"] = r.rank;
    } else if (kind == "absolute") {
      w = absolute_siegel_witness(io::bundle_from_json(j.at("bundle")), j.value("max_sup", 50L), ctx);
    } else {
      throw ParseError("siegel search --kind must be classical, pv or absolute");
    }
    print_witness(w, out);
    rep["witness"] = witness_json(w);
  } else {
    throw ParseError("siegel mode must be bound or search");
  }
  emit(g, rep);
  return kExitOk;
}

// --- bound / params / delta -------------------------------------------------------

int run_bound(const Globals& g, const std::string& in, const std::string& kind_flag, std::ostream& out) {
  Json j = io::read_json_file(in);
  BoundInstance bi = io::bound_instance_from_json(j);
  BoundKind kind = kind_flag.empty() ? io::bound_kind_from_json(j, BoundKind::Principal) : parse_bound_kind(kind_flag);
  TheoremBound b = theorem_bound(kind, bi, std::max<long>(g.prec, 256));
  out << to_string(kind) << " bound: log max |Lambda_i| >= " << log_scale_text(b.value) << "\n";
  out << "  constant exponent " << b.constant_log.to_string() << " = " << io::decimal(b.constant_log.eval(g.prec))
      << "\n";
  out << "  factor (" << b.branch << (b.refined ? ", refined" : "") << ") " << log_scale_text(b.factor) << "\n";
  out << "  frak_a = " << b.frak_a.get_str() << "\n";
  Json rep = io::to_json(b);
  rep["format"] = io::kFormat;
  rep["kind"] = to_string(kind);
  emit(g, rep);
  return kExitOk;
}

int run_params(const Globals& g, const std::string& in, std::ostream& out) {
  BoundInstance bi = io::bound_instance_from_json(io::read_json_file(in));
  mpfr_prec_t prec = std::max<long>(g.prec, 256);
  ParamSet ps = compute_params(bi, prec);
  ParamProperties pp = check_param_properties(ps, bi, prec);
  out << "C0 = " << ps.c0.get_str() << "\n"
      << "y = " << ps.y << "\n"
      << "frak_a = " << ps.frak_a.get_str() << "\n"
      << "S0 = C0 frak_a, S = C0^3 frak_a (" << mpz_sizeinbase(ps.s.get_mpz_t(), 10) << " digits)\n"
      << "U_{-1} = " << log_scale_text(ps.u_minus1) << "\n"
      << "U0 = " << log_scale_text(ps.u0) << (ps.u0_is_log_p ? " (log p branch)" : "") << "\n"
      << "T~0 = " << log_scale_text(ps.t_tilde0) << "\n"
      << "T~ = " << log_scale_text(ps.t_tilde) << "\n";
  for (std::size_t i = 0; i < ps.d_tilde.size(); ++i) out << "D~" << i << " = " << log_scale_text(ps.d_tilde[i]) << "\n";
  auto yes = [](bool b) { return b ? "true" : "false"; };
  out << "(i) " << yes(pp.degrees_below_t0) << "  (ii) " << yes(pp.d0_nonzero) << "  (iii) "
      << yes(pp.frak_a_log_bound) << "  (iv) " << yes(pp.jet_order_bound) << "\n"
      << "log x({0}) = " << io::decimal(pp.log_x_trivial, 12) << " (x <= 1: " << yes(pp.x_at_most_one) << ")\n";
  Json rep = io::to_json(ps, pp);
  rep["format"] = io::kFormat;
  emit(g, rep);
  return pp.all() ? kExitOk : kExitFailed;
}

int run_delta(const Globals& g, int l, int h, std::ostream& out) {
  mpz_class d = delta_lcm(l, h);
  out << d.get_str() << "\n";
  emit(g, {{"format", io::kFormat}, {"l", l}, {"h", h}, {"delta", d.get_str()}});
  return kExitOk;
}

// --- verify / selftest ------------------------------------------------------------

int run_verify(const Globals& g, const std::string& in, const std::string& kind_flag, std::ostream& out) {
  LinFormInstance inst = io::linform_instance_from_json(io::read_json_file(in));
  BoundKind kind = kind_flag.empty() ? inst.kind : parse_bound_kind(kind_flag);
  VerificationReport rep = verify_instance(inst, kind, g.ctx());
  for (std::size_t i = 0; i < rep.lambda.abs.size(); ++i) {
    out << "|Lambda_" << i + 1 << "|_v0 = " << io::decimal(rep.lambda.abs[i]) << "\n";
  }
  out << "log max |Lambda_i| = " << io::decimal(rep.max_log_lambda.eval(g.prec)) << "\n";
  out << to_string(kind) << " bound = " << log_scale_text(rep.bound.value) << " (branch " << rep.bound.branch << ")\n";
  out << "margin = " << log_scale_text(rep.margin) << "\n";
  out << "hypotheses " << to_string(rep.hypotheses.status) << ": rank " << rep.hypotheses.rank << ", s "
      << rep.hypotheses.s << "\n";
  if (inst.log_kind == LogKind::Padic && !rep.lambda.strong_domain) {
    out << "note: some |u_j| is not below r^2 (only the free family needs it)\n";
  }
  out << (rep.pass ? "PASS" : "FAIL") << "\n";
  Json j = io::to_json(rep);
  j["kind"] = to_string(kind);
  emit(g, j);
  return rep.pass ? kExitOk : kExitFailed;
}

int run_selftest(const Globals& g, std::ostream& out) {
  acceptance::Options opts;
  opts.seed = g.seed;
  Json lines = Json::array();
  int failed = 0;
  acceptance::run_all(opts, [&](const acceptance::CriterionResult& r) {
    out << acceptance::format_line(r) << std::endl;
    failed += !r.pass;
    lines.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  });
  out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
  emit(g, {{"format", io::kFormat}, {"seed", g.seed}, {"criteria", lines}, {"pass", failed == 0}});
  return failed == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heights, adelic bundles, Siegel lemmas and explicit lower bounds for linear forms in logarithms"};
  app.name("adelic");
  app.require_subcommand(1, 1);
  app.fallthrough();
  Globals g;
  app.add_option("--prec", g.prec, "interval precision in bits")->check(CLI::Range(16L, 1L << 20));
  app.add_option("--padic-digits", g.padic_digits, "absolute p-adic precision")->check(CLI::Range(2L, 100000L));
  app.add_option("--json", g.json_path, "also write a machine-readable report here");
  app.add_option("--seed", g.seed, "seed of the randomized checks in selftest");

  const auto kBoundKinds = CLI::IsMember({"intro", "principal", "reduit"});
  std::string field = "x", element, in, kind, action, mode;
  unsigned long bound = 30;
  bool lenient = false;
  int ell = 2, l = 1, h = 1;

  auto* places = app.add_subcommand("places", "list the places of a field");
  places->add_option("--field", field, "defining polynomial, e.g. x^2+1");
  places->add_option("--bound", bound, "largest prime");
  places->add_flag("--lenient", lenient, "skip primes where places are unsupported");

  auto* height = app.add_subcommand("height", "Weil height with its per-place table");
  height->add_option("--field", field, "defining polynomial");
  height->add_option("--element", element, "\"[1/2, 3]\" or a rational")->required();

  auto* bundle = app.add_subcommand("bundle", "degree, slope, maxslope, dual or sym of a bundle");
  bundle->add_option("action", action)->required()->check(CLI::IsMember({"degree", "slope", "maxslope", "dual", "sym"}));
  bundle->add_option("--in", in, "bundle JSON")->required();
  bundle->add_option("--ell", ell, "power for sym")->check(CLI::Range(1, 64));

  auto* siegel = app.add_subcommand("siegel", "Siegel lemma bounds and witness searches");
  siegel->add_option("mode", mode)->required()->check(CLI::IsMember({"bound", "search"}));
  siegel->add_option("--kind", kind, "classical, bv, absolute, approx | classical, pv, absolute")->required();
  siegel->add_option("--in", in, "input JSON")->required();

  auto* bnd = app.add_subcommand("bound", "evaluate a lower bound for a BoundInstance");
  bnd->add_option("--in", in, "BoundInstance JSON")->required();
  bnd->add_option("--kind", kind, "intro, principal or reduit")->check(kBoundKinds);

  auto* params = app.add_subcommand("params", "parameter set and its four properties");
  params->add_option("--in", in, "BoundInstance JSON")->required();

  auto* delta = app.add_subcommand("delta", "lcm of products i_1...i_h' with sum <= l");
  delta->set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  delta->add_option("--l", l)->required()->check(CLI::Range(1, 1000));
  delta->add_option("--h", h)->required()->check(CLI::Range(1, 1000));

  auto* verify = app.add_subcommand("verify", "evaluate a linear form and compare with the bound");
  verify->add_option("--in", in, "instance JSON")->required();
  verify->add_option("--kind", kind, "intro, principal or reduit")->check(kBoundKinds);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (places->parsed()) return run_places(g, field, bound, lenient, out);
    if (height->parsed()) return run_height(g, field, element, out);
    if (bundle->parsed()) return run_bundle(g, action, in, ell, out);
    if (siegel->parsed()) return run_siegel(g, mode, kind, in, out);
    if (bnd->parsed()) return run_bound(g, in, kind, out);
    if (params->parsed()) return run_params(g, in, out);
    if (delta->parsed()) return run_delta(g, l, h, out);
    if (verify->parsed()) return run_verify(g, in, kind, out);
    if (selftest->parsed()) return run_selftest(g, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailed;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace adelic::cli
