#include "adelic/io/json_io.hpp"

#include <fstream>

#include "adelic/errors.hpp"
#include "adelic/numeric/integers.hpp"

namespace adelic::io {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<int>();
}

std::vector<int> one_based_indices(const Json& j, int n) {
  std::vector<int> out;
  for (const auto& e : j) {
    int i = int_from_json(e, "index");
    if (i < 1 || i > n) throw ParseError("index out of range 1.." + std::to_string(n));
    out.push_back(i - 1);
  }
  return out;
}

}  // namespace

void check_format(const Json& j) {
  if (!j.is_object() || !j.contains("format") || j["format"] != kFormat) {
    throw ParseError(std::string("expected \"format\": \"") + kFormat + "\"");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << j.dump(2) << "\n";
}

mpq_class rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return mpq_class(mpz_class(j.dump()));
  // Shortest round-trip text of the double, read exactly.
  if (j.is_number_float()) return parse_rational(j.dump());
  throw ParseError("expected a rational, got " + j.dump());
}

NumberField field_from_json(const Json& j) {
  if (j.is_null()) return NumberField::rationals();
  if (!j.is_string()) throw ParseError("field must be a polynomial string");
  return NumberField::parse(j.get<std::string>());
}

FieldElement element_from_json(const NumberField& k, const Json& j) {
  if (j.is_array()) {
    std::vector<mpq_class> c;
    for (const auto& e : j) c.push_back(rational_from_json(e));
    if (static_cast<int>(c.size()) != k.degree()) throw ParseError("element needs " + std::to_string(k.degree()) + " coordinates");
    return k.from_coeffs(c);
  }
  if (j.is_string()) return k.parse_element(j.get<std::string>());
  return k.from_rational(rational_from_json(j));
}

KMatrix matrix_from_json(const NumberField& k, const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  KMatrix m;
  for (const auto& row : j) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    KVector r;
    for (const auto& e : row) r.push_back(element_from_json(k, e));
    if (!m.empty() && r.size() != m[0].size()) throw DimensionMismatch("ragged matrix");
    m.push_back(std::move(r));
  }
  return m;
}

LogLinear log_value_from_json(const Json& j) {
  if (j.is_object()) {
    mpq_class c = j.contains("coeff") ? rational_from_json(j["coeff"]) : mpq_class(1);
    mpq_class m = rational_from_json(need(j, "log_of"));
    if (m <= 0) throw ParseError("log_of needs a positive argument");
    return LogLinear::log_of(m) * c;
  }
  return LogLinear::rational(rational_from_json(j));
}

BoundInstance bound_instance_from_json(const Json& j) {
  check_format(j);
  BoundInstance bi;
  bi.n = int_from_json(need(j, "n"), "n");
  bi.t = j.contains("t") ? int_from_json(j["t"], "t") : 1;
  bi.degree = j.contains("D") ? int_from_json(j["D"], "D") : 1;
  std::string place = j.value("place", std::string("arch"));
  if (place == "ultrametric" || place == "padic") {
    bi.archimedean = false;
    bi.p = mpz_class(rational_from_json(need(j, "p")));
  } else if (place != "arch" && place != "archimedean") {
    throw ParseError("place must be \"arch\" or \"ultrametric\"");
  }
  if (j.contains("log_frak_e")) bi.log_frak_e = log_value_from_json(j["log_frak_e"]);
  const Json& la = need(j, "log_a");
  if (la.is_array()) {
    for (const auto& e : la) bi.log_a.push_back(log_value_from_json(e));
  } else {
    bi.log_a.assign(bi.n, log_value_from_json(la));
  }
  bi.log_b = log_value_from_json(need(j, "log_b"));
  bi.s = j.contains("s") ? int_from_json(j["s"], "s") : bi.t;
  if (j.contains("I")) {
    bi.free_family = one_based_indices(j["I"], bi.n);
  } else if (j.contains("I_size")) {
    int m = int_from_json(j["I_size"], "I_size");
    if (m < 1 || m > bi.n) throw ParseError("I_size out of range");
    for (int i = 0; i < m; ++i) bi.free_family.push_back(i);
  }
  bi.beta10_nonzero = j.value("beta10_nonzero", true);
  bi.validate();
  return bi;
}

BoundKind bound_kind_from_json(const Json& j, BoundKind fallback) {
  if (!j.contains("kind")) return fallback;
  return parse_bound_kind(j["kind"].get<std::string>());
}

LinFormInstance linform_instance_from_json(const Json& j) {
  check_format(j);
  LinFormInstance inst;
  inst.k = field_from_json(j.value("field", Json()));
  for (const auto& a : need(j, "alpha")) inst.alpha.push_back(element_from_json(inst.k, a));
  const Json& u = need(j, "u");
  std::string kind = need(u, "kind").get<std::string>();
  if (kind == "arch") {
    inst.log_kind = LogKind::Archimedean;
    if (u.contains("branches")) {
      for (const auto& m : u["branches"]) inst.branches.push_back(m.get<long>());
    } else {
      inst.branches.assign(inst.alpha.size(), 0);
    }
    inst.v0 = inst.k.place(j.value("v0", std::string("inf0")));
  } else if (kind == "padic") {
    inst.log_kind = LogKind::Padic;
    std::string p = mpz_class(rational_from_json(need(u, "p"))).get_str();
    inst.v0 = inst.k.place(j.value("v0", p));
    if (inst.v0.is_archimedean() || inst.v0.p != mpz_class(p)) throw ParseError("v0 must lie above u.p");
  } else {
    throw ParseError("u.kind must be \"arch\" or \"padic\"");
  }
  inst.beta = matrix_from_json(inst.k, need(j, "beta"));
  if (j.contains("declared_s") && !j["declared_s"].is_null()) inst.declared_s = int_from_json(j["declared_s"], "declared_s");
  if (j.contains("declared_I") && !j["declared_I"].is_null()) {
    inst.declared_I = one_based_indices(j["declared_I"], inst.n());
  }
  inst.kind = bound_kind_from_json(j, BoundKind::Principal);
  return inst;
}

AdelicBundle bundle_from_json(const Json& j) {
  NumberField k = field_from_json(j.value("field", Json()));
  int dim = int_from_json(need(j, "dim"), "dim");
  std::vector<NormSpec> specs;
  if (j.contains("deviations")) {
    for (const auto& d : j["deviations"]) {
      Place v = k.place(need(d, "place").get<std::string>());
      KMatrix f = matrix_from_json(k, need(d, "matrix"));
      specs.push_back(v.is_archimedean() ? NormSpec::archimedean(k, v, f) : NormSpec::finite(k, v, f));
    }
  }
  return AdelicBundle(k, dim, specs);
}

Json bundle_to_json(const AdelicBundle& e) {
  const NumberField& k = e.field();
  Json j;
  j["field"] = k.poly_string();
  j["dim"] = e.dim();
  Json devs = Json::array();
  for (const auto& [label, spec] : e.deviations()) {
    Json d;
    d["place"] = label;
    if (spec.frame()) {
      Json m = Json::array();
      for (const auto& row : *spec.frame()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(k.to_string(x));
        m.push_back(r);
      }
      d["matrix"] = m;
    }
    devs.push_back(d);
  }
  j["deviations"] = devs;
  return j;
}

Interval interval_from_json(const Json& j, mpfr_prec_t prec) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find_first_of(".eE") != std::string::npos) return Interval::from_decimal(s, prec);
    return Interval(parse_rational(s), prec);
  }
  if (j.is_number_float()) return Interval::from_decimal(j.dump(), prec);
  return Interval(rational_from_json(j), prec);
}

std::string decimal(const Interval& x, int digits) { return x.to_string(digits); }

Json to_json(const LogScaleReal& x) {
  Json j;
  j["sign"] = x.sign() > 0 ? "+" : x.sign() < 0 ? "-" : "0";
  j["log_magnitude"] = x.is_zero() ? Json() : Json(decimal(x.log_magnitude(256)));
  j["log_magnitude_exact"] = x.is_zero() ? Json() : Json(x.log_mag().to_string());
  return j;
}

Json to_json(const TheoremBound& b) {
  Json j = to_json(b.value);
  j["log_magnitude_decimal"] = j["log_magnitude"];
  j["branch"] = b.branch;
  j["constant_log"] = b.constant_log.to_string();
  j["factor"] = to_json(b.factor);
  j["refined"] = b.refined;
  j["frak_a"] = b.frak_a.get_str();
  return j;
}

Json to_json(const ParamSet& ps, const ParamProperties& props) {
  Json j;
  j["C0"] = ps.c0.get_str();
  j["y"] = ps.y;
  j["frak_a"] = ps.frak_a.get_str();
  j["S0"] = ps.s0.get_str();
  j["S"] = ps.s.get_str();
  j["T_tilde0"] = to_json(ps.t_tilde0);
  j["T_tilde"] = to_json(ps.t_tilde);
  Json d = Json::array();
  for (const auto& x : ps.d_tilde) d.push_back(to_json(x));
  j["D_tilde"] = d;
  j["U_minus1"] = to_json(ps.u_minus1);
  j["U0"] = to_json(ps.u0);
  j["U0_is_log_p"] = ps.u0_is_log_p;
  j["properties"] = {{"i", props.degrees_below_t0},
                     {"ii", props.d0_nonzero},
                     {"iii", props.frak_a_log_bound},
                     {"iv", props.jet_order_bound},
                     {"log_x_trivial", decimal(props.log_x_trivial)},
                     {"x_at_most_one", props.x_at_most_one}};
  return j;
}

Json to_json(const HeightReport& h) {
  Json j;
  j["value"] = decimal(h.value.eval(128));
  j["value_exact"] = h.value.to_string();
  Json places = Json::array();
  for (const auto& c : h.per_place) {
    places.push_back({{"p_or_inf", c.place.is_archimedean() ? c.place.label : c.place.p.get_str()},
                      {"place", c.place.label},
                      {"n_v", c.local_degree},
                      {"contribution", decimal(c.contribution.eval(128))}});
  }
  j["places"] = places;
  return j;
}

Json to_json(const VerificationReport& rep) {
  Json j;
  j["format"] = kFormat;
  Json lam = Json::array();
  for (const auto& x : rep.lambda.abs) lam.push_back(decimal(x));
  j["lambda_abs"] = lam;
  j["max_log_lambda"] = decimal(rep.max_log_lambda.eval(128));
  j["bound"] = to_json(rep.bound);
  j["margin_log"] = rep.margin.is_zero() ? Json() : Json(decimal(rep.margin.log_magnitude(256)));
  j["margin_sign"] = rep.margin.sign();
  j["pass"] = rep.pass;
  j["hypothesis_status"] = to_string(rep.hypotheses.status);
  Json fam = Json::array();
  for (int i : rep.hypotheses.free_family) fam.push_back(i + 1);
  j["hypotheses"] = {{"rank", rep.hypotheses.rank}, {"I", fam}, {"s", rep.hypotheses.s},
                     {"beta_rank", rep.hypotheses.beta_rank}};
  j["strong_domain"] = rep.lambda.strong_domain;
  const BoundInstance& bi = rep.bound_instance;
  Json la = Json::array();
  for (const auto& a : bi.log_a) la.push_back(decimal(a.eval(128)));
  j["bound_instance"] = {{"n", bi.n}, {"t", bi.t}, {"D", bi.degree}, {"place", bi.archimedean ? "arch" : "ultrametric"},
                         {"log_frak_e", bi.log_frak_e.to_string()}, {"log_a", la},
                         {"log_b", decimal(bi.log_b.eval(128))}, {"s", bi.s}};
  if (!bi.archimedean) j["bound_instance"]["p"] = bi.p.get_str();
  return j;
}

}  // namespace adelic::io
