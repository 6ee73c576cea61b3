#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "adelic/baker/baker_bound.hpp"
#include "adelic/bundles/bundle.hpp"
#include "adelic/heights/heights.hpp"
#include "adelic/linform/linform.hpp"

namespace adelic::io {

using Json = nlohmann::json;

inline constexpr const char* kFormat = "adelic-baker/1";

// ParseError unless j["format"] == kFormat.
void check_format(const Json& j);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Rationals are integers, "a/b" strings or decimal strings/numbers (read
// exactly: 0.69 is 69/100).
mpq_class rational_from_json(const Json& j);
// "x^2+1"; absent means Q.
NumberField field_from_json(const Json& j);
// "[1/2, 3]", a rational, or an array of power-basis coordinates.
FieldElement element_from_json(const NumberField& k, const Json& j);
KMatrix matrix_from_json(const NumberField& k, const Json& j);
// A rational, or {"coeff": q, "log_of": m} for q log m.
LogLinear log_value_from_json(const Json& j);

// {format, n, t, D, place: "arch"|"ultrametric", p, log_frak_e, log_a:[...],
//  log_b, s, I:[1-based] | I_size, beta10_nonzero, kind}
BoundInstance bound_instance_from_json(const Json& j);
BoundKind bound_kind_from_json(const Json& j, BoundKind fallback);

// {format, field, alpha, u:{kind:"arch", branches}|{kind:"padic", p}, beta,
//  v0, declared_s, declared_I (1-based), kind}
LinFormInstance linform_instance_from_json(const Json& j);

// {field, dim, deviations:[{place, matrix}]}; the matrix is the frame F
// with ||x||_v = |F x|_2 (archimedean) or |F x|_max (finite).
AdelicBundle bundle_from_json(const Json& j);
// Deviations given only through a Gram matrix are listed without a frame.
Json bundle_to_json(const AdelicBundle& e);

// Decimal strings ("0.1", "1e-3") become enclosures, rationals are exact.
Interval interval_from_json(const Json& j, mpfr_prec_t prec);

std::string decimal(const Interval& x, int digits = 20);

Json to_json(const LogScaleReal& x);
Json to_json(const TheoremBound& b);
Json to_json(const ParamSet& ps, const ParamProperties& props);
Json to_json(const HeightReport& h);
Json to_json(const VerificationReport& rep);

}  // namespace adelic::io
