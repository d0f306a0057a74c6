#include <darc/serialize.hpp>

#include <cmath>
#include <sstream>
#include <utility>

#include <darc/errors.hpp>
#include <darc/verify.hpp>

namespace darc {

namespace {

const Json& require_key(const Json& j, const char* key, const char* what) {
  if (!j.is_object())
    throw DomainError(std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    throw DomainError(std::string(what) + " is missing the \"" + key + "\" entry");
  return *it;
}

double as_number(const Json& j, const char* what) {
  if (!j.is_number()) throw DomainError(std::string(what) + " must be a number");
  return j.get<double>();
}

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw DomainError(std::string(what) + " must be an integer");
  return j.get<int>();
}

bool as_bool(const Json& j, const char* what) {
  if (!j.is_boolean()) throw DomainError(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) throw DomainError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::string describe(Complex z) {
  std::ostringstream os;
  os << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

}  // namespace

Json poly_to_json(const Poly& p) {
  Json a = Json::array();
  for (int k = 0; k <= p.degree(); ++k) {
    Complex c = p.coeff(k);
    a.push_back(Json::array({c.real(), c.imag()}));
  }
  return a;
}

Poly poly_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw DomainError("a polynomial must be a nonempty array of [re, im] pairs");
  CoeffVec c(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    const Json& e = j[k];
    if (!e.is_array() || e.size() != 2)
      throw DomainError("a polynomial coefficient must be an [re, im] pair");
    c(static_cast<Eigen::Index>(k)) =
        Complex(as_number(e[0], "coefficient real part"), as_number(e[1], "coefficient imaginary part"));
  }
  return Poly(std::move(c));
}

Json rational_to_json(const Rational& r) {
  Json j = Json::object();
  j["num"] = poly_to_json(r.num());
  j["den"] = poly_to_json(r.den());
  return j;
}

Rational rational_from_json(const Json& j) {
  return Rational(poly_from_json(require_key(j, "num", "a rational function")),
                  poly_from_json(require_key(j, "den", "a rational function")));
}

Json arc_to_json(const CircleArc& arc) {
  Json j = Json::object();
  j["alpha"] = arc.alpha();
  j["beta"] = arc.beta();
  return j;
}

CircleArc arc_from_json(const Json& j) {
  return CircleArc::make(as_number(require_key(j, "alpha", "an arc"), "arc alpha"),
                         as_number(require_key(j, "beta", "an arc"), "arc beta"));
}

Json quadrature_to_json(const QuadratureConfig& cfg) {
  Json j = Json::object();
  j["rel_tol"] = cfg.rel_tol;
  j["abs_tol"] = cfg.abs_tol;
  j["max_subdivisions"] = cfg.max_subdivisions;
  j["endpoint_margin"] = cfg.endpoint_margin;
  j["rho"] = cfg.rho;
  return j;
}

QuadratureConfig quadrature_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("quadrature settings must be a JSON object");
  QuadratureConfig cfg;
  if (j.contains("rel_tol")) cfg.rel_tol = as_number(j.at("rel_tol"), "rel_tol");
  if (j.contains("abs_tol")) cfg.abs_tol = as_number(j.at("abs_tol"), "abs_tol");
  if (j.contains("max_subdivisions"))
    cfg.max_subdivisions = as_int(j.at("max_subdivisions"), "max_subdivisions");
  if (j.contains("endpoint_margin"))
    cfg.endpoint_margin = as_number(j.at("endpoint_margin"), "endpoint_margin");
  if (j.contains("rho")) cfg.rho = as_number(j.at("rho"), "rho");
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
    throw DomainError("quadrature tolerances must be positive");
  if (cfg.max_subdivisions < 1)
    throw DomainError("max_subdivisions must be at least 1");
  if (!(cfg.endpoint_margin >= 0.0) || !(cfg.endpoint_margin < 0.5))
    throw DomainError("endpoint_margin must lie in [0, 1/2)");
  if (!(cfg.rho > 0.0) || !(cfg.rho < 1.0))
    throw DomainError("quadrature rho must lie strictly inside (0, 1)");
  return cfg;
}

Json weight_to_json(const LogWeight& w) {
  Json j = Json::object();
  switch (w.kind()) {
    case LogWeight::Kind::constant:
      j["kind"] = "constant";
      j["level"] = w.declared_value();
      break;
    case LogWeight::Kind::abs_squared:
      j["kind"] = "abs_squared";
      j["f"] = rational_to_json(w.first());
      break;
    case LogWeight::Kind::abs_squared_ratio:
      j["kind"] = "abs_squared_ratio";
      j["f"] = rational_to_json(w.first());
      j["g"] = rational_to_json(w.second());
      break;
    case LogWeight::Kind::one_minus_abs_squared:
      j["kind"] = "one_minus_abs_squared";
      j["s"] = rational_to_json(w.first());
      break;
  }
  return j;
}

LogWeight weight_from_json(const Json& j) {
  std::string kind = as_string(require_key(j, "kind", "a weight"), "weight kind");
  if (kind == "constant")
    return LogWeight::constant(as_number(require_key(j, "level", "a constant weight"), "level"));
  if (kind == "abs_squared")
    return LogWeight::abs_squared(rational_from_json(require_key(j, "f", "an abs_squared weight")));
  if (kind == "abs_squared_ratio")
    return LogWeight::abs_squared_ratio(
        rational_from_json(require_key(j, "f", "an abs_squared_ratio weight")),
        rational_from_json(require_key(j, "g", "an abs_squared_ratio weight")));
  if (kind == "one_minus_abs_squared")
    return LogWeight::one_minus_abs_squared(
        rational_from_json(require_key(j, "s", "a one_minus_abs_squared weight")));
  throw DomainError("unknown weight kind \"" + kind + "\"");
}

Json element_to_json(const AnalyticElement& e) {
  Json j = Json::object();
  j["label"] = e.label();
  j["rational"] = rational_to_json(e.rational_part());
  Json factors = Json::array();
  for (const ExpFactor& f : e.factors()) {
    Json fj = Json::object();
    fj["sign"] = f.sign;
    fj["arc"] = arc_to_json(f.arc);
    fj["weight"] = weight_to_json(f.weight);
    factors.push_back(std::move(fj));
  }
  j["factors"] = std::move(factors);
  return j;
}

AnalyticElement element_from_json(const Json& j, const QuadratureConfig& cfg) {
  AnalyticElement e(rational_from_json(require_key(j, "rational", "an element")));
  if (j.contains("label")) e.set_label(as_string(j.at("label"), "element label"));
  const Json& factors = require_key(j, "factors", "an element");
  if (!factors.is_array()) throw DomainError("element factors must be an array");
  for (const Json& fj : factors) {
    double sign = as_number(require_key(fj, "sign", "a factor"), "factor sign");
    if (sign != 1.0 && sign != -1.0)
      throw DomainError("a factor sign must be +1 or -1");
    e.multiply_exp(weight_from_json(require_key(fj, "weight", "a factor")),
                   arc_from_json(require_key(fj, "arc", "a factor")), sign, cfg);
  }
  return e;
}

Json matrix_to_json(const Matrix2Fn& m, const QuadratureConfig& cfg) {
  Json j = Json::object();
  j["quadrature"] = quadrature_to_json(cfg);
  j["a11"] = element_to_json(m.a11);
  j["a12"] = element_to_json(m.a12);
  j["a21"] = element_to_json(m.a21);
  j["a22"] = element_to_json(m.a22);
  return j;
}

Matrix2Fn matrix_from_json(const Json& j) {
  QuadratureConfig cfg = quadrature_from_json(require_key(j, "quadrature", "a matrix"));
  Matrix2Fn m;
  m.a11 = element_from_json(require_key(j, "a11", "a matrix"), cfg);
  m.a12 = element_from_json(require_key(j, "a12", "a matrix"), cfg);
  m.a21 = element_from_json(require_key(j, "a21", "a matrix"), cfg);
  m.a22 = element_from_json(require_key(j, "a22", "a matrix"), cfg);
  return m;
}

Json report_to_json(const Report& r) {
  Json j = Json::object();
  j["input"] = r.input;
  j["config"] = r.config_echo;
  j["scope"] = r.scope;
  Json checks = Json::array();
  for (const ResidualCheck& c : r.checks) {
    Json cj = Json::object();
    cj["name"] = c.name;
    cj["value"] = c.value;
    cj["tolerance"] = c.tolerance;
    cj["pass"] = c.pass;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["verdict"] = r.verdict;
  return j;
}

Report report_from_json(const Json& j) {
  Report r;
  r.input = as_string(require_key(j, "input", "a report"), "report input");
  r.config_echo = as_string(require_key(j, "config", "a report"), "report config");
  r.scope = as_string(require_key(j, "scope", "a report"), "report scope");
  const Json& checks = require_key(j, "checks", "a report");
  if (!checks.is_array()) throw DomainError("report checks must be an array");
  for (const Json& cj : checks) {
    ResidualCheck c;
    c.name = as_string(require_key(cj, "name", "a check"), "check name");
    c.value = as_number(require_key(cj, "value", "a check"), "check value");
    c.tolerance = as_number(require_key(cj, "tolerance", "a check"), "check tolerance");
    c.pass = as_bool(require_key(cj, "pass", "a check"), "check pass");
    r.checks.push_back(std::move(c));
  }
  r.verdict = as_bool(require_key(j, "verdict", "a report"), "report verdict");
  return r;
}

ProblemSpec problem_from_json(const Json& j) {
  if (!j.is_object()) throw DomainError("a problem description must be a JSON object");
  for (const auto& item : j.items()) {
    const std::string& key = item.key();
    if (key != "s" && key != "arc" && key != "eps" && key != "quadrature" &&
        key != "grid_samples" && key != "residual_tol")
      throw DomainError("unknown entry \"" + key + "\" in the problem description");
  }
  ProblemSpec p;
  p.s = rational_from_json(require_key(j, "s", "a problem description"));
  for (const Complex& pole : p.s.poles())
    if (std::abs(pole) <= 1.0 + 1e-9)
      throw NotAnalyticError("the function has a pole in the closed unit disk at " + describe(pole),
                             pole);
  if (j.contains("arc")) {
    const Json& a = j.at("arc");
    if (a.is_string()) {
      if (a.get<std::string>() != "full")
        throw DomainError("an arc given as a string must be \"full\"");
      p.arc = CircleArc::full_circle();
    } else {
      p.arc = arc_from_json(a);
    }
  }
  if (j.contains("eps")) p.eps = as_number(j.at("eps"), "eps");
  if (j.contains("quadrature")) p.quad = quadrature_from_json(j.at("quadrature"));
  if (j.contains("grid_samples")) p.grid_samples = as_int(j.at("grid_samples"), "grid_samples");
  if (j.contains("residual_tol")) {
    p.residual_tol = as_number(j.at("residual_tol"), "residual_tol");
    if (!(p.residual_tol > 0.0)) throw DomainError("residual_tol must be positive");
  }
  return p;
}

Json problem_to_json(const ProblemSpec& p) {
  Json j = Json::object();
  j["s"] = rational_to_json(p.s);
  j["arc"] = p.arc.is_full() ? Json("full") : arc_to_json(p.arc);
  j["eps"] = p.eps;
  j["quadrature"] = quadrature_to_json(p.quad);
  j["grid_samples"] = p.grid_samples;
  j["residual_tol"] = p.residual_tol;
  return j;
}

}  // namespace darc
