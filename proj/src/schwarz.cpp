#include <darc/schwarz.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include <darc/errors.hpp>
#include <darc/schur.hpp>

namespace darc {

namespace {

// Synthetic division by (z - r); the remainder is discarded.
Poly deflate_root(const Poly& p, Complex r) {
  int n = p.degree();
  CoeffVec q(n);
  Complex carry = p.coeff(n);
  for (int k = n - 1; k >= 0; --k) {
    q(k) = carry;
    carry = p.coeff(k) + r * carry;
  }
  return Poly(std::move(q));
}

}  // namespace

void LogWeight::add_poly(const Poly& p, double mult) {
  if (p.is_zero()) throw NonIntegrableWeightError("weight vanishes identically");
  Poly q = p;
  for (Complex r : q.degree() > 0 ? poly_roots(q) : std::vector<Complex>{}) {
    if (std::abs(std::abs(r) - 1.0) < 1e-9) {
      Complex on_circle = r / std::abs(r);
      q = deflate_root(q, on_circle);
      roots_.push_back({on_circle, mult});
      double ang = std::arg(on_circle);
      if (ang < 0.0) ang += kTwoPi;
      if (ang > kTwoPi - 1e-9) ang = 0.0;
      singular_.push_back(ang);
    }
  }
  double scale = 0.0;
  for (int k = 0; k <= q.degree(); ++k) scale += std::abs(q.coeff(k));
  polys_.push_back({q, mult, scale});
}

LogWeight LogWeight::constant(double value) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw NonIntegrableWeightError("constant weight must be positive");
  LogWeight w;
  w.kind_ = Kind::constant;
  w.value_ = value;
  w.level_ = value;
  return w;
}

LogWeight LogWeight::abs_squared(const Rational& f) {
  if (f.is_zero()) throw NonIntegrableWeightError("squared modulus of the zero function");
  LogWeight w;
  w.kind_ = Kind::abs_squared;
  w.f_ = f;
  if (auto c = constant_squared_modulus(f)) {
    w.level_ = *c;
    return w;
  }
  w.add_poly(f.num(), 2.0);
  w.add_poly(f.den(), -2.0);
  std::sort(w.singular_.begin(), w.singular_.end());
  return w;
}

LogWeight LogWeight::abs_squared_ratio(const Rational& f, const Rational& g) {
  if (f.is_zero() || g.is_zero())
    throw NonIntegrableWeightError("squared modulus ratio needs nonzero functions");
  LogWeight w;
  w.kind_ = Kind::abs_squared_ratio;
  w.f_ = f;
  w.g_ = g;
  auto cf = constant_squared_modulus(f);
  auto cg = constant_squared_modulus(g);
  if (cf && cg) {
    w.level_ = *cf / *cg;
    return w;
  }
  w.add_poly(f.num(), 2.0);
  w.add_poly(f.den(), -2.0);
  w.add_poly(g.num(), -2.0);
  w.add_poly(g.den(), 2.0);
  std::sort(w.singular_.begin(), w.singular_.end());
  return w;
}

LogWeight LogWeight::one_minus_abs_squared(const Rational& s) {
  LogWeight w;
  w.kind_ = Kind::one_minus_abs_squared;
  w.f_ = s;
  if (auto c = constant_squared_modulus(s)) {
    double level = 1.0 - *c;
    if (level <= 1e-12)
      throw NonIntegrableWeightError("1 - |s|^2 vanishes a.e. on the circle");
    w.level_ = level;
    return w;
  }
  auto [a, b] = boundary_squared_modulus_polys(s);
  Poly d = b - a;
  if (d.is_zero()) throw NonIntegrableWeightError("1 - |s|^2 vanishes a.e. on the circle");
  w.add_poly(d, 1.0);
  w.add_poly(s.den(), -2.0);
  std::sort(w.singular_.begin(), w.singular_.end());
  return w;
}

double LogWeight::log_at(double theta, double* conditioning) const {
  if (level_) {
    double v = std::log(*level_);
    if (conditioning) *conditioning = std::abs(v);
    return v;
  }
  Complex t = unit_circle(theta);
  double acc = 0.0, cond = 0.0;
  for (const auto& pt : polys_) {
    double mag = std::abs(pt.p.eval(t));
    double term = pt.mult * std::log(mag);
    acc += term;
    if (conditioning) cond += std::abs(term) + std::abs(pt.mult) * pt.coeff_scale / mag;
  }
  for (const auto& rt : roots_) {
    double mag = std::abs(t - rt.r);
    double term = rt.mult * std::log(mag);
    acc += term;
    if (conditioning) cond += std::abs(term) + std::abs(rt.mult) * 2.0 / mag;
  }
  if (conditioning) *conditioning = cond;
  return acc;
}

namespace {

double delta_arg_walk(Complex z, double th1, double th2, int depth) {
  Complex f1 = unit_circle(th1) - z;
  Complex f2 = unit_circle(th2) - z;
  double closest = std::min(std::abs(f1), std::abs(f2));
  if (closest < 1e-13 || depth > 60)
    throw KernelPoleError("evaluation point lies on the integration arc");
  if (th2 - th1 > 0.5 * closest) {
    double mid = 0.5 * (th1 + th2);
    return delta_arg_walk(z, th1, mid, depth + 1) + delta_arg_walk(z, mid, th2, depth + 1);
  }
  return std::arg(f2 / f1);
}

}  // namespace

Complex arc_kernel_mean(const CircleArc& arc, Complex z) {
  if (std::abs(z) > 1.0 + 1e-12)
    throw DomainError("kernel mean is only taken over the closed disk");
  if (arc.is_full()) return Complex(1.0);
  double da = delta_arg_walk(z, arc.alpha(), arc.beta(), 0);
  double dlog = std::log(std::abs(unit_circle(arc.beta()) - z)) -
                std::log(std::abs(unit_circle(arc.alpha()) - z));
  return Complex(da / kPi - arc.measure(), -dlog / kPi);
}

void require_admissible_point(const CircleArc& arc, Complex z, const QuadratureConfig& cfg) {
  double az = std::abs(z);
  if (az > 1.0 + 1e-12) throw DomainError("evaluation point outside the closed unit disk");
  if (az < 1.0 - 1e-12) return;
  if (arc.is_full())
    throw KernelPoleError("point on the circle lies inside the integration set");
  double margin = cfg.endpoint_margin * arc.length();
  double lo = arc.alpha() - margin;
  double span = arc.length() + 2.0 * margin;
  if (span >= kTwoPi)
    throw KernelPoleError("arc plus margins covers the whole circle");
  double shifted = std::fmod(std::arg(z) - lo, kTwoPi);
  if (shifted < 0.0) shifted += kTwoPi;
  if (shifted <= span)
    throw KernelPoleError("point on the circle lies on the arc closure or its margins");
}

SchwarzIntegrator::SchwarzIntegrator(LogWeight w, CircleArc arc, QuadratureConfig cfg)
    : w_(std::move(w)), arc_(arc), cfg_(cfg) {
  const double a = arc_.alpha(), b = arc_.beta(), len = arc_.length();
  std::vector<double> breaks{a, b};
  std::vector<double> anchors;
  for (double s : w_.singular_angles()) {
    double k0 = std::ceil((a - 0.05 * len - s) / kTwoPi);
    for (double k = k0; s + k * kTwoPi <= b + 0.05 * len + 1e-15; k += 1.0) {
      anchors.push_back(std::clamp(s + k * kTwoPi, a, b));
    }
  }
  for (double anc : anchors) {
    breaks.push_back(anc);
    // geometric ladders toward the singularity from both sides
    double left = anc - a, right = b - anc;
    double scale = 1.0;
    for (int k = 1; k <= 20; ++k) {
      scale *= 0.25;
      if (left > 0.0) breaks.push_back(anc - left * scale);
      if (right > 0.0) breaks.push_back(anc + right * scale);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> edges;
  for (double x : breaks) {
    if (x < a - 1e-15 || x > b + 1e-15) continue;
    if (!edges.empty() && x - edges.back() < 1e-13 * std::max(1.0, len)) continue;
    edges.push_back(x);
  }
  edges.back() = b;

  // Weight-only adaptive preparation: subdivide until the cached panels
  // resolve Int log w to a small share of the absolute budget. Caps are
  // soft; final accuracy is enforced per evaluation point.
  struct Item {
    double a, b, budget;
  };
  std::vector<Item> stack;
  const double total_budget = std::max(cfg_.abs_tol, 1e-12) * len * 0.5;
  for (size_t i = 0; i + 1 < edges.size(); ++i)
    stack.push_back({edges[i], edges[i + 1], total_budget * (edges[i + 1] - edges[i]) / len});
  double integral = 0.0;
  const size_t panel_cap = 4000;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    Panel p;
    p.a = it.a;
    p.b = it.b;
    const double c = 0.5 * (it.a + it.b), h = 0.5 * (it.b - it.a);
    bool finite = true;
    for (int j = 0; j < 7; ++j) {
      p.theta[2 * j] = c - h * GaussKronrod15::xgk[j];
      p.theta[2 * j + 1] = c + h * GaussKronrod15::xgk[j];
    }
    p.theta[14] = c;
    for (int idx = 0; idx < 15; ++idx) {
      p.logw[idx] = w_.log_at(p.theta[idx], &p.noise[idx]);
      p.node[idx] = unit_circle(p.theta[idx]);
      if (!std::isfinite(p.logw[idx])) finite = false;
    }
    if (!finite) {
      if (it.b - it.a < kPanelWidthFloor)
        throw DivergenceError("weight is not log-integrable on the arc");
      double mid = 0.5 * (it.a + it.b);
      stack.push_back({it.a, mid, 0.5 * it.budget});
      stack.push_back({mid, it.b, 0.5 * it.budget});
      continue;
    }
    double v15 = 0.0, v7 = 0.0, vabs = 0.0;
    for (int j = 0; j < 7; ++j) {
      double pair_sum = p.logw[2 * j] + p.logw[2 * j + 1];
      v15 += GaussKronrod15::wgk[j] * pair_sum;
      vabs += GaussKronrod15::wgk[j] * (p.noise[2 * j] + p.noise[2 * j + 1]);
      if (j % 2 == 1) v7 += GaussKronrod15::wg[j / 2] * pair_sum;
    }
    v15 += GaussKronrod15::wgk[7] * p.logw[14];
    v7 += GaussKronrod15::wg[3] * p.logw[14];
    vabs += GaussKronrod15::wgk[7] * p.noise[14];
    v15 *= h;
    v7 *= h;
    vabs *= h;
    if (std::abs(v15 - v7) <= std::max(it.budget, quadrature_noise_floor(vabs)) ||
        it.b - it.a < kPanelWidthFloor || panels_.size() + stack.size() >= panel_cap) {
      integral += v15;
      panels_.push_back(p);
    } else {
      double mid = 0.5 * (it.a + it.b);
      stack.push_back({it.a, mid, 0.5 * it.budget});
      stack.push_back({mid, it.b, 0.5 * it.budget});
    }
  }
  std::sort(panels_.begin(), panels_.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  weight_integral_ = integral / kTwoPi;
}

Complex SchwarzIntegrator::exponent(Complex z) const {
  require_admissible_point(arc_, z, cfg_);
  const double len = arc_.length();

  // Near the circle the kernel peaks sharply at arg(z) and the samples there
  // are ill-conditioned: t - z carries absolute rounding ~eps, so each sample
  // is only accurate to eps/|t - z| in relative terms. Two measures keep the
  // evaluation inside budget. First, subtract the weight's log-value at the
  // peak angle; the remaining integrand K * (log w - w*) stays bounded at the
  // peak, and the subtracted constant integrates in closed form through the
  // kernel mean. Second, accept panels whose Kronrod-Gauss gap sits at the
  // conditioning-amplified rounding scale, which splitting cannot improve.
  double wstar = 0.0, wnoise = 0.0;
  Complex xmean(0.0);
  if (std::abs(z) > 0.9) {
    double cond = 0.0;
    double ws = w_.log_at(std::arg(z), &cond);
    if (std::isfinite(ws)) {
      wstar = ws;
      wnoise = cond;
      xmean = arc_kernel_mean(arc_, z);
    }
  }

  struct NodeSums {
    Complex v15, v7;
    // Kronrod-weighted absolute noise model of the samples, scaled by h: the
    // node rounding amplified by the kernel (|f|/|t - z|), plus the rounding
    // of the log subtraction itself amplified by the kernel magnitude. The
    // latter dominates at the peak, where log w - w* underflows toward zero
    // while its absolute error stays at eps * |log w|.
    double kappa;
    bool finite;
  };
  auto eval_nodes = [&](const Complex* node, const double* logw, const double* noise,
                        double h) -> NodeSums {
    NodeSums r{Complex(0.0), Complex(0.0), 0.0, true};
    for (int j = 0; j < 8; ++j) {
      Complex sum(0.0);
      double cond_sum = 0.0;
      const int count = (j == 7) ? 1 : 2;
      for (int sidx = 0; sidx < count; ++sidx) {
        int idx = (j == 7) ? 14 : 2 * j + sidx;
        if (!std::isfinite(logw[idx])) {
          r.finite = false;
          return r;
        }
        Complex t = node[idx];
        Complex d = t - z;
        double dist = std::abs(d);
        if (dist < 1e-13) throw KernelPoleError("kernel pole hit during quadrature");
        Complex f = (t + z) / d * Complex(logw[idx] - wstar);
        sum += f;
        cond_sum += std::abs(f) * (1.0 + 1.0 / dist) +
                    std::abs(t + z) / dist * (noise[idx] + wnoise);
      }
      r.v15 += GaussKronrod15::wgk[j] * sum;
      r.kappa += GaussKronrod15::wgk[j] * cond_sum;
      if (j % 2 == 1) r.v7 += GaussKronrod15::wg[j / 2] * sum;
    }
    r.v15 *= h;
    r.v7 *= h;
    r.kappa *= h;
    return r;
  };

  Complex total(0.0);
  const double tol_theta = 4.0 * kPi * cfg_.abs_tol;
  // Width-proportional budget with an equal-share floor: deep ladder panels
  // near a singularity are narrow, and a purely proportional share would sit
  // below arithmetic noise. Both halves sum to tol_theta.
  const double budget_floor = 0.5 * tol_theta / double(panels_.size());
  int counter = cfg_.max_subdivisions;
  struct Item {
    double a, b, budget;
  };
  std::vector<Item> stack;
  for (const Panel& p : panels_) {
    NodeSums r = eval_nodes(p.node.data(), p.logw.data(), p.noise.data(), 0.5 * (p.b - p.a));
    double budget = std::max(0.5 * tol_theta * (p.b - p.a) / len, budget_floor);
    if (r.finite &&
        std::abs(r.v15 - r.v7) <= std::max(budget, quadrature_noise_floor(r.kappa))) {
      total += r.v15;
    } else {
      double mid = 0.5 * (p.a + p.b);
      stack.push_back({p.a, mid, 0.5 * budget});
      stack.push_back({mid, p.b, 0.5 * budget});
    }
  }
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (--counter < 0) throw DivergenceError("quadrature exceeded its subdivision budget");
    const double c = 0.5 * (it.a + it.b), h = 0.5 * (it.b - it.a);
    double theta[15], logw[15], noise[15];
    Complex node[15];
    for (int j = 0; j < 7; ++j) {
      theta[2 * j] = c - h * GaussKronrod15::xgk[j];
      theta[2 * j + 1] = c + h * GaussKronrod15::xgk[j];
    }
    theta[14] = c;
    for (int idx = 0; idx < 15; ++idx) {
      logw[idx] = w_.log_at(theta[idx], &noise[idx]);
      node[idx] = unit_circle(theta[idx]);
    }
    NodeSums r = eval_nodes(node, logw, noise, h);
    if (!r.finite) {
      if (it.b - it.a < kPanelWidthFloor)
        throw DivergenceError("weight is not log-integrable on the arc");
      stack.push_back({it.a, c, 0.5 * it.budget});
      stack.push_back({c, it.b, 0.5 * it.budget});
      continue;
    }
    if (std::abs(r.v15 - r.v7) <= std::max(it.budget, quadrature_noise_floor(r.kappa)) ||
        it.b - it.a < kPanelWidthFloor) {
      total += r.v15;
    } else {
      stack.push_back({it.a, c, 0.5 * it.budget});
      stack.push_back({c, it.b, 0.5 * it.budget});
    }
  }
  return total / (4.0 * kPi) + 0.5 * wstar * xmean;
}

Complex schwarz_exponent(const LogWeight& w, const CircleArc& arc, Complex z,
                         const QuadratureConfig& cfg) {
  if (w.is_constant()) {
    // The outer function of a constant full-circle weight is that constant,
    // an entire function; no admissibility restriction applies.
    if (arc.is_full()) {
      if (std::abs(z) > 1.0 + 1e-12)
        throw DomainError("evaluation point outside the closed unit disk");
      return Complex(0.5 * std::log(w.constant_level()));
    }
    require_admissible_point(arc, z, cfg);
    return 0.5 * std::log(w.constant_level()) * arc_kernel_mean(arc, z);
  }
  return SchwarzIntegrator(w, arc, cfg).exponent(z);
}

Complex localized_outer_eval(const Rational& outer, const CircleArc& arc, Complex z,
                             const QuadratureConfig& cfg) {
  return std::exp(schwarz_exponent(LogWeight::abs_squared(outer), arc, z, cfg));
}

Complex sigma_arc_eval(const Rational& s, const CircleArc& arc, Complex z,
                       const QuadratureConfig& cfg) {
  SchurCertificate cert = certify_schur(s);
  if (!cert.is_schur)
    throw HypothesisViolatedError("sigma factor requires a certified Schur function");
  if (cert.is_finite_blaschke)
    throw NonIntegrableWeightError("1 - |s|^2 vanishes a.e.: no sigma factor exists");
  return std::exp(schwarz_exponent(LogWeight::one_minus_abs_squared(s), arc, z, cfg));
}

Complex two_level_outer_eval(const CircleArc& arc, double eps, Complex z,
                             const QuadratureConfig& cfg) {
  if (!(eps > 0.0) || !(eps < 1.0 / 3.0))
    throw DomainError("two-level constant must lie strictly between 0 and 1/3");
  std::optional<CircleArc> comp = arc_complement(arc);
  if (!comp) return Complex(1.0);
  return std::exp(schwarz_exponent(LogWeight::constant(eps * eps), *comp, z, cfg));
}

double log_integral(const Rational& s, const CircleArc& arc, const QuadratureConfig& cfg) {
  SchurCertificate cert = certify_schur(s);
  if (!cert.is_schur)
    throw HypothesisViolatedError("log integral requires a certified Schur function");
  if (cert.is_finite_blaschke) return -std::numeric_limits<double>::infinity();
  LogWeight w = LogWeight::one_minus_abs_squared(s);
  if (w.is_constant()) return std::log(w.constant_level()) * arc.measure();
  return SchwarzIntegrator(w, arc, cfg).weight_integral();
}

}  // namespace darc
