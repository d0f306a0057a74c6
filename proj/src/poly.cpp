#include <darc/poly.hpp>

#include <algorithm>
#include <functional>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <darc/errors.hpp>

namespace darc {

namespace {

CoeffVec trimmed(CoeffVec c) {
  if (c.size() == 0) return CoeffVec::Zero(1);
  double scale = 0.0;
  for (Eigen::Index i = 0; i < c.size(); ++i) scale = std::max(scale, std::abs(c(i)));
  if (scale == 0.0) return CoeffVec::Zero(1);
  // Relative trim: drop leading coefficients that are negligible against the
  // largest one, so products of near-cancelling factors keep a stable degree.
  const double cut = scale * 1e-14;
  Eigen::Index last = c.size() - 1;
  while (last > 0 && std::abs(c(last)) <= cut) --last;
  return c.head(last + 1).eval();
}

}  // namespace

Poly::Poly(CoeffVec c) : c_(trimmed(std::move(c))) {}

Poly::Poly(std::initializer_list<Complex> c) {
  CoeffVec v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (Complex x : c) v(i++) = x;
  c_ = trimmed(std::move(v));
}

Poly Poly::constant(Complex c) {
  CoeffVec v(1);
  v(0) = c;
  return Poly(v);
}

Poly Poly::monomial(int k, Complex lead) {
  CoeffVec v = CoeffVec::Zero(k + 1);
  v(k) = lead;
  return Poly(v);
}

Poly Poly::from_roots(std::span<const Complex> roots, Complex lead) {
  CoeffVec v(1);
  v(0) = lead;
  Poly p(v);
  for (Complex r : roots) p = p * Poly{-r, Complex(1.0)};
  return p;
}

bool Poly::is_zero() const { return c_.size() == 1 && c_(0) == Complex(0.0); }

Complex Poly::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return Complex(0.0);
  return c_(k);
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (Eigen::Index i = 0; i < c_.size(); ++i) m = std::max(m, std::abs(c_(i)));
  return m;
}

Complex Poly::eval(Complex z) const {
  Complex acc = c_(c_.size() - 1);
  for (Eigen::Index i = c_.size() - 2; i >= 0; --i) acc = acc * z + c_(i);
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() == 1) return Poly();
  CoeffVec d(c_.size() - 1);
  for (Eigen::Index i = 1; i < c_.size(); ++i) d(i - 1) = static_cast<double>(i) * c_(i);
  return Poly(std::move(d));
}

Poly Poly::reversed_conjugate() const {
  CoeffVec r(c_.size());
  for (Eigen::Index i = 0; i < c_.size(); ++i) r(i) = std::conj(c_(c_.size() - 1 - i));
  return Poly(std::move(r));
}

Poly Poly::operator+(const Poly& o) const {
  Eigen::Index n = std::max(c_.size(), o.c_.size());
  CoeffVec v = CoeffVec::Zero(n);
  v.head(c_.size()) += c_;
  v.head(o.c_.size()) += o.c_;
  return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly();
  CoeffVec v = CoeffVec::Zero(c_.size() + o.c_.size() - 1);
  for (Eigen::Index i = 0; i < c_.size(); ++i)
    for (Eigen::Index j = 0; j < o.c_.size(); ++j) v(i + j) += c_(i) * o.c_(j);
  return Poly(std::move(v));
}

Poly Poly::operator*(Complex s) const { return Poly((c_ * s).eval()); }

Poly Poly::operator-() const { return Poly((-c_).eval()); }

bool Poly::approx_equal(const Poly& o, double tol) const {
  Eigen::Index n = std::max(c_.size(), o.c_.size());
  double scale = std::max({1.0, max_abs_coeff(), o.max_abs_coeff()});
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex a = i < c_.size() ? c_(i) : Complex(0.0);
    Complex b = i < o.c_.size() ? o.c_(i) : Complex(0.0);
    if (std::abs(a - b) > tol * scale) return false;
  }
  return true;
}

namespace {

// Newton iteration applied to f/f', which has a simple zero at every root of
// f whatever its multiplicity, so convergence stays quadratic at multiple
// roots where plain Newton stagnates at eps^(1/m).
Complex newton_polish(const Poly& p, const Poly& dp, const Poly& ddp, Complex x) {
  for (int it = 0; it < 12; ++it) {
    Complex f = p.eval(x);
    if (f == Complex(0.0)) break;
    Complex df = dp.eval(x);
    Complex denom = df * df - f * ddp.eval(x);
    Complex step;
    if (std::abs(denom) > 1e-300) {
      step = f * df / denom;
    } else if (std::abs(df) > 1e-300) {
      step = f / df;
    } else {
      break;
    }
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
    if (std::abs(step) > 1.0 + std::abs(x)) step *= (1.0 + std::abs(x)) / std::abs(step);
    x -= step;
    if (std::abs(step) < 1e-15 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::vector<Complex> poly_roots(const Poly& p) {
  if (p.is_zero()) throw DegenerateInputError("cannot take roots of the zero polynomial");
  const int n = p.degree();
  if (n == 0) return {};
  const CoeffVec& c = p.coeffs();
  std::vector<Complex> raw;
  raw.reserve(n);
  if (n == 1) {
    raw.push_back(-c(0) / c(1));
  } else if (n == 2) {
    // Stable quadratic: q = -(b + sign(b) sqrt(disc)) / 2 avoids cancellation.
    Complex a = c(2), b = c(1), cc = c(0);
    Complex disc = std::sqrt(b * b - 4.0 * a * cc);
    if ((std::conj(b) * disc).real() < 0.0) disc = -disc;
    Complex q = -0.5 * (b + disc);
    Complex r1 = q / a;
    Complex r2 = std::abs(q) > 0.0 ? cc / q : -b / a - r1;
    raw.push_back(r1);
    raw.push_back(r2);
  } else {
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    Complex lead = c(n);
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c(i) / lead;
    for (int i = 1; i < n; ++i) comp(i, i - 1) = Complex(1.0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
      throw DegenerateInputError("companion eigenvalue iteration failed");
    for (int i = 0; i < n; ++i) raw.push_back(es.eigenvalues()(i));
  }

  // Cluster the raw eigenvalues before any polishing: a root of multiplicity
  // m comes back as m values scattered symmetrically at radius ~eps^(1/m), so
  // their centroid cancels the scatter to first order, while polishing first
  // would distort the symmetry. The radius needed to recognize a cluster
  // grows with its multiplicity, so scan multiplicities from high to low and
  // accept only single-linkage components with at least that many members;
  // smaller coincidences wait for their own, tighter pass. Floor 1e-8.
  auto merge_radius = [](size_t m) {
    return std::max(1e-8, std::pow(1e-13, 1.0 / static_cast<double>(m)));
  };
  struct Cluster {
    Complex centroid;
    size_t count;
  };
  std::vector<Cluster> clusters;
  std::vector<Complex> pool = raw;
  for (size_t m = pool.size(); m >= 2; --m) {
    if (pool.size() < m) continue;
    const double radius = merge_radius(m);
    std::vector<size_t> comp(pool.size());
    for (size_t i = 0; i < comp.size(); ++i) comp[i] = i;
    std::function<size_t(size_t)> find = [&](size_t i) {
      while (comp[i] != i) i = comp[i] = comp[comp[i]];
      return i;
    };
    for (size_t i = 0; i < pool.size(); ++i) {
      for (size_t j = i + 1; j < pool.size(); ++j) {
        double scale = 1.0 + std::max(std::abs(pool[i]), std::abs(pool[j]));
        if (std::abs(pool[i] - pool[j]) <= radius * scale) comp[find(i)] = find(j);
      }
    }
    std::vector<std::vector<size_t>> groups(pool.size());
    for (size_t i = 0; i < pool.size(); ++i) groups[find(i)].push_back(i);
    std::vector<bool> taken(pool.size(), false);
    for (const auto& g : groups) {
      if (g.size() < m) continue;
      Complex centroid(0.0);
      for (size_t i : g) {
        centroid += pool[i];
        taken[i] = true;
      }
      clusters.push_back({centroid / static_cast<double>(g.size()), g.size()});
    }
    std::vector<Complex> rest;
    for (size_t i = 0; i < pool.size(); ++i)
      if (!taken[i]) rest.push_back(pool[i]);
    pool = std::move(rest);
  }
  for (Complex r : pool) clusters.push_back({r, 1});

  Poly dp = p.derivative();
  Poly ddp = dp.derivative();
  std::vector<Complex> out;
  for (const Cluster& cl : clusters) {
    Complex x = cl.centroid;
    if (cl.count == 1) {
      x = newton_polish(p, dp, ddp, x);
    } else {
      // One corrected Newton step x - m f/f' for multiplicity m, accepted
      // only while it stays within the scatter radius; near the root both f
      // and f' sit below evaluation noise and an unguarded step can be huge.
      Complex f = p.eval(x), df = dp.eval(x);
      if (std::abs(df) > 1e-300) {
        Complex step = static_cast<double>(cl.count) * f / df;
        if (std::isfinite(step.real()) && std::isfinite(step.imag()) &&
            std::abs(step) <= merge_radius(cl.count) * (1.0 + std::abs(x)))
          x -= step;
      }
    }
    for (size_t k = 0; k < cl.count; ++k) out.push_back(x);
  }
  return out;
}

}  // namespace darc
