#include "vimpact/poly.hpp"

#include <algorithm>
#include <cmath>

namespace vimpact {

int Poly1D::degree() const {
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
    if (coeffs[static_cast<std::size_t>(k)] != 0.0) return k;
  return 0;
}

double Poly1D::raw(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly1D::operator()(double x) const {
  const double y = raw(x);
  return abs_wrap ? std::abs(y) : y;
}

Poly1D Poly1D::derivative() const {
  if (coeffs.size() <= 1) return Poly1D({0.0});
  std::vector<double> d(coeffs.size() - 1);
  for (std::size_t k = 1; k < coeffs.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs[k];
  return Poly1D(std::move(d));
}

Poly1D poly_add(const Poly1D& a, const Poly1D& b) {
  std::vector<double> c(std::max(a.coeffs.size(), b.coeffs.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
  return Poly1D(std::move(c));
}

Poly1D poly_mul(const Poly1D& a, const Poly1D& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return Poly1D({0.0});
  std::vector<double> c(a.coeffs.size() + b.coeffs.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) c[i + j] += a.coeffs[i] * b.coeffs[j];
  return Poly1D(std::move(c));
}

Poly1D poly_compose(const Poly1D& outer, const Poly1D& inner) {
  // Horner in the polynomial ring.
  Poly1D acc({0.0});
  for (auto it = outer.coeffs.rbegin(); it != outer.coeffs.rend(); ++it) {
    acc = poly_mul(acc, Poly1D(inner.coeffs));
    acc = poly_add(acc, Poly1D({*it}));
  }
  return acc;
}

double Poly2D::operator()(double v, double phi) const {
  double acc = 0.0;
  for (const Term& t : terms) {
    double m = t.c;
    for (int i = 0; i < t.ev; ++i) m *= v;
    for (int j = 0; j < t.ephi; ++j) m *= phi;
    acc += m;
  }
  return abs_wrap ? std::abs(acc) : acc;
}

int Poly2D::degree_v() const {
  int d = 0;
  for (const Term& t : terms) d = std::max(d, t.ev);
  return d;
}

int Poly2D::degree_phi() const {
  int d = 0;
  for (const Term& t : terms) d = std::max(d, t.ephi);
  return d;
}

bool Poly2D::depends_on_v() const {
  return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.ev > 0 && t.c != 0.0; });
}

bool Poly2D::depends_on_phi() const {
  return std::any_of(terms.begin(), terms.end(), [](const Term& t) { return t.ephi > 0 && t.c != 0.0; });
}

Poly1D Poly2D::slice_at_phi(double phi) const {
  std::vector<double> c(static_cast<std::size_t>(degree_v()) + 1, 0.0);
  for (const Term& t : terms) c[static_cast<std::size_t>(t.ev)] += t.c * std::pow(phi, t.ephi);
  return Poly1D(std::move(c), abs_wrap);
}

Poly1D Poly2D::slice_at_v(double v) const {
  std::vector<double> c(static_cast<std::size_t>(degree_phi()) + 1, 0.0);
  for (const Term& t : terms) c[static_cast<std::size_t>(t.ephi)] += t.c * std::pow(v, t.ev);
  return Poly1D(std::move(c), abs_wrap);
}

namespace {

double bisect(const Poly1D& p, double a, double b, double tol) {
  double fa = p.raw(a);
  for (int it = 0; it < 200 && b - a > tol; ++it) {
    const double m = 0.5 * (a + b);
    const double fm = p.raw(m);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> roots_on_interval(const Poly1D& p, double a, double b, double step,
                                      double tol) {
  std::vector<double> out;
  if (!(b > a)) {
    if (a == b && p.raw(a) == 0.0) out.push_back(a);
    return out;
  }
  const int n = std::max(2, static_cast<int>(std::ceil((b - a) / step)) + 1);
  double x0 = a, f0 = p.raw(a);
  if (f0 == 0.0) out.push_back(a);
  for (int i = 1; i < n; ++i) {
    const double x1 = (i == n - 1) ? b : a + (b - a) * i / (n - 1);
    const double f1 = p.raw(x1);
    if (f1 == 0.0) {
      out.push_back(x1);
    } else if (f0 != 0.0 && ((f0 < 0.0) != (f1 < 0.0))) {
      out.push_back(bisect(p, x0, x1, tol));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

Extremum extremum_on_interval(const Poly1D& p, double a, double b, int n) {
  if (b < a) std::swap(a, b);
  Extremum e;
  e.min_value = e.max_value = p(a);
  e.argmin = e.argmax = a;
  auto consider = [&](double x) {
    const double y = p(x);
    if (y < e.min_value) {
      e.min_value = y;
      e.argmin = x;
    }
    if (y > e.max_value) {
      e.max_value = y;
      e.argmax = x;
    }
  };
  consider(b);
  if (b > a) {
    const double step = (b - a) / std::max(1, n - 1);
    for (double x : roots_on_interval(p.derivative(), a, b, step)) consider(x);
    if (p.abs_wrap)
      for (double x : roots_on_interval(Poly1D(p.coeffs), a, b, step)) consider(x);
  }
  return e;
}

}  // namespace vimpact
