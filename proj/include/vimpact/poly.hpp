// Dense univariate and sparse bivariate polynomials in (v, phi).
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace vimpact {

struct Poly1D {
  std::vector<double> coeffs;  // ascending powers
  bool abs_wrap = false;       // |p(x)| when set

  Poly1D() = default;
  explicit Poly1D(std::vector<double> c, bool wrap = false) : coeffs(std::move(c)), abs_wrap(wrap) {}

  int degree() const;
  double operator()(double x) const;
  double raw(double x) const;  // value ignoring abs_wrap
  Poly1D derivative() const;   // of the raw polynomial
};

Poly1D poly_add(const Poly1D& a, const Poly1D& b);
Poly1D poly_mul(const Poly1D& a, const Poly1D& b);
// outer(inner(x)); both raw (abs_wrap is ignored).
Poly1D poly_compose(const Poly1D& outer, const Poly1D& inner);

struct Term {
  int ev = 0;    // power of v
  int ephi = 0;  // power of phi
  double c = 0.0;
};

struct Poly2D {
  std::vector<Term> terms;
  bool abs_wrap = false;

  double operator()(double v, double phi) const;
  int degree_v() const;
  int degree_phi() const;
  // Univariate restrictions.
  Poly1D slice_at_phi(double phi) const;  // v -> p(v, phi)
  Poly1D slice_at_v(double v) const;      // phi -> p(v, phi)
  bool depends_on_v() const;
  bool depends_on_phi() const;
};

struct Extremum {
  double min_value = 0.0, argmin = 0.0;
  double max_value = 0.0, argmax = 0.0;
};

// Extrema of p over [a, b]: endpoints plus critical points located by
// sign changes of p' on an n-point grid, refined by bisection.
Extremum extremum_on_interval(const Poly1D& p, double a, double b, int n = 201);

// Roots of p on [a, b] bracketed on a grid of spacing <= step, refined by
// bisection to tol.
std::vector<double> roots_on_interval(const Poly1D& p, double a, double b, double step,
                                      double tol = 1e-12);

}  // namespace vimpact
