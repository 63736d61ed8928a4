#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <random>
#include <vector>

#include "vimpact/poly.hpp"
#include "vimpact/simd.hpp"

using namespace vimpact;

namespace {

Poly1D random_poly(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> c(-2.0, 2.0);
  Poly1D p;
  for (int k = 0; k <= degree; ++k) p.coeffs.push_back(c(rng));
  return p;
}

Poly2D random_poly2d(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-5.0, 5.0);
  Poly2D p;
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 3; ++j) p.terms.push_back({i, j, c(rng)});
  return p;
}

double naive(const Poly1D& p, double x) {
  double s = 0.0;
  for (std::size_t k = 0; k < p.coeffs.size(); ++k) s += p.coeffs[k] * std::pow(x, static_cast<double>(k));
  return p.abs_wrap ? std::abs(s) : s;
}

}  // namespace

TEST_CASE("univariate evaluation and derivative") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Poly1D p = random_poly(rng, 5);
    const Poly1D dp = p.derivative();
    CHECK(dp.degree() == 4);
    for (double x : {-1.3, -0.2, 0.0, 0.7, 1.9}) {
      CHECK(p(x) == doctest::Approx(naive(p, x)).epsilon(1e-12));
      const double h = 1e-6;
      CHECK(dp(x) == doctest::Approx((p(x + h) - p(x - h)) / (2 * h)).epsilon(1e-6));
    }
  }
  Poly1D w({-1.0, 0.0, 1.0}, true);
  CHECK(w(0.0) == 1.0);
  CHECK(w.raw(0.0) == -1.0);
}

TEST_CASE("degree-9 composition matches nested evaluation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const Poly1D inner = random_poly(rng, 3);
    const Poly1D outer = random_poly(rng, 3);
    const Poly1D full = poly_compose(outer, inner);
    CHECK(full.degree() == 9);
    for (int k = 0; k < 10; ++k) {
      const double u = x(rng);
      const double nested = naive(outer, naive(inner, u));
      CHECK(std::abs(full(u) - nested) <= 1e-10 * std::max(1.0, std::abs(nested)));
    }
  }
}

TEST_CASE("sum and product") {
  const Poly1D a({1.0, 2.0}), b({0.0, 1.0, 3.0});
  const Poly1D s = poly_add(a, b), m = poly_mul(a, b);
  for (double x : {-1.0, 0.5, 2.0}) {
    CHECK(s(x) == doctest::Approx(a(x) + b(x)));
    CHECK(m(x) == doctest::Approx(a(x) * b(x)));
  }
}

TEST_CASE("extremum on an interval beats dense sampling") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    Poly1D p = random_poly(rng, 4);
    p.abs_wrap = (t % 3) == 0;
    const Extremum e = extremum_on_interval(p, -1.0, 1.5);
    double lo = 1e300, hi = -1e300, lip = 0.0;
    const Poly1D dp = Poly1D(p.coeffs).derivative();
    const double h = 2.5 / 20000.0;
    for (int k = 0; k <= 20000; ++k) {
      const double x = -1.0 + h * k;
      lo = std::min(lo, p(x));
      hi = std::max(hi, p(x));
      lip = std::max(lip, std::abs(dp(x)));
    }
    CHECK(e.max_value >= hi - 1e-12);
    CHECK(e.min_value <= lo + 1e-12);
    CHECK(e.max_value <= hi + 1e-6);
    // |p| has a kink at a root, where sampling is only accurate to lip * h / 2.
    CHECK(e.min_value >= lo - (p.abs_wrap ? lip * h : 1e-6));
    if (p.abs_wrap) CHECK(e.min_value >= 0.0);
    CHECK(p(e.argmax) == doctest::Approx(e.max_value));
    CHECK(p(e.argmin) == doctest::Approx(e.min_value));
  }
}

TEST_CASE("roots on an interval") {
  const Poly1D p = poly_mul(poly_mul(Poly1D({-0.2, 1.0}), Poly1D({-0.5, 1.0})), Poly1D({-0.9, 1.0}));
  const auto r = roots_on_interval(p, 0.0, 1.0, 1e-3);
  REQUIRE(r.size() == 3u);
  CHECK(r[0] == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(r[2] == doctest::Approx(0.9).epsilon(1e-10));
}

TEST_CASE("bivariate slices") {
  std::mt19937_64 rng(21);
  const Poly2D p = random_poly2d(rng);
  CHECK(p.degree_v() == 3);
  CHECK(p.degree_phi() == 3);
  for (double v : {0.1, 0.6}) {
    const Poly1D s = p.slice_at_v(v);
    for (double ph : {0.2, 1.1}) CHECK(s(ph) == doctest::Approx(p(v, ph)));
  }
  for (double ph : {0.3, 0.9}) {
    const Poly1D s = p.slice_at_phi(ph);
    for (double v : {0.2, 0.8}) CHECK(s(v) == doctest::Approx(p(v, ph)));
  }
  Poly2D sep;
  sep.terms = {{0, 0, 1.0}, {2, 0, 3.0}};
  CHECK(sep.depends_on_v());
  CHECK_FALSE(sep.depends_on_phi());
}

TEST_CASE("batch kernels agree with scalar evaluation") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> x(-1.0, 2.0);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 17u, 1000u}) {
    std::vector<double> xs(n), ys(n), out(n);
    for (auto& e : xs) e = x(rng);
    for (auto& e : ys) e = x(rng);
    Poly1D p = random_poly(rng, 6);
    p.abs_wrap = n % 2 == 1;
    Poly2D q = random_poly2d(rng);
    q.abs_wrap = n % 2 == 0;
    simd::eval_poly1d(p, xs, out, simd::Isa::Scalar);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(p(xs[i])).epsilon(1e-13));
    simd::eval_poly2d(q, xs, ys, out, simd::Isa::Scalar);
    for (std::size_t i = 0; i < n; ++i) CHECK(out[i] == doctest::Approx(q(xs[i], ys[i])).epsilon(1e-12));
  }
}

TEST_CASE("AVX2 kernels are bit-identical to the scalar reference") {
  if (!simd::avx2_supported()) {
    MESSAGE("AVX2 not available; equivalence check skipped");
    return;
  }
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> x(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(trial * 7 + 1);
    std::vector<double> xs(n), ys(n), a(n), b(n);
    for (auto& e : xs) e = x(rng);
    for (auto& e : ys) e = x(rng);
    Poly1D p = random_poly(rng, trial % 10);
    p.abs_wrap = trial % 2 == 0;
    simd::eval_poly1d(p, xs, a, simd::Isa::Scalar);
    simd::eval_poly1d(p, xs, b, simd::Isa::Avx2);
    CHECK(std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0);
    Poly2D q = random_poly2d(rng);
    q.abs_wrap = trial % 3 == 0;
    simd::eval_poly2d(q, xs, ys, a, simd::Isa::Scalar);
    simd::eval_poly2d(q, xs, ys, b, simd::Isa::Avx2);
    CHECK(std::memcmp(a.data(), b.data(), n * sizeof(double)) == 0);
  }
}

TEST_CASE("runtime dispatch honours the scalar override") {
  const char* force = std::getenv("VIMPACT_FORCE_SCALAR");
  if (force && *force && *force != '0')
    CHECK(simd::active_isa() == simd::Isa::Scalar);
  else
    CHECK((simd::active_isa() == simd::Isa::Avx2) == simd::avx2_supported());
}
