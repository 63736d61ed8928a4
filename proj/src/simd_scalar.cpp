#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "vimpact/simd.hpp"

namespace vimpact::simd {

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* force = std::getenv("VIMPACT_FORCE_SCALAR");
    if (force && *force && *force != '0') return Isa::Scalar;
    return avx2_supported() ? Isa::Avx2 : Isa::Scalar;
  }();
  return isa;
}

namespace kernels {

void poly1d_scalar(const double* c, int n, bool abs_wrap, const double* x, double* out,
                   std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (int k = n - 1; k >= 0; --k) acc = acc * x[i] + c[k];
    out[i] = abs_wrap ? std::fabs(acc) : acc;
  }
}

// Monomials are built by repeated multiplication, matching the AVX2 kernel.
void poly2d_scalar(const Term* t, std::size_t nt, bool abs_wrap, const double* v,
                   const double* phi, double* out, std::size_t count) {
  for (std::size_t i = 0; i < count; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
      double m = t[k].c;
      for (int a = 0; a < t[k].ev; ++a) m = m * v[i];
      for (int b = 0; b < t[k].ephi; ++b) m = m * phi[i];
      acc = acc + m;
    }
    out[i] = abs_wrap ? std::fabs(acc) : acc;
  }
}

}  // namespace kernels

namespace {
void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("batch evaluation: input and output sizes differ");
}
}  // namespace

void eval_poly1d(const Poly1D& p, std::span<const double> x, std::span<double> out, Isa isa) {
  check_sizes(x.size(), out.size());
  const int n = static_cast<int>(p.coeffs.size());
  if (isa == Isa::Avx2 && avx2_supported())
    kernels::poly1d_avx2(p.coeffs.data(), n, p.abs_wrap, x.data(), out.data(), x.size());
  else
    kernels::poly1d_scalar(p.coeffs.data(), n, p.abs_wrap, x.data(), out.data(), x.size());
}

void eval_poly1d(const Poly1D& p, std::span<const double> x, std::span<double> out) {
  eval_poly1d(p, x, out, active_isa());
}

void eval_poly2d(const Poly2D& p, std::span<const double> v, std::span<const double> phi,
                 std::span<double> out, Isa isa) {
  check_sizes(v.size(), out.size());
  check_sizes(phi.size(), out.size());
  if (isa == Isa::Avx2 && avx2_supported())
    kernels::poly2d_avx2(p.terms.data(), p.terms.size(), p.abs_wrap, v.data(), phi.data(),
                         out.data(), out.size());
  else
    kernels::poly2d_scalar(p.terms.data(), p.terms.size(), p.abs_wrap, v.data(), phi.data(),
                           out.data(), out.size());
}

void eval_poly2d(const Poly2D& p, std::span<const double> v, std::span<const double> phi,
                 std::span<double> out) {
  eval_poly2d(p, v, phi, out, active_isa());
}

}  // namespace vimpact::simd
