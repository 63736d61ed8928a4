// Batch polynomial evaluation with a scalar reference kernel and an AVX2
// variant selected at runtime.  Both kernels use the same operation order
// (no fused multiply-add) so their results agree to the last bit on
// finite inputs.
#pragma once

#include <cstddef>
#include <span>

#include "vimpact/poly.hpp"

namespace vimpact::simd {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);
bool avx2_supported();
// Best available kernel, overridable with VIMPACT_FORCE_SCALAR=1.
Isa active_isa();

// out[i] = p(x[i]) (abs wrapper honoured).
void eval_poly1d(const Poly1D& p, std::span<const double> x, std::span<double> out);
void eval_poly1d(const Poly1D& p, std::span<const double> x, std::span<double> out, Isa isa);

// out[i] = p(v[i], phi[i]).
void eval_poly2d(const Poly2D& p, std::span<const double> v, std::span<const double> phi,
                 std::span<double> out);
void eval_poly2d(const Poly2D& p, std::span<const double> v, std::span<const double> phi,
                 std::span<double> out, Isa isa);

namespace kernels {
void poly1d_scalar(const double* c, int n, bool abs_wrap, const double* x, double* out,
                   std::size_t count);
void poly1d_avx2(const double* c, int n, bool abs_wrap, const double* x, double* out,
                 std::size_t count);
void poly2d_scalar(const Term* t, std::size_t nt, bool abs_wrap, const double* v,
                   const double* phi, double* out, std::size_t count);
void poly2d_avx2(const Term* t, std::size_t nt, bool abs_wrap, const double* v,
                 const double* phi, double* out, std::size_t count);
}  // namespace kernels

}  // namespace vimpact::simd
