#pragma once

#include <cstdint>
#include <string>

namespace divstokes::kernels {

// The arithmetic inner loops of the solver layer exist as scalar
// reference kernels and SIMD variants; the widest supported variant is
// selected at startup and the scalar path stays available for
// equivalence testing. Results may differ between variants only by
// summation-order round-off.

enum class Isa { scalar, avx2, neon };

Isa active_isa();
std::string isa_name(Isa isa);
bool isa_supported(Isa isa);
// Forces a variant (tests / CLI); throws std::invalid_argument if the
// host does not support it.
void force_isa(Isa isa);

double dot(const double* a, const double* b, std::int64_t n);
void axpy(double alpha, const double* x, double* y, std::int64_t n);   // y += alpha x
void scal(double alpha, double* x, std::int64_t n);
void spmv_csr(int n_rows, const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y);

// Direct entry points for the equivalence tests.
namespace scalar {
double dot(const double* a, const double* b, std::int64_t n);
void axpy(double alpha, const double* x, double* y, std::int64_t n);
void scal(double alpha, double* x, std::int64_t n);
void spmv_csr(int n_rows, const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y);
}  // namespace scalar

}  // namespace divstokes::kernels
