#include "divstokes/kernels.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(_M_X64)
#define DIVSTOKES_X86 1
#include <immintrin.h>
#elif defined(__aarch64__)
#define DIVSTOKES_NEON 1
#include <arm_neon.h>
#endif

namespace divstokes::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::int64_t n) {
  double acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) x[i] *= alpha;
}

void spmv_csr(int n_rows, const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y) {
  for (int i = 0; i < n_rows; ++i) {
    double acc = 0.0;
    for (std::int64_t k = row_ptr[i]; k < row_ptr[i + 1]; ++k) acc += vals[k] * x[cols[k]];
    y[i] = acc;
  }
}

}  // namespace scalar

#if DIVSTOKES_X86

namespace avx2 {

__attribute__((target("avx2,fma"))) double dot(const double* a, const double* b,
                                               std::int64_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::int64_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

__attribute__((target("avx2,fma"))) void axpy(double alpha, const double* x, double* y,
                                              std::int64_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

__attribute__((target("avx2,fma"))) void scal(double alpha, double* x, std::int64_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::int64_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

__attribute__((target("avx2,fma"))) void spmv_csr(int n_rows, const std::int64_t* row_ptr,
                                                  const std::int32_t* cols, const double* vals,
                                                  const double* x, double* y) {
  for (int i = 0; i < n_rows; ++i) {
    const std::int64_t begin = row_ptr[i], end = row_ptr[i + 1];
    __m256d acc = _mm256_setzero_pd();
    std::int64_t k = begin;
    for (; k + 4 <= end; k += 4) {
      const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(cols + k));
      const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(vals + k), xv, acc);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; k < end; ++k) sum += vals[k] * x[cols[k]];
    y[i] = sum;
  }
}

}  // namespace avx2

#endif  // DIVSTOKES_X86

#if DIVSTOKES_NEON

namespace neon {

double dot(const double* a, const double* b, std::int64_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
  std::int64_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
  }
  double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::int64_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::int64_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), va, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(double alpha, double* x, std::int64_t n) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::int64_t i = 0;
  for (; i + 2 <= n; i += 2) vst1q_f64(x + i, vmulq_f64(va, vld1q_f64(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

void spmv_csr(int n_rows, const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y) {
  for (int i = 0; i < n_rows; ++i) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::int64_t k = row_ptr[i];
    const std::int64_t end = row_ptr[i + 1];
    for (; k + 2 <= end; k += 2) {
      const float64x2_t xv = {x[cols[k]], x[cols[k + 1]]};
      acc = vfmaq_f64(acc, vld1q_f64(vals + k), xv);
    }
    double sum = vaddvq_f64(acc);
    for (; k < end; ++k) sum += vals[k] * x[cols[k]];
    y[i] = sum;
  }
}

}  // namespace neon

#endif  // DIVSTOKES_NEON

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::int64_t);
  void (*axpy)(double, const double*, double*, std::int64_t);
  void (*scal)(double, double*, std::int64_t);
  void (*spmv)(int, const std::int64_t*, const std::int32_t*, const double*, const double*,
               double*);
};

constexpr Table kScalar{scalar::dot, scalar::axpy, scalar::scal, scalar::spmv_csr};

Isa detect() {
#if DIVSTOKES_X86
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::avx2;
  return Isa::scalar;
#elif DIVSTOKES_NEON
  return Isa::neon;
#else
  return Isa::scalar;
#endif
}

Table table_for(Isa isa) {
  switch (isa) {
#if DIVSTOKES_X86
    case Isa::avx2:
      return Table{avx2::dot, avx2::axpy, avx2::scal, avx2::spmv_csr};
#endif
#if DIVSTOKES_NEON
    case Isa::neon:
      return Table{neon::dot, neon::axpy, neon::scal, neon::spmv_csr};
#endif
    default:
      return kScalar;
  }
}

Isa g_isa = detect();
Table g_table = table_for(g_isa);

}  // namespace

Isa active_isa() { return g_isa; }

std::string isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

bool isa_supported(Isa isa) {
  if (isa == Isa::scalar) return true;
#if DIVSTOKES_X86
  if (isa == Isa::avx2) return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#endif
#if DIVSTOKES_NEON
  if (isa == Isa::neon) return true;
#endif
  return false;
}

void force_isa(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("kernels: " + isa_name(isa) + " not supported on this host");
  g_isa = isa;
  g_table = table_for(isa);
}

double dot(const double* a, const double* b, std::int64_t n) { return g_table.dot(a, b, n); }
void axpy(double alpha, const double* x, double* y, std::int64_t n) {
  g_table.axpy(alpha, x, y, n);
}
void scal(double alpha, double* x, std::int64_t n) { g_table.scal(alpha, x, n); }
void spmv_csr(int n_rows, const std::int64_t* row_ptr, const std::int32_t* cols,
              const double* vals, const double* x, double* y) {
  g_table.spmv(n_rows, row_ptr, cols, vals, x, y);
}

}  // namespace divstokes::kernels
