#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops behind the tensor/NN layer. Every kernel has a
// scalar reference implementation and (on x86) an AVX2+FMA variant; the
// active implementation is picked once at startup from CPUID, overridable
// with GVN_KERNELS=scalar|avx2 (tests use this to cross-check the two).
//
// All matrices are dense row-major doubles.

namespace gvn::kernels {

enum class Impl { Scalar, Avx2 };

Impl active();
void set_impl(Impl impl);      // throws ArgumentError if unsupported on this CPU
bool avx2_supported();
std::string impl_name(Impl impl);

// C(MxN) = alpha * A(MxK) * B(KxN) + beta * C
void gemm_nn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
// C(MxN) = alpha * A(MxK) * B(NxK)^T + beta * C
void gemm_nt(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
// C(MxN) = alpha * A(KxM)^T * B(KxN) + beta * C
void gemm_tn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);

void relu_fwd(const double* x, double* y, size_t n);
// gx += gy where x > 0
void relu_bwd(const double* x, const double* gy, double* gx, size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, size_t n);
double dot(const double* a, const double* b, size_t n);
void scale(double* x, double a, size_t n);

// x(rows x cols) += bias broadcast over rows
void add_bias_rows(double* x, const double* bias, int rows, int cols);

// Adam update with decoupled weight decay; m, v are the moment buffers and
// bc1/bc2 the bias-correction factors (1 - beta^t) for the current step.
void adam_step(double* w, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double bc1, double bc2, double weight_decay);

namespace scalar {
void gemm_nn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
void gemm_nt(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
void gemm_tn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
void relu_fwd(const double* x, double* y, size_t n);
void relu_bwd(const double* x, const double* gy, double* gx, size_t n);
void axpy(double a, const double* x, double* y, size_t n);
double dot(const double* a, const double* b, size_t n);
void scale(double* x, double a, size_t n);
void add_bias_rows(double* x, const double* bias, int rows, int cols);
void adam_step(double* w, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double bc1, double bc2, double weight_decay);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GVN_HAVE_AVX2_BUILD 1
namespace avx2 {
void gemm_nn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
void gemm_nt(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
void gemm_tn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c);
void relu_fwd(const double* x, double* y, size_t n);
void relu_bwd(const double* x, const double* gy, double* gx, size_t n);
void axpy(double a, const double* x, double* y, size_t n);
double dot(const double* a, const double* b, size_t n);
void scale(double* x, double a, size_t n);
void add_bias_rows(double* x, const double* bias, int rows, int cols);
void adam_step(double* w, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double bc1, double bc2, double weight_decay);
} // namespace avx2
#else
#define GVN_HAVE_AVX2_BUILD 0
#endif

} // namespace gvn::kernels
