#include "gvn/kernels/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "gvn/common.hpp"

namespace gvn::kernels {

namespace {

struct Table {
    void (*gemm_nn)(int, int, int, double, const double*, const double*, double, double*);
    void (*gemm_nt)(int, int, int, double, const double*, const double*, double, double*);
    void (*gemm_tn)(int, int, int, double, const double*, const double*, double, double*);
    void (*relu_fwd)(const double*, double*, size_t);
    void (*relu_bwd)(const double*, const double*, double*, size_t);
    void (*axpy)(double, const double*, double*, size_t);
    double (*dot)(const double*, const double*, size_t);
    void (*scale)(double*, double, size_t);
    void (*add_bias_rows)(double*, const double*, int, int);
    void (*adam_step)(double*, double*, double*, const double*, size_t, double,
                      double, double, double, double, double, double);
};

constexpr Table kScalarTable = {
    scalar::gemm_nn, scalar::gemm_nt, scalar::gemm_tn, scalar::relu_fwd,
    scalar::relu_bwd, scalar::axpy, scalar::dot, scalar::scale,
    scalar::add_bias_rows, scalar::adam_step};

#if GVN_HAVE_AVX2_BUILD
constexpr Table kAvx2Table = {
    avx2::gemm_nn, avx2::gemm_nt, avx2::gemm_tn, avx2::relu_fwd,
    avx2::relu_bwd, avx2::axpy, avx2::dot, avx2::scale,
    avx2::add_bias_rows, avx2::adam_step};
#endif

Impl g_impl = Impl::Scalar;
const Table* g_table = &kScalarTable;

Impl pick_startup_impl() {
    const char* env = std::getenv("GVN_KERNELS");
    if (env) {
        if (std::strcmp(env, "scalar") == 0) return Impl::Scalar;
        if (std::strcmp(env, "avx2") == 0) {
            if (!avx2_supported())
                throw ArgumentError("GVN_KERNELS=avx2 requested but CPU lacks AVX2/FMA");
            return Impl::Avx2;
        }
        throw ArgumentError(std::string("unknown GVN_KERNELS value: ") + env);
    }
    return avx2_supported() ? Impl::Avx2 : Impl::Scalar;
}

struct Init {
    Init() { set_impl(pick_startup_impl()); }
};
Init g_init;

} // namespace

bool avx2_supported() {
#if GVN_HAVE_AVX2_BUILD
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Impl active() { return g_impl; }

void set_impl(Impl impl) {
    if (impl == Impl::Avx2) {
#if GVN_HAVE_AVX2_BUILD
        if (!avx2_supported()) throw ArgumentError("AVX2 kernels unsupported on this CPU");
        g_table = &kAvx2Table;
#else
        throw ArgumentError("AVX2 kernels not built for this target");
#endif
    } else {
        g_table = &kScalarTable;
    }
    g_impl = impl;
}

std::string impl_name(Impl impl) {
    return impl == Impl::Avx2 ? "avx2" : "scalar";
}

void gemm_nn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    g_table->gemm_nn(m, n, k, alpha, a, b, beta, c);
}
void gemm_nt(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    g_table->gemm_nt(m, n, k, alpha, a, b, beta, c);
}
void gemm_tn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    g_table->gemm_tn(m, n, k, alpha, a, b, beta, c);
}
void relu_fwd(const double* x, double* y, size_t n) { g_table->relu_fwd(x, y, n); }
void relu_bwd(const double* x, const double* gy, double* gx, size_t n) {
    g_table->relu_bwd(x, gy, gx, n);
}
void axpy(double a, const double* x, double* y, size_t n) { g_table->axpy(a, x, y, n); }
double dot(const double* a, const double* b, size_t n) { return g_table->dot(a, b, n); }
void scale(double* x, double a, size_t n) { g_table->scale(x, a, n); }
void add_bias_rows(double* x, const double* bias, int rows, int cols) {
    g_table->add_bias_rows(x, bias, rows, cols);
}
void adam_step(double* w, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double bc1, double bc2, double weight_decay) {
    g_table->adam_step(w, m, v, g, n, lr, beta1, beta2, eps, bc1, bc2, weight_decay);
}

} // namespace gvn::kernels
