#include "gvn/kernels/kernels.hpp"

#if GVN_HAVE_AVX2_BUILD

#include <immintrin.h>

#include <cmath>

// AVX2+FMA variants, 4 doubles per lane. This TU is compiled with
// -mavx2 -mfma; it is only entered through the dispatch table after a
// runtime CPUID check.

namespace gvn::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d swapped = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, swapped));
}

inline void scale_row(double* c, int n, double beta) {
    if (beta == 0.0) {
        int j = 0;
        const __m256d z = _mm256_setzero_pd();
        for (; j + 4 <= n; j += 4) _mm256_storeu_pd(c + j, z);
        for (; j < n; ++j) c[j] = 0.0;
    } else if (beta != 1.0) {
        int j = 0;
        const __m256d vb = _mm256_set1_pd(beta);
        for (; j + 4 <= n; j += 4)
            _mm256_storeu_pd(c + j, _mm256_mul_pd(_mm256_loadu_pd(c + j), vb));
        for (; j < n; ++j) c[j] *= beta;
    }
}

} // namespace

void gemm_nn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    // 4-row blocks of A with a broadcast-A / stream-B inner loop; each loaded
    // B row feeds four accumulator rows.
    int i = 0;
    for (; i + 4 <= m; i += 4) {
        double* c0 = c + size_t(i) * n;
        double* c1 = c0 + n;
        double* c2 = c1 + n;
        double* c3 = c2 + n;
        scale_row(c0, n, beta);
        scale_row(c1, n, beta);
        scale_row(c2, n, beta);
        scale_row(c3, n, beta);
        const double* a0 = a + size_t(i) * k;
        const double* a1 = a0 + k;
        const double* a2 = a1 + k;
        const double* a3 = a2 + k;
        for (int p = 0; p < k; ++p) {
            const __m256d va0 = _mm256_set1_pd(alpha * a0[p]);
            const __m256d va1 = _mm256_set1_pd(alpha * a1[p]);
            const __m256d va2 = _mm256_set1_pd(alpha * a2[p]);
            const __m256d va3 = _mm256_set1_pd(alpha * a3[p]);
            const double* brow = b + size_t(p) * n;
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                const __m256d vb = _mm256_loadu_pd(brow + j);
                _mm256_storeu_pd(c0 + j, _mm256_fmadd_pd(va0, vb, _mm256_loadu_pd(c0 + j)));
                _mm256_storeu_pd(c1 + j, _mm256_fmadd_pd(va1, vb, _mm256_loadu_pd(c1 + j)));
                _mm256_storeu_pd(c2 + j, _mm256_fmadd_pd(va2, vb, _mm256_loadu_pd(c2 + j)));
                _mm256_storeu_pd(c3 + j, _mm256_fmadd_pd(va3, vb, _mm256_loadu_pd(c3 + j)));
            }
            for (; j < n; ++j) {
                const double bv = brow[j];
                c0[j] += alpha * a0[p] * bv;
                c1[j] += alpha * a1[p] * bv;
                c2[j] += alpha * a2[p] * bv;
                c3[j] += alpha * a3[p] * bv;
            }
        }
    }
    for (; i < m; ++i) {
        double* crow = c + size_t(i) * n;
        scale_row(crow, n, beta);
        const double* arow = a + size_t(i) * k;
        for (int p = 0; p < k; ++p) {
            const __m256d va = _mm256_set1_pd(alpha * arow[p]);
            const double* brow = b + size_t(p) * n;
            int j = 0;
            for (; j + 4 <= n; j += 4)
                _mm256_storeu_pd(crow + j,
                                 _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j),
                                                 _mm256_loadu_pd(crow + j)));
            for (; j < n; ++j) crow[j] += alpha * arow[p] * brow[j];
        }
    }
}

void gemm_nt(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + size_t(i) * k;
        double* crow = c + size_t(i) * n;
        for (int j = 0; j < n; ++j) {
            const double* brow = b + size_t(j) * k;
            __m256d acc = _mm256_setzero_pd();
            int p = 0;
            for (; p + 4 <= k; p += 4)
                acc = _mm256_fmadd_pd(_mm256_loadu_pd(arow + p),
                                      _mm256_loadu_pd(brow + p), acc);
            double s = hsum(acc);
            for (; p < k; ++p) s += arow[p] * brow[p];
            crow[j] = alpha * s + (beta == 0.0 ? 0.0 : beta * crow[j]);
        }
    }
}

void gemm_tn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    for (int i = 0; i < m; ++i) scale_row(c + size_t(i) * n, n, beta);
    for (int p = 0; p < k; ++p) {
        const double* arow = a + size_t(p) * m;
        const double* brow = b + size_t(p) * n;
        for (int i = 0; i < m; ++i) {
            const double ap = alpha * arow[i];
            if (ap == 0.0) continue;
            const __m256d va = _mm256_set1_pd(ap);
            double* crow = c + size_t(i) * n;
            int j = 0;
            for (; j + 4 <= n; j += 4)
                _mm256_storeu_pd(crow + j,
                                 _mm256_fmadd_pd(va, _mm256_loadu_pd(brow + j),
                                                 _mm256_loadu_pd(crow + j)));
            for (; j < n; ++j) crow[j] += ap * brow[j];
        }
    }
}

void relu_fwd(const double* x, double* y, size_t n) {
    const __m256d z = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), z));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_bwd(const double* x, const double* gy, double* gx, size_t n) {
    const __m256d z = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), z, _CMP_GT_OQ);
        const __m256d g = _mm256_and_pd(_mm256_loadu_pd(gy + i), mask);
        _mm256_storeu_pd(gx + i, _mm256_add_pd(_mm256_loadu_pd(gx + i), g));
    }
    for (; i < n; ++i)
        if (x[i] > 0.0) gx[i] += gy[i];
}

void axpy(double a, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void scale(double* x, double a, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), va));
    for (; i < n; ++i) x[i] *= a;
}

void add_bias_rows(double* x, const double* bias, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = x + size_t(r) * cols;
        int j = 0;
        for (; j + 4 <= cols; j += 4)
            _mm256_storeu_pd(row + j, _mm256_add_pd(_mm256_loadu_pd(row + j),
                                                    _mm256_loadu_pd(bias + j)));
        for (; j < cols; ++j) row[j] += bias[j];
    }
}

void adam_step(double* w, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double bc1, double bc2, double weight_decay) {
    const __m256d vb1 = _mm256_set1_pd(beta1);
    const __m256d vb2 = _mm256_set1_pd(beta2);
    const __m256d vomb1 = _mm256_set1_pd(1.0 - beta1);
    const __m256d vomb2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d vbc1 = _mm256_set1_pd(bc1);
    const __m256d vbc2 = _mm256_set1_pd(bc2);
    const __m256d veps = _mm256_set1_pd(eps);
    const __m256d vlr = _mm256_set1_pd(lr);
    const __m256d vwd = _mm256_set1_pd(weight_decay);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gi = _mm256_loadu_pd(g + i);
        __m256d mi = _mm256_fmadd_pd(vomb1, gi, _mm256_mul_pd(vb1, _mm256_loadu_pd(m + i)));
        __m256d vi = _mm256_fmadd_pd(vomb2, _mm256_mul_pd(gi, gi),
                                     _mm256_mul_pd(vb2, _mm256_loadu_pd(v + i)));
        _mm256_storeu_pd(m + i, mi);
        _mm256_storeu_pd(v + i, vi);
        const __m256d mhat = _mm256_div_pd(mi, vbc1);
        const __m256d vhat = _mm256_div_pd(vi, vbc2);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(vhat), veps);
        const __m256d wi = _mm256_loadu_pd(w + i);
        const __m256d step = _mm256_fmadd_pd(vwd, wi, _mm256_div_pd(mhat, denom));
        _mm256_storeu_pd(w + i, _mm256_fnmadd_pd(vlr, step, wi));
    }
    for (; i < n; ++i) {
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        w[i] -= lr * (mhat / (std::sqrt(vhat) + eps) + weight_decay * w[i]);
    }
}

} // namespace gvn::kernels::avx2

#endif // GVN_HAVE_AVX2_BUILD
