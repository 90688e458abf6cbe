#include "gvn/kernels/kernels.hpp"

#include <cmath>

// Reference kernels. Plain loops, no blocking; these define the semantics
// the SIMD variants are tested against.

namespace gvn::kernels::scalar {

void gemm_nn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + size_t(i) * n;
        if (beta == 0.0) {
            for (int j = 0; j < n; ++j) crow[j] = 0.0;
        } else if (beta != 1.0) {
            for (int j = 0; j < n; ++j) crow[j] *= beta;
        }
        const double* arow = a + size_t(i) * k;
        for (int p = 0; p < k; ++p) {
            const double ap = alpha * arow[p];
            if (ap == 0.0) continue;
            const double* brow = b + size_t(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += ap * brow[j];
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
            double acc = 0.0;
            for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
            crow[j] = alpha * acc + (beta == 0.0 ? 0.0 : beta * crow[j]);
        }
    }
}

void gemm_tn(int m, int n, int k, double alpha, const double* a, const double* b,
             double beta, double* c) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + size_t(i) * n;
        if (beta == 0.0) {
            for (int j = 0; j < n; ++j) crow[j] = 0.0;
        } else if (beta != 1.0) {
            for (int j = 0; j < n; ++j) crow[j] *= beta;
        }
    }
    for (int p = 0; p < k; ++p) {
        const double* arow = a + size_t(p) * m;
        const double* brow = b + size_t(p) * n;
        for (int i = 0; i < m; ++i) {
            const double ap = alpha * arow[i];
            if (ap == 0.0) continue;
            double* crow = c + size_t(i) * n;
            for (int j = 0; j < n; ++j) crow[j] += ap * brow[j];
        }
    }
}

void relu_fwd(const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_bwd(const double* x, const double* gy, double* gx, size_t n) {
    for (size_t i = 0; i < n; ++i)
        if (x[i] > 0.0) gx[i] += gy[i];
}

void axpy(double a, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* a, const double* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void scale(double* x, double a, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= a;
}

void add_bias_rows(double* x, const double* bias, int rows, int cols) {
    for (int r = 0; r < rows; ++r) {
        double* row = x + size_t(r) * cols;
        for (int j = 0; j < cols; ++j) row[j] += bias[j];
    }
}

void adam_step(double* w, double* m, double* v, const double* g, size_t n,
               double lr, double beta1, double beta2, double eps,
               double bc1, double bc2, double weight_decay) {
    const double one_m_b1 = 1.0 - beta1;
    const double one_m_b2 = 1.0 - beta2;
    for (size_t i = 0; i < n; ++i) {
        m[i] = beta1 * m[i] + one_m_b1 * g[i];
        v[i] = beta2 * v[i] + one_m_b2 * g[i] * g[i];
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        w[i] -= lr * (mhat / (std::sqrt(vhat) + eps) + weight_decay * w[i]);
    }
}

} // namespace gvn::kernels::scalar
