#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "gvn/kernels/kernels.hpp"
#include "gvn/rng.hpp"

using namespace gvn;
namespace K = gvn::kernels;

namespace {

std::vector<double> random_vec(size_t n, Rng& rng, double scale = 1.0) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal() * scale;
    return v;
}

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        const double denom = std::max({std::abs(a[i]), std::abs(b[i]), 1.0});
        if (std::abs(a[i] - b[i]) / denom > tol) return false;
    }
    return true;
}

} // namespace

TEST_CASE("gemm_nn matches hand-computed 2x2") {
    // [1 2; 3 4] * [5 6; 7 8] = [19 22; 43 50]
    const std::vector<double> a{1, 2, 3, 4};
    const std::vector<double> b{5, 6, 7, 8};
    std::vector<double> c(4, 0.0);
    K::gemm_nn(2, 2, 2, 1.0, a.data(), b.data(), 0.0, c.data());
    CHECK(c[0] == doctest::Approx(19));
    CHECK(c[1] == doctest::Approx(22));
    CHECK(c[2] == doctest::Approx(43));
    CHECK(c[3] == doctest::Approx(50));
}

TEST_CASE("gemm transpose variants agree with explicit transposition") {
    Rng rng(11);
    const int m = 7, n = 9, k = 5;
    const auto a = random_vec(size_t(m) * k, rng);
    const auto b = random_vec(size_t(k) * n, rng);

    std::vector<double> c_ref(size_t(m) * n, 0.0);
    K::scalar::gemm_nn(m, n, k, 1.0, a.data(), b.data(), 0.0, c_ref.data());

    // nt: feed b as its transpose (n x k)
    std::vector<double> bt(size_t(n) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j) bt[size_t(j) * k + i] = b[size_t(i) * n + j];
    std::vector<double> c1(size_t(m) * n, 0.0);
    K::gemm_nt(m, n, k, 1.0, a.data(), bt.data(), 0.0, c1.data());
    CHECK(close(c1, c_ref, 1e-12));

    // tn: feed a as its transpose (k x m)
    std::vector<double> at(size_t(k) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < k; ++j) at[size_t(j) * m + i] = a[size_t(i) * k + j];
    std::vector<double> c2(size_t(m) * n, 0.0);
    K::gemm_tn(m, n, k, 1.0, at.data(), b.data(), 0.0, c2.data());
    CHECK(close(c2, c_ref, 1e-12));
}

#if GVN_HAVE_AVX2_BUILD
TEST_CASE("avx2 kernels are equivalent to the scalar references") {
    if (!K::avx2_supported()) {
        MESSAGE("AVX2 not supported on this CPU; skipping");
        return;
    }
    Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int m = rng.next_int(1, 17);
        const int n = rng.next_int(1, 23);
        const int k = rng.next_int(1, 19);
        const auto a = random_vec(size_t(m) * k, rng);
        const auto b = random_vec(size_t(k) * n, rng);
        const auto bt = random_vec(size_t(n) * k, rng);
        const auto at = random_vec(size_t(k) * m, rng);
        const auto c0 = random_vec(size_t(m) * n, rng);
        const double alpha = rng.uniform(-2, 2);
        const double beta = trial % 3 == 0 ? 0.0 : rng.uniform(-1, 1);

        auto c_s = c0, c_v = c0;
        K::scalar::gemm_nn(m, n, k, alpha, a.data(), b.data(), beta, c_s.data());
        K::avx2::gemm_nn(m, n, k, alpha, a.data(), b.data(), beta, c_v.data());
        CHECK(close(c_s, c_v, 1e-13));

        c_s = c0; c_v = c0;
        K::scalar::gemm_nt(m, n, k, alpha, a.data(), bt.data(), beta, c_s.data());
        K::avx2::gemm_nt(m, n, k, alpha, a.data(), bt.data(), beta, c_v.data());
        CHECK(close(c_s, c_v, 1e-13));

        c_s = c0; c_v = c0;
        K::scalar::gemm_tn(m, n, k, alpha, at.data(), b.data(), beta, c_s.data());
        K::avx2::gemm_tn(m, n, k, alpha, at.data(), b.data(), beta, c_v.data());
        CHECK(close(c_s, c_v, 1e-13));
    }
}

TEST_CASE("avx2 elementwise kernels match scalar") {
    if (!K::avx2_supported()) return;
    Rng rng(7);
    const size_t n = 1003; // deliberately not a multiple of 4
    const auto x = random_vec(n, rng);
    const auto g = random_vec(n, rng);

    std::vector<double> y_s(n), y_v(n);
    K::scalar::relu_fwd(x.data(), y_s.data(), n);
    K::avx2::relu_fwd(x.data(), y_v.data(), n);
    CHECK(y_s == y_v);

    auto gx_s = random_vec(n, rng);
    auto gx_v = gx_s;
    K::scalar::relu_bwd(x.data(), g.data(), gx_s.data(), n);
    K::avx2::relu_bwd(x.data(), g.data(), gx_v.data(), n);
    CHECK(close(gx_s, gx_v, 1e-15));

    auto ya = y_s, yb = y_s;
    K::scalar::axpy(0.37, x.data(), ya.data(), n);
    K::avx2::axpy(0.37, x.data(), yb.data(), n);
    CHECK(close(ya, yb, 1e-15));

    CHECK(K::scalar::dot(x.data(), g.data(), n) ==
          doctest::Approx(K::avx2::dot(x.data(), g.data(), n)).epsilon(1e-12));

    auto w_s = random_vec(n, rng);
    auto w_v = w_s;
    auto m_s = random_vec(n, rng, 0.01);
    auto m_v = m_s;
    auto v_s = random_vec(n, rng, 0.0);
    for (auto& t : v_s) t = std::abs(t) + 0.01;
    auto v_v = v_s;
    K::scalar::adam_step(w_s.data(), m_s.data(), v_s.data(), g.data(), n, 1e-3,
                         0.9, 0.999, 1e-8, 0.1, 0.001, 1e-4);
    K::avx2::adam_step(w_v.data(), m_v.data(), v_v.data(), g.data(), n, 1e-3,
                       0.9, 0.999, 1e-8, 0.1, 0.001, 1e-4);
    CHECK(close(w_s, w_v, 1e-13));
    CHECK(close(m_s, m_v, 1e-13));
    CHECK(close(v_s, v_v, 1e-13));
}
#endif

TEST_CASE("dispatch honors set_impl") {
    const auto prev = K::active();
    K::set_impl(K::Impl::Scalar);
    CHECK(K::active() == K::Impl::Scalar);
    if (K::avx2_supported()) {
        K::set_impl(K::Impl::Avx2);
        CHECK(K::active() == K::Impl::Avx2);
    }
    K::set_impl(prev);
}
