#include <doctest.h>

#include <cmath>
#include <vector>

#include "rampflow/kernels/dense.hpp"
#include "rampflow/rng.hpp"

using namespace rampflow;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-2.0, 2.0);
    return v;
}

bool close(double a, double b, double tol = 1e-10) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar dot and matvec identities") {
    Rng rng(1);
    const auto x = random_vec(rng, 7);
    std::vector<double> ones(7, 1.0);
    double sum = 0.0;
    for (double v : x) sum += v;
    CHECK(close(kernels::scalar::dot(x.data(), ones.data(), 7), sum));

    // identity matrix: out = x + b
    std::vector<double> w(49, 0.0);
    for (int i = 0; i < 7; ++i) w[static_cast<std::size_t>(i) * 7 + i] = 1.0;
    const auto b = random_vec(rng, 7);
    std::vector<double> out(7);
    kernels::scalar::matvec(w.data(), b.data(), 7, 7, x.data(), out.data());
    for (int i = 0; i < 7; ++i) CHECK(close(out[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]));
}

TEST_CASE("relu clamps negatives only") {
    std::vector<double> x{-1.0, 0.0, 2.5, -0.001, 7.0};
    kernels::scalar::relu(x.data(), x.size());
    CHECK(x == std::vector<double>{0.0, 0.0, 2.5, 0.0, 7.0});
}

#if defined(RAMPFLOW_WITH_AVX2)
TEST_CASE("avx2 variants match the scalar reference") {
    if (!kernels::backend_available(kernels::Backend::kAvx2)) return;
    Rng rng(42);
    for (std::size_t n : {1u, 3u, 4u, 5u, 8u, 13u, 16u, 20u, 31u, 64u, 67u}) {
        auto x = random_vec(rng, n);
        auto y = random_vec(rng, n);
        CHECK(close(kernels::avx2::dot(x.data(), y.data(), n),
                    kernels::scalar::dot(x.data(), y.data(), n)));

        auto y_s = y;
        auto y_v = y;
        const double a = rng.uniform(-3.0, 3.0);
        kernels::scalar::axpy(a, x.data(), y_s.data(), n);
        kernels::avx2::axpy(a, x.data(), y_v.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(close(y_s[i], y_v[i]));

        auto r_s = x;
        auto r_v = x;
        kernels::scalar::relu(r_s.data(), n);
        kernels::avx2::relu(r_v.data(), n);
        CHECK(r_s == r_v);

        auto g_s = random_vec(rng, n);
        auto g_v = g_s;
        kernels::scalar::relu_backward(x.data(), g_s.data(), n);
        kernels::avx2::relu_backward(x.data(), g_v.data(), n);
        CHECK(g_s == g_v);
    }

    // matvec with ragged shapes
    for (auto [rows, cols] : std::vector<std::pair<std::size_t, std::size_t>>{
             {1, 5}, {8, 5}, {12, 8}, {20, 12}, {16, 20}, {16, 16}, {7, 13}}) {
        auto w = random_vec(rng, rows * cols);
        auto b = random_vec(rng, rows);
        auto x = random_vec(rng, cols);
        std::vector<double> out_s(rows);
        std::vector<double> out_v(rows);
        kernels::scalar::matvec(w.data(), b.data(), rows, cols, x.data(), out_s.data());
        kernels::avx2::matvec(w.data(), b.data(), rows, cols, x.data(), out_v.data());
        for (std::size_t i = 0; i < rows; ++i) CHECK(close(out_s[i], out_v[i]));
    }
}

TEST_CASE("runtime backend switch keeps results consistent") {
    if (!kernels::backend_available(kernels::Backend::kAvx2)) return;
    Rng rng(7);
    const auto x = random_vec(rng, 33);
    const auto y = random_vec(rng, 33);

    REQUIRE(kernels::set_backend(kernels::Backend::kScalar));
    const double d_scalar = kernels::dot(x, y);
    REQUIRE(kernels::set_backend(kernels::Backend::kAvx2));
    const double d_avx2 = kernels::dot(x, y);
    CHECK(close(d_scalar, d_avx2));
    CHECK(kernels::active_backend() == kernels::Backend::kAvx2);
}
#endif

}  // TEST_SUITE

TEST_SUITE("rng") {

TEST_CASE("streams are deterministic and name-separated") {
    Rng a(derive_seed(123, "arrivals"));
    Rng b(derive_seed(123, "arrivals"));
    Rng c(derive_seed(123, "exploration"));
    bool diverged = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        if (va != c.next_u64()) diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("uniform01 stays in [0,1) and has a sane mean") {
    Rng rng(9);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 20000.0 - 0.5) < 0.02);
}

TEST_CASE("uniform_int covers the range") {
    Rng rng(11);
    std::vector<int> counts(16, 0);
    for (int i = 0; i < 16000; ++i) ++counts[static_cast<std::size_t>(rng.uniform_int(16))];
    for (int c : counts) CHECK(c > 700);
}

}  // TEST_SUITE
