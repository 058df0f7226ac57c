#include "rampflow/kernels/dense.hpp"

#include <algorithm>

namespace rampflow::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void relu(double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] = std::max(x[i], 0.0);
}

void relu_backward(const double* pre, double* grad, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (pre[i] <= 0.0) grad[i] = 0.0;
    }
}

void matvec(const double* w, const double* b, std::size_t rows, std::size_t cols,
            const double* x, double* out) {
    for (std::size_t r = 0; r < rows; ++r) {
        out[r] = b[r] + dot(w + r * cols, x, cols);
    }
}

}  // namespace scalar

namespace {

struct Dispatch {
    Backend backend;
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*relu)(double*, std::size_t);
    void (*relu_backward)(const double*, double*, std::size_t);
    void (*matvec)(const double*, const double*, std::size_t, std::size_t, const double*, double*);
};

constexpr Dispatch kScalarTable{Backend::kScalar, scalar::dot,  scalar::axpy,
                                scalar::relu,     scalar::relu_backward, scalar::matvec};

#if defined(RAMPFLOW_WITH_AVX2)
constexpr Dispatch kAvx2Table{Backend::kAvx2, avx2::dot,  avx2::axpy,
                              avx2::relu,     avx2::relu_backward, avx2::matvec};

bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

Dispatch& dispatch() {
    static Dispatch table = [] {
#if defined(RAMPFLOW_WITH_AVX2)
        if (cpu_has_avx2()) return kAvx2Table;
#endif
        return kScalarTable;
    }();
    return table;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::kScalar: return "scalar";
        case Backend::kAvx2: return "avx2";
    }
    return "?";
}

bool backend_available(Backend b) {
    if (b == Backend::kScalar) return true;
#if defined(RAMPFLOW_WITH_AVX2)
    if (b == Backend::kAvx2) return cpu_has_avx2();
#endif
    return false;
}

bool set_backend(Backend b) {
    if (!backend_available(b)) return false;
    switch (b) {
        case Backend::kScalar:
            dispatch() = kScalarTable;
            return true;
        case Backend::kAvx2:
#if defined(RAMPFLOW_WITH_AVX2)
            dispatch() = kAvx2Table;
            return true;
#else
            return false;
#endif
    }
    return false;
}

double dot(std::span<const double> x, std::span<const double> y) {
    return dispatch().dot(x.data(), y.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    dispatch().axpy(a, x.data(), y.data(), x.size());
}

void relu(std::span<double> x) { dispatch().relu(x.data(), x.size()); }

void relu_backward(std::span<const double> pre, std::span<double> grad) {
    dispatch().relu_backward(pre.data(), grad.data(), pre.size());
}

void matvec(std::span<const double> w, std::span<const double> b,
            std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out) {
    dispatch().matvec(w.data(), b.data(), rows, cols, x.data(), out.data());
}

}  // namespace rampflow::kernels
