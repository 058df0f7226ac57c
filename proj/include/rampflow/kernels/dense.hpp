#pragma once

#include <cstddef>
#include <span>

// Dense double-precision kernels behind the Q-network math. A scalar
// reference implementation always exists; on x86-64 an AVX2+FMA variant is
// compiled as well and selected at runtime when the CPU supports it. The two
// are equivalence-tested against each other (same inputs, tolerance for
// reduction-order differences).
namespace rampflow::kernels {

enum class Backend { kScalar, kAvx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);

// Forces a backend (tests, reproducibility studies). Returns false and leaves
// the dispatch unchanged if the backend is not available on this machine.
bool set_backend(Backend b);

double dot(std::span<const double> x, std::span<const double> y);

// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);

// x = max(x, 0)
void relu(std::span<double> x);

// grad[i] = pre[i] > 0 ? grad[i] : 0
void relu_backward(std::span<const double> pre, std::span<double> grad);

// out = W x + b, W row-major (rows x cols)
void matvec(std::span<const double> w, std::span<const double> b,
            std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> out);

// Reference implementations, exposed for equivalence tests.
namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void relu(double* x, std::size_t n);
void relu_backward(const double* pre, double* grad, std::size_t n);
void matvec(const double* w, const double* b, std::size_t rows, std::size_t cols,
            const double* x, double* out);
}  // namespace scalar

#if defined(RAMPFLOW_WITH_AVX2)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void relu(double* x, std::size_t n);
void relu_backward(const double* pre, double* grad, std::size_t n);
void matvec(const double* w, const double* b, std::size_t rows, std::size_t cols,
            const double* x, double* out);
}  // namespace avx2
#endif

}  // namespace rampflow::kernels
