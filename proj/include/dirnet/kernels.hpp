#pragma once

#include <cstddef>

// Runtime-dispatched dense kernels used by the hot loops (Jacobi rotations,
// pi-weighted inner products). Every kernel has a scalar reference
// implementation; on x86-64 an AVX2+FMA variant is selected at startup when
// the CPU supports it. SIMD results differ from scalar by reassociation
// roundoff only; the unit tests pin the two implementations together.
namespace dirnet::kern {

enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);
bool backend_available(Backend b);

// Select a backend explicitly (throws std::invalid_argument if unavailable).
// Also honored at startup: DIRNET_KERNELS=scalar|avx2.
void use_backend(Backend b);
void use_default_backend();

double dot(const double* x, const double* y, std::size_t n);

// sum_i w[i] * x[i] * y[i]
double wdot(const double* w, const double* x, const double* y, std::size_t n);

// sum_i w[i] * a[i] * b[i] * c[i]
double wdot3(const double* w, const double* a, const double* b, const double* c,
             std::size_t n);

// (x, y) <- (c*x - s*y, s*x + c*y), elementwise
void rotate_pair(double* x, double* y, std::size_t n, double c, double s);

}  // namespace dirnet::kern
