#pragma once

#include <cstddef>

namespace dirnet::kern::scalar_impl {

double dot(const double* x, const double* y, std::size_t n);
double wdot(const double* w, const double* x, const double* y, std::size_t n);
double wdot3(const double* w, const double* a, const double* b, const double* c,
             std::size_t n);
void rotate_pair(double* x, double* y, std::size_t n, double c, double s);

}  // namespace dirnet::kern::scalar_impl

#if defined(DIRNET_HAVE_AVX2)
namespace dirnet::kern::avx2_impl {

double dot(const double* x, const double* y, std::size_t n);
double wdot(const double* w, const double* x, const double* y, std::size_t n);
double wdot3(const double* w, const double* a, const double* b, const double* c,
             std::size_t n);
void rotate_pair(double* x, double* y, std::size_t n, double c, double s);

}  // namespace dirnet::kern::avx2_impl
#endif
