#include "dirnet/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "kernels_detail.hpp"

namespace dirnet::kern {

namespace scalar_impl {

double dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double wdot(const double* w, const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * x[i] * y[i];
    return acc;
}

double wdot3(const double* w, const double* a, const double* b, const double* c,
             std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * a[i] * b[i] * c[i];
    return acc;
}

void rotate_pair(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

}  // namespace scalar_impl

namespace {

struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*wdot)(const double*, const double*, const double*, std::size_t);
    double (*wdot3)(const double*, const double*, const double*, const double*,
                    std::size_t);
    void (*rotate_pair)(double*, double*, std::size_t, double, double);
};

constexpr Ops kScalarOps{scalar_impl::dot, scalar_impl::wdot, scalar_impl::wdot3,
                         scalar_impl::rotate_pair};

#if defined(DIRNET_HAVE_AVX2)
constexpr Ops kAvx2Ops{avx2_impl::dot, avx2_impl::wdot, avx2_impl::wdot3,
                       avx2_impl::rotate_pair};
#endif

bool cpu_has_avx2() {
#if defined(DIRNET_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

struct State {
    Backend backend;
    Ops ops;
};

State make_default_state() {
    if (const char* env = std::getenv("DIRNET_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return {Backend::scalar, kScalarOps};
#if defined(DIRNET_HAVE_AVX2)
        if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2())
            return {Backend::avx2, kAvx2Ops};
#endif
    }
#if defined(DIRNET_HAVE_AVX2)
    if (cpu_has_avx2()) return {Backend::avx2, kAvx2Ops};
#endif
    return {Backend::scalar, kScalarOps};
}

State& state() {
    static State s = make_default_state();
    return s;
}

}  // namespace

Backend active_backend() { return state().backend; }

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "?";
}

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
    return cpu_has_avx2();
}

void use_backend(Backend b) {
    if (!backend_available(b))
        throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                    backend_name(b));
    if (b == Backend::scalar) {
        state() = {Backend::scalar, kScalarOps};
        return;
    }
#if defined(DIRNET_HAVE_AVX2)
    state() = {Backend::avx2, kAvx2Ops};
#endif
}

void use_default_backend() { state() = make_default_state(); }

double dot(const double* x, const double* y, std::size_t n) {
    return state().ops.dot(x, y, n);
}

double wdot(const double* w, const double* x, const double* y, std::size_t n) {
    return state().ops.wdot(w, x, y, n);
}

double wdot3(const double* w, const double* a, const double* b, const double* c,
             std::size_t n) {
    return state().ops.wdot3(w, a, b, c, n);
}

void rotate_pair(double* x, double* y, std::size_t n, double c, double s) {
    state().ops.rotate_pair(x, y, n, c, s);
}

}  // namespace dirnet::kern
