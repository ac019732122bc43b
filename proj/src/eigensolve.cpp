#include "dirnet/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "dirnet/kernels.hpp"

namespace dirnet {

std::vector<double> dirichlet_matrix(const HostNetwork& net) {
    const auto& interior = net.interior();
    const int n = net.interior_size();
    std::vector<int> pos_of(net.vertex_count(), -1);
    std::vector<double> sqrt_pi(n);
    for (int p = 0; p < n; ++p) {
        pos_of[interior[p]] = p;
        sqrt_pi[p] = std::sqrt(net.pi(interior[p]));
    }

    std::vector<double> M(static_cast<std::size_t>(n) * n, 0.0);
    for (int p = 0; p < n; ++p)
        M[static_cast<std::size_t>(p) * n + p] =
            1.0 - net.conductance(interior[p], interior[p]) / net.pi(interior[p]);
    for (const auto& e : net.edges()) {
        if (e.u == e.v) continue;
        const int pu = pos_of[e.u];
        const int pv = pos_of[e.v];
        if (pu < 0 || pv < 0) continue;
        const double val = -e.c / (sqrt_pi[pu] * sqrt_pi[pv]);
        M[static_cast<std::size_t>(pu) * n + pv] = val;
        M[static_cast<std::size_t>(pv) * n + pu] = val;
    }
    return M;
}

EighResult symmetric_eigh(std::span<const double> M, int n, double tol) {
    if (n < 1) throw std::invalid_argument("symmetric_eigh: empty matrix");
    if (M.size() != static_cast<std::size_t>(n) * n)
        throw std::invalid_argument("symmetric_eigh: size mismatch");
    if (!(tol > 0.0)) throw std::invalid_argument("symmetric_eigh: tol must be > 0");

    double max_abs = 0.0;
    double max_asym = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double mij = M[static_cast<std::size_t>(i) * n + j];
            max_abs = std::max(max_abs, std::abs(mij));
            max_asym = std::max(
                std::abs(mij - M[static_cast<std::size_t>(j) * n + i]), max_asym);
        }
    if (max_asym > 1e-12 * std::max(1.0, max_abs))
        throw std::invalid_argument("symmetric_eigh: matrix is not symmetric");

    std::vector<double> A(M.begin(), M.end());
    std::vector<double> QT(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) QT[static_cast<std::size_t>(i) * n + i] = 1.0;

    double fro = 0.0;
    for (double v : A) fro += v * v;
    fro = std::sqrt(fro);
    const double target = tol * fro;

    constexpr int kSweepBudget = 50;
    bool converged = false;
    for (int sweep = 0; sweep < kSweepBudget; ++sweep) {
        double max_off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                max_off =
                    std::max(max_off, std::abs(A[static_cast<std::size_t>(p) * n + q]));
        if (max_off <= target) {
            converged = true;
            break;
        }
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = A[static_cast<std::size_t>(p) * n + q];
                if (std::abs(apq) < 1e-200) continue;
                const double app = A[static_cast<std::size_t>(p) * n + p];
                const double aqq = A[static_cast<std::size_t>(q) * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = tau >= 0.0
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                kern::rotate_pair(A.data() + static_cast<std::size_t>(p) * n,
                                  A.data() + static_cast<std::size_t>(q) * n, n, c, s);
                for (int i = 0; i < n; ++i) {
                    double* row = A.data() + static_cast<std::size_t>(i) * n;
                    const double aip = row[p];
                    const double aiq = row[q];
                    row[p] = c * aip - s * aiq;
                    row[q] = s * aip + c * aiq;
                }
                A[static_cast<std::size_t>(p) * n + q] = 0.0;
                A[static_cast<std::size_t>(q) * n + p] = 0.0;
                kern::rotate_pair(QT.data() + static_cast<std::size_t>(p) * n,
                                  QT.data() + static_cast<std::size_t>(q) * n, n, c, s);
            }
        }
    }
    if (!converged) {
        double max_off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                max_off =
                    std::max(max_off, std::abs(A[static_cast<std::size_t>(p) * n + q]));
        if (max_off > target)
            throw std::runtime_error("symmetric_eigh: no convergence within 50 sweeps");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return A[static_cast<std::size_t>(a) * n + a] <
               A[static_cast<std::size_t>(b) * n + b];
    });

    EighResult out;
    out.n = n;
    out.eigenvalues.resize(n);
    out.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        out.eigenvalues[i] = A[static_cast<std::size_t>(order[i]) * n + order[i]];
        std::copy_n(QT.data() + static_cast<std::size_t>(order[i]) * n, n,
                    out.vectors.data() + static_cast<std::size_t>(i) * n);
    }
    return out;
}

namespace {

void system_check(bool cond, const std::string& what) {
    if (!cond) throw std::runtime_error("dirichlet_system: " + what);
}

}  // namespace

DirichletSystem dirichlet_system(const HostNetwork& net, double lambda_min) {
    const int n = net.interior_size();
    const int host = net.vertex_count();
    const auto& interior = net.interior();

    const auto M = dirichlet_matrix(net);
    const auto eig = symmetric_eigh(M, n, 1e-13);

    DirichletSystem sys;
    sys.interior_size = n;
    sys.host_size = host;
    sys.lambda_min = lambda_min;
    sys.eigenvalues = eig.eigenvalues;
    sys.eigenvectors.assign(static_cast<std::size_t>(n) * host, 0.0);
    for (int i = 0; i < n; ++i) {
        auto v = eig.vector(i);
        double* u = sys.eigenvectors.data() + static_cast<std::size_t>(i) * host;
        for (int p = 0; p < n; ++p) u[interior[p]] = v[p] / std::sqrt(net.pi(interior[p]));
    }

    // interior-restricted copies for the pi-inner-product checks
    std::vector<double> pi_int(n);
    for (int p = 0; p < n; ++p) pi_int[p] = net.pi(interior[p]);
    std::vector<double> U(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        auto u = sys.eigenvector(i);
        for (int p = 0; p < n; ++p) U[static_cast<std::size_t>(i) * n + p] = u[interior[p]];
    }

    system_check(sys.eigenvalues.front() > 0.0, "lambda_1 must be positive");
    system_check(sys.eigenvalues.back() <= 2.0 + 1e-12, "lambda_n exceeds 2");
    system_check(lambda_min <= sys.eigenvalues.front() + 1e-12,
                 "lambda_min exceeds lambda_1");
    for (int i = 1; i < n; ++i)
        system_check(sys.eigenvalues[i - 1] <= sys.eigenvalues[i],
                     "eigenvalues not sorted");

    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            const double ip =
                kern::wdot(pi_int.data(), U.data() + static_cast<std::size_t>(i) * n,
                           U.data() + static_cast<std::size_t>(j) * n, n);
            system_check(std::abs(ip - (i == j ? 1.0 : 0.0)) <= 1e-10,
                         "eigenbasis not pi-orthonormal");
        }

    sys.residuals.resize(n);
    for (int i = 0; i < n; ++i) {
        const auto du = laplacian_apply(net, sys.eigenvector(i));
        double acc = 0.0;
        for (int p = 0; p < n; ++p) {
            const double r = du[p] - sys.eigenvalues[i] * U[static_cast<std::size_t>(i) * n + p];
            acc += pi_int[p] * r * r;
        }
        sys.residuals[i] = std::sqrt(acc);
        system_check(sys.residuals[i] <= 1e-10, "eigenpair residual too large");
    }

    double trace = 0.0;
    for (double l : sys.eigenvalues) trace += l;
    double diag = 0.0;
    for (int x : interior) diag += net.conductance(x, x) / net.pi(x);
    system_check(std::abs(trace - (n - diag)) <= 1e-10, "trace identity violated");

    return sys;
}

}  // namespace dirnet
