#pragma once

#include <span>
#include <vector>

#include "dirnet/network.hpp"

namespace dirnet {

struct EighResult {
    int n = 0;
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> vectors;      // row i = i-th orthonormal eigenvector

    std::span<const double> vector(int i) const {
        return {vectors.data() + static_cast<std::size_t>(i) * n,
                static_cast<std::size_t>(n)};
    }
};

// Symmetrized Dirichlet matrix M = D^(1/2) (I - P) D^(-1/2) restricted to the
// interior, D = diag(pi). Row-major, ordered like net.interior(). Its
// eigenvalues are the Dirichlet eigenvalues; eigenvectors map back through
// u = D^(-1/2) v.
std::vector<double> dirichlet_matrix(const HostNetwork& net);

// Cyclic Jacobi on a dense symmetric matrix (row-major n x n). Iterates until
// every off-diagonal magnitude is <= tol * frobenius_norm(M), with a 50-sweep
// budget. Throws std::invalid_argument on non-symmetric input and
// std::runtime_error when the budget is exhausted.
EighResult symmetric_eigh(std::span<const double> M, int n, double tol = 1e-13);

// Sorted Dirichlet eigenvalues with a pi-orthonormal eigenbasis supported on
// the interior. lambda_min is the ambient bottom of spectrum, supplied by the
// caller (0 for amenable families, 1 - 2 sqrt(d-1)/d for trees).
struct DirichletSystem {
    int interior_size = 0;
    int host_size = 0;
    double lambda_min = 0.0;
    std::vector<double> eigenvalues;   // ascending
    std::vector<double> eigenvectors;  // row i = u_i over the host, zero off interior
    std::vector<double> residuals;     // ||Delta u_i - lambda_i u_i||_pi on interior rows

    std::span<const double> eigenvector(int i) const {
        return {eigenvectors.data() + static_cast<std::size_t>(i) * host_size,
                static_cast<std::size_t>(host_size)};
    }
};

// Builds the system and verifies its invariants (orthonormality and residuals
// within 1e-10, trace identity within 1e-10, spectrum in (0, 2 + 1e-12],
// lambda_min <= lambda_1). Throws std::runtime_error on violation.
DirichletSystem dirichlet_system(const HostNetwork& net, double lambda_min);

}  // namespace dirnet
