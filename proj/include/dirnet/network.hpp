#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dirnet {

// Finite host portion of a network (V, c): the interior set Omega together
// with every neighbor of Omega. Vertex weights pi are stored explicitly, so
// boundary rows remain correct even though their outside edges are truncated.
//
// Invariants enforced at construction:
//   - conductances are finite, nonnegative, symmetric (stored once per pair);
//   - pi > 0 everywhere; pi equals the stored row sum on interior vertices
//     and dominates it on boundary vertices;
//   - every connected component of the interior (under c > 0) has at least
//     one edge leaving the interior.
class HostNetwork {
public:
    struct Edge {
        int u;  // u <= v; u == v is a self-loop
        int v;
        double c;
    };

    struct Neighbor {
        int to;
        double c;
    };

    HostNetwork(int vertex_count, std::vector<double> pi, std::vector<Edge> edges,
                std::vector<int> interior);

    int vertex_count() const noexcept { return n_; }
    int interior_size() const noexcept { return static_cast<int>(interior_.size()); }
    const std::vector<int>& interior() const noexcept { return interior_; }
    bool is_interior(int v) const { return interior_mask_[check_vertex(v)] != 0; }
    double pi(int v) const { return pi_[check_vertex(v)]; }
    const std::vector<double>& pi_values() const noexcept { return pi_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::span<const Neighbor> neighbors(int v) const;
    double conductance(int u, int v) const;  // 0 when not adjacent

private:
    int check_vertex(int v) const;

    int n_;
    std::vector<double> pi_;
    std::vector<Edge> edges_;  // sorted by (u, v), each undirected pair once
    std::vector<int> interior_;
    std::vector<std::uint8_t> interior_mask_;
    std::vector<int> adj_start_;
    std::vector<Neighbor> adj_;
};

// A function V -> R^dim used as the test function of the eigenvalue bounds.
// Values are stored vertex-major: dim entries per vertex.
struct TestFunction {
    int dim = 1;
    std::vector<double> values;

    double at(int v, int h) const {
        return values[static_cast<std::size_t>(v) * dim + h];
    }
    std::span<const double> at(int v) const {
        return {values.data() + static_cast<std::size_t>(v) * dim,
                static_cast<std::size_t>(dim)};
    }
    static TestFunction scalar(std::vector<double> f);
};

// --- pi-weighted calculus ------------------------------------------------
//
// All gamma2* operations return the doubled carre du champ 2*Gamma, i.e.
//   gamma2(f,g)(x) = sum_y P(x,y) (f(x)-f(y)) (g(x)-g(y)).
// E and Lambda sum over ordered pairs (x,y); each undirected edge counts
// twice. Self-loops contribute to pi and P(x,x) but cancel in every
// difference-based quantity.

// P(i,j) = c(i,j) / pi(i)
double transition(const HostNetwork& net, int i, int j);

// (Delta f)(x) for x in interior, ordered like net.interior()
std::vector<double> laplacian_apply(const HostNetwork& net, std::span<const double> f);

// <f,g>_pi over the host
double inner_product(const HostNetwork& net, std::span<const double> f,
                     std::span<const double> g);

// E(f,g) = sum_{x,y} c(x,y)(f(x)-f(y))(g(x)-g(y))
double dirichlet_energy(const HostNetwork& net, std::span<const double> f,
                        std::span<const double> g);

// 2*Gamma(f,g) on the interior
std::vector<double> gamma2(const HostNetwork& net, std::span<const double> f,
                           std::span<const double> g);

// Lambda(f,g) = 1/4 sum_{x,y} c(x,y) |f(x)-f(y)|^2 |g(x)-g(y)|^2
double lambda_functional(const HostNetwork& net, std::span<const double> f,
                         std::span<const double> g);

// --- vector-valued extensions (alpha: V -> R^m) ---------------------------

// 2*Gamma(alpha,u), interior rows, dim entries per vertex
std::vector<double> gamma2_vec(const HostNetwork& net, const TestFunction& alpha,
                               std::span<const double> u);

// 2*Gamma(alpha,u) on every host row. Exact whenever u vanishes off the
// interior, since truncated edges then carry zero u-difference.
std::vector<double> gamma2_vec_host(const HostNetwork& net, const TestFunction& alpha,
                                    std::span<const double> u);

double lambda_vec(const HostNetwork& net, const TestFunction& alpha,
                  std::span<const double> u);

// (Delta alpha) on the interior, dim entries per vertex
std::vector<double> laplacian_vec(const HostNetwork& net, const TestFunction& alpha);

// 2*Gamma(alpha)(x) = sum_y P(x,y) ||alpha(x)-alpha(y)||^2, interior rows
std::vector<double> gamma2_norm(const HostNetwork& net, const TestFunction& alpha);

}  // namespace dirnet
