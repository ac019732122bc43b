#include "dirnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dirnet/kernels.hpp"

namespace dirnet {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_host_function(const HostNetwork& net, std::span<const double> f,
                         const char* name) {
    if (f.size() != static_cast<std::size_t>(net.vertex_count()))
        throw std::invalid_argument(std::string(name) +
                                    ": function not defined on every host vertex");
}

void check_alpha(const HostNetwork& net, const TestFunction& alpha) {
    if (alpha.dim < 1) throw std::invalid_argument("test function dim must be >= 1");
    if (alpha.values.size() !=
        static_cast<std::size_t>(net.vertex_count()) * alpha.dim)
        throw std::invalid_argument("test function dimension mismatch");
}

}  // namespace

HostNetwork::HostNetwork(int vertex_count, std::vector<double> pi,
                         std::vector<Edge> edges, std::vector<int> interior)
    : n_(vertex_count),
      pi_(std::move(pi)),
      edges_(std::move(edges)),
      interior_(std::move(interior)) {
    require(n_ >= 1, "network needs at least one vertex");
    require(pi_.size() == static_cast<std::size_t>(n_), "pi size mismatch");
    for (double p : pi_)
        require(std::isfinite(p) && p > 0.0, "pi must be positive and finite");

    for (auto& e : edges_) {
        require(e.u >= 0 && e.u < n_ && e.v >= 0 && e.v < n_, "edge vertex out of range");
        require(std::isfinite(e.c) && e.c >= 0.0,
                "conductance must be finite and nonnegative");
        if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    for (std::size_t i = 1; i < edges_.size(); ++i)
        require(edges_[i - 1].u != edges_[i].u || edges_[i - 1].v != edges_[i].v,
                "duplicate edge");

    std::sort(interior_.begin(), interior_.end());
    require(std::adjacent_find(interior_.begin(), interior_.end()) == interior_.end(),
            "duplicate interior vertex");
    interior_mask_.assign(n_, 0);
    for (int v : interior_) {
        require(v >= 0 && v < n_, "interior vertex out of range");
        interior_mask_[v] = 1;
    }
    require(!interior_.empty(), "interior must be nonempty");

    // CSR adjacency (self-loop stored once in its own row)
    std::vector<int> degree(n_, 0);
    for (const auto& e : edges_) {
        ++degree[e.u];
        if (e.u != e.v) ++degree[e.v];
    }
    adj_start_.assign(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) adj_start_[v + 1] = adj_start_[v] + degree[v];
    adj_.resize(adj_start_[n_]);
    std::vector<int> fill(adj_start_.begin(), adj_start_.end() - 1);
    for (const auto& e : edges_) {
        adj_[fill[e.u]++] = {e.v, e.c};
        if (e.u != e.v) adj_[fill[e.v]++] = {e.u, e.c};
    }
    for (int v = 0; v < n_; ++v)
        std::sort(adj_.begin() + adj_start_[v], adj_.begin() + adj_start_[v + 1],
                  [](const Neighbor& a, const Neighbor& b) { return a.to < b.to; });

    // pi versus stored row sums
    for (int v = 0; v < n_; ++v) {
        double row = 0.0;
        for (const auto& nb : neighbors(v)) row += nb.c;
        const double tol = 1e-9 * std::max(1.0, pi_[v]);
        if (interior_mask_[v]) {
            require(std::abs(pi_[v] - row) <= tol,
                    "interior vertex weight must equal its row sum");
        } else {
            require(row <= pi_[v] + tol,
                    "boundary vertex weight must dominate its row sum");
        }
    }

    // every interior component must have an edge leaving the interior
    std::vector<std::uint8_t> seen(n_, 0);
    std::vector<int> stack;
    for (int start : interior_) {
        if (seen[start]) continue;
        bool escapes = false;
        stack.assign(1, start);
        seen[start] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (const auto& nb : neighbors(x)) {
                if (nb.c <= 0.0 || nb.to == x) continue;
                if (!interior_mask_[nb.to]) {
                    escapes = true;
                } else if (!seen[nb.to]) {
                    seen[nb.to] = 1;
                    stack.push_back(nb.to);
                }
            }
        }
        require(escapes, "degenerate interior: component without outgoing edge");
    }
}

int HostNetwork::check_vertex(int v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("unknown vertex id");
    return v;
}

std::span<const HostNetwork::Neighbor> HostNetwork::neighbors(int v) const {
    check_vertex(v);
    return {adj_.data() + adj_start_[v],
            static_cast<std::size_t>(adj_start_[v + 1] - adj_start_[v])};
}

double HostNetwork::conductance(int u, int v) const {
    check_vertex(v);
    auto nbrs = neighbors(u);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v,
                               [](const Neighbor& a, int b) { return a.to < b; });
    if (it != nbrs.end() && it->to == v) return it->c;
    return 0.0;
}

TestFunction TestFunction::scalar(std::vector<double> f) {
    return TestFunction{1, std::move(f)};
}

double transition(const HostNetwork& net, int i, int j) {
    return net.conductance(i, j) / net.pi(i);
}

std::vector<double> laplacian_apply(const HostNetwork& net, std::span<const double> f) {
    check_host_function(net, f, "laplacian_apply");
    std::vector<double> out(net.interior_size());
    int pos = 0;
    for (int x : net.interior()) {
        double acc = 0.0;
        for (const auto& nb : net.neighbors(x))
            if (nb.to != x) acc += nb.c * (f[x] - f[nb.to]);
        out[pos++] = acc / net.pi(x);
    }
    return out;
}

double inner_product(const HostNetwork& net, std::span<const double> f,
                     std::span<const double> g) {
    check_host_function(net, f, "inner_product");
    check_host_function(net, g, "inner_product");
    return kern::wdot(net.pi_values().data(), f.data(), g.data(), f.size());
}

double dirichlet_energy(const HostNetwork& net, std::span<const double> f,
                        std::span<const double> g) {
    check_host_function(net, f, "dirichlet_energy");
    check_host_function(net, g, "dirichlet_energy");
    double acc = 0.0;
    for (const auto& e : net.edges()) {
        if (e.u == e.v) continue;
        acc += 2.0 * e.c * (f[e.u] - f[e.v]) * (g[e.u] - g[e.v]);
    }
    return acc;
}

std::vector<double> gamma2(const HostNetwork& net, std::span<const double> f,
                           std::span<const double> g) {
    check_host_function(net, f, "gamma2");
    check_host_function(net, g, "gamma2");
    std::vector<double> out(net.interior_size());
    int pos = 0;
    for (int x : net.interior()) {
        double acc = 0.0;
        for (const auto& nb : net.neighbors(x))
            if (nb.to != x) acc += nb.c * (f[x] - f[nb.to]) * (g[x] - g[nb.to]);
        out[pos++] = acc / net.pi(x);
    }
    return out;
}

double lambda_functional(const HostNetwork& net, std::span<const double> f,
                         std::span<const double> g) {
    check_host_function(net, f, "lambda_functional");
    check_host_function(net, g, "lambda_functional");
    double acc = 0.0;
    for (const auto& e : net.edges()) {
        if (e.u == e.v) continue;
        const double df = f[e.u] - f[e.v];
        const double dg = g[e.u] - g[e.v];
        acc += 0.5 * e.c * df * df * dg * dg;
    }
    return acc;
}

namespace {

void gamma2_vec_row(const HostNetwork& net, const TestFunction& alpha,
                    std::span<const double> u, int x, double* out) {
    const int m = alpha.dim;
    for (int h = 0; h < m; ++h) out[h] = 0.0;
    for (const auto& nb : net.neighbors(x)) {
        if (nb.to == x) continue;
        const double cdu = nb.c * (u[x] - u[nb.to]);
        for (int h = 0; h < m; ++h)
            out[h] += cdu * (alpha.at(x, h) - alpha.at(nb.to, h));
    }
    const double inv_pi = 1.0 / net.pi(x);
    for (int h = 0; h < m; ++h) out[h] *= inv_pi;
}

}  // namespace

std::vector<double> gamma2_vec(const HostNetwork& net, const TestFunction& alpha,
                               std::span<const double> u) {
    check_alpha(net, alpha);
    check_host_function(net, u, "gamma2_vec");
    std::vector<double> out(static_cast<std::size_t>(net.interior_size()) * alpha.dim);
    int pos = 0;
    for (int x : net.interior())
        gamma2_vec_row(net, alpha, u, x,
                       out.data() + static_cast<std::size_t>(pos++) * alpha.dim);
    return out;
}

std::vector<double> gamma2_vec_host(const HostNetwork& net, const TestFunction& alpha,
                                    std::span<const double> u) {
    check_alpha(net, alpha);
    check_host_function(net, u, "gamma2_vec_host");
    std::vector<double> out(static_cast<std::size_t>(net.vertex_count()) * alpha.dim);
    for (int x = 0; x < net.vertex_count(); ++x)
        gamma2_vec_row(net, alpha, u, x,
                       out.data() + static_cast<std::size_t>(x) * alpha.dim);
    return out;
}

double lambda_vec(const HostNetwork& net, const TestFunction& alpha,
                  std::span<const double> u) {
    check_alpha(net, alpha);
    check_host_function(net, u, "lambda_vec");
    double acc = 0.0;
    for (const auto& e : net.edges()) {
        if (e.u == e.v) continue;
        const double du = u[e.u] - u[e.v];
        double da2 = 0.0;
        for (int h = 0; h < alpha.dim; ++h) {
            const double da = alpha.at(e.u, h) - alpha.at(e.v, h);
            da2 += da * da;
        }
        acc += 0.5 * e.c * du * du * da2;
    }
    return acc;
}

std::vector<double> laplacian_vec(const HostNetwork& net, const TestFunction& alpha) {
    check_alpha(net, alpha);
    const int m = alpha.dim;
    std::vector<double> out(static_cast<std::size_t>(net.interior_size()) * m, 0.0);
    int pos = 0;
    for (int x : net.interior()) {
        double* row = out.data() + static_cast<std::size_t>(pos++) * m;
        for (const auto& nb : net.neighbors(x)) {
            if (nb.to == x) continue;
            for (int h = 0; h < m; ++h)
                row[h] += nb.c * (alpha.at(x, h) - alpha.at(nb.to, h));
        }
        const double inv_pi = 1.0 / net.pi(x);
        for (int h = 0; h < m; ++h) row[h] *= inv_pi;
    }
    return out;
}

std::vector<double> gamma2_norm(const HostNetwork& net, const TestFunction& alpha) {
    check_alpha(net, alpha);
    std::vector<double> out(net.interior_size());
    int pos = 0;
    for (int x : net.interior()) {
        double acc = 0.0;
        for (const auto& nb : net.neighbors(x)) {
            if (nb.to == x) continue;
            double da2 = 0.0;
            for (int h = 0; h < alpha.dim; ++h) {
                const double da = alpha.at(x, h) - alpha.at(nb.to, h);
                da2 += da * da;
            }
            acc += nb.c * da2;
        }
        out[pos++] = acc / net.pi(x);
    }
    return out;
}

}  // namespace dirnet
