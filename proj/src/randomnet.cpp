#include "dirnet/randomnet.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dirnet {

namespace {

// std::uniform_* distributions are implementation-defined; draw from raw bits
// so the generated instances are identical across standard libraries.
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double uniform() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int below(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }
};

}  // namespace

HostNetwork random_network(int vertices, std::uint64_t seed, double density) {
    if (vertices < 2) throw std::invalid_argument("random_network: need >= 2 vertices");
    if (!(density > 0.0 && density <= 1.0))
        throw std::invalid_argument("random_network: density must be in (0, 1]");
    Rng rng(seed);

    std::vector<std::vector<bool>> present(vertices, std::vector<bool>(vertices, false));
    std::vector<HostNetwork::Edge> edges;
    auto add_edge = [&](int u, int v) {
        edges.push_back({u, v, rng.uniform(0.1, 1.0)});
        present[u][v] = present[v][u] = true;
    };

    for (int v = 1; v < vertices; ++v) add_edge(rng.below(v), v);
    for (int u = 0; u < vertices; ++u)
        for (int v = u + 1; v < vertices; ++v)
            if (!present[u][v] && rng.uniform() < density) add_edge(u, v);

    // boundary = random quarter of the vertices (at least one)
    std::vector<int> order(vertices);
    std::iota(order.begin(), order.end(), 0);
    for (int i = vertices - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    const int boundary_count = std::max(1, vertices / 4);
    std::vector<bool> boundary(vertices, false);
    for (int i = 0; i < boundary_count; ++i) boundary[order[i]] = true;

    std::vector<double> pi(vertices, 0.0);
    for (const auto& e : edges) {
        pi[e.u] += e.c;
        if (e.u != e.v) pi[e.v] += e.c;
    }
    for (int v = 0; v < vertices; ++v)
        if (boundary[v]) pi[v] += rng.uniform();

    std::vector<int> interior;
    for (int v = 0; v < vertices; ++v)
        if (!boundary[v]) interior.push_back(v);

    return HostNetwork(vertices, std::move(pi), std::move(edges), std::move(interior));
}

TestFunction random_test_function(const HostNetwork& net, int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("random_test_function: dim must be >= 1");
    Rng rng(seed);
    TestFunction alpha;
    alpha.dim = dim;
    alpha.values.resize(static_cast<std::size_t>(net.vertex_count()) * dim);
    for (auto& v : alpha.values) v = rng.uniform(-1.0, 1.0);
    return alpha;
}

std::vector<double> random_interior_function(const HostNetwork& net,
                                             std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> f(net.vertex_count(), 0.0);
    for (int x : net.interior()) f[x] = rng.uniform(-1.0, 1.0);
    return f;
}

std::vector<int> random_subset(int n, int count, std::uint64_t seed) {
    if (count < 0 || count > n) throw std::invalid_argument("random_subset: bad count");
    Rng rng(seed);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<int> out(order.begin(), order.begin() + count);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace dirnet
