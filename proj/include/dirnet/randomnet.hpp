#pragma once

#include <cstdint>
#include <vector>

#include "dirnet/network.hpp"

namespace dirnet {

// Connected random host network: spanning tree plus density-controlled extra
// edges, conductances uniform in [0.1, 1], roughly a quarter of the vertices
// designated boundary with a random pi surplus. Fully determined by the seed.
HostNetwork random_network(int vertices, std::uint64_t seed, double density);

// Independent uniform values in [-1, 1] per vertex per coordinate.
TestFunction random_test_function(const HostNetwork& net, int dim, std::uint64_t seed);

// Uniform values in [-1, 1] on the interior, zero elsewhere.
std::vector<double> random_interior_function(const HostNetwork& net,
                                             std::uint64_t seed);

// count distinct values drawn from {0, .., n-1}, sorted; deterministic in seed.
std::vector<int> random_subset(int n, int count, std::uint64_t seed);

}  // namespace dirnet
