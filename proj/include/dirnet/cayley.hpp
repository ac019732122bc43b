#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dirnet/network.hpp"

namespace dirnet {

enum class Family { free_abelian, heisenberg, tree };

// Canonical group-element encoding:
//   free_abelian: rank integers (the lattice point);
//   heisenberg:   triple (a, b, c) under (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b');
//   tree:         chain of child indices from the root (root children get
//                 indices 0..d-1, every other vertex 0..d-2).
using Element = std::vector<long long>;

// A Cayley-family descriptor: the group together with a symmetric, finitely
// supported probability measure (Cayley families) or the fixed edge
// conductance 1/d (trees). Measure entries are formal generator words such as
// "s1", "s2^-1", "X", "Y^-1 X" or "1" for the identity.
struct GroupSpec {
    Family family = Family::free_abelian;
    int rank = 0;    // free_abelian
    int degree = 0;  // tree, d >= 3
    std::vector<std::pair<std::string, double>> measure;

    static GroupSpec free_abelian_uniform(int n);
    static GroupSpec heisenberg_uniform();
    static GroupSpec tree(int d);

    std::string id() const;  // "zn:2", "heisenberg", "tree:3"
};

// Checks measure symmetry mu(x) = mu(x^-1), positivity, total mass 1 and the
// family constraints (tree: d >= 3, no measure; heisenberg: support within
// {X,Y,Z}^{+-1} words). Throws std::invalid_argument.
void validate(const GroupSpec& spec);

Element parse_word(const GroupSpec& spec, const std::string& word);
Element group_mul(const GroupSpec& spec, const Element& a, const Element& b);
Element group_inv(const GroupSpec& spec, const Element& a);

// Measure aggregated by canonical element, sorted for determinism.
std::vector<std::pair<Element, double>> canonical_support(const GroupSpec& spec);

// Finite ball in the Cayley network: interior = word-metric ball of the given
// radius, host = radius + 1 so that every neighbor of an interior vertex is
// present. pi = 1 on every host vertex.
struct BallNetwork {
    HostNetwork host;
    GroupSpec spec;
    std::vector<Element> elements;  // canonical encoding per vertex
    std::vector<int> depth;         // graph distance from the origin (-1 for boxes)
    int radius = 0;
    int origin = 0;  // index of the identity / root (-1 when absent)
};

BallNetwork build_ball(const GroupSpec& spec, int radius, int host_cap = 20000);

// Axis-aligned box {1..dims[0]} x ... x {1..dims[n-1]} as the interior of a
// free-abelian Cayley network; the host adds one layer of measure-steps.
BallNetwork build_box(const GroupSpec& spec, const std::vector<int>& dims,
                      int host_cap = 20000);

// Same host with a smaller interior (must be a subset of the current one).
BallNetwork with_interior(const BallNetwork& ball, std::vector<int> interior);

// min of mu over the non-identity support (Cayley families only)
double mu_star(const GroupSpec& spec);

// Bottom of the ambient spectrum: 0 for the amenable families,
// 1 - 2 sqrt(d-1)/d for Tree(d).
double lambda_min(const GroupSpec& spec);

// --- homomorphism cocycles onto Z^n ---------------------------------------
//
// For free-abelian groups alpha is the identity map; for the Heisenberg group
// the abelianization (a,b,c) -> (a,b). The builder requires every support
// element to map to 0 or to +-e_j under alpha, with every axis covered;
// measures with non-basis steps are rejected.

// epsilon = 1 - sum_j (mu(s_j) + mu(s_j^-1)), the mass alpha sends to zero
double cocycle_epsilon(const GroupSpec& spec);
// max_j mu(s_j) over the basis steps
double cocycle_mu_max(const GroupSpec& spec);
TestFunction homomorphism_cocycle(const BallNetwork& ball);

// --- trees -----------------------------------------------------------------

// Busemann function of the all-first-child ray: b = -j on the ray, and
// b(z) = b(z_*) + dist(z, z_*) off it. Every interior vertex has exactly one
// neighbor one level down and d-1 neighbors one level up.
TestFunction busemann(const BallNetwork& ball);

// f(x) = (xi / sqrt(d-1))^(b(x)); on the interior
// Delta f = f * (1 - sqrt(d-1)/d * (xi + 1/xi)).
std::vector<double> tree_ground_state(const BallNetwork& ball, double xi);

// Family constants used by the inequality reports.
double default_yang_constant(const GroupSpec& spec);       // 6 / mu_*
double default_yang_type_constant(const GroupSpec& spec);  // trees: 8 sqrt(d-1)/d,
                                                           // cocycle families: 8 mu_max

}  // namespace dirnet
