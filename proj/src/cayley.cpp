#include "dirnet/cayley.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace dirnet {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

bool is_cayley(const GroupSpec& spec) { return spec.family != Family::tree; }

Element identity_element(const GroupSpec& spec) {
    switch (spec.family) {
        case Family::free_abelian: return Element(spec.rank, 0);
        case Family::heisenberg: return Element(3, 0);
        case Family::tree: return {};
    }
    return {};
}

// single generator token -> element
Element generator_element(const GroupSpec& spec, const std::string& name) {
    if (spec.family == Family::free_abelian) {
        require(name.size() >= 2 && name[0] == 's', "unknown generator: " + name);
        char* end = nullptr;
        const long j = std::strtol(name.c_str() + 1, &end, 10);
        require(end && *end == '\0' && j >= 1 && j <= spec.rank,
                "unknown generator: " + name);
        Element e(spec.rank, 0);
        e[j - 1] = 1;
        return e;
    }
    if (spec.family == Family::heisenberg) {
        if (name == "X" || name == "x") return {1, 0, 0};
        if (name == "Y" || name == "y") return {0, 1, 0};
        if (name == "Z" || name == "z") return {0, 0, 1};
        throw std::invalid_argument("unknown generator: " + name);
    }
    throw std::invalid_argument("tree families carry no generator words");
}

}  // namespace

GroupSpec GroupSpec::free_abelian_uniform(int n) {
    GroupSpec spec;
    spec.family = Family::free_abelian;
    spec.rank = n;
    const double p = 1.0 / (2.0 * n);
    for (int j = 1; j <= n; ++j) {
        spec.measure.emplace_back("s" + std::to_string(j), p);
        spec.measure.emplace_back("s" + std::to_string(j) + "^-1", p);
    }
    return spec;
}

GroupSpec GroupSpec::heisenberg_uniform() {
    GroupSpec spec;
    spec.family = Family::heisenberg;
    spec.measure = {{"X", 0.25}, {"X^-1", 0.25}, {"Y", 0.25}, {"Y^-1", 0.25}};
    return spec;
}

GroupSpec GroupSpec::tree(int d) {
    GroupSpec spec;
    spec.family = Family::tree;
    spec.degree = d;
    return spec;
}

std::string GroupSpec::id() const {
    switch (family) {
        case Family::free_abelian: return "zn:" + std::to_string(rank);
        case Family::heisenberg: return "heisenberg";
        case Family::tree: return "tree:" + std::to_string(degree);
    }
    return "?";
}

Element group_mul(const GroupSpec& spec, const Element& a, const Element& b) {
    if (spec.family == Family::free_abelian) {
        Element out(a);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
        return out;
    }
    if (spec.family == Family::heisenberg)
        return {a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]};
    throw std::invalid_argument("tree elements are not multiplied");
}

Element group_inv(const GroupSpec& spec, const Element& a) {
    if (spec.family == Family::free_abelian) {
        Element out(a);
        for (auto& v : out) v = -v;
        return out;
    }
    if (spec.family == Family::heisenberg) return {-a[0], -a[1], a[0] * a[1] - a[2]};
    throw std::invalid_argument("tree elements are not inverted");
}

Element parse_word(const GroupSpec& spec, const std::string& word) {
    require(is_cayley(spec), "tree families carry no measure words");
    Element acc = identity_element(spec);
    std::string token;
    std::istringstream in(word);
    std::string normalized = word;
    std::replace(normalized.begin(), normalized.end(), '*', ' ');
    std::istringstream stream(normalized);
    while (stream >> token) {
        if (token == "1" || token == "e") continue;
        long long power = 1;
        std::string name = token;
        if (auto caret = token.find('^'); caret != std::string::npos) {
            name = token.substr(0, caret);
            char* end = nullptr;
            power = std::strtoll(token.c_str() + caret + 1, &end, 10);
            require(end && *end == '\0', "bad exponent in word: " + word);
        }
        Element gen = generator_element(spec, name);
        if (power < 0) {
            gen = group_inv(spec, gen);
            power = -power;
        }
        for (long long i = 0; i < power; ++i) acc = group_mul(spec, acc, gen);
    }
    return acc;
}

std::vector<std::pair<Element, double>> canonical_support(const GroupSpec& spec) {
    require(is_cayley(spec), "tree families carry no measure");
    std::map<Element, double> agg;
    for (const auto& [word, p] : spec.measure) agg[parse_word(spec, word)] += p;
    return {agg.begin(), agg.end()};
}

void validate(const GroupSpec& spec) {
    if (spec.family == Family::tree) {
        require(spec.degree >= 3, "tree degree must be at least 3");
        require(spec.measure.empty(), "tree families carry no measure");
        return;
    }
    if (spec.family == Family::free_abelian)
        require(spec.rank >= 1, "free abelian rank must be at least 1");
    require(!spec.measure.empty(), "measure must be nonempty");

    double total = 0.0;
    for (const auto& [word, p] : spec.measure) {
        require(std::isfinite(p) && p > 0.0, "measure entries must be positive");
        total += p;
    }
    require(std::abs(total - 1.0) <= 1e-15, "measure must sum to 1");

    const auto support = canonical_support(spec);
    std::map<Element, double> lookup(support.begin(), support.end());
    for (const auto& [elem, p] : support) {
        auto it = lookup.find(group_inv(spec, elem));
        require(it != lookup.end() && std::abs(it->second - p) <= 1e-15,
                "measure must be symmetric: mu(x) = mu(x^-1)");
    }
}

namespace {

HostNetwork make_cayley_host(const GroupSpec& spec,
                             const std::vector<Element>& elements,
                             const std::map<Element, int>& index_of,
                             std::vector<int> interior) {
    const auto support = canonical_support(spec);
    std::map<std::pair<int, int>, double> edge_map;
    for (int x = 0; x < static_cast<int>(elements.size()); ++x) {
        for (const auto& [step, p] : support) {
            const auto z = group_mul(spec, elements[x], step);
            auto it = index_of.find(z);
            if (it == index_of.end()) continue;
            const int y = it->second;
            edge_map[{std::min(x, y), std::max(x, y)}] = p;
        }
    }
    std::vector<HostNetwork::Edge> edges;
    edges.reserve(edge_map.size());
    for (const auto& [key, c] : edge_map) edges.push_back({key.first, key.second, c});
    std::vector<double> pi(elements.size(), 1.0);
    return HostNetwork(static_cast<int>(elements.size()), std::move(pi),
                       std::move(edges), std::move(interior));
}

BallNetwork build_tree_ball(const GroupSpec& spec, int radius, int host_cap) {
    const int d = spec.degree;
    std::vector<Element> elements{Element{}};
    std::vector<int> depth{0};
    std::vector<int> parent{-1};
    std::vector<HostNetwork::Edge> edges;
    const double c = 1.0 / d;

    std::size_t head = 0;
    while (head < elements.size()) {
        const int x = static_cast<int>(head++);
        if (depth[x] >= radius + 1) continue;
        const int children = depth[x] == 0 ? d : d - 1;
        for (int j = 0; j < children; ++j) {
            Element child = elements[x];
            child.push_back(j);
            if (static_cast<int>(elements.size()) >= host_cap)
                throw std::runtime_error("ball exceeds the host vertex cap");
            const int y = static_cast<int>(elements.size());
            elements.push_back(std::move(child));
            depth.push_back(depth[x] + 1);
            parent.push_back(x);
            edges.push_back({x, y, c});
        }
    }

    std::vector<int> interior;
    for (int v = 0; v < static_cast<int>(elements.size()); ++v)
        if (depth[v] <= radius) interior.push_back(v);

    std::vector<double> pi(elements.size(), 1.0);
    BallNetwork ball{HostNetwork(static_cast<int>(elements.size()), std::move(pi),
                                 std::move(edges), std::move(interior)),
                     spec,
                     std::move(elements),
                     std::move(depth),
                     radius,
                     0};
    return ball;
}

}  // namespace

BallNetwork build_ball(const GroupSpec& spec, int radius, int host_cap) {
    validate(spec);
    require(radius >= 0, "radius must be nonnegative");
    if (spec.family == Family::tree) return build_tree_ball(spec, radius, host_cap);

    const auto support = canonical_support(spec);
    std::vector<Element> elements{identity_element(spec)};
    std::vector<int> depth{0};
    std::map<Element, int> index_of{{elements[0], 0}};

    std::size_t head = 0;
    while (head < elements.size()) {
        const int x = static_cast<int>(head++);
        if (depth[x] >= radius + 1) continue;
        for (const auto& [step, p] : support) {
            auto z = group_mul(spec, elements[x], step);
            if (index_of.count(z)) continue;
            if (static_cast<int>(elements.size()) >= host_cap)
                throw std::runtime_error("ball exceeds the host vertex cap");
            index_of.emplace(z, static_cast<int>(elements.size()));
            elements.push_back(std::move(z));
            depth.push_back(depth[x] + 1);
        }
    }

    std::vector<int> interior;
    for (int v = 0; v < static_cast<int>(elements.size()); ++v)
        if (depth[v] <= radius) interior.push_back(v);

    BallNetwork ball{make_cayley_host(spec, elements, index_of, std::move(interior)),
                     spec,
                     std::move(elements),
                     std::move(depth),
                     radius,
                     0};
    return ball;
}

BallNetwork build_box(const GroupSpec& spec, const std::vector<int>& dims,
                      int host_cap) {
    validate(spec);
    require(spec.family == Family::free_abelian, "boxes are free-abelian interiors");
    require(static_cast<int>(dims.size()) == spec.rank, "box dimension mismatch");
    for (int m : dims) require(m >= 1, "box sides must be positive");

    const auto support = canonical_support(spec);
    std::vector<Element> elements;
    std::map<Element, int> index_of;
    auto add = [&](const Element& e) {
        if (index_of.count(e)) return;
        if (static_cast<int>(elements.size()) >= host_cap)
            throw std::runtime_error("box exceeds the host vertex cap");
        index_of.emplace(e, static_cast<int>(elements.size()));
        elements.push_back(e);
    };

    // interior cells in lexicographic order, then the measure-step frame
    Element cell(spec.rank, 1);
    std::vector<Element> interior_cells;
    for (;;) {
        interior_cells.push_back(cell);
        int axis = spec.rank - 1;
        while (axis >= 0) {
            if (++cell[axis] <= dims[axis]) break;
            cell[axis] = 1;
            --axis;
        }
        if (axis < 0) break;
    }
    for (const auto& e : interior_cells) add(e);
    std::vector<int> interior;
    for (int v = 0; v < static_cast<int>(elements.size()); ++v) interior.push_back(v);
    for (const auto& e : interior_cells)
        for (const auto& [step, p] : support) add(group_mul(spec, e, step));

    BallNetwork ball{make_cayley_host(spec, elements, index_of, std::move(interior)),
                     spec,
                     std::move(elements),
                     std::vector<int>(elements.size(), -1),
                     -1,
                     -1};
    return ball;
}

BallNetwork with_interior(const BallNetwork& ball, std::vector<int> interior) {
    for (int v : interior)
        require(v >= 0 && v < ball.host.vertex_count() && ball.host.is_interior(v),
                "new interior must be a subset of the current interior");
    BallNetwork out{HostNetwork(ball.host.vertex_count(), ball.host.pi_values(),
                                ball.host.edges(), std::move(interior)),
                    ball.spec, ball.elements, ball.depth, ball.radius, ball.origin};
    return out;
}

double mu_star(const GroupSpec& spec) {
    require(is_cayley(spec), "mu_star: tree families carry no measure");
    const auto identity = identity_element(spec);
    double best = -1.0;
    for (const auto& [elem, p] : canonical_support(spec)) {
        if (elem == identity) continue;
        if (best < 0.0 || p < best) best = p;
    }
    require(best > 0.0, "mu_star: support contains no non-identity element");
    return best;
}

double lambda_min(const GroupSpec& spec) {
    if (spec.family == Family::tree)
        return 1.0 - 2.0 * std::sqrt(static_cast<double>(spec.degree - 1)) / spec.degree;
    return 0.0;  // amenable (Kesten)
}

namespace {

// abelianization image; empty optional encoded as throwing for trees
Element abelianization(const GroupSpec& spec, const Element& e) {
    if (spec.family == Family::free_abelian) return e;
    if (spec.family == Family::heisenberg) return {e[0], e[1]};
    throw std::invalid_argument("tree families have no abelian quotient map");
}

int quotient_rank(const GroupSpec& spec) {
    return spec.family == Family::free_abelian ? spec.rank : 2;
}

// classifies a support image: -1 for zero, axis index for +-e_j, throws else
int classify_image(const Element& img, const std::string& context) {
    int axis = -1;
    for (std::size_t j = 0; j < img.size(); ++j) {
        if (img[j] == 0) continue;
        if (std::abs(img[j]) != 1 || axis >= 0)
            throw std::invalid_argument(context +
                                        ": support must map to 0 or +-e_j under the "
                                        "abelianization");
        axis = static_cast<int>(j);
    }
    return axis;
}

}  // namespace

double cocycle_epsilon(const GroupSpec& spec) {
    require(is_cayley(spec), "cocycle_epsilon: tree family");
    double basis_mass = 0.0;
    for (const auto& [elem, p] : canonical_support(spec))
        if (classify_image(abelianization(spec, elem), "cocycle_epsilon") >= 0)
            basis_mass += p;
    return 1.0 - basis_mass;
}

double cocycle_mu_max(const GroupSpec& spec) {
    require(is_cayley(spec), "cocycle_mu_max: tree family");
    const int rank = quotient_rank(spec);
    std::vector<double> axis_mass(rank, 0.0);
    double mu_max = 0.0;
    for (const auto& [elem, p] : canonical_support(spec)) {
        const int axis = classify_image(abelianization(spec, elem), "cocycle_mu_max");
        if (axis < 0) continue;
        axis_mass[axis] += p;
        mu_max = std::max(mu_max, p);
    }
    for (int j = 0; j < rank; ++j)
        require(axis_mass[j] > 0.0,
                "cocycle requires every basis direction in the support");
    return mu_max;
}

TestFunction homomorphism_cocycle(const BallNetwork& ball) {
    const auto& spec = ball.spec;
    require(is_cayley(spec), "homomorphism_cocycle: tree family");
    cocycle_mu_max(spec);  // enforces the basis-step hypothesis

    const int m = quotient_rank(spec);
    TestFunction alpha;
    alpha.dim = m;
    alpha.values.resize(static_cast<std::size_t>(ball.host.vertex_count()) * m);
    for (int v = 0; v < ball.host.vertex_count(); ++v) {
        const auto img = abelianization(spec, ball.elements[v]);
        for (int h = 0; h < m; ++h)
            alpha.values[static_cast<std::size_t>(v) * m + h] =
                static_cast<double>(img[h]);
    }
    return alpha;
}

namespace {

long long busemann_value(const Element& word) {
    // ray = all-first-child chain; nearest ray vertex is the ancestor at the
    // end of the leading run of zero indices
    std::size_t t = 0;
    while (t < word.size() && word[t] == 0) ++t;
    return static_cast<long long>(word.size()) - 2 * static_cast<long long>(t);
}

}  // namespace

TestFunction busemann(const BallNetwork& ball) {
    require(ball.spec.family == Family::tree, "busemann: tree families only");
    TestFunction b;
    b.dim = 1;
    b.values.resize(ball.host.vertex_count());
    for (int v = 0; v < ball.host.vertex_count(); ++v)
        b.values[v] = static_cast<double>(busemann_value(ball.elements[v]));
    return b;
}

std::vector<double> tree_ground_state(const BallNetwork& ball, double xi) {
    require(ball.spec.family == Family::tree, "tree_ground_state: tree families only");
    require(std::isfinite(xi) && xi > 0.0, "xi must be positive");
    const double q = xi / std::sqrt(static_cast<double>(ball.spec.degree - 1));
    std::vector<double> f(ball.host.vertex_count());
    for (int v = 0; v < ball.host.vertex_count(); ++v)
        f[v] = std::pow(q, static_cast<double>(busemann_value(ball.elements[v])));
    return f;
}

double default_yang_constant(const GroupSpec& spec) { return 6.0 / mu_star(spec); }

double default_yang_type_constant(const GroupSpec& spec) {
    if (spec.family == Family::tree)
        return 8.0 * std::sqrt(static_cast<double>(spec.degree - 1)) / spec.degree;
    return 8.0 * cocycle_mu_max(spec);
}

}  // namespace dirnet
