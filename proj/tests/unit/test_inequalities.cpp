#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "dirnet/cayley.hpp"
#include "dirnet/eigensolve.hpp"
#include "dirnet/inequalities.hpp"
#include "dirnet/randomnet.hpp"

using namespace dirnet;

namespace {

HostNetwork path_host(int m, double c = 0.5) {
    std::vector<HostNetwork::Edge> edges;
    for (int v = 0; v + 1 < m + 2; ++v) edges.push_back({v, v + 1, c});
    std::vector<double> pi(m + 2, 2.0 * c);
    std::vector<int> interior;
    for (int v = 1; v <= m; ++v) interior.push_back(v);
    return HostNetwork(m + 2, std::move(pi), std::move(edges), std::move(interior));
}

DirichletSystem spectrum_only(std::vector<double> eigenvalues, double lambda_min) {
    DirichletSystem sys;
    sys.interior_size = static_cast<int>(eigenvalues.size());
    sys.lambda_min = lambda_min;
    sys.eigenvalues = std::move(eigenvalues);
    return sys;
}

// both sides of the universal bound from raw sums over vertices and ordered
// pairs, independent of the gamma2 helpers
std::pair<double, double> main_bound_brute(const HostNetwork& net,
                                           const DirichletSystem& sys,
                                           const TestFunction& alpha, int k) {
    const int m = alpha.dim;
    const double lk1 = sys.eigenvalues[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const auto u = sys.eigenvector(i);
        const double gap = lk1 - sys.eigenvalues[i];

        double gamma_usq = 0.0;
        double lambda = 0.0;
        for (int x = 0; x < net.vertex_count(); ++x) {
            double gax = 0.0;  // Gamma(alpha)(x)
            for (const auto& nb : net.neighbors(x)) {
                double da2 = 0.0;
                for (int h = 0; h < m; ++h) {
                    const double da = alpha.at(x, h) - alpha.at(nb.to, h);
                    da2 += da * da;
                }
                gax += 0.5 * nb.c / net.pi(x) * da2;
                const double du = u[x] - u[nb.to];
                lambda += 0.25 * nb.c * du * du * da2;  // ordered pairs, one sided
            }
            if (net.is_interior(x)) gamma_usq += net.pi(x) * gax * u[x] * u[x];
        }
        lhs += gap * gap * (gamma_usq - lambda);

        double norm = 0.0;
        for (int x = 0; x < net.vertex_count(); ++x) {
            for (int h = 0; h < m; ++h) {
                double lap = 0.0;
                double g2 = 0.0;
                for (const auto& nb : net.neighbors(x)) {
                    const double da = alpha.at(x, h) - alpha.at(nb.to, h);
                    lap += nb.c / net.pi(x) * da;
                    g2 += nb.c / net.pi(x) * (u[x] - u[nb.to]) * da;
                }
                const double defect = u[x] * lap - g2;
                norm += net.pi(x) * defect * defect;
            }
        }
        rhs += gap * norm;
    }
    return {lhs, rhs};
}

}  // namespace

TEST_CASE("main_bound") {
    SUBCASE("constant alpha vanishes on both sides") {
        const auto net = path_host(4);
        const auto sys = dirichlet_system(net, 0.0);
        TestFunction alpha;
        alpha.dim = 2;
        alpha.values.assign(net.vertex_count() * 2, 4.25);
        const auto report = main_bound(net, sys, alpha, 2);
        CHECK(report.lhs == doctest::Approx(0.0));
        CHECK(report.rhs == doctest::Approx(0.0));
        CHECK(report.holds);
    }
    SUBCASE("tree ball with the busemann test function, against brute force") {
        const auto ball = build_ball(GroupSpec::tree(3), 2);
        const auto sys = dirichlet_system(ball.host, lambda_min(ball.spec));
        const auto alpha = busemann(ball);
        for (int k : {1, 3, sys.interior_size - 1}) {
            const auto report = main_bound(ball.host, sys, alpha, k);
            const auto [lhs, rhs] = main_bound_brute(ball.host, sys, alpha, k);
            CHECK(std::abs(report.lhs - lhs) <= 1e-10);
            CHECK(std::abs(report.rhs - rhs) <= 1e-10);
            CHECK(report.slack >= -slack_tolerance);
        }
    }
    SUBCASE("unconditional over random networks and test functions") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            const auto net = random_network(6 + static_cast<int>(seed % 7), seed, 0.5);
            const auto sys = dirichlet_system(net, 0.0);
            for (int dim : {1, 3}) {
                const auto alpha = random_test_function(net, dim, seed * 101 + dim);
                for (int k = 1; k < sys.interior_size; ++k) {
                    const auto report = main_bound(net, sys, alpha, k);
                    CHECK(report.slack >= -slack_tolerance);
                }
            }
        }
    }
    SUBCASE("vector bound equals the per-coordinate scalar sum") {
        const auto net = random_network(8, 5, 0.6);
        const auto sys = dirichlet_system(net, 0.0);
        const auto alpha = random_test_function(net, 3, 42);
        const auto vec = main_bound(net, sys, alpha, 3);
        double lhs = 0.0;
        double rhs = 0.0;
        for (int h = 0; h < alpha.dim; ++h) {
            std::vector<double> comp(net.vertex_count());
            for (int x = 0; x < net.vertex_count(); ++x) comp[x] = alpha.at(x, h);
            const auto scalar = main_bound(net, sys, TestFunction::scalar(comp), 3);
            lhs += scalar.lhs;
            rhs += scalar.rhs;
        }
        CHECK(std::abs(vec.lhs - lhs) <= 1e-10);
        CHECK(std::abs(vec.rhs - rhs) <= 1e-10);
    }
    SUBCASE("k out of range") {
        const auto net = path_host(3);
        const auto sys = dirichlet_system(net, 0.0);
        const auto alpha = TestFunction::scalar(std::vector<double>(net.vertex_count(), 0.0));
        CHECK_THROWS_AS(main_bound(net, sys, alpha, 0), std::invalid_argument);
        CHECK_THROWS_AS(main_bound(net, sys, alpha, 3), std::invalid_argument);
    }
}

TEST_CASE("proof identities audit") {
    SUBCASE("k = 1 has vanishing b") {
        const auto net = path_host(4);
        const auto sys = dirichlet_system(net, 0.0);
        std::vector<double> coord(net.vertex_count());
        for (int x = 0; x < net.vertex_count(); ++x) coord[x] = x;
        const auto ps =
            proof_identities_audit(net, sys, TestFunction::scalar(coord), 1);
        CHECK(std::abs(ps.b[0]) <= 1e-12);
        CHECK(ps.within_tolerances());
    }
    SUBCASE("coordinate function on an interval, k = 3") {
        const auto net = path_host(6);
        const auto sys = dirichlet_system(net, 0.0);
        std::vector<double> coord(net.vertex_count());
        for (int x = 0; x < net.vertex_count(); ++x) coord[x] = x;
        const auto ps =
            proof_identities_audit(net, sys, TestFunction::scalar(coord), 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(ps.b[i * 3 + j] + ps.b[j * 3 + i]) <= 1e-10);
        CHECK(ps.within_tolerances());
    }
    SUBCASE("tree ball with busemann alpha, k = 4") {
        const auto ball = build_ball(GroupSpec::tree(3), 2);
        const auto sys = dirichlet_system(ball.host, lambda_min(ball.spec));
        const auto ps = proof_identities_audit(ball.host, sys, busemann(ball), 4);
        for (int i = 0; i < 4; ++i)
            CHECK(std::abs(ps.z[i] + ps.y[i] - ps.gamma_usq[i]) <= 1e-9);
        CHECK(ps.within_tolerances());
    }
    SUBCASE("vector alpha on a random network") {
        const auto net = random_network(9, 13, 0.5);
        const auto sys = dirichlet_system(net, 0.0);
        const auto alpha = random_test_function(net, 3, 99);
        const auto ps = proof_identities_audit(net, sys, alpha, sys.interior_size - 1);
        CHECK(ps.within_tolerances());
    }
}

TEST_CASE("yang and yang-type checks") {
    SUBCASE("fully degenerate spectrum is trivial") {
        const auto sys = spectrum_only({0.5, 0.5, 0.5, 0.5}, 0.0);
        const auto r = yang_check(sys, 12.0, 3);
        CHECK(r.lhs == 0.0);
        CHECK(r.holds);
        const auto rt = yang_type_check(sys, 4.0, 3);
        CHECK(rt.lhs == 0.0);
        CHECK(rt.rhs == 0.0);
        CHECK(rt.holds);
        const auto aq = abelian_quotient_check(sys, 0.0, 0.25, 3);
        CHECK(aq.lhs == 0.0);
        CHECK(aq.holds);
        const auto l2 = lambda2_bound(sys, 2.0);
        CHECK(l2.holds);  // rhs dominates lambda_1 - lambda_min already
    }
    SUBCASE("interval spectra under the amenable constant") {
        for (int m : {3, 5, 7}) {
            const auto net = path_host(m);
            const auto sys = dirichlet_system(net, 0.0);
            for (int k = 1; k < m; ++k) {
                CHECK(yang_check(sys, 12.0, k).holds);  // C_Y = 6/mu_* with mu_* = 1/2
                CHECK(yang_type_check(sys, 4.0, k).holds);
                CHECK(abelian_quotient_check(sys, 0.0, 0.5, k).holds);
            }
        }
    }
    SUBCASE("epsilon-defect variant on a lazy heisenberg measure") {
        GroupSpec spec = GroupSpec::heisenberg_uniform();
        spec.measure = {{"X", 0.2},    {"X^-1", 0.2}, {"Y", 0.2},
                        {"Y^-1", 0.2}, {"Z", 0.1},    {"Z^-1", 0.1}};
        const auto ball = build_ball(spec, 2);
        const auto sys = dirichlet_system(ball.host, 0.0);
        const double eps = cocycle_epsilon(spec);
        const double mu_max = cocycle_mu_max(spec);
        CHECK(eps == doctest::Approx(0.2));
        for (int k = 1; k < sys.interior_size; ++k)
            CHECK(abelian_quotient_check(sys, eps, mu_max, k).holds);
    }
    SUBCASE("yang-type with C implies yang with C + 2 when lambda_min = 0") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            const auto net = random_network(8, seed, 0.4);
            const auto sys = dirichlet_system(net, 0.0);
            for (int k = 1; k < sys.interior_size; ++k) {
                const auto yt = yang_type_check(sys, 2.0, k);
                const auto y = yang_check(sys, 4.0, k);
                if (yt.slack >= -slack_tolerance)
                    CHECK(y.slack >= yt.slack - 1e-12);
            }
        }
    }
}

TEST_CASE("spectral corollaries") {
    const auto ball = build_ball(GroupSpec::tree(3), 2);
    const auto sys = dirichlet_system(ball.host, lambda_min(ball.spec));
    const double c_yt = default_yang_type_constant(ball.spec);

    SUBCASE("lambda2 bound holds on the tree ball") {
        const auto r = lambda2_bound(sys, c_yt);
        CHECK(r.hypothesis_ok);
        CHECK(r.holds);
        CHECK(r.slack > 0.0);
    }
    SUBCASE("yang-second at k = 1 reduces to the lambda2 expression") {
        const auto a = lambda2_bound(sys, c_yt);
        const auto b = yang_second_bound(sys, c_yt, 1);
        CHECK(std::abs(a.rhs - b.rhs) <= 1e-12);
        CHECK(std::abs(a.lhs - b.lhs) <= 1e-12);
    }
    SUBCASE("corollaries on gated k") {
        for (int k = 1; k < sys.interior_size; ++k) {
            for (const auto& r :
                 {yang_second_bound(sys, c_yt, k), hile_protter_check(sys, c_yt, k),
                  ppw_bound(sys, c_yt, k), ratio_bound(sys, c_yt, 0.2, k)})
                CHECK(r.holds);
        }
    }
    SUBCASE("hile-protter degenerates to +inf and passes") {
        const auto deg = spectrum_only({0.3, 0.5, 0.5, 0.9}, 0.0);
        const auto r = hile_protter_check(deg, 2.0, 2);
        CHECK(r.rhs == std::numeric_limits<double>::infinity());
        CHECK(r.holds);
        const auto p = ppw_bound(deg, 2.0, 2);
        CHECK(p.lhs == 0.0);
        CHECK(p.holds);
    }
    SUBCASE("gates disable the assertion") {
        const auto hot = spectrum_only({1.2, 1.4, 1.9}, 0.0);
        const auto r = yang_second_bound(hot, 0.1, 2);  // lambda_k > 1 + C_YT
        CHECK_FALSE(r.hypothesis_ok);
        CHECK(r.holds);
        const auto rb = ratio_bound(hot, 0.1, 0.5, 2);
        CHECK_FALSE(rb.hypothesis_ok);
        CHECK(rb.holds);
        CHECK_THROWS_AS(ratio_bound(hot, 0.1, 0.0, 1), std::invalid_argument);
        // sum (1 - lambda_i) < 0 with the weak gate: reported ungated
        const auto guard = spectrum_only({1.2, 1.4, 1.9}, 0.0);
        const auto ys = yang_second_bound(guard, 8.0, 2);
        CHECK_FALSE(ys.hypothesis_ok);
    }
    SUBCASE("ratio bound at k = 1") {
        const auto r = ratio_bound(sys, c_yt, 0.2, 1);
        const double theta = c_yt / 0.2;
        CHECK(r.rhs == doctest::Approx((1.0 + theta) *
                                       (sys.eigenvalues[0] - sys.lambda_min)));
    }
    SUBCASE("ratio bound at the maximal valid delta") {
        const int k = 2;
        const double delta = 1.0 - sys.eigenvalues[k - 1];  // gate holds with equality
        REQUIRE(delta > 0.0);
        const auto r = ratio_bound(sys, c_yt, delta, k);
        CHECK(r.hypothesis_ok);
        CHECK(r.holds);
    }
}

TEST_CASE("trace check") {
    SUBCASE("loop-free ball has trace n") {
        const auto ball = build_ball(GroupSpec::free_abelian_uniform(2), 2);
        const auto sys = dirichlet_system(ball.host, 0.0);
        const auto r = trace_check(sys, ball.host);
        CHECK(r.holds);
        CHECK(std::abs(r.lhs - sys.interior_size) <= 1e-9);
    }
    SUBCASE("identity mass shifts the trace to n(1 - mu(1))") {
        GroupSpec lazy = GroupSpec::free_abelian_uniform(1);
        lazy.measure = {{"1", 0.5}, {"s1", 0.25}, {"s1^-1", 0.25}};
        const auto ball = build_ball(lazy, 3);
        const auto sys = dirichlet_system(ball.host, 0.0);
        const auto r = trace_check(sys, ball.host);
        CHECK(r.holds);
        CHECK(std::abs(r.lhs - 0.5 * sys.interior_size) <= 1e-9);
    }
    SUBCASE("single tree vertex") {
        const auto ball = build_ball(GroupSpec::tree(3), 0);
        const auto sys = dirichlet_system(ball.host, lambda_min(ball.spec));
        const auto r = trace_check(sys, ball.host);
        CHECK(r.holds);
        CHECK(r.lhs == doctest::Approx(1.0));
    }
}

TEST_CASE("recursion check") {
    SUBCASE("constant sequence") {
        std::vector<double> a(6, 2.0);
        const double theta = 3.0;
        const auto states = recursion_check(a, theta);
        for (const auto& st : states) {
            CHECK(st.F == doctest::Approx(theta / 2.0 * 4.0));
            CHECK(st.hyp_ok);
            CHECK(st.cascade_ok);
        }
    }
    SUBCASE("a_i = i with theta = 4, against direct summation") {
        std::vector<double> a{1, 2, 3, 4, 5, 6};
        const auto states = recursion_check(a, 4.0);
        for (std::size_t k = 1; k < a.size(); ++k) {
            double quad = 0.0;
            double lin = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                quad += (a[k] - a[i]) * (a[k] - a[i]);
                lin += a[i] * (a[k] - a[i]);
            }
            CHECK(states[k - 1].hyp_ok == (quad <= 4.0 * lin + 1e-12));
            if (states[k - 1].hyp_ok) CHECK(states[k - 1].cascade_ok);
        }
    }
    SUBCASE("interval spectrum with the family constant") {
        const auto net = path_host(8);
        const auto sys = dirichlet_system(net, 0.0);
        const auto states = recursion_check(sys.eigenvalues, 12.0);
        for (const auto& st : states) {
            CHECK(st.hyp_ok);
            CHECK(st.cascade_ok);
        }
    }
    SUBCASE("hypothesis violations are reported ungated") {
        // wide spread: (a_2 - a_1)^2 > theta a_1 (a_2 - a_1) for tiny theta
        std::vector<double> a{0.1, 10.0};
        const auto states = recursion_check(a, 0.5);
        CHECK_FALSE(states[0].hyp_ok);
        CHECK(states[0].cascade_ok);  // untested, not asserted
    }
    SUBCASE("input validation") {
        CHECK_THROWS_AS(recursion_check(std::vector<double>{1.0}, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(recursion_check(std::vector<double>{-1.0, 2.0}, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(recursion_check(std::vector<double>{2.0, 1.0}, 1.0),
                        std::invalid_argument);
        CHECK_THROWS_AS(recursion_check(std::vector<double>{1.0, 2.0}, 0.0),
                        std::invalid_argument);
    }
}

TEST_CASE("reports are gauge invariant under vertex relabeling") {
    const auto net = random_network(9, 77, 0.5);
    const int n = net.vertex_count();
    std::vector<int> perm(n);
    for (int v = 0; v < n; ++v) perm[v] = (v * 5 + 3) % n;  // 5 coprime to 9, 10... n=9
    std::vector<double> pi(n);
    for (int v = 0; v < n; ++v) pi[perm[v]] = net.pi(v);
    std::vector<HostNetwork::Edge> edges;
    for (const auto& e : net.edges()) edges.push_back({perm[e.u], perm[e.v], e.c});
    std::vector<int> interior;
    for (int v : net.interior()) interior.push_back(perm[v]);
    const HostNetwork relabeled(n, std::move(pi), std::move(edges),
                                std::move(interior));

    const auto sys_a = dirichlet_system(net, 0.0);
    const auto sys_b = dirichlet_system(relabeled, 0.0);
    const auto alpha_a = random_test_function(net, 2, 5);
    TestFunction alpha_b;
    alpha_b.dim = 2;
    alpha_b.values.resize(alpha_a.values.size());
    for (int v = 0; v < n; ++v)
        for (int h = 0; h < 2; ++h)
            alpha_b.values[perm[v] * 2 + h] = alpha_a.at(v, h);

    for (int k = 1; k < sys_a.interior_size; ++k) {
        const auto ya = yang_type_check(sys_a, 2.0, k);
        const auto yb = yang_type_check(sys_b, 2.0, k);
        CHECK(std::abs(ya.slack - yb.slack) <= 1e-10);
        const auto ma = main_bound(net, sys_a, alpha_a, k);
        const auto mb = main_bound(relabeled, sys_b, alpha_b, k);
        CHECK(std::abs(ma.lhs - mb.lhs) <= 1e-10);
        CHECK(std::abs(ma.rhs - mb.rhs) <= 1e-10);
    }
}

TEST_CASE("reports are functions of the sorted spectrum only") {
    const auto net = random_network(10, 55, 0.5);
    const auto sys = dirichlet_system(net, 0.0);
    auto copy = spectrum_only(sys.eigenvalues, 0.0);
    for (int k = 1; k < sys.interior_size; ++k) {
        const auto a = yang_type_check(sys, 2.0, k);
        const auto b = yang_type_check(copy, 2.0, k);
        CHECK(a.lhs == b.lhs);
        CHECK(a.rhs == b.rhs);
    }
}
