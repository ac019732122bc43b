#include "dirnet/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dirnet/kernels.hpp"

namespace dirnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_k(const DirichletSystem& sys, int k) {
    if (k < 1 || k >= sys.interior_size)
        throw std::invalid_argument("k out of range");
}

InequalityReport make_report(std::string name, int k, double lhs, double rhs,
                             bool hypothesis_ok,
                             std::map<std::string, double> constants) {
    InequalityReport r;
    r.name = std::move(name);
    r.k = k;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.hypothesis_ok = hypothesis_ok;
    r.holds = !hypothesis_ok || r.slack >= -slack_tolerance;
    r.constants = std::move(constants);
    return r;
}

// alpha_i = u_i Delta(alpha) - 2 Gamma(alpha, u_i) on every host row; the
// boundary rows reduce to -2 Gamma(alpha, u_i) since u_i vanishes there.
std::vector<double> bound_defect(const HostNetwork& net, const TestFunction& alpha,
                                 std::span<const double> lap_alpha,
                                 std::span<const double> u) {
    const int m = alpha.dim;
    std::vector<double> out = gamma2_vec_host(net, alpha, u);
    for (auto& v : out) v = -v;
    int pos = 0;
    for (int x : net.interior()) {
        for (int h = 0; h < m; ++h)
            out[static_cast<std::size_t>(x) * m + h] +=
                u[x] * lap_alpha[static_cast<std::size_t>(pos) * m + h];
        ++pos;
    }
    return out;
}

double host_sq_norm(const HostNetwork& net, std::span<const double> values, int m) {
    double acc = 0.0;
    for (int x = 0; x < net.vertex_count(); ++x) {
        double row = 0.0;
        for (int h = 0; h < m; ++h) {
            const double v = values[static_cast<std::size_t>(x) * m + h];
            row += v * v;
        }
        acc += net.pi(x) * row;
    }
    return acc;
}

}  // namespace

InequalityReport main_bound(const HostNetwork& net, const DirichletSystem& sys,
                            const TestFunction& alpha, int k) {
    check_k(sys, k);
    const auto g2n = gamma2_norm(net, alpha);
    const auto lap_alpha = laplacian_vec(net, alpha);
    const auto& interior = net.interior();
    const double lk1 = sys.eigenvalues[k];

    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double gap = lk1 - sys.eigenvalues[i];
        const auto u = sys.eigenvector(i);

        double gamma_usq = 0.0;
        for (int p = 0; p < net.interior_size(); ++p) {
            const int x = interior[p];
            gamma_usq += net.pi(x) * 0.5 * g2n[p] * u[x] * u[x];
        }
        lhs += gap * gap * (gamma_usq - lambda_vec(net, alpha, u));

        const auto defect = bound_defect(net, alpha, lap_alpha, u);
        rhs += gap * host_sq_norm(net, defect, alpha.dim);
    }
    return make_report("main-bound", k, lhs, rhs, true, {});
}

ProofScratch proof_identities_audit(const HostNetwork& net, const DirichletSystem& sys,
                                    const TestFunction& alpha, int k) {
    check_k(sys, k);
    const int m = alpha.dim;
    const int host = net.vertex_count();
    const auto& pi = net.pi_values();
    const auto lap_alpha = laplacian_vec(net, alpha);
    const auto g2n = gamma2_norm(net, alpha);
    const auto& interior = net.interior();

    // contiguous per-component copies of alpha
    std::vector<std::vector<double>> alpha_col(m, std::vector<double>(host));
    for (int h = 0; h < m; ++h)
        for (int x = 0; x < host; ++x) alpha_col[h][x] = alpha.at(x, h);

    ProofScratch ps;
    ps.k = k;
    ps.dim = m;
    ps.a.assign(static_cast<std::size_t>(k) * k, 0.0);
    ps.b.assign(static_cast<std::size_t>(k) * k, 0.0);
    ps.z.assign(k, 0.0);
    ps.y.assign(k, 0.0);
    ps.phi_sq_norm.assign(k, 0.0);
    ps.gamma_usq.assign(k, 0.0);

    // per-component a and b
    std::vector<std::vector<double>> a_h(m), b_h(m);
    for (int h = 0; h < m; ++h) {
        a_h[h].assign(static_cast<std::size_t>(k) * k, 0.0);
        b_h[h].assign(static_cast<std::size_t>(k) * k, 0.0);
    }

    std::vector<std::vector<double>> defects(k);
    for (int i = 0; i < k; ++i)
        defects[i] = bound_defect(net, alpha, lap_alpha, sys.eigenvector(i));

    for (int i = 0; i < k; ++i) {
        const auto ui = sys.eigenvector(i);
        for (int j = 0; j < k; ++j) {
            const auto uj = sys.eigenvector(j);
            for (int h = 0; h < m; ++h) {
                a_h[h][static_cast<std::size_t>(i) * k + j] = kern::wdot3(
                    pi.data(), ui.data(), alpha_col[h].data(), uj.data(), host);
                // b_ij per component: <alpha_i^(h), u_j>
                double bij = 0.0;
                for (int x = 0; x < host; ++x)
                    bij += pi[x] * defects[i][static_cast<std::size_t>(x) * m + h] * uj[x];
                b_h[h][static_cast<std::size_t>(i) * k + j] = bij;
            }
        }
    }
    for (int h = 0; h < m; ++h)
        for (std::size_t e = 0; e < ps.a.size(); ++e) {
            ps.a[e] += a_h[h][e];
            ps.b[e] += b_h[h][e];
        }

    std::vector<double> phi(host);
    std::vector<double> resid(host);
    for (int i = 0; i < k; ++i) {
        const auto ui = sys.eigenvector(i);
        ps.y[i] = lambda_vec(net, alpha, ui);
        for (int p = 0; p < net.interior_size(); ++p) {
            const int x = interior[p];
            ps.gamma_usq[i] += pi[x] * 0.5 * g2n[p] * ui[x] * ui[x];
        }

        double defect_sq = 0.0;
        double split_sq = 0.0;
        double b_sq = 0.0;
        for (int h = 0; h < m; ++h) {
            // z_i += <alpha_i^(h), u_i alpha_h>
            for (int x = 0; x < host; ++x)
                ps.z[i] += pi[x] * defects[i][static_cast<std::size_t>(x) * m + h] *
                           ui[x] * alpha_col[h][x];

            // phi_i^(h) = u_i alpha_h - sum_j a_ij^(h) u_j
            for (int x = 0; x < host; ++x) phi[x] = ui[x] * alpha_col[h][x];
            for (int j = 0; j < k; ++j) {
                const auto uj = sys.eigenvector(j);
                const double aij = a_h[h][static_cast<std::size_t>(i) * k + j];
                for (int x = 0; x < host; ++x) phi[x] -= aij * uj[x];
            }
            ps.phi_sq_norm[i] += kern::wdot(pi.data(), phi.data(), phi.data(), host);
            for (int j = 0; j < k; ++j) {
                const auto uj = sys.eigenvector(j);
                ps.phi_orth_err = std::max(
                    ps.phi_orth_err,
                    std::abs(kern::wdot(pi.data(), phi.data(), uj.data(), host)));
            }

            // norm split: ||alpha_i - sum_j b_ij u_j||^2 = ||alpha_i||^2 - sum b_ij^2
            for (int x = 0; x < host; ++x)
                resid[x] = defects[i][static_cast<std::size_t>(x) * m + h];
            defect_sq += kern::wdot(pi.data(), resid.data(), resid.data(), host);
            for (int j = 0; j < k; ++j) {
                const auto uj = sys.eigenvector(j);
                const double bij = b_h[h][static_cast<std::size_t>(i) * k + j];
                for (int x = 0; x < host; ++x) resid[x] -= bij * uj[x];
                b_sq += bij * bij;
            }
            split_sq += kern::wdot(pi.data(), resid.data(), resid.data(), host);
        }
        ps.norm_split_err =
            std::max(ps.norm_split_err, std::abs(split_sq - (defect_sq - b_sq)));
        ps.z_plus_y_err =
            std::max(ps.z_plus_y_err, std::abs(ps.z[i] + ps.y[i] - ps.gamma_usq[i]));
    }

    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            const double aij = ps.a[static_cast<std::size_t>(i) * k + j];
            const double aji = ps.a[static_cast<std::size_t>(j) * k + i];
            ps.a_sym_err = std::max(ps.a_sym_err, std::abs(aij - aji));
            const double bij = ps.b[static_cast<std::size_t>(i) * k + j];
            const double expected =
                (sys.eigenvalues[j] - sys.eigenvalues[i]) * aij;
            ps.b_rel_err = std::max(ps.b_rel_err, std::abs(bij - expected));
        }
    return ps;
}

InequalityReport yang_check(const DirichletSystem& sys, double c_y, int k) {
    check_k(sys, k);
    const double lk1 = sys.eigenvalues[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double gap = lk1 - sys.eigenvalues[i];
        lhs += gap * gap;
        rhs += gap * (sys.eigenvalues[i] - sys.lambda_min);
    }
    rhs *= c_y;
    return make_report("yang", k, lhs, rhs, true,
                       {{"C_Y", c_y}, {"lambda_min", sys.lambda_min}});
}

InequalityReport yang_type_check(const DirichletSystem& sys, double c_yt, int k) {
    check_k(sys, k);
    const double lk1 = sys.eigenvalues[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double li = sys.eigenvalues[i];
        const double gap = lk1 - li;
        lhs += gap * gap * (1.0 - li);
        rhs += gap * (li - sys.lambda_min);
    }
    rhs *= c_yt;
    return make_report("yang-type", k, lhs, rhs, true,
                       {{"C_YT", c_yt}, {"lambda_min", sys.lambda_min}});
}

InequalityReport abelian_quotient_check(const DirichletSystem& sys, double eps,
                                        double mu_max, int k) {
    check_k(sys, k);
    const double lk1 = sys.eigenvalues[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double li = sys.eigenvalues[i];
        const double gap = lk1 - li;
        lhs += gap * gap * (1.0 - eps - li);
        rhs += gap * li;
    }
    rhs *= 8.0 * mu_max;
    return make_report("abelian-quotient", k, lhs, rhs, true,
                       {{"eps", eps}, {"mu_max", mu_max}, {"C", 8.0 * mu_max}});
}

InequalityReport lambda2_bound(const DirichletSystem& sys, double c_yt) {
    check_k(sys, 1);
    const double l1 = sys.eigenvalues[0];
    const double l2 = sys.eigenvalues[1];
    const bool gate = l1 < 1.0;
    const double lhs = l2 - sys.lambda_min;
    const double rhs = (c_yt / (1.0 - l1) + 1.0) * (l1 - sys.lambda_min);
    return make_report("lambda2", 1, lhs, rhs, gate,
                       {{"C_YT", c_yt}, {"lambda_min", sys.lambda_min}});
}

InequalityReport yang_second_bound(const DirichletSystem& sys, double c_yt, int k) {
    check_k(sys, k);
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < k; ++i) {
        const double li = sys.eigenvalues[i];
        s1 += 1.0 - li;
        s2 += (li - sys.lambda_min) * (1.0 + c_yt - li);
    }
    const bool gate = sys.eigenvalues[k - 1] <= 1.0 + c_yt && s1 > 0.0;
    const double lhs = sys.eigenvalues[k] - sys.lambda_min;
    const double rhs = s1 != 0.0 ? s2 / s1 : kInf;
    return make_report("yang-second", k, lhs, rhs, gate,
                       {{"C_YT", c_yt}, {"lambda_min", sys.lambda_min}});
}

InequalityReport hile_protter_check(const DirichletSystem& sys, double c_yt, int k) {
    check_k(sys, k);
    const double lk1 = sys.eigenvalues[k];
    double lhs = 0.0;
    double rhs = 0.0;
    for (int i = 0; i < k; ++i) {
        const double li = sys.eigenvalues[i];
        lhs += 1.0 - li;
        const double gap = lk1 - li;
        rhs += gap > 0.0 ? (li - sys.lambda_min) / gap : kInf;
    }
    lhs /= c_yt;
    const bool gate = sys.eigenvalues[k - 1] <= 1.0 + c_yt;
    return make_report("hile-protter", k, lhs, rhs, gate,
                       {{"C_YT", c_yt}, {"lambda_min", sys.lambda_min}});
}

InequalityReport ppw_bound(const DirichletSystem& sys, double c_yt, int k) {
    check_k(sys, k);
    double s1 = 0.0;
    double mu_sum = 0.0;
    for (int i = 0; i < k; ++i) {
        s1 += 1.0 - sys.eigenvalues[i];
        mu_sum += sys.eigenvalues[i] - sys.lambda_min;
    }
    const bool gate = sys.eigenvalues[k - 1] <= 1.0 + c_yt && s1 > 0.0;
    const double lhs = sys.eigenvalues[k] - sys.eigenvalues[k - 1];
    const double rhs = s1 != 0.0 ? c_yt * mu_sum / s1 : kInf;
    return make_report("ppw", k, lhs, rhs, gate,
                       {{"C_YT", c_yt}, {"lambda_min", sys.lambda_min}});
}

InequalityReport ratio_bound(const DirichletSystem& sys, double c_yt, double delta,
                             int k) {
    check_k(sys, k);
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const double theta = c_yt / delta;
    const bool gate = sys.eigenvalues[k - 1] <= 1.0 - delta;
    const double lhs = sys.eigenvalues[k] - sys.lambda_min;
    const double rhs = (1.0 + theta) * std::pow(static_cast<double>(k), theta / 2.0) *
                       (sys.eigenvalues[0] - sys.lambda_min);
    return make_report("ratio", k, lhs, rhs, gate,
                       {{"C_YT", c_yt},
                        {"delta", delta},
                        {"theta", theta},
                        {"lambda_min", sys.lambda_min}});
}

InequalityReport trace_check(const DirichletSystem& sys, const HostNetwork& net) {
    const int n = sys.interior_size;
    double trace = 0.0;
    for (double l : sys.eigenvalues) trace += l;
    double diag = 0.0;
    for (int x : net.interior()) diag += net.conductance(x, x) / net.pi(x);

    double partial = 0.0;
    double partial_min = 0.0;
    for (int i = 0; i < n; ++i) {
        partial += 1.0 - sys.eigenvalues[i];
        partial_min = std::min(partial_min, partial);
    }

    auto report = make_report("trace", n, trace, n - diag, true,
                              {{"p_diag_sum", diag}, {"partial_min", partial_min}});
    report.holds = std::abs(report.slack) <= slack_tolerance &&
                   trace <= n + slack_tolerance && partial_min >= -slack_tolerance;
    return report;
}

std::vector<RecursionState> recursion_check(std::span<const double> a, double theta) {
    if (a.size() < 2) throw std::invalid_argument("recursion needs at least two terms");
    if (!(theta > 0.0)) throw std::invalid_argument("theta must be positive");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!(a[i] > 0.0)) throw std::invalid_argument("sequence must be positive");
        if (i > 0 && a[i] < a[i - 1])
            throw std::invalid_argument("sequence must be nondecreasing");
    }

    const int total = static_cast<int>(a.size());
    std::vector<RecursionState> states(total);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int k = 1; k <= total; ++k) {
        sum += a[k - 1];
        sum_sq += a[k - 1] * a[k - 1];
        auto& st = states[k - 1];
        st.k = k;
        st.theta = theta;
        st.mean = sum / k;
        st.mean_sq = sum_sq / k;
        st.F = (1.0 + theta / 2.0) * st.mean * st.mean - st.mean_sq;
    }

    for (int k = 1; k < total; ++k) {
        auto& st = states[k - 1];
        double quad = 0.0;
        double linear = 0.0;
        for (int i = 0; i < k; ++i) {
            const double gap = a[k] - a[i];
            quad += gap * gap;
            linear += a[i] * gap;
        }
        const double rhs51 = theta * linear;
        st.hyp_ok = quad <= rhs51 + 1e-12 * std::max(1.0, std::abs(rhs51));

        const double bound =
            std::pow((k + 1.0) / k, theta) * st.F;
        st.cascade_slack = bound - states[k].F;
        st.cascade_ok =
            !st.hyp_ok || st.cascade_slack >= -1e-12 * std::max(1.0, std::abs(bound));
    }
    return states;
}

}  // namespace dirnet
