#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "dirnet/eigensolve.hpp"
#include "dirnet/network.hpp"

namespace dirnet {

// An inequality "holds" when slack = rhs - lhs >= -slack_tolerance; checks
// whose hypothesis gate fails are reported but never asserted.
inline constexpr double slack_tolerance = 1e-9;

struct InequalityReport {
    std::string name;
    int k = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool hypothesis_ok = true;
    bool holds = true;  // true for gated-out rows
    std::map<std::string, double> constants;
};

// Per-index scratch of the universal-bound derivation, exposed so its
// internal identities can be audited numerically:
//   a_ij = <u_i alpha, u_j>, alpha_i = u_i Delta(alpha) - 2 Gamma(alpha, u_i),
//   b_ij = <alpha_i, u_j>, phi_i = u_i alpha - sum_j a_ij u_j,
//   z_i = <alpha_i, u_i alpha>, y_i = Lambda(alpha, u_i).
// Vector-valued alpha: a, b, z and the norms are summed over value components.
struct ProofScratch {
    int k = 0;
    int dim = 1;
    std::vector<double> a;            // k x k, row-major
    std::vector<double> b;            // k x k
    std::vector<double> z;            // k
    std::vector<double> y;            // k
    std::vector<double> phi_sq_norm;  // ||phi_i||^2
    std::vector<double> gamma_usq;    // <Gamma(alpha), u_i^2>

    // worst-case violations of the derivation identities
    double a_sym_err = 0.0;     // |a_ij - a_ji|
    double b_rel_err = 0.0;     // |b_ij - (lambda_j - lambda_i) a_ij|
    double phi_orth_err = 0.0;  // |<phi_i, u_j>|, j <= k
    double norm_split_err = 0.0;  // | ||alpha_i - sum b_ij u_j||^2 - (||alpha_i||^2 - sum b_ij^2) |
    double z_plus_y_err = 0.0;  // |z_i + y_i - <Gamma(alpha), u_i^2>|

    bool within_tolerances() const {
        return a_sym_err <= 1e-10 && b_rel_err <= 1e-9 && phi_orth_err <= 1e-10 &&
               norm_split_err <= 1e-9 && z_plus_y_err <= 1e-9;
    }
};

// Unconditional bound on the Dirichlet system, for any test function:
//   lhs = sum_{i<=k} |l_{k+1}-l_i|^2 (<Gamma(alpha),u_i^2> - Lambda(alpha,u_i))
//   rhs = sum_{i<=k} (l_{k+1}-l_i) ||u_i Delta(alpha) - 2 Gamma(alpha,u_i)||^2
// The norm runs over the full host; off-interior rows carry the exact
// -2 Gamma(alpha, u_i) contribution.
InequalityReport main_bound(const HostNetwork& net, const DirichletSystem& sys,
                            const TestFunction& alpha, int k);

ProofScratch proof_identities_audit(const HostNetwork& net, const DirichletSystem& sys,
                                    const TestFunction& alpha, int k);

// sum |l_{k+1}-l_i|^2 <= C_Y sum (l_{k+1}-l_i)(l_i - lambda_min)
InequalityReport yang_check(const DirichletSystem& sys, double c_y, int k);

// sum |l_{k+1}-l_i|^2 (1-l_i) <= C_YT sum (l_{k+1}-l_i)(l_i - lambda_min)
InequalityReport yang_type_check(const DirichletSystem& sys, double c_yt, int k);

// sum |l_{k+1}-l_i|^2 (1-eps-l_i) <= 8 mu_max sum (l_{k+1}-l_i) l_i
InequalityReport abelian_quotient_check(const DirichletSystem& sys, double eps,
                                        double mu_max, int k);

// l_2 - lambda_min <= (C_YT/(1-l_1) + 1)(l_1 - lambda_min), gated on l_1 < 1
InequalityReport lambda2_bound(const DirichletSystem& sys, double c_yt);

// l_{k+1} - lambda_min <= sum mu_i (1 + C_YT - l_i) / sum (1 - l_i),
// gated on l_k <= 1 + C_YT and sum (1 - l_i) > 0
InequalityReport yang_second_bound(const DirichletSystem& sys, double c_yt, int k);

// sum mu_i / (l_{k+1} - l_i) >= (1/C_YT) sum (1 - l_i), gated on
// l_k <= 1 + C_YT. Reported with lhs/rhs swapped so that slack >= 0 still
// means "holds"; a degenerate l_{k+1} = l_i term makes the rhs +inf.
InequalityReport hile_protter_check(const DirichletSystem& sys, double c_yt, int k);

// l_{k+1} - l_k <= C_YT sum mu_i / sum (1 - l_i), same gates as yang_second
InequalityReport ppw_bound(const DirichletSystem& sys, double c_yt, int k);

// l_{k+1} - lambda_min <= (1+theta) k^(theta/2) (l_1 - lambda_min) with
// theta = C_YT / delta, gated on l_k <= 1 - delta
InequalityReport ratio_bound(const DirichletSystem& sys, double c_yt, double delta,
                             int k);

// sum l_i = n - sum_x P(x,x) (within 1e-9), sum l_i <= n, and every partial
// sum of (1 - l_i) is >= -1e-9
InequalityReport trace_check(const DirichletSystem& sys, const HostNetwork& net);

// One step of the mean/mean-square recursion on a positive nondecreasing
// sequence: F_k = (1 + theta/2) A_k^2 - B_k. Where the quadratic hypothesis
//   sum_{i<=k} (a_{k+1}-a_i)^2 <= theta sum_{i<=k} a_i (a_{k+1}-a_i)
// holds, F_{k+1} <= ((k+1)/k)^theta F_k is asserted (1e-12 relative).
struct RecursionState {
    int k = 0;
    double mean = 0.0;
    double mean_sq = 0.0;
    double F = 0.0;
    double theta = 0.0;
    bool hyp_ok = true;       // quadratic hypothesis at this k
    double cascade_slack = 0.0;
    bool cascade_ok = true;   // F_{k+1} bound (true when untestable/ungated)
};

std::vector<RecursionState> recursion_check(std::span<const double> a, double theta);

}  // namespace dirnet
