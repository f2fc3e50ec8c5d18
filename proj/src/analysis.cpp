#include "lin3b/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lin3b {

std::vector<std::complex<double>> eigen_small(const std::vector<std::vector<double>>& A) {
    const std::size_t n = A.size();
    if (n == 0 || n > 4) throw std::invalid_argument("eigen_small: matrix must be 1x1 .. 4x4");
    Eigen::MatrixXd M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (A[i].size() != n) throw std::invalid_argument("eigen_small: matrix must be square");
        for (std::size_t j = 0; j < n; ++j) M(i, j) = A[i][j];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = es.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return ev;
}

std::vector<double> real_eigenvector(const std::vector<std::vector<double>>& A, double eigenvalue) {
    const std::size_t n = A.size();
    Eigen::MatrixXd M(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = A[i][j] - (i == j ? eigenvalue : 0.0);
    // Null vector of (A - lambda I) from the SVD.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(n - 1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v(i);
    // Fix an orientation so callers get a reproducible direction.
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(out[i]) > 1e-12) {
            if (out[i] < 0)
                for (auto& c : out) c = -c;
            break;
        }
    }
    return out;
}

std::pair<ReducedState, ReducedState> equilibria_h0(const ShapePotentials& pot) {
    const double se = pot.critical_shape();
    const double y = std::sqrt(2.0 * pot.U(se));
    return {ReducedState{-y, se, 0.0}, ReducedState{y, se, 0.0}};
}

namespace {

EquilibriumReport report_from(const char* chart, const std::vector<double>& loc,
                              const std::vector<std::complex<double>>& ev, double hyp_tol) {
    EquilibriumReport rep;
    rep.chart = chart;
    rep.location = loc;
    rep.eigenvalues = ev;
    for (const auto& z : ev) {
        if (z.real() < -hyp_tol) ++rep.stable_dim;
        else if (z.real() > hyp_tol) ++rep.unstable_dim;
        else ++rep.center_dim;
    }
    return rep;
}

}  // namespace

std::pair<EquilibriumReport, EquilibriumReport> classify_P(const ShapePotentials& pot,
                                                           double hyp_tol) {
    const auto [Pm, Pp] = equilibria_h0(pot);
    ReducedZeroEnergyFlow flow(pot);
    auto field = [&](const std::array<double, 3>& x) { return flow.rhs_extended(x); };

    auto classify = [&](const ReducedState& P) {
        const std::array<double, 3> x{P.y, P.s, P.w};
        const auto jac = numerical_jacobian<3>(field, x, 1e-4);
        std::vector<std::vector<double>> A(3, std::vector<double>(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) A[i][j] = jac.J[i][j];
        return report_from("reduced_zero_energy", {P.y, P.s, P.w}, eigen_small(A), hyp_tol);
    };
    return {classify(Pm), classify(Pp)};
}

SwBlockInfo sw_block_info(const ShapePotentials& pot) {
    const auto& par = pot.params();
    const double a = par.exp_a;
    const double se = pot.critical_shape();
    const double lam = pot.geometry().lambda;
    const double phi = 1.0 - se * se;
    const double y = std::sqrt(2.0 * pot.U(se));

    SwBlockInfo info;
    info.trace_derived = (0.5 * a - 1.0) * std::pow(phi, a) * y;
    info.det = -std::pow(phi, 2.0 * a) * pot.d2U(se) / (lam * lam);
    auto roots = [&](double tr) {
        const double disc = std::sqrt(tr * tr - 4.0 * info.det);
        return std::array<double, 2>{0.5 * (tr - disc), 0.5 * (tr + disc)};
    };
    info.roots_derived = roots(info.trace_derived);
    info.roots_flipped = roots(-info.trace_derived);
    return info;
}

double heteroclinic_rate(const ShapePotentials& pot) {
    return pot.params().exp_b - pot.params().exp_a;
}

double heteroclinic_y(const ShapePotentials& pot, double sigma) {
    if (!pot.params().mass_symmetric())
        throw std::domain_error("heteroclinic_y: requires a mass-symmetric system");
    const double U0 = pot.U(0.0);
    const double c = heteroclinic_rate(pot);
    return std::sqrt(2.0 * U0) * std::tanh(c * sigma * std::sqrt(0.5 * U0));
}

HposFamilies equilibria_hpos(double h) {
    if (!(h > 0)) throw std::domain_error("equilibria_hpos: requires h > 0");
    return HposFamilies{h};
}

std::array<double, 4> c_point(double h, double s, int sign) {
    if (!(h > 0)) throw std::domain_error("c_point: requires h > 0");
    return {0.0, sign * std::sqrt(2.0 * h), s, 0.0};
}

std::array<std::array<double, 3>, 3> restricted_jacobian_at_c(const ShapePotentials& pot,
                                                              double h, double s, int sign) {
    PositiveEnergyFlow flow(pot);
    auto field = [&](const std::array<double, 4>& x) { return flow.rhs(x); };
    const auto x = c_point(h, s, sign);
    auto jac = numerical_jacobian<4>(field, x, 1e-4);

    // R >= 0 clips central differences in the R direction; use a one-sided
    // second-order stencil for that column instead.
    {
        const double hR = 1e-4;
        auto x1 = x, x2 = x;
        x1[0] += hR;
        x2[0] += 2.0 * hR;
        const auto f0 = field(x), f1 = field(x1), f2 = field(x2);
        for (int i = 0; i < 4; ++i)
            jac.J[i][0] = (-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * hR);
    }

    // Tangent space of the energy surface at c-+ is spanned by the R, s and
    // u coordinate directions; the v couplings must vanish there.
    const int keep[3] = {0, 2, 3};
    for (int j : keep)
        if (std::abs(jac.J[1][j]) > 1e-7)
            throw analysis_error("restricted_jacobian_at_c: unexpected v coupling");
    std::array<std::array<double, 3>, 3> J{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) J[i][j] = jac.J[keep[i]][keep[j]];
    return J;
}

}  // namespace lin3b
