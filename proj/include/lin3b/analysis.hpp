#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lin3b/fields.hpp"

namespace lin3b {

// Central differences with one Richardson extrapolation step; err_estimate
// is the largest entrywise change between the two grids.
template <std::size_t N>
struct JacobianResult {
    std::array<std::array<double, N>, N> J{};
    double err_estimate = 0.0;
};

template <std::size_t N, class F>
JacobianResult<N> numerical_jacobian(F&& f, const std::array<double, N>& x, double h0 = 2e-3) {
    auto diff = [&](double h) {
        std::array<std::array<double, N>, N> J{};
        for (std::size_t j = 0; j < N; ++j) {
            const double hj = h * std::max(1.0, std::abs(x[j]));
            auto xp = x, xm = x;
            xp[j] += hj;
            xm[j] -= hj;
            const auto fp = f(xp), fm = f(xm);
            for (std::size_t i = 0; i < N; ++i) J[i][j] = (fp[i] - fm[i]) / (2.0 * hj);
        }
        return J;
    };
    const auto Jh = diff(h0);
    const auto Jh2 = diff(0.5 * h0);
    JacobianResult<N> out;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            out.J[i][j] = (4.0 * Jh2[i][j] - Jh[i][j]) / 3.0;
            out.err_estimate = std::max(out.err_estimate, std::abs(Jh2[i][j] - Jh[i][j]));
        }
    return out;
}

// Eigenvalues of a small (n <= 4) real dense matrix, sorted by real part
// then imaginary part.
std::vector<std::complex<double>> eigen_small(const std::vector<std::vector<double>>& A);

// Right eigenvector for a real eigenvalue of a small real matrix.
std::vector<double> real_eigenvector(const std::vector<std::vector<double>>& A, double eigenvalue);

struct EquilibriumReport {
    std::string chart;
    std::vector<double> location;
    std::vector<std::complex<double>> eigenvalues;
    int stable_dim = 0;
    int unstable_dim = 0;
    int center_dim = 0;
};

// Rest points P-+ = (-+sqrt(2 U(s_e)), s_e, 0) of the reduced zero-energy
// flow; first = P-, second = P+.
std::pair<ReducedState, ReducedState> equilibria_h0(const ShapePotentials& pot);

// Numerical linearization at P-+ with eigenvalue sign classification.
// Eigenvalues with |Re| < hyp_tol count as center directions.
std::pair<EquilibriumReport, EquilibriumReport> classify_P(const ShapePotentials& pot,
                                                           double hyp_tol = 1e-8);

// Closed-form quantities of the s-w block at P+:
//   trace    (derived linearization; sign convention of the artifact)
//   det      = -(1-s_e^2)^(2a) U''(s_e) / lambda^2
// and the quadratic roots under both the derived trace and the opposite
// (printed) sign convention.  Root signs agree since det < 0.
struct SwBlockInfo {
    double trace_derived;
    double det;
    std::array<double, 2> roots_derived;
    std::array<double, 2> roots_flipped;
};
SwBlockInfo sw_block_info(const ShapePotentials& pot);

// Heteroclinic orbit of mass-symmetric systems on the invariant line
// {s = 0, w = 0}: y(sigma) = sqrt(2 U(0)) tanh(c sigma sqrt(U(0)/2)) with
// c = b - a, the coefficient of the reduced field on the line.
double heteroclinic_rate(const ShapePotentials& pot);
double heteroclinic_y(const ShapePotentials& pot, double sigma);

// Positive-energy equilibrium families on the infinity manifold N_h,
// states packed (v, s, u).
struct HposFamilies {
    double h;
    std::array<double, 3> N_plus(double s) const { return {std::sqrt(2.0 * h), s, 0.0}; }
    std::array<double, 3> N_minus(double s) const { return {-std::sqrt(2.0 * h), s, 0.0}; }
    std::array<double, 3> D1(double v, int sign) const {
        return {v, 1.0, sign * std::sqrt(2.0 * h - v * v)};
    }
    std::array<double, 3> Dm1(double v, int sign) const {
        return {v, -1.0, sign * std::sqrt(2.0 * h - v * v)};
    }
};
HposFamilies equilibria_hpos(double h);

// c-+ = (0, -+sqrt(2h), s, 0) in the positive-energy chart.
std::array<double, 4> c_point(double h, double s, int sign);

// Jacobian of the positive-energy field at c-+, restricted to the tangent
// space of the energy surface (spanned by the R, s and u directions there).
std::array<std::array<double, 3>, 3> restricted_jacobian_at_c(const ShapePotentials& pot,
                                                              double h, double s, int sign);

}  // namespace lin3b
