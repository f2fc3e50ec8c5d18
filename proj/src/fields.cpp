#include "lin3b/fields.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lin3b {

namespace {

inline void require_shape_open(double s, const char* who) {
    if (!(std::abs(s) < 1.0))
        throw std::domain_error(std::string(who) + ": |s| must be < 1");
}

inline void require_shape_closed(double s, const char* who) {
    if (!(std::abs(s) <= 1.0))
        throw std::domain_error(std::string(who) + ": |s| must be <= 1");
}

}  // namespace

// ---------------------------------------------------------------- McGehee

std::array<double, 4> McGeheeFlow::rhs(const std::array<double, 4>& x) const {
    const double r = x[0], v = x[1], s = x[2], u = x[3];
    if (!(r > 0)) throw std::domain_error("McGeheeFlow: r must be positive");
    require_shape_open(s, "McGeheeFlow");
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const auto ie = pot_->interior_eval(s);
    const double rba = std::pow(r, b - a);
    return {r * v,
            0.5 * b * v * v + u * u - a * rba * ie.U + b * ie.V,
            u / pot_->geometry().lambda,
            (0.5 * b - 1.0) * v * u + (rba * ie.dU - ie.dV) / pot_->geometry().lambda};
}

double McGeheeFlow::first_integral(const std::array<double, 4>& x) const {
    const double r = x[0], v = x[1], s = x[2], u = x[3];
    const auto& par = pot_->params();
    const auto ie = pot_->interior_eval(s);
    return 0.5 * (u * u + v * v) - std::pow(r, par.exp_b - par.exp_a) * ie.U + ie.V -
           par.h * std::pow(r, par.exp_b);
}

std::array<double, 4> McGeheeFlow::fi_gradient(const std::array<double, 4>& x) const {
    const double r = x[0], v = x[1], s = x[2], u = x[3];
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const auto ie = pot_->interior_eval(s);
    return {-(b - a) * std::pow(r, b - a - 1.0) * ie.U - par.h * b * std::pow(r, b - 1.0),
            v,
            -std::pow(r, b - a) * ie.dU + ie.dV,
            u};
}

std::optional<McGeheeEquilibrium> mcgehee_equilibrium(const ShapePotentials& pot) {
    const auto& par = pot.params();
    const double a = par.exp_a, b = par.exp_b;
    // Rest point needs u = v = 0, a r^(b-a) U = b V and r^(b-a) U' = V'.
    // Eliminating r turns the last condition into psi(s) = 0.
    auto psi = [&](double s) {
        return (b * pot.V(s) / (a * pot.U(s))) * pot.dU(s) - pot.dV(s);
    };
    const double lo = -1.0 + 1e-6, hi = 1.0 - 1e-6;
    const int n = 1024;
    double prev = psi(lo), root = 0.0;
    bool found = false;
    for (int i = 1; i <= n && !found; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double cur = psi(x);
        if (prev == 0.0) { root = lo + (hi - lo) * (i - 1) / n; found = true; break; }
        if ((prev < 0.0) != (cur < 0.0)) {
            double ra = lo + (hi - lo) * (i - 1) / n, rb = x, fa = prev;
            for (int it = 0; it < 200 && (rb - ra) > 1e-15; ++it) {
                const double m = 0.5 * (ra + rb), fm = psi(m);
                if ((fa < 0.0) == (fm < 0.0)) { ra = m; fa = fm; }
                else rb = m;
            }
            root = 0.5 * (ra + rb);
            found = true;
        }
        prev = cur;
    }
    if (!found) return std::nullopt;

    McGeheeEquilibrium eq;
    eq.s = root;
    eq.r = std::pow(b * pot.V(root) / (a * pot.U(root)), 1.0 / (b - a));
    const double rba = std::pow(eq.r, b - a);
    eq.energy = (-rba * pot.U(root) + pot.V(root)) / std::pow(eq.r, b);
    return eq;
}

// ------------------------------------------------------------ zero energy

ZeroEnergyFlow::ZeroEnergyFlow(const ShapePotentials& pot) : pot_(&pot) {
    if (pot.params().h != 0.0)
        throw std::invalid_argument("ZeroEnergyFlow: chart requires h = 0");
}

std::array<double, 4> ZeroEnergyFlow::rhs(const std::array<double, 4>& x) const {
    const double R = x[0], y = x[1], s = x[2], w = x[3];
    require_shape_closed(s, "ZeroEnergyFlow");
    if (!(R >= -1e-6)) throw std::domain_error("ZeroEnergyFlow: R must be nonnegative");
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const double lam = pot_->geometry().lambda;
    const double phi = 1.0 - s * s;
    const double Fa = std::pow(phi, a);
    const double Fh = std::pow(phi, 0.5 * a);
    const double Fh1 = std::pow(phi, 0.5 * a - 1.0);
    const auto re = pot_->reg_eval(s);
    const double Rba = std::pow(std::max(R, 0.0), b - a);

    if (Rba * re.Q > re.P + 1e-6)
        throw std::domain_error("ZeroEnergyFlow: state outside the domain bound on R");

    std::array<double, 4> d;
    d[0] = -R * (Fa * y - (2.0 * s / lam) * Fh1 * w);
    d[1] = 0.5 * a * Fa * y * y - a * re.P + w * w + b * Rba * re.Q;
    d[2] = Fh * w / lam;
    d[3] = (0.5 * a - 1.0) * Fa * y * w - (a * s / lam) * Fh1 * w * w +
           (Fh * re.dP + 2.0 * a * s * Fh1 * re.P) / lam -
           Rba * (Fh * re.dQ + 2.0 * b * s * Fh1 * re.Q) / lam;
    return d;
}

double ZeroEnergyFlow::first_integral(const std::array<double, 4>& x) const {
    const double R = std::max(x[0], 0.0), y = x[1], s = x[2], w = x[3];
    const auto& par = pot_->params();
    const auto re = pot_->reg_eval(s);
    const double Fa = std::pow(1.0 - s * s, par.exp_a);
    return 0.5 * w * w + 0.5 * Fa * y * y - re.P + std::pow(R, par.exp_b - par.exp_a) * re.Q;
}

std::array<double, 4> ZeroEnergyFlow::fi_gradient(const std::array<double, 4>& x) const {
    const double R = std::max(x[0], 0.0), y = x[1], s = x[2], w = x[3];
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const double phi = 1.0 - s * s;
    const auto re = pot_->reg_eval(s);
    const double Fa = std::pow(phi, a);
    const double dFa = -2.0 * a * s * std::pow(phi, a - 1.0);
    return {(b - a) * std::pow(R, b - a - 1.0) * re.Q,
            Fa * y,
            0.5 * dFa * y * y - re.dP + std::pow(R, b - a) * re.dQ,
            w};
}

// --------------------------------------------------- reduced zero energy

ReducedZeroEnergyFlow::ReducedZeroEnergyFlow(const ShapePotentials& pot) : pot_(&pot) {
    if (pot.params().h != 0.0)
        throw std::invalid_argument("ReducedZeroEnergyFlow: chart requires h = 0");
}

double ReducedZeroEnergyFlow::admissibility(const std::array<double, 3>& x) const {
    return manifold_gap(*pot_, x[0], x[1], x[2]);
}

std::array<double, 3> ReducedZeroEnergyFlow::rhs(const std::array<double, 3>& x) const {
    return eval(x, true);
}

std::array<double, 3> ReducedZeroEnergyFlow::rhs_extended(const std::array<double, 3>& x) const {
    return eval(x, false);
}

std::array<double, 3> ReducedZeroEnergyFlow::eval(const std::array<double, 3>& x, bool checked) const {
    const double y = x[0], s = x[1], w = x[2];
    require_shape_closed(s, "ReducedZeroEnergyFlow");
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const double lam = pot_->geometry().lambda;
    const double phi = 1.0 - s * s;
    const double Fa = std::pow(phi, a);
    const double Fh = std::pow(phi, 0.5 * a);
    const double Fh1 = std::pow(phi, 0.5 * a - 1.0);
    const auto re = pot_->reg_eval(s);

    // R^(b-a) Q slaved through the energy relation.
    const double gap = re.P - 0.5 * Fa * y * y - 0.5 * w * w;
    if (checked && gap < -1e-6)
        throw std::domain_error("ReducedZeroEnergyFlow: state outside the admissible region");

    std::array<double, 3> d;
    d[0] = (b - a) * gap - (0.5 * a - 1.0) * w * w;
    d[1] = Fh * w / lam;
    d[2] = (0.5 * a - 1.0) * Fa * y * w - (a * s / lam) * Fh1 * w * w +
           (Fh * re.dP + 2.0 * a * s * Fh1 * re.P) / lam -
           (gap / re.Q) * (Fh * re.dQ + 2.0 * b * s * Fh1 * re.Q) / lam;
    return d;
}

// -------------------------------------------------- infinity manifold h=0

InfinityFlowH0::InfinityFlowH0(const ShapePotentials& pot) : pot_(&pot) {
    if (pot.params().h != 0.0)
        throw std::invalid_argument("InfinityFlowH0: chart requires h = 0");
}

double InfinityFlowH0::first_integral(const std::array<double, 3>& x) const {
    return manifold_gap(*pot_, x[0], x[1], x[2]);
}

void InfinityFlowH0::check_on_manifold(const std::array<double, 3>& x, double tol) const {
    if (std::abs(first_integral(x)) > tol)
        throw std::domain_error("InfinityFlowH0: state is off the infinity manifold");
}

std::array<double, 3> InfinityFlowH0::rhs(const std::array<double, 3>& x) const {
    const double y = x[0], s = x[1], w = x[2];
    require_shape_closed(s, "InfinityFlowH0");
    const auto& par = pot_->params();
    const double a = par.exp_a;
    const double lam = pot_->geometry().lambda;
    const double phi = 1.0 - s * s;
    const double Fa = std::pow(phi, a);
    const double Fh = std::pow(phi, 0.5 * a);
    const double Fh1 = std::pow(phi, 0.5 * a - 1.0);
    const auto re = pot_->reg_eval(s);

    std::array<double, 3> d;
    d[0] = -(0.5 * a - 1.0) * w * w;
    d[1] = Fh * w / lam;
    d[2] = (0.5 * a - 1.0) * Fa * y * w - (a * s / lam) * Fh1 * w * w +
           (Fh * re.dP + 2.0 * a * s * Fh1 * re.P) / lam;
    return d;
}

std::array<double, 3> InfinityFlowH0::fi_gradient(const std::array<double, 3>& x) const {
    const double y = x[0], s = x[1], w = x[2];
    const auto& par = pot_->params();
    const double a = par.exp_a;
    const double phi = 1.0 - s * s;
    const auto re = pot_->reg_eval(s);
    const double Fa = std::pow(phi, a);
    const double dFa = -2.0 * a * s * std::pow(phi, a - 1.0);
    return {-Fa * y, re.dP - 0.5 * dFa * y * y, -w};
}

// -------------------------------------------------------- positive energy

PositiveEnergyFlow::PositiveEnergyFlow(const ShapePotentials& pot) : pot_(&pot) {}

std::array<double, 4> PositiveEnergyFlow::rhs(const std::array<double, 4>& x) const {
    const double R = x[0], v = x[1], s = x[2], u = x[3];
    // Trial stages and Jacobian probes may cross R = 0 by a hair; the power
    // terms are clamped there (they vanish to high order anyway).
    if (!(R >= -1e-3)) throw std::domain_error("PositiveEnergyFlow: R must be nonnegative");
    require_shape_closed(s, "PositiveEnergyFlow");
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const double lam = pot_->geometry().lambda;
    const double th = 1.0 - s * s;
    const auto re = pot_->reg_eval(s);
    const double Rc = std::max(R, 0.0);
    const double Ra = std::pow(Rc, a), Rb = std::pow(Rc, b);

    std::array<double, 4> d;
    d[0] = (2.0 * s / lam) * u * R - th * R * v;
    d[1] = th * (u * u - a * Ra * re.P + b * Rb * re.Q);
    d[2] = th * u / lam;
    d[3] = -th * u * v +
           (Ra * (th * re.dP + 2.0 * a * s * re.P) - Rb * (th * re.dQ + 2.0 * b * s * re.Q)) / lam;
    return d;
}

double PositiveEnergyFlow::first_integral(const std::array<double, 4>& x) const {
    const double R = std::max(x[0], 0.0), v = x[1], s = x[2], u = x[3];
    const auto& par = pot_->params();
    const auto re = pot_->reg_eval(s);
    return 0.5 * (u * u + v * v) - std::pow(R, par.exp_a) * re.P + std::pow(R, par.exp_b) * re.Q -
           par.h;
}

std::array<double, 4> PositiveEnergyFlow::fi_gradient(const std::array<double, 4>& x) const {
    const double R = std::max(x[0], 0.0), v = x[1], s = x[2], u = x[3];
    const auto& par = pot_->params();
    const double a = par.exp_a, b = par.exp_b;
    const auto re = pot_->reg_eval(s);
    return {-a * std::pow(R, a - 1.0) * re.P + b * std::pow(R, b - 1.0) * re.Q,
            v,
            -std::pow(R, a) * re.dP + std::pow(R, b) * re.dQ,
            u};
}

// ------------------------------------------------- infinity manifold h>0

InfinityFlowHpos::InfinityFlowHpos(const ShapePotentials& pot, double h)
    : pot_(&pot), h_(h) {
    if (!(h > 0)) throw std::domain_error("InfinityFlowHpos: requires h > 0");
}

std::array<double, 3> InfinityFlowHpos::rhs(const std::array<double, 3>& x) const {
    const double v = x[0], s = x[1], u = x[2];
    require_shape_closed(s, "InfinityFlowHpos");
    const double th = 1.0 - s * s;
    return {th * u * u, th * u / pot_->geometry().lambda, -th * u * v};
}

double InfinityFlowHpos::first_integral(const std::array<double, 3>& x) const {
    return 0.5 * (x[0] * x[0] + x[2] * x[2]) - h_;
}

std::array<double, 3> InfinityFlowHpos::fi_gradient(const std::array<double, 3>& x) const {
    return {x[0], 0.0, x[2]};
}

void InfinityFlowHpos::check_on_cylinder(const std::array<double, 3>& x, double tol) const {
    if (std::abs(first_integral(x)) > tol)
        throw std::domain_error("InfinityFlowHpos: state is off the energy cylinder");
}

}  // namespace lin3b
