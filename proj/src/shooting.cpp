#include "lin3b/shooting.hpp"

#include <cmath>
#include <stdexcept>

namespace lin3b {

Trajectory<3> trace_unstable_manifold(const ReducedZeroEnergyFlow& flow,
                                      const std::array<double, 3>& equilibrium,
                                      const std::array<double, 3>& direction,
                                      const IntegratorConfig& cfg,
                                      const TraceOptions& opt) {
    double nrm = std::sqrt(direction[0] * direction[0] + direction[1] * direction[1] +
                           direction[2] * direction[2]);
    if (!(nrm > 0)) throw std::invalid_argument("trace_unstable_manifold: zero direction");
    std::array<double, 3> x0;
    for (int i = 0; i < 3; ++i) x0[i] = equilibrium[i] + opt.delta * direction[i] / nrm;

    std::vector<EventSpec<3>> events;
    if (opt.stop_near.size() == 3) {
        const std::array<double, 3> target{opt.stop_near[0], opt.stop_near[1], opt.stop_near[2]};
        const double d = opt.stop_dist;
        events.push_back(EventSpec<3>{
            "target_reached",
            [target, d](double, const std::array<double, 3>& x) {
                double acc = 0;
                for (int i = 0; i < 3; ++i) acc += (x[i] - target[i]) * (x[i] - target[i]);
                return d - std::sqrt(acc);
            },
            +1, nullptr});
    }
    auto rhs = [&flow](const std::array<double, 3>& x) { return flow.rhs(x); };
    return integrate<3>(rhs, x0, 0.0, opt.sigma_span, cfg, events, nullptr, nullptr,
                        Chart::ReducedZeroEnergy, Clock::RegularizedSigma);
}

ReturnResult poincare_return(const ReducedZeroEnergyFlow& flow, const SectionSpec& sec,
                             const std::array<double, 3>& x0, const IntegratorConfig& cfg) {
    auto rhs = [&flow](const std::array<double, 3>& x) { return flow.rhs(x); };
    std::vector<EventSpec<3>> events{
        EventSpec<3>{"section",
                     [sec](double, const std::array<double, 3>& x) { return x[sec.index] - sec.value; },
                     sec.direction, nullptr}};
    auto traj = integrate<3>(rhs, x0, 0.0, cfg.max_time, cfg, events, nullptr, nullptr,
                             Chart::ReducedZeroEnergy, Clock::RegularizedSigma);
    if (!traj.terminal || traj.terminal->kind != TerminalKind::Event)
        throw convergence_error("poincare_return: no section return before max_time");
    return {traj.terminal->x, traj.terminal->t};
}

double h0_time_factor(const ShapePotentials& pot, const std::array<double, 3>& x) {
    // dt/dsigma = r^(1 + a/2) (1-s^2)^a with r = 1 / ((1-s^2) R).
    const double a = pot.params().exp_a;
    const double s = x[1];
    const double R = slave_R(pot, x[0], x[1], x[2]);
    if (!(R > 0)) throw std::domain_error("h0_time_factor: state has infinite size");
    const double phi = 1.0 - s * s;
    return std::pow(phi * R, -(1.0 + 0.5 * a)) * std::pow(phi, a);
}

namespace {

struct ReturnMap {
    const ShapePotentials* pot;
    const ReducedZeroEnergyFlow* flow;
    const IntegratorConfig* cfg;

    // (y, w) on {s = 0, w > 0} -> first return in the same half-section.
    ReturnResult operator()(double y, double w) const {
        if (manifold_gap(*pot, y, 0.0, w) <= 0)
            throw std::domain_error("return map: point outside the admissible section disk");
        return poincare_return(*flow, SectionSpec{1, 0.0, +1}, {y, 0.0, w}, *cfg);
    }
};

}  // namespace

PeriodicOrbitResult find_periodic_orbit(const ShapePotentials& pot, double y0, double w0,
                                        const IntegratorConfig& cfg, const PoOptions& opt) {
    ReducedZeroEnergyFlow flow(pot);
    ReturnMap ret{&pot, &flow, &cfg};

    PeriodicOrbitResult out;
    double y = y0, w = w0;

    auto displacement = [&](double yy, double ww, double& sigma) {
        const auto r = ret(yy, ww);
        sigma = r.sigma;
        return std::array<double, 2>{r.state[0] - yy, r.state[2] - ww};
    };

    double sigma = 0;
    std::array<double, 2> D;
    try {
        D = displacement(y, w, sigma);
    } catch (const std::domain_error& e) {
        throw convergence_error(std::string("find_periodic_orbit: seed rejected: ") + e.what());
    }
    double res = std::hypot(D[0], D[1]);
    out.residual_history.push_back(res);

    for (int it = 0; it < opt.max_iter && res > opt.tol; ++it) {
        // Forward-difference Jacobian of the displacement.
        const double hy = opt.fd_step * std::max(1.0, std::abs(y));
        const double hw = opt.fd_step * std::max(1.0, std::abs(w));
        double sig_tmp;
        const auto Dy = displacement(y + hy, w, sig_tmp);
        const auto Dw = displacement(y, w + hw, sig_tmp);
        const double J00 = (Dy[0] - D[0]) / hy, J01 = (Dw[0] - D[0]) / hw;
        const double J10 = (Dy[1] - D[1]) / hy, J11 = (Dw[1] - D[1]) / hw;
        const double det = J00 * J11 - J01 * J10;
        if (std::abs(det) < 1e-14)
            throw convergence_error("find_periodic_orbit: singular return-map Jacobian");
        const double dy = -(J11 * D[0] - J01 * D[1]) / det;
        const double dw = -(-J10 * D[0] + J00 * D[1]) / det;

        double alpha = 1.0;
        bool accepted = false;
        for (int half = 0; half < 8; ++half, alpha *= 0.5) {
            const double yn = y + alpha * dy, wn = w + alpha * dw;
            try {
                double sig_n;
                const auto Dn = displacement(yn, wn, sig_n);
                const double rn = std::hypot(Dn[0], Dn[1]);
                if (rn < res || (it < 2 && rn < 2.0 * res)) {
                    y = yn; w = wn; D = Dn; res = rn; sigma = sig_n;
                    accepted = true;
                    break;
                }
            } catch (const std::domain_error&) {
                // step left the admissible disk; damp further
            }
        }
        if (!accepted)
            throw convergence_error("find_periodic_orbit: damped step failed to reduce residual");
        out.residual_history.push_back(res);
    }

    if (res > opt.tol) {
        out.converged = false;
        out.y = y; out.w = w;
        out.period_sigma = sigma;
        return out;
    }

    out.converged = true;
    out.y = y; out.w = w;
    out.period_sigma = sigma;

    // Return-map Jacobian at the fixed point -> Floquet multipliers.
    {
        const double hy = opt.fd_step * std::max(1.0, std::abs(y));
        const double hw = opt.fd_step * std::max(1.0, std::abs(w));
        double st;
        const auto Dp = displacement(y + hy, w, st);
        const auto Dm = displacement(y - hy, w, st);
        const auto Ep = displacement(y, w + hw, st);
        const auto Em = displacement(y, w - hw, st);
        std::vector<std::vector<double>> M(2, std::vector<double>(2));
        M[0][0] = (Dp[0] - Dm[0]) / (2 * hy) + 1.0;
        M[1][0] = (Dp[1] - Dm[1]) / (2 * hy);
        M[0][1] = (Ep[0] - Em[0]) / (2 * hw) + 1.0;
        M[1][1] = (Ep[1] - Em[1]) / (2 * hw);
        const auto ev = eigen_small(M);
        out.multipliers = {ev[0], ev[1]};
    }

    // Physical period by quadrature of dt/dsigma along one period.
    {
        auto rhs4 = [&](const std::array<double, 4>& z) {
            const std::array<double, 3> x{z[0], z[1], z[2]};
            auto d = flow.rhs(x);
            return std::array<double, 4>{d[0], d[1], d[2], h0_time_factor(pot, x)};
        };
        const std::array<double, 4> z0{y, 0.0, w, 0.0};
        auto traj = integrate<4>(rhs4, z0, 0.0, out.period_sigma, cfg, {}, nullptr, nullptr,
                                 Chart::ReducedZeroEnergy, Clock::RegularizedSigma);
        out.period_t = traj.back().x[3];
    }
    return out;
}

}  // namespace lin3b
