#pragma once

#include <array>
#include <vector>

#include "lin3b/analysis.hpp"
#include "lin3b/integrate.hpp"

namespace lin3b {

// Trajectory seeded at equilibrium + delta * direction (direction normalized)
// and integrated until `sigma_span` or until `stop_near` (if nonempty) is
// approached within `stop_dist`.
struct TraceOptions {
    double delta = 1e-7;
    double sigma_span = 50.0;
    std::vector<double> stop_near;
    double stop_dist = 1e-4;
};

Trajectory<3> trace_unstable_manifold(const ReducedZeroEnergyFlow& flow,
                                      const std::array<double, 3>& equilibrium,
                                      const std::array<double, 3>& direction,
                                      const IntegratorConfig& cfg,
                                      const TraceOptions& opt = {});

// First return to the section {x[index] = value} crossing in `direction`
// (+1: increasing).  The initial point may lie on the section; the crossing
// at sigma = 0 is not counted.
struct SectionSpec {
    int index = 1;
    double value = 0.0;
    int direction = +1;
};

struct ReturnResult {
    std::array<double, 3> state;
    double sigma;
};

ReturnResult poincare_return(const ReducedZeroEnergyFlow& flow, const SectionSpec& sec,
                             const std::array<double, 3>& x0, const IntegratorConfig& cfg);

// Fixed point of the return map on {s = 0, w > 0} in the (y, w) plane,
// refined by a damped Newton iteration on the return displacement.
struct PeriodicOrbitResult {
    bool converged = false;
    double y = 0, w = 0;
    double period_sigma = 0;
    double period_t = 0;  // physical period, reconstructed by quadrature
    std::array<std::complex<double>, 2> multipliers{};
    std::vector<double> residual_history;
};

struct PoOptions {
    double tol = 1e-8;
    int max_iter = 40;
    double fd_step = 1e-6;
};

PeriodicOrbitResult find_periodic_orbit(const ShapePotentials& pot, double y0, double w0,
                                        const IntegratorConfig& cfg, const PoOptions& opt = {});

// dt/dsigma on the zero-energy charts (physical-clock reconstruction);
// requires a finite-size state (slaved R > 0).
double h0_time_factor(const ShapePotentials& pot, const std::array<double, 3>& x);

}  // namespace lin3b
