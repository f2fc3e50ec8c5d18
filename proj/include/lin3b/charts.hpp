#pragma once

#include "lin3b/model.hpp"
#include "lin3b/potentials.hpp"

namespace lin3b {

// McGehee chart: r is the moment-of-inertia radius, v and u the rescaled
// radial and shape velocities, s the shape coordinate in (-1, 1).
struct McGeheeState {
    double r, v, s, u;
};

// Zero-energy regularized chart: rho = 1/r = (1-s^2) R, w the regularized
// shape velocity.  Defined on [0,inf) x R x [-1,1] x R.
struct ZeroEnergyState {
    double R, y, s, w;
};

// The (y, s, w) system with R slaved through the energy relation.
struct ReducedState {
    double y, s, w;
};

// Positive-energy regularized chart: rho = 1/r = (1-s^2) R.
struct PositiveEnergyState {
    double R, v, s, u;
};

McGeheeState to_mcgehee(const CartesianState& st, const MassGeometry& g,
                        const SystemParams& par);
CartesianState from_mcgehee(const McGeheeState& st, const MassGeometry& g,
                            const SystemParams& par);

// Chart hops used when gluing trajectories and seeding tests.  All require
// r > 0 and |s| < 1 where the source chart does.
ZeroEnergyState zero_energy_from_mcgehee(const McGeheeState& st, const SystemParams& par);
McGeheeState mcgehee_from_zero_energy(const ZeroEnergyState& st, const SystemParams& par);
PositiveEnergyState positive_from_mcgehee(const McGeheeState& st, const SystemParams& par);
McGeheeState mcgehee_from_positive(const PositiveEnergyState& st, const SystemParams& par);

// Nonnegative R solving
//   R^(b-a) (1-s^2)^b V(s) = (1-s^2)^a (U - y^2/2) - w^2/2 >= 0.
// Right sides below `snap_tol` are treated as exactly on the infinity
// manifold and give R = 0; negative right sides are a domain error.
double slave_R(const ShapePotentials& pot, double y, double s, double w,
               double snap_tol = 1e-8);

// Right side of the slaving relation (the infinity-manifold residual).
double manifold_gap(const ShapePotentials& pot, double y, double s, double w);

}  // namespace lin3b
