#pragma once

#include "lin3b/params.hpp"
#include "lin3b/util.hpp"

namespace lin3b {

// Cartesian phase-space point of the collinear system, ordered q1 < q2 < q3.
struct CartesianState {
    Vec3 q{};
    Vec3 p{};
};

// -alpha r^-a + beta r^-b for a single pair.  r must be positive.
double pair_potential(double r, double alpha, double beta, double a, double b);
double pair_potential_deriv(double r, double alpha, double beta, double a, double b);

// Separation at which a single pair's potential is stationary.
double pair_equilibrium_distance(double alpha, double beta, double a, double b);

double potential_U(const Vec3& q, const SystemParams& par);
double potential_V(const Vec3& q, const SystemParams& par);
double potential_W(const Vec3& q, const SystemParams& par);

double hamiltonian_energy(const CartesianState& st, const SystemParams& par);

// (qdot, pdot) = (M^-1 p, -grad W).  Rejects unordered or near-collision
// configurations: the repulsive core makes true collisions impossible, so a
// separation below 1e-12 of the system extent signals integration failure.
CartesianState cartesian_field(const CartesianState& st, const SystemParams& par);

// Shift to the centre-of-mass frame with zero total momentum.  Idempotent.
CartesianState project_reduced(const CartesianState& st, const SystemParams& par);

double total_momentum(const CartesianState& st);
double mass_weighted_centre(const CartesianState& st, const SystemParams& par);

}  // namespace lin3b
