#pragma once

#include "lin3b/util.hpp"

namespace lin3b {

// Mass-dependent geometry of the shape interval: the quarter-turn matrix
// Atilde on the reduced configuration plane, the two unit double-collision
// endpoint configurations, and the mass angle lambda with
// cos(2 lambda) = a_end^T M b_end.
struct MassGeometry {
    Vec3 masses{};
    double total_mass = 0;
    Mat3 M{};       // diag(m1, m2, m3)
    Mat3 Atilde{};
    Vec3 a_end{};   // bodies 1 and 2 coincide
    Vec3 b_end{};   // bodies 2 and 3 coincide
    double lambda = 0;
    double cos_2l = 0;
    double sin_2l = 0;
    double gap_a = 0;  // a_end[2] - a_end[1]
    double gap_b = 0;  // b_end[1] - b_end[0]
};

MassGeometry build_geometry(double m1, double m2, double m3);

// S(s) = [sin(lambda(1-s)) a_end + sin(lambda(1+s)) b_end] / sin(2 lambda),
// the unit-configuration chart of the shape interval, s in [-1, 1].
Vec3 shape_map(const MassGeometry& g, double s);

// S'(s) = lambda * Atilde * S(s).
Vec3 shape_map_deriv(const MassGeometry& g, double s);

// Inverse chart: recover s from a unit configuration.
double shape_map_inverse(const MassGeometry& g, const Vec3& svec);

// q^T M q for the given geometry.
double mass_norm_sq(const MassGeometry& g, const Vec3& q);

}  // namespace lin3b
