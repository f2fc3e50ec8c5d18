#include "lin3b/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lin3b {

MassGeometry build_geometry(double m1, double m2, double m3) {
    if (!(m1 > 0 && m2 > 0 && m3 > 0))
        throw std::invalid_argument("build_geometry: masses must be positive");

    MassGeometry g;
    g.masses = {m1, m2, m3};
    g.total_mass = m1 + m2 + m3;
    g.M = Mat3{{{m1, 0, 0}, {0, m2, 0}, {0, 0, m3}}};

    const double mt = g.total_mass;

    const Mat3 A1{{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}};
    const Mat3 A2{{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}};
    const double c2 = std::sqrt(m1 * m2 * m3 / mt);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            g.Atilde[i][j] = A1[i][j] * g.masses[j] / mt + c2 * A2[i][j] / g.masses[i];

    const double aa = std::sqrt(m3 / ((m1 + m2) * mt));
    g.a_end = {-aa, -aa, std::sqrt((m1 + m2) / (m3 * mt))};
    const double bb = std::sqrt(m1 / ((m2 + m3) * mt));
    g.b_end = {-std::sqrt((m2 + m3) / (m1 * mt)), bb, bb};

    g.gap_a = g.a_end[2] - g.a_end[1];
    g.gap_b = g.b_end[1] - g.b_end[0];

    g.cos_2l = dot(g.a_end, matvec(g.M, g.b_end));
    g.lambda = 0.5 * std::acos(g.cos_2l);
    g.sin_2l = std::sin(2.0 * g.lambda);
    return g;
}

Vec3 shape_map(const MassGeometry& g, double s) {
    if (std::abs(s) > 1.0)
        throw std::domain_error("shape_map: s must lie in [-1, 1]");
    const double ca = std::sin(g.lambda * (1.0 - s)) / g.sin_2l;
    const double cb = std::sin(g.lambda * (1.0 + s)) / g.sin_2l;
    return {ca * g.a_end[0] + cb * g.b_end[0],
            ca * g.a_end[1] + cb * g.b_end[1],
            ca * g.a_end[2] + cb * g.b_end[2]};
}

Vec3 shape_map_deriv(const MassGeometry& g, double s) {
    const Vec3 S = shape_map(g, s);
    const Vec3 AS = matvec(g.Atilde, S);
    return {g.lambda * AS[0], g.lambda * AS[1], g.lambda * AS[2]};
}

double shape_map_inverse(const MassGeometry& g, const Vec3& svec) {
    // Coefficients of svec in the (a_end, b_end) basis via the M-Gram system,
    // then tan(lambda s) = tan(lambda) (cb - ca) / (cb + ca).
    const Vec3 Ms = matvec(g.M, svec);
    const double xa = dot(Ms, g.a_end);
    const double xb = dot(Ms, g.b_end);
    const double det = 1.0 - g.cos_2l * g.cos_2l;
    const double ca = (xa - g.cos_2l * xb) / det;
    const double cb = (xb - g.cos_2l * xa) / det;
    const double denom = cb + ca;
    if (!(denom > 0))
        throw std::domain_error("shape_map_inverse: configuration outside the shape chart");
    const double s = std::atan(std::tan(g.lambda) * (cb - ca) / denom) / g.lambda;
    if (std::abs(s) > 1.0 + 1e-12)
        throw std::domain_error("shape_map_inverse: configuration outside the shape interval");
    return std::clamp(s, -1.0, 1.0);
}

double mass_norm_sq(const MassGeometry& g, const Vec3& q) {
    return dot(q, matvec(g.M, q));
}

}  // namespace lin3b
