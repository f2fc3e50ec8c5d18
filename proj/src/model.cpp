#include "lin3b/model.hpp"

#include <cmath>
#include <stdexcept>

namespace lin3b {

double pair_potential(double r, double alpha, double beta, double a, double b) {
    if (!(r > 0)) throw std::domain_error("pair_potential: separation must be positive");
    return -alpha * std::pow(r, -a) + beta * std::pow(r, -b);
}

double pair_potential_deriv(double r, double alpha, double beta, double a, double b) {
    if (!(r > 0)) throw std::domain_error("pair_potential_deriv: separation must be positive");
    return a * alpha * std::pow(r, -a - 1.0) - b * beta * std::pow(r, -b - 1.0);
}

double pair_equilibrium_distance(double alpha, double beta, double a, double b) {
    return std::pow(beta * b / (alpha * a), 1.0 / (b - a));
}

namespace {

void check_ordering(const Vec3& q) {
    if (!(q[0] < q[1] && q[1] < q[2]))
        throw std::domain_error("configuration must satisfy q1 < q2 < q3");
}

void check_separations(const Vec3& q) {
    check_ordering(q);
    const double extent = q[2] - q[0];
    if ((q[1] - q[0]) < 1e-12 * extent || (q[2] - q[1]) < 1e-12 * extent)
        throw std::domain_error("near-collision configuration");
}

}  // namespace

double potential_U(const Vec3& q, const SystemParams& par) {
    check_ordering(q);
    const double r12 = q[1] - q[0], r23 = q[2] - q[1], r13 = q[2] - q[0];
    return par.alpha12 * std::pow(r12, -par.exp_a) +
           par.alpha23 * std::pow(r23, -par.exp_a) +
           par.alpha13 * std::pow(r13, -par.exp_a);
}

double potential_V(const Vec3& q, const SystemParams& par) {
    check_ordering(q);
    const double r12 = q[1] - q[0], r23 = q[2] - q[1], r13 = q[2] - q[0];
    return par.beta12 * std::pow(r12, -par.exp_b) +
           par.beta23 * std::pow(r23, -par.exp_b) +
           par.beta13 * std::pow(r13, -par.exp_b);
}

double potential_W(const Vec3& q, const SystemParams& par) {
    return -potential_U(q, par) + potential_V(q, par);
}

double hamiltonian_energy(const CartesianState& st, const SystemParams& par) {
    check_ordering(st.q);
    const double kin = 0.5 * (st.p[0] * st.p[0] / par.m1 +
                              st.p[1] * st.p[1] / par.m2 +
                              st.p[2] * st.p[2] / par.m3);
    return kin + potential_W(st.q, par);
}

CartesianState cartesian_field(const CartesianState& st, const SystemParams& par) {
    check_separations(st.q);
    const double a = par.exp_a, b = par.exp_b;
    const double r12 = st.q[1] - st.q[0], r23 = st.q[2] - st.q[1], r13 = st.q[2] - st.q[0];

    // dW/dr for each pair; grad W assembled from the ordered differences.
    const double w12 = a * par.alpha12 * std::pow(r12, -a - 1.0) - b * par.beta12 * std::pow(r12, -b - 1.0);
    const double w23 = a * par.alpha23 * std::pow(r23, -a - 1.0) - b * par.beta23 * std::pow(r23, -b - 1.0);
    const double w13 = a * par.alpha13 * std::pow(r13, -a - 1.0) - b * par.beta13 * std::pow(r13, -b - 1.0);

    CartesianState d;
    d.q = {st.p[0] / par.m1, st.p[1] / par.m2, st.p[2] / par.m3};
    d.p = {w12 + w13, -w12 + w23, -w23 - w13};
    return d;
}

CartesianState project_reduced(const CartesianState& st, const SystemParams& par) {
    const double mt = par.total_mass();
    const double qc = (par.m1 * st.q[0] + par.m2 * st.q[1] + par.m3 * st.q[2]) / mt;
    const double vc = (st.p[0] + st.p[1] + st.p[2]) / mt;
    CartesianState out;
    out.q = {st.q[0] - qc, st.q[1] - qc, st.q[2] - qc};
    out.p = {st.p[0] - par.m1 * vc, st.p[1] - par.m2 * vc, st.p[2] - par.m3 * vc};
    return out;
}

double total_momentum(const CartesianState& st) {
    return st.p[0] + st.p[1] + st.p[2];
}

double mass_weighted_centre(const CartesianState& st, const SystemParams& par) {
    return par.m1 * st.q[0] + par.m2 * st.q[1] + par.m3 * st.q[2];
}

}  // namespace lin3b
