#include "lin3b/charts.hpp"

#include <cmath>
#include <stdexcept>

namespace lin3b {

McGeheeState to_mcgehee(const CartesianState& st0, const MassGeometry& g,
                        const SystemParams& par) {
    const CartesianState st = project_reduced(st0, par);
    const double r2 = mass_norm_sq(g, st.q);
    if (!(r2 > 0)) throw std::domain_error("to_mcgehee: degenerate configuration");
    const double r = std::sqrt(r2);
    const Vec3 svec = {st.q[0] / r, st.q[1] / r, st.q[2] / r};
    if (!(svec[0] < svec[1] && svec[1] < svec[2]))
        throw std::domain_error("to_mcgehee: configuration must be strictly ordered");

    const double rb2 = std::pow(r, 0.5 * par.exp_b);
    const double pr = dot(st.p, svec);  // radial momentum component
    const Vec3 Ms = matvec(g.M, svec);
    const Vec3 uvec = {rb2 * (st.p[0] - pr * Ms[0]),
                       rb2 * (st.p[1] - pr * Ms[1]),
                       rb2 * (st.p[2] - pr * Ms[2])};

    McGeheeState out;
    out.r = r;
    out.v = rb2 * pr;
    out.s = shape_map_inverse(g, svec);
    out.u = dot(matvec(g.Atilde, svec), uvec);
    return out;
}

CartesianState from_mcgehee(const McGeheeState& st, const MassGeometry& g,
                            const SystemParams& par) {
    if (!(st.r > 0)) throw std::domain_error("from_mcgehee: r must be positive");
    const Vec3 svec = shape_map(g, st.s);
    const Vec3 AS = matvec(g.Atilde, svec);
    const Vec3 MAS = matvec(g.M, AS);
    const Vec3 Ms = matvec(g.M, svec);
    const double rmb2 = std::pow(st.r, -0.5 * par.exp_b);
    CartesianState out;
    for (int i = 0; i < 3; ++i) {
        out.q[i] = st.r * svec[i];
        out.p[i] = rmb2 * (st.u * MAS[i] + st.v * Ms[i]);
    }
    return out;
}

ZeroEnergyState zero_energy_from_mcgehee(const McGeheeState& st, const SystemParams& par) {
    if (!(st.r > 0) || !(std::abs(st.s) < 1.0))
        throw std::domain_error("zero_energy_from_mcgehee: need r > 0 and |s| < 1");
    const double rho = 1.0 / st.r;
    const double scale = std::pow(rho, 0.5 * (par.exp_b - par.exp_a));
    const double phi = 1.0 - st.s * st.s;
    ZeroEnergyState out;
    out.R = rho / phi;
    out.y = st.v * scale;
    out.s = st.s;
    out.w = st.u * scale * std::pow(phi, 0.5 * par.exp_a);
    return out;
}

McGeheeState mcgehee_from_zero_energy(const ZeroEnergyState& st, const SystemParams& par) {
    const double phi = 1.0 - st.s * st.s;
    const double rho = phi * st.R;
    if (!(rho > 0))
        throw std::domain_error("mcgehee_from_zero_energy: state has infinite size");
    const double scale = std::pow(rho, -0.5 * (par.exp_b - par.exp_a));
    McGeheeState out;
    out.r = 1.0 / rho;
    out.v = st.y * scale;
    out.s = st.s;
    out.u = st.w * scale * std::pow(phi, -0.5 * par.exp_a);
    return out;
}

PositiveEnergyState positive_from_mcgehee(const McGeheeState& st, const SystemParams& par) {
    if (!(st.r > 0) || !(std::abs(st.s) < 1.0))
        throw std::domain_error("positive_from_mcgehee: need r > 0 and |s| < 1");
    const double rho = 1.0 / st.r;
    const double scale = std::pow(rho, 0.5 * par.exp_b);
    PositiveEnergyState out;
    out.R = rho / (1.0 - st.s * st.s);
    out.v = st.v * scale;
    out.s = st.s;
    out.u = st.u * scale;
    return out;
}

McGeheeState mcgehee_from_positive(const PositiveEnergyState& st, const SystemParams& par) {
    const double rho = (1.0 - st.s * st.s) * st.R;
    if (!(rho > 0))
        throw std::domain_error("mcgehee_from_positive: state has infinite size");
    const double scale = std::pow(rho, -0.5 * par.exp_b);
    McGeheeState out;
    out.r = 1.0 / rho;
    out.v = st.v * scale;
    out.s = st.s;
    out.u = st.u * scale;
    return out;
}

double manifold_gap(const ShapePotentials& pot, double y, double s, double w) {
    const auto re = pot.reg_eval(s);
    const double Fa = std::pow(1.0 - s * s, pot.params().exp_a);
    return re.P - 0.5 * Fa * y * y - 0.5 * w * w;
}

double slave_R(const ShapePotentials& pot, double y, double s, double w, double snap_tol) {
    const double gap = manifold_gap(pot, y, s, w);
    // Integration drift on the infinity manifold can push the gap a little
    // below zero; that still means R = 0.  Gross violations are rejected.
    if (gap < -1000.0 * snap_tol)
        throw std::domain_error("slave_R: state violates the energy relation");
    if (gap <= snap_tol) return 0.0;
    const double Q = pot.regV(s);
    const double ba = pot.params().exp_b - pot.params().exp_a;
    return std::pow(gap / Q, 1.0 / ba);
}

}  // namespace lin3b
