#include "lin3b/potentials.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lin3b {

namespace {

// sin(l x) / x and its x-derivative, series-guarded near x = 0.
double sinc_l(double l, double x) {
    const double z = l * x;
    if (std::abs(z) < 0.1) {
        const double z2 = z * z;
        return l * (1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0)));
    }
    return std::sin(z) / x;
}

double dsinc_l(double l, double x) {
    const double z = l * x;
    if (std::abs(z) < 0.1) {
        const double z2 = z * z;
        return -l * l * l * x / 3.0 * (1.0 - z2 / 10.0 * (1.0 - z2 / 28.0));
    }
    return (z * std::cos(z) - std::sin(z)) / (x * x);
}

void require_interior(double s, const char* who) {
    if (!(std::abs(s) < 1.0))
        throw std::domain_error(std::string(who) + ": s must lie in (-1, 1)");
}

void require_closed(double s, const char* who) {
    if (!(std::abs(s) <= 1.0))
        throw std::domain_error(std::string(who) + ": s must lie in [-1, 1]");
}

}  // namespace

ShapePotentials::Seps ShapePotentials::separations(double s) const {
    const double l = geom_.lambda;
    const double sp = std::sin(l * (1.0 + s)), cp = std::cos(l * (1.0 + s));
    const double sm = std::sin(l * (1.0 - s)), cm = std::cos(l * (1.0 - s));
    Seps r;
    r.d12 = geom_.gap_b * sp / geom_.sin_2l;
    r.dd12 = l * geom_.gap_b * cp / geom_.sin_2l;
    r.d23 = geom_.gap_a * sm / geom_.sin_2l;
    r.dd23 = -l * geom_.gap_a * cm / geom_.sin_2l;
    r.d13 = r.d12 + r.d23;
    r.dd13 = r.dd12 + r.dd23;
    return r;
}

ShapePotentials::ShapePotentials(const MassGeometry& geom, const SystemParams& par)
    : geom_(geom), par_(par), s_crit_(0.0) {
    const double a = par_.exp_a, b = par_.exp_b;
    const double base_m = 2.0 * geom_.sin_2l / (geom_.lambda * geom_.gap_b);
    const double base_p = 2.0 * geom_.sin_2l / (geom_.lambda * geom_.gap_a);
    K_minus_ = par_.alpha12 * std::pow(base_m, a);
    K_plus_ = par_.alpha23 * std::pow(base_p, a);
    L_minus_ = par_.beta12 * std::pow(base_m, b);
    L_plus_ = par_.beta23 * std::pow(base_p, b);
    s_crit_ = find_critical_shape(*this);
}

double ShapePotentials::U(double s) const {
    require_interior(s, "ShapePotentials::U");
    const Seps sp = separations(s);
    const double a = par_.exp_a;
    return par_.alpha12 * std::pow(sp.d12, -a) +
           par_.alpha23 * std::pow(sp.d23, -a) +
           par_.alpha13 * std::pow(sp.d13, -a);
}

double ShapePotentials::dU(double s) const {
    require_interior(s, "ShapePotentials::dU");
    const Seps sp = separations(s);
    const double a = par_.exp_a;
    return -a * (par_.alpha12 * std::pow(sp.d12, -a - 1.0) * sp.dd12 +
                 par_.alpha23 * std::pow(sp.d23, -a - 1.0) * sp.dd23 +
                 par_.alpha13 * std::pow(sp.d13, -a - 1.0) * sp.dd13);
}

double ShapePotentials::d2U(double s) const {
    require_interior(s, "ShapePotentials::d2U");
    const Seps sp = separations(s);
    const double a = par_.exp_a;
    const double l2 = geom_.lambda * geom_.lambda;
    // d'' = -lambda^2 d for every pair separation.
    auto term = [&](double alpha, double d, double dd) {
        return a * alpha * std::pow(d, -a - 2.0) * ((a + 1.0) * dd * dd + l2 * d * d);
    };
    return term(par_.alpha12, sp.d12, sp.dd12) +
           term(par_.alpha23, sp.d23, sp.dd23) +
           term(par_.alpha13, sp.d13, sp.dd13);
}

double ShapePotentials::V(double s) const {
    require_interior(s, "ShapePotentials::V");
    const Seps sp = separations(s);
    const double b = par_.exp_b;
    return par_.beta12 * std::pow(sp.d12, -b) +
           par_.beta23 * std::pow(sp.d23, -b) +
           par_.beta13 * std::pow(sp.d13, -b);
}

double ShapePotentials::dV(double s) const {
    require_interior(s, "ShapePotentials::dV");
    const Seps sp = separations(s);
    const double b = par_.exp_b;
    return -b * (par_.beta12 * std::pow(sp.d12, -b - 1.0) * sp.dd12 +
                 par_.beta23 * std::pow(sp.d23, -b - 1.0) * sp.dd23 +
                 par_.beta13 * std::pow(sp.d13, -b - 1.0) * sp.dd13);
}

ShapePotentials::InteriorEval ShapePotentials::interior_eval(double s) const {
    require_interior(s, "ShapePotentials::interior_eval");
    const Seps sp = separations(s);
    const double a = par_.exp_a, b = par_.exp_b;
    InteriorEval e{0, 0, 0, 0};
    const double al[3] = {par_.alpha12, par_.alpha23, par_.alpha13};
    const double be[3] = {par_.beta12, par_.beta23, par_.beta13};
    const double d[3] = {sp.d12, sp.d23, sp.d13};
    const double dd[3] = {sp.dd12, sp.dd23, sp.dd13};
    for (int i = 0; i < 3; ++i) {
        const double pa = std::pow(d[i], -a - 1.0);
        const double pb = std::pow(d[i], -b - 1.0);
        e.U += al[i] * pa * d[i];
        e.dU += -a * al[i] * pa * dd[i];
        e.V += be[i] * pb * d[i];
        e.dV += -b * be[i] * pb * dd[i];
    }
    return e;
}

// g_p(s) = (1 - s^2) / d_p(s), extended smoothly to the closed interval.
namespace {
struct GVal { double g, dg; };
}

ShapePotentials::RegEval ShapePotentials::reg_eval(double s) const {
    require_closed(s, "ShapePotentials::reg_eval");
    const double l = geom_.lambda;
    const double cb = geom_.sin_2l / geom_.gap_b;
    const double ca = geom_.sin_2l / geom_.gap_a;

    const double hp = sinc_l(l, 1.0 + s), dhp = dsinc_l(l, 1.0 + s);
    const double hm = sinc_l(l, 1.0 - s), dhm = dsinc_l(l, 1.0 - s);

    GVal g12, g23, g13;
    g12.g = (1.0 - s) * cb / hp;
    g12.dg = -cb / hp - (1.0 - s) * cb * dhp / (hp * hp);
    g23.g = (1.0 + s) * ca / hm;
    g23.dg = ca / hm + (1.0 + s) * ca * dhm / (hm * hm);

    const double d13 = geom_.gap_b * hp * (1.0 + s) / geom_.sin_2l +
                       geom_.gap_a * hm * (1.0 - s) / geom_.sin_2l;
    const double dd13 = l * (geom_.gap_b * std::cos(l * (1.0 + s)) -
                             geom_.gap_a * std::cos(l * (1.0 - s))) / geom_.sin_2l;
    g13.g = (1.0 - s * s) / d13;
    g13.dg = (-2.0 * s - g13.g * dd13) / d13;

    const double a = par_.exp_a, b = par_.exp_b;
    RegEval r{0, 0, 0, 0};
    const double al[3] = {par_.alpha12, par_.alpha23, par_.alpha13};
    const double be[3] = {par_.beta12, par_.beta23, par_.beta13};
    const GVal* gs[3] = {&g12, &g23, &g13};
    for (int i = 0; i < 3; ++i) {
        const double ga1 = std::pow(gs[i]->g, a - 1.0);
        const double gb1 = std::pow(gs[i]->g, b - 1.0);
        r.P += al[i] * ga1 * gs[i]->g;
        r.dP += a * al[i] * ga1 * gs[i]->dg;
        r.Q += be[i] * gb1 * gs[i]->g;
        r.dQ += b * be[i] * gb1 * gs[i]->dg;
    }
    return r;
}

double ShapePotentials::regU(double s) const { return reg_eval(s).P; }
double ShapePotentials::dregU(double s) const { return reg_eval(s).dP; }
double ShapePotentials::regV(double s) const { return reg_eval(s).Q; }
double ShapePotentials::dregV(double s) const { return reg_eval(s).dQ; }

double find_critical_shape(const ShapePotentials& pot) {
    const double delta = 1e-6;
    const double lo = -1.0 + delta, hi = 1.0 - delta;

    // Scan for sign changes of U'.  U is a sum of strictly convex terms, so
    // exactly one change must show up; anything else is a numerical defect.
    const int n = 512;
    int changes = 0;
    double bl = lo, bh = hi;
    double prev = pot.dU(lo), prev_x = lo;
    for (int i = 1; i <= n; ++i) {
        const double x = lo + (hi - lo) * i / n;
        const double cur = pot.dU(x);
        if (cur == 0.0) {
            bl = bh = x;
            ++changes;
        } else if (prev < 0.0 && cur > 0.0) {
            bl = prev_x;
            bh = x;
            ++changes;
        } else if (prev > 0.0 && cur < 0.0) {
            ++changes;
        }
        prev = cur;
        prev_x = x;
    }
    if (changes == 0)
        throw analysis_error("find_critical_shape: no sign change of U' bracketed");
    if (changes > 1)
        throw analysis_error("find_critical_shape: U' sign change is not unique");

    double a = bl, b = bh;
    if (a != b) {
        double fa = pot.dU(a);
        for (int it = 0; it < 200 && (b - a) > 1e-15; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = pot.dU(m);
            if (fm == 0.0) { a = b = m; break; }
            if ((fa < 0.0) == (fm < 0.0)) { a = m; fa = fm; }
            else b = m;
        }
    }
    double s = 0.5 * (a + b);
    for (int it = 0; it < 4; ++it) {
        const double f = pot.dU(s), fp = pot.d2U(s);
        const double step = f / fp;
        const double s_next = s - step;
        if (!(std::abs(s_next) < 1.0)) break;
        s = s_next;
        if (std::abs(step) < 1e-16) break;
    }
    return s;
}

}  // namespace lin3b
