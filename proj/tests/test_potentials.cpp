#include <doctest.h>

#include <cmath>
#include <random>

#include "lin3b/model.hpp"
#include "lin3b/potentials.hpp"

using namespace lin3b;

namespace {

std::mt19937_64 rng(11);
double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

SystemParams fig2_params(double h = 0.0) {
    return SystemParams(1, 2, 1, 1, 1, 2, 0.5, 0.5, 1, 6, 12, h);
}

ShapePotentials make_pot(const SystemParams& par) {
    return ShapePotentials(build_geometry(par.m1, par.m2, par.m3), par);
}

SystemParams random_params() {
    return SystemParams(uniform(0.5, 3), uniform(0.5, 3), uniform(0.5, 3),
                        uniform(0.5, 2), uniform(0.5, 2), uniform(0.5, 2),
                        uniform(0.2, 1), uniform(0.2, 1), uniform(0.2, 1),
                        6, 12, 0);
}

}  // namespace

TEST_CASE("closed forms match the composition with the shape map") {
    for (int trial = 0; trial < 4; ++trial) {
        const auto par = trial == 0 ? fig2_params() : random_params();
        const auto geom = build_geometry(par.m1, par.m2, par.m3);
        const ShapePotentials pot(geom, par);
        for (int k = 0; k < 100; ++k) {
            const double s = uniform(-0.999, 0.999);
            const Vec3 S = shape_map(geom, s);
            const double Uc = potential_U(S, par);
            const double Vc = potential_V(S, par);
            CHECK(std::abs(pot.U(s) - Uc) < 1e-12 * std::abs(Uc));
            CHECK(std::abs(pot.V(s) - Vc) < 1e-12 * std::abs(Vc));
        }
    }
}

TEST_CASE("figure-2 system: value at the symmetric shape") {
    const auto pot = make_pot(fig2_params());
    // separations at s = 0 are 1/sqrt2, 1/sqrt2, sqrt2 for these masses
    CHECK(pot.U(0.0) == doctest::Approx(16.25).epsilon(1e-13));
    CHECK(pot.V(0.0) == doctest::Approx(64.015625).epsilon(1e-13));
}

TEST_CASE("mass-symmetric potentials are even") {
    const auto pot = make_pot(fig2_params());
    for (double s = 0.05; s < 1.0; s += 0.1) {
        CHECK(pot.U(s) == doctest::Approx(pot.U(-s)).epsilon(1e-14));
        CHECK(pot.V(s) == doctest::Approx(pot.V(-s)).epsilon(1e-14));
    }
    CHECK(pot.dU(0.0) == 0.0);
    CHECK(pot.dV(0.0) == 0.0);
}

TEST_CASE("boundary blowup with degree -a") {
    const auto pot = make_pot(fig2_params());
    const double a = 6;
    // U(s) (1-s)^a should approach a positive constant as s -> 1
    double prev = 0;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const double val = pot.U(1.0 - eps) * std::pow(eps, a);
        CHECK(val > 0);
        if (prev > 0) CHECK(std::abs(val / prev - 1.0) < 0.2);
        prev = val;
    }
    CHECK_THROWS_AS(pot.U(1.0), std::domain_error);
    CHECK_THROWS_AS(pot.V(-1.0), std::domain_error);
}

TEST_CASE("analytic derivatives against central differences") {
    for (int trial = 0; trial < 2; ++trial) {
        const auto pot = make_pot(trial == 0 ? fig2_params() : random_params());
        const double h = 1e-5;
        for (int k = 0; k < 50; ++k) {
            const double s = uniform(-0.93, 0.93);
            const double fd_u = (pot.U(s + h) - pot.U(s - h)) / (2 * h);
            const double fd_v = (pot.V(s + h) - pot.V(s - h)) / (2 * h);
            CHECK(std::abs(pot.dU(s) - fd_u) < 1e-6 * std::max(1.0, std::abs(fd_u)));
            CHECK(std::abs(pot.dV(s) - fd_v) < 1e-6 * std::max(1.0, std::abs(fd_v)));
            // fourth-order stencil for the second derivative
            const double fd2 = (-pot.U(s + 2 * h) + 16 * pot.U(s + h) - 30 * pot.U(s) +
                                16 * pot.U(s - h) - pot.U(s - 2 * h)) /
                               (12 * h * h);
            CHECK(std::abs(pot.d2U(s) - fd2) < 1e-6 * std::max(1.0, std::abs(fd2)));
        }
    }
}

TEST_CASE("regularized potentials: interior identity and endpoint limits") {
    for (int trial = 0; trial < 3; ++trial) {
        const auto par = trial == 0 ? fig2_params() : random_params();
        const auto pot = make_pot(par);
        const double a = par.exp_a, b = par.exp_b;

        SUBCASE("interior: equals (1-s^2)^a U to roundoff") {
            for (int k = 0; k < 40; ++k) {
                const double s = uniform(-0.999, 0.999);
                const double Fa = std::pow(1 - s * s, a), Fb = std::pow(1 - s * s, b);
                CHECK(std::abs(pot.regU(s) - Fa * pot.U(s)) < 1e-12 * std::abs(Fa * pot.U(s)));
                CHECK(std::abs(pot.regV(s) - Fb * pot.V(s)) < 1e-12 * std::abs(Fb * pot.V(s)));
            }
        }

        SUBCASE("endpoint values match the closed-form limits") {
            CHECK(pot.regU(-1.0) == doctest::Approx(pot.K_minus()).epsilon(1e-12));
            CHECK(pot.regU(1.0) == doctest::Approx(pot.K_plus()).epsilon(1e-12));
            CHECK(pot.regV(-1.0) == doctest::Approx(pot.L_minus()).epsilon(1e-12));
            CHECK(pot.regV(1.0) == doctest::Approx(pot.L_plus()).epsilon(1e-12));
            CHECK(pot.K_minus() > 0);
            CHECK(pot.K_plus() > 0);
            CHECK(pot.L_minus() > 0);
            CHECK(pot.L_plus() > 0);
        }

        SUBCASE("continuity approaching the endpoints") {
            for (double eps : {1e-4, 1e-6, 1e-8}) {
                CHECK(std::abs(pot.regU(1.0 - eps) - pot.K_plus()) <
                      10.0 * eps * std::abs(pot.K_plus()) + 1e-10);
                CHECK(std::abs(pot.regU(-1.0 + eps) - pot.K_minus()) <
                      10.0 * eps * std::abs(pot.K_minus()) + 1e-10);
            }
        }

        SUBCASE("one-sided endpoint slopes") {
            CHECK(pot.dregU(-1.0) == doctest::Approx(-0.5 * a * pot.K_minus()).epsilon(1e-10));
            CHECK(pot.dregU(1.0) == doctest::Approx(0.5 * a * pot.K_plus()).epsilon(1e-10));
            CHECK(pot.dregV(-1.0) == doctest::Approx(-0.5 * b * pot.L_minus()).epsilon(1e-10));
            CHECK(pot.dregV(1.0) == doctest::Approx(0.5 * b * pot.L_plus()).epsilon(1e-10));
        }

        SUBCASE("regularized derivative against central differences") {
            const double h = 1e-6;
            for (int k = 0; k < 30; ++k) {
                const double s = uniform(-0.999, 0.999);
                const double fd = (pot.regU(s + h) - pot.regU(s - h)) / (2 * h);
                CHECK(std::abs(pot.dregU(s) - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
                const double fdv = (pot.regV(s + h) - pot.regV(s - h)) / (2 * h);
                CHECK(std::abs(pot.dregV(s) - fdv) < 1e-6 * std::max(1.0, std::abs(fdv)));
            }
        }
    }
}

TEST_CASE("critical shape") {
    SUBCASE("mass-symmetric: s_e = 0") {
        const auto pot = make_pot(fig2_params());
        CHECK(std::abs(pot.critical_shape()) < 1e-12);
        CHECK(pot.d2U(pot.critical_shape()) > 0);
    }
    SUBCASE("asymmetric masses: zero of U' validated by a grid-scan oracle") {
        const SystemParams par(1, 1, 2, 1, 1, 1, 0.5, 0.5, 0.5, 6, 12, 0);
        const auto pot = make_pot(par);
        const double se = pot.critical_shape();
        CHECK(std::abs(pot.dU(se)) < 1e-12 * std::abs(pot.d2U(se)));
        // oracle: densely scan U and locate its minimum bracket
        double best = -2, bestval = 1e300;
        for (int i = 1; i < 4000; ++i) {
            const double s = -1.0 + 2.0 * i / 4000.0;
            const double u = pot.U(s);
            if (u < bestval) { bestval = u; best = s; }
        }
        CHECK(std::abs(se - best) < 1e-3);
        CHECK(pot.d2U(se) > 0);
    }
    SUBCASE("uniqueness holds for random parameter draws") {
        for (int t = 0; t < 10; ++t) {
            const auto pot = make_pot(random_params());
            CHECK_NOTHROW(find_critical_shape(pot));
        }
    }
}
