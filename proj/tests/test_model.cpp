#include <doctest.h>

#include <cmath>
#include <random>

#include "lin3b/integrate.hpp"
#include "lin3b/model.hpp"

using namespace lin3b;

namespace {

SystemParams lj_params(double h = 0.0) {
    // Figure-2 system: mass-symmetric with a heavier middle body.
    return SystemParams(1, 2, 1, 1, 1, 2, 0.5, 0.5, 1, 6, 12, h);
}

std::mt19937_64 rng(7);
double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

CartesianState random_state(const SystemParams& par) {
    CartesianState st;
    st.q = {uniform(-3, -1), uniform(-0.5, 0.5), uniform(1, 3)};
    st.p = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
    return project_reduced(st, par);
}

}  // namespace

TEST_CASE("pair potential values and stationarity") {
    SUBCASE("powers of one") {
        CHECK(pair_potential(1.0, 1.0, 0.5, 6, 12) == doctest::Approx(-0.5).epsilon(1e-15));
    }
    SUBCASE("stationary at the two-term balance point") {
        const double alpha = 1.3, beta = 0.7, a = 6, b = 12;
        const double rstar = pair_equilibrium_distance(alpha, beta, a, b);
        CHECK(std::abs(pair_potential_deriv(rstar, alpha, beta, a, b)) < 1e-12);
        // local minimum: increasing on the right, decreasing on the left
        CHECK(pair_potential(rstar * 1.01, alpha, beta, a, b) >
              pair_potential(rstar, alpha, beta, a, b));
        CHECK(pair_potential(rstar * 0.99, alpha, beta, a, b) >
              pair_potential(rstar, alpha, beta, a, b));
    }
    SUBCASE("molecular form vanishes at r0") {
        const double eps = 0.8, r0 = 1.7, a = 6, b = 12;
        const double alpha = 4 * eps * std::pow(r0, a), beta = 4 * eps * std::pow(r0, b);
        CHECK(std::abs(pair_potential(r0, alpha, beta, a, b)) < 1e-12);
        // and the well depth at the minimizer is -eps
        const double rstar = pair_equilibrium_distance(alpha, beta, a, b);
        CHECK(pair_potential(rstar, alpha, beta, a, b) == doctest::Approx(-eps).epsilon(1e-12));
    }
    SUBCASE("nonpositive separation rejected") {
        CHECK_THROWS_AS(pair_potential(0.0, 1, 1, 6, 12), std::domain_error);
        CHECK_THROWS_AS(pair_potential(-1.0, 1, 1, 6, 12), std::domain_error);
    }
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SystemParams(1, 1, 1, 1, 1, 1, 1, 1, 1, 4.0, 12, 0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1, 1, 1, 1, 1, 1, 1, 1, 1, 6, 7.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(SystemParams(1, 1, 1, -1, 1, 1, 1, 1, 1, 6, 12, 0), std::invalid_argument);
    CHECK(lj_params().mass_symmetric());
    CHECK_FALSE(SystemParams(1, 2, 1.5, 1, 1, 2, 0.5, 0.5, 1, 6, 12, 0).mass_symmetric());
}

TEST_CASE("hamiltonian at rest equals the summed pair potentials") {
    const auto par = lj_params();
    // place the two inner pairs at their isolated equilibrium separations
    const double r12 = pair_equilibrium_distance(par.alpha12, par.beta12, par.exp_a, par.exp_b);
    const double r23 = pair_equilibrium_distance(par.alpha23, par.beta23, par.exp_a, par.exp_b);
    CartesianState st;
    st.q = {0.0, r12, r12 + r23};
    st.p = {0, 0, 0};
    // independent evaluation, pair by pair
    const double expected =
        pair_potential(r12, par.alpha12, par.beta12, par.exp_a, par.exp_b) +
        pair_potential(r23, par.alpha23, par.beta23, par.exp_a, par.exp_b) +
        pair_potential(r12 + r23, par.alpha13, par.beta13, par.exp_a, par.exp_b);
    CHECK(hamiltonian_energy(st, par) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("potential decays to zero under dilation") {
    const auto par = lj_params();
    CartesianState st;
    st.q = {-1, 0, 1};
    st.p = {0, 0, 0};
    double prev = std::abs(hamiltonian_energy(st, par));
    for (double c : {10.0, 100.0, 1000.0}) {
        CartesianState big;
        big.q = {-c, 0, c};
        big.p = {0, 0, 0};
        const double e = hamiltonian_energy(big, par);
        CHECK(e < 0);  // attraction dominates at long range
        CHECK(std::abs(e) < prev);
        prev = std::abs(e);
    }
    CHECK(prev < 1e-10);
}

TEST_CASE("mass-symmetric centered state: energy matches the reduced form") {
    const auto par = lj_params();
    CartesianState st;
    st.q = {-1.3, 0.0, 1.3};
    st.p = {0.4, 0.0, -0.4};
    // (1/2m1)(p1^2+p3^2) + pair terms with equal outer couplings
    const double expected = 0.5 / par.m1 * (0.16 + 0.16) +
                            2.0 * pair_potential(1.3, par.alpha12, par.beta12, par.exp_a, par.exp_b) +
                            pair_potential(2.6, par.alpha13, par.beta13, par.exp_a, par.exp_b);
    CHECK(hamiltonian_energy(st, par) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("cartesian field: Hamiltonian directional derivative vanishes") {
    const auto par = lj_params();
    int failures = 0;
    for (int k = 0; k < 10000; ++k) {
        const auto st = random_state(par);
        const auto d = cartesian_field(st, par);
        // grad H assembled independently from the single-pair derivative
        const double w12 = pair_potential_deriv(st.q[1] - st.q[0], par.alpha12, par.beta12,
                                                par.exp_a, par.exp_b);
        const double w23 = pair_potential_deriv(st.q[2] - st.q[1], par.alpha23, par.beta23,
                                                par.exp_a, par.exp_b);
        const double w13 = pair_potential_deriv(st.q[2] - st.q[0], par.alpha13, par.beta13,
                                                par.exp_a, par.exp_b);
        const Vec3 gq{-w12 - w13, w12 - w23, w23 + w13};
        const Vec3 gp{st.p[0] / par.m1, st.p[1] / par.m2, st.p[2] / par.m3};
        double dh = 0;
        for (int i = 0; i < 3; ++i) dh += gq[i] * d.q[i] + gp[i] * d.p[i];
        if (!(std::abs(dh) < 1e-10 * std::max(1.0, std::abs(hamiltonian_energy(st, par)))))
            ++failures;
    }
    CHECK(failures == 0);
}

TEST_CASE("cartesian field: exact energy conservation along integration") {
    const auto par = lj_params();
    CartesianState st;
    st.q = {-1.2, 0.1, 1.1};
    st.p = {0.3, -0.1, -0.2};
    st = project_reduced(st, par);
    const double h0 = hamiltonian_energy(st, par);

    auto rhs = [&par](const std::array<double, 6>& x) {
        CartesianState s{{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
        const auto d = cartesian_field(s, par);
        return std::array<double, 6>{d.q[0], d.q[1], d.q[2], d.p[0], d.p[1], d.p[2]};
    };
    IntegratorConfig cfg;
    cfg.max_time = 10.0;
    auto traj = integrate<6>(rhs, {st.q[0], st.q[1], st.q[2], st.p[0], st.p[1], st.p[2]}, 0.0, 10.0,
                             cfg, {}, nullptr, nullptr, Chart::Cartesian, Clock::PhysicalT);
    REQUIRE(traj.terminal);
    for (const auto& smp : traj.samples) {
        CartesianState s{{smp.x[0], smp.x[1], smp.x[2]}, {smp.x[3], smp.x[4], smp.x[5]}};
        CHECK(std::abs(hamiltonian_energy(s, par) - h0) < 1e-9);
        // ordering preserved and the potential stays below the energy level
        CHECK(s.q[0] < s.q[1]);
        CHECK(s.q[1] < s.q[2]);
        CHECK(potential_W(s.q, par) <= h0 + 1e-9);
    }
}

TEST_CASE("mass-symmetric centered subspace is invariant") {
    const auto par = lj_params();
    CartesianState st;
    st.q = {-1.4, 0.0, 1.4};
    st.p = {0.5, 0.0, -0.5};

    auto rhs = [&par](const std::array<double, 6>& x) {
        CartesianState s{{x[0], x[1], x[2]}, {x[3], x[4], x[5]}};
        const auto d = cartesian_field(s, par);
        return std::array<double, 6>{d.q[0], d.q[1], d.q[2], d.p[0], d.p[1], d.p[2]};
    };
    IntegratorConfig cfg;
    auto traj = integrate<6>(rhs, {st.q[0], st.q[1], st.q[2], st.p[0], st.p[1], st.p[2]}, 0.0, 5.0,
                             cfg, {}, nullptr, nullptr, Chart::Cartesian, Clock::PhysicalT);
    for (const auto& smp : traj.samples) {
        CHECK(std::abs(smp.x[1]) < 1e-10);              // q2
        CHECK(std::abs(smp.x[4]) < 1e-10);              // p2
        CHECK(std::abs(smp.x[0] + smp.x[2]) < 1e-10);   // q1 + q3
        CHECK(std::abs(smp.x[3] + smp.x[5]) < 1e-10);   // p1 + p3
    }
}

TEST_CASE("project_reduced: idempotent, Galilean invariant, exact moments") {
    const auto par = lj_params();
    for (int k = 0; k < 50; ++k) {
        CartesianState raw;
        raw.q = {uniform(-3, -1), uniform(-0.5, 0.5), uniform(1, 3)};
        raw.p = {uniform(-1, 1), uniform(-1, 1), uniform(-1, 1)};
        const auto red = project_reduced(raw, par);
        CHECK(std::abs(mass_weighted_centre(red, par)) < 1e-14 * 10);
        CHECK(std::abs(total_momentum(red)) < 1e-14 * 10);

        const auto twice = project_reduced(red, par);
        for (int i = 0; i < 3; ++i) {
            CHECK(twice.q[i] == doctest::Approx(red.q[i]).epsilon(1e-15));
            CHECK(twice.p[i] == doctest::Approx(red.p[i]).epsilon(1e-15));
        }

        // translate and boost
        const double c = uniform(-5, 5), wv = uniform(-2, 2);
        CartesianState moved = raw;
        for (int i = 0; i < 3; ++i) moved.q[i] += c;
        moved.p[0] += par.m1 * wv;
        moved.p[1] += par.m2 * wv;
        moved.p[2] += par.m3 * wv;
        const auto red2 = project_reduced(moved, par);
        for (int i = 0; i < 3; ++i) {
            CHECK(red2.q[i] == doctest::Approx(red.q[i]).epsilon(1e-12));
            CHECK(red2.p[i] == doctest::Approx(red.p[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("collision guard") {
    const auto par = lj_params();
    CartesianState st;
    st.q = {0.0, 1e-14, 1.0};
    st.p = {0, 0, 0};
    CHECK_THROWS_AS(cartesian_field(st, par), std::domain_error);
    CartesianState bad;
    bad.q = {1.0, 0.0, 2.0};
    bad.p = {0, 0, 0};
    CHECK_THROWS_AS(hamiltonian_energy(bad, par), std::domain_error);
}
