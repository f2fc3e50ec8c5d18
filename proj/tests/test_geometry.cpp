#include <doctest.h>

#include <cmath>
#include <random>

#include "lin3b/geometry.hpp"

using namespace lin3b;

namespace {

std::mt19937_64 rng(42);

double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

Vec3 random_reduced_config(const MassGeometry& g) {
    // random vector in the zero mass-weighted-sum plane
    Vec3 q{uniform(-2, 2), uniform(-2, 2), 0};
    q[2] = -(g.masses[0] * q[0] + g.masses[1] * q[1]) / g.masses[2];
    return q;
}

}  // namespace

TEST_CASE("equal masses: endpoint configurations and lambda = pi/6") {
    const auto g = build_geometry(1, 1, 1);
    const double s6 = 1.0 / std::sqrt(6.0);
    CHECK(g.a_end[0] == doctest::Approx(-s6).epsilon(1e-14));
    CHECK(g.a_end[1] == doctest::Approx(-s6).epsilon(1e-14));
    CHECK(g.a_end[2] == doctest::Approx(2.0 * s6).epsilon(1e-14));
    CHECK(g.b_end[0] == doctest::Approx(-std::sqrt(2.0 / 3.0)).epsilon(1e-14));
    CHECK(g.b_end[1] == doctest::Approx(s6).epsilon(1e-14));
    CHECK(g.b_end[2] == doctest::Approx(s6).epsilon(1e-14));
    CHECK(std::abs(g.cos_2l - 0.5) < 1e-12);
    CHECK(std::abs(g.lambda - M_PI / 6.0) < 1e-12);
}

TEST_CASE("matrix identities on random mass triples") {
    for (int trial = 0; trial < 100; ++trial) {
        const auto g = build_geometry(uniform(0.1, 5), uniform(0.1, 5), uniform(0.1, 5));

        // Atilde^T M Atilde = M
        const Mat3 AtMA = matmul(transpose(g.Atilde), matmul(g.M, g.Atilde));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(std::abs(AtMA[i][j] - g.M[i][j]) < 1e-12);

        // Atilde^2 q = -q and q^T M Atilde q = 0 on the reduced plane
        for (int k = 0; k < 5; ++k) {
            const Vec3 q = random_reduced_config(g);
            const Vec3 Aq = matvec(g.Atilde, q);
            const Vec3 AAq = matvec(g.Atilde, Aq);
            for (int i = 0; i < 3; ++i) CHECK(std::abs(AAq[i] + q[i]) < 1e-12);
            CHECK(std::abs(dot(q, matvec(g.M, Aq))) < 1e-12);
            // Atilde q stays in the reduced plane
            CHECK(std::abs(g.masses[0] * Aq[0] + g.masses[1] * Aq[1] + g.masses[2] * Aq[2]) < 1e-12);
        }

        // unit endpoints and the mass angle
        CHECK(std::abs(mass_norm_sq(g, g.a_end) - 1.0) < 1e-13);
        CHECK(std::abs(mass_norm_sq(g, g.b_end) - 1.0) < 1e-13);
        CHECK(g.cos_2l > 0.0);
        CHECK(g.cos_2l < 1.0);
        CHECK(g.lambda > 0.0);
        CHECK(g.lambda < M_PI / 4.0);
    }
}

TEST_CASE("shape map endpoints, unit norm, and derivative relation") {
    const auto g = build_geometry(0.7, 2.3, 1.9);

    SUBCASE("endpoints: S(-1) is the 1-2 collision, S(1) the 2-3 collision") {
        const Vec3 Sm = shape_map(g, -1.0);
        const Vec3 Sp = shape_map(g, 1.0);
        for (int i = 0; i < 3; ++i) {
            CHECK(Sm[i] == doctest::Approx(g.a_end[i]).epsilon(1e-13));
            CHECK(Sp[i] == doctest::Approx(g.b_end[i]).epsilon(1e-13));
        }
    }

    SUBCASE("unit mass norm across the interval") {
        for (double s = -1.0; s <= 1.0; s += 0.125)
            CHECK(std::abs(mass_norm_sq(g, shape_map(g, s)) - 1.0) < 1e-13);
    }

    SUBCASE("S' = lambda Atilde S vs central differences") {
        const double h = 1e-6;
        for (int k = 0; k < 10; ++k) {
            const double s = -0.9 + 1.8 * k / 9.0;
            const Vec3 d = shape_map_deriv(g, s);
            const Vec3 Sp = shape_map(g, s + h), Sm = shape_map(g, s - h);
            for (int i = 0; i < 3; ++i) {
                const double fd = (Sp[i] - Sm[i]) / (2 * h);
                CHECK(std::abs(d[i] - fd) < 1e-6 * std::max(1.0, std::abs(fd)));
            }
        }
    }

    SUBCASE("strictly ordered interior configurations") {
        for (double s = -0.99; s < 1.0; s += 0.33) {
            const Vec3 S = shape_map(g, s);
            CHECK(S[0] < S[1]);
            CHECK(S[1] < S[2]);
        }
    }

    SUBCASE("inverse chart round trip") {
        for (double s = -0.95; s <= 0.95; s += 0.19)
            CHECK(std::abs(shape_map_inverse(g, shape_map(g, s)) - s) < 1e-13);
    }

    SUBCASE("domain error outside the interval") {
        CHECK_THROWS_AS(shape_map(g, 1.0 + 1e-9), std::domain_error);
        CHECK_THROWS_AS(shape_map(g, -1.2), std::domain_error);
    }
}

TEST_CASE("build_geometry rejects nonpositive masses") {
    CHECK_THROWS_AS(build_geometry(1, -1, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(0, 1, 1), std::invalid_argument);
}
