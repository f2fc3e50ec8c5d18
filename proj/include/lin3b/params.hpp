#pragma once

#include <cmath>
#include <stdexcept>

namespace lin3b {

// Physical parameters of a collinear three-mass system with pairwise
// short-range-repulsive / long-range-attractive interaction
//   W_pair(r) = -alpha / r^a + beta / r^b,   4 < a < b - 1.
struct SystemParams {
    double m1, m2, m3;
    double alpha12, alpha23, alpha13;
    double beta12, beta23, beta13;
    double exp_a, exp_b;
    double h;  // total energy level

    SystemParams(double m1_, double m2_, double m3_,
                 double a12, double a23, double a13,
                 double b12, double b23, double b13,
                 double ea, double eb, double h_)
        : m1(m1_), m2(m2_), m3(m3_),
          alpha12(a12), alpha23(a23), alpha13(a13),
          beta12(b12), beta23(b23), beta13(b13),
          exp_a(ea), exp_b(eb), h(h_) {
        if (!(m1 > 0 && m2 > 0 && m3 > 0))
            throw std::invalid_argument("SystemParams: masses must be positive");
        if (!(alpha12 > 0 && alpha23 > 0 && alpha13 > 0))
            throw std::invalid_argument("SystemParams: attractive couplings must be positive");
        if (!(beta12 > 0 && beta23 > 0 && beta13 > 0))
            throw std::invalid_argument("SystemParams: repulsive couplings must be positive");
        if (!(4.0 < exp_a && exp_a < exp_b - 1.0))
            throw std::invalid_argument("SystemParams: exponents must satisfy 4 < a < b - 1");
    }

    // Outer masses of the same kind.  Exact comparison on purpose: symmetric
    // inputs given as identical literals keep the s -> -s symmetry exact in
    // floating point, which the invariant-line arithmetic relies on.
    bool mass_symmetric() const {
        return m1 == m3 && alpha12 == alpha23 && beta12 == beta23;
    }

    double total_mass() const { return m1 + m2 + m3; }

    SystemParams with_energy(double h_) const {
        SystemParams p = *this;
        p.h = h_;
        return p;
    }

    // Couplings from the molecular (epsilon, r0) convention:
    //   alpha = 4 eps r0^a,  beta = alpha r0^(b-a).
    static SystemParams lennard_jones(double m1, double m2, double m3,
                                      double eps12, double r12,
                                      double eps23, double r23,
                                      double eps13, double r13,
                                      double a, double b, double h) {
        auto al = [&](double e, double r) { return 4.0 * e * std::pow(r, a); };
        auto be = [&](double e, double r) { return 4.0 * e * std::pow(r, b); };
        return SystemParams(m1, m2, m3,
                            al(eps12, r12), al(eps23, r23), al(eps13, r13),
                            be(eps12, r12), be(eps23, r23), be(eps13, r13),
                            a, b, h);
    }
};

}  // namespace lin3b
