#pragma once

#include "lin3b/geometry.hpp"
#include "lin3b/params.hpp"

namespace lin3b {

// One-variable attractive/repulsive potentials on the shape interval.
//
// The shape-space separations are
//   d12(s) = gap_b sin(lambda(1+s)) / sin(2 lambda)
//   d23(s) = gap_a sin(lambda(1-s)) / sin(2 lambda)
//   d13(s) = d12(s) + d23(s)
// and U(s) = sum alpha_p d_p^-a, V(s) = sum beta_p d_p^-b.  Both blow up at
// s = +-1; the regularized forms (1-s^2)^a U and (1-s^2)^b V extend
// continuously to the closed interval with endpoint values K-+ and L-+.
// The 0/0 factors sin(lambda(1+-s))/(1+-s) are evaluated through a guarded
// sinc so the closed-interval forms stay accurate at the endpoints.
class ShapePotentials {
public:
    ShapePotentials(const MassGeometry& geom, const SystemParams& par);

    const MassGeometry& geometry() const { return geom_; }
    const SystemParams& params() const { return par_; }

    // Interior potentials; |s| >= 1 is a domain error.
    double U(double s) const;
    double dU(double s) const;
    double d2U(double s) const;
    double V(double s) const;
    double dV(double s) const;

    // Regularized potentials on the closed interval [-1, 1].
    double regU(double s) const;   // (1-s^2)^a U(s)
    double dregU(double s) const;
    double regV(double s) const;   // (1-s^2)^b V(s)
    double dregV(double s) const;

    struct RegEval { double P, dP, Q, dQ; };
    RegEval reg_eval(double s) const;

    struct InteriorEval { double U, dU, V, dV; };
    InteriorEval interior_eval(double s) const;

    double K_minus() const { return K_minus_; }
    double K_plus() const { return K_plus_; }
    double L_minus() const { return L_minus_; }
    double L_plus() const { return L_plus_; }

    // Critical shape of U, cached at construction.
    double critical_shape() const { return s_crit_; }

private:
    struct Seps {
        double d12, dd12, d23, dd23, d13, dd13;
    };
    Seps separations(double s) const;

    MassGeometry geom_;
    SystemParams par_;
    double K_minus_, K_plus_, L_minus_, L_plus_;
    double s_crit_;
};

// Unique zero of U'(s) in (-1, 1), found by a grid scan (which also checks
// uniqueness of the sign change), bisection and a Newton polish.
double find_critical_shape(const ShapePotentials& pot);

}  // namespace lin3b
