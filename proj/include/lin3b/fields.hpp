#pragma once

#include <array>
#include <optional>

#include "lin3b/charts.hpp"
#include "lin3b/potentials.hpp"

namespace lin3b {

// Each flow exposes the vector field, its paired first integral and the
// integral's gradient.  The regularized fields are written in terms of the
// closed-interval potentials P = (1-s^2)^a U and Q = (1-s^2)^b V and their
// derivatives, so every right-hand side is finite on the closed shape
// interval.  States are packed as plain arrays in the field order used by
// the chart structs.

// (r, v, s, u); first integral (u^2 + v^2)/2 - r^(b-a) U + V - h r^b.
class McGeheeFlow {
public:
    explicit McGeheeFlow(const ShapePotentials& pot) : pot_(&pot) {}
    std::array<double, 4> rhs(const std::array<double, 4>& x) const;
    double first_integral(const std::array<double, 4>& x) const;
    std::array<double, 4> fi_gradient(const std::array<double, 4>& x) const;
    const ShapePotentials& potentials() const { return *pot_; }

private:
    const ShapePotentials* pot_;
};

// Rest point of the McGehee field together with the energy level it lives
// on.  Exists only for negative energies.
struct McGeheeEquilibrium {
    double r, s;
    double energy;
};
std::optional<McGeheeEquilibrium> mcgehee_equilibrium(const ShapePotentials& pot);

// (R, y, s, w), zero energy; first integral
//   w^2/2 + (1-s^2)^a y^2/2 - P + R^(b-a) Q.
class ZeroEnergyFlow {
public:
    explicit ZeroEnergyFlow(const ShapePotentials& pot);
    std::array<double, 4> rhs(const std::array<double, 4>& x) const;
    double first_integral(const std::array<double, 4>& x) const;
    std::array<double, 4> fi_gradient(const std::array<double, 4>& x) const;

private:
    const ShapePotentials* pot_;
};

// (y, s, w) with R slaved; admissible while the slaving right side is >= 0.
class ReducedZeroEnergyFlow {
public:
    explicit ReducedZeroEnergyFlow(const ShapePotentials& pot);
    std::array<double, 3> rhs(const std::array<double, 3>& x) const;
    // Smooth extension without the admissibility guard; linearizations probe
    // across the energy-shell boundary and need this.
    std::array<double, 3> rhs_extended(const std::array<double, 3>& x) const;
    double admissibility(const std::array<double, 3>& x) const;

private:
    std::array<double, 3> eval(const std::array<double, 3>& x, bool checked) const;
    const ShapePotentials* pot_;
};

// Flow on the zero-energy infinity manifold M = {admissibility == 0}.
class InfinityFlowH0 {
public:
    explicit InfinityFlowH0(const ShapePotentials& pot);
    std::array<double, 3> rhs(const std::array<double, 3>& x) const;
    // Defining residual of M; conserved by the flow.
    double first_integral(const std::array<double, 3>& x) const;
    std::array<double, 3> fi_gradient(const std::array<double, 3>& x) const;
    void check_on_manifold(const std::array<double, 3>& x, double tol = 1e-8) const;

private:
    const ShapePotentials* pot_;
};

// (R, v, s, u) for h > 0; first integral (u^2 + v^2)/2 - R^a P + R^b Q - h.
class PositiveEnergyFlow {
public:
    explicit PositiveEnergyFlow(const ShapePotentials& pot);
    std::array<double, 4> rhs(const std::array<double, 4>& x) const;
    double first_integral(const std::array<double, 4>& x) const;
    std::array<double, 4> fi_gradient(const std::array<double, 4>& x) const;

private:
    const ShapePotentials* pot_;
};

// (v, s, u) on the positive-energy infinity manifold N_h (cylinder
// u^2 + v^2 = 2h); v is nondecreasing along the flow.
class InfinityFlowHpos {
public:
    InfinityFlowHpos(const ShapePotentials& pot, double h);
    std::array<double, 3> rhs(const std::array<double, 3>& x) const;
    double first_integral(const std::array<double, 3>& x) const;  // (u^2+v^2)/2 - h
    std::array<double, 3> fi_gradient(const std::array<double, 3>& x) const;
    void check_on_cylinder(const std::array<double, 3>& x, double tol = 1e-8) const;
    double h() const { return h_; }

private:
    const ShapePotentials* pot_;
    double h_;
};

}  // namespace lin3b
