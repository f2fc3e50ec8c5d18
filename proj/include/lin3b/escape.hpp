#pragma once

#include <cstdint>
#include <vector>

#include "lin3b/fields.hpp"
#include "lin3b/integrate.hpp"

namespace lin3b {

enum class EscapeClass { TwoPlusOneLeft, TwoPlusOneRight, OneOneOne, Undetermined };

inline const char* escape_class_name(EscapeClass c) {
    switch (c) {
        case EscapeClass::TwoPlusOneLeft: return "2+1_left";
        case EscapeClass::TwoPlusOneRight: return "2+1_right";
        case EscapeClass::OneOneOne: return "1+1+1";
        case EscapeClass::Undetermined: return "undetermined";
    }
    return "?";
}

struct EscapeThresholds {
    double R_esc = 1e-6;      // slaved/regularized inverse-size cut
    double s_margin = 1e-3;   // |s| > 1 - s_margin counts as a collision end
    double prox_delta = 1e-3; // proximity to the 1+1+1 equilibria
    double dwell_sigma = 30;  // residence time confirming convergence (h = 0)
    double rho_esc = 0.05;    // 1/r cut accepting a binary-formation exit
};

struct EscapeOutcome {
    EscapeClass cls = EscapeClass::Undetermined;
    double asymptotic_s = 0;
    double asymptotic_y = 0;  // v for the positive-energy chart
    double sigma_end = 0;
};

EscapeOutcome classify_escape(const std::string& terminal_name, double sigma,
                              double s, double y);

struct ClassifiedRunH0 {
    Trajectory<3> trajectory;
    EscapeOutcome outcome;
};

// Integrate the reduced zero-energy flow and classify the exit.  Terminal
// names: dc_left / dc_right (binary formation) and equilibrium_P- /
// equilibrium_P+ (1+1+1, confirmed by a dwell near the rest point).
ClassifiedRunH0 classify_run_h0(const ShapePotentials& pot, const ReducedState& st,
                                const IntegratorConfig& cfg, const EscapeThresholds& thr,
                                bool backward = false);

struct ClassifiedRunHpos {
    Trajectory<4> trajectory;
    EscapeOutcome outcome;
};

ClassifiedRunHpos classify_run_hpos(const ShapePotentials& pot, const PositiveEnergyState& st,
                                    const IntegratorConfig& cfg, const EscapeThresholds& thr);

// ------------------------------------------------------------------ sweep

struct SweepOptions {
    int n = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct SweepRecord {
    int index;
    std::uint64_t seed;
    std::array<double, 4> init;  // (y, s, w, 0) for h = 0; (R, v, s, u) for h > 0
    EscapeOutcome outcome;
};

struct SweepResult {
    int n = 0;
    int two_plus_one_left = 0;
    int two_plus_one_right = 0;
    int one_one_one = 0;
    int undetermined = 0;
    std::vector<SweepRecord> records;

    int two_plus_one() const { return two_plus_one_left + two_plus_one_right; }
};

// Initial states drawn uniformly from the window s in [-0.9, 0.9],
// y in 0.9 * [-sqrt(2U), sqrt(2U)], with w on the infinity manifold
// (random sign) and R slaved.
ReducedState sample_state_h0(const ShapePotentials& pot, std::uint64_t seed);

// s in [-0.9, 0.9], R in (0, 0.95 R_max(h, s)], v in 0.9 * [-sqrt(2k), sqrt(2k)],
// u from the energy relation with random sign.
PositiveEnergyState sample_state_hpos(const ShapePotentials& pot, double h, std::uint64_t seed);

// Largest R with nonnegative kinetic energy at shape s (admissibility root).
double hpos_R_max(const ShapePotentials& pot, double h, double s);

SweepResult sweep_h0(const ShapePotentials& pot, const SweepOptions& opt,
                     const IntegratorConfig& cfg, const EscapeThresholds& thr);

SweepResult sweep_hpos(const ShapePotentials& pot, double h, const SweepOptions& opt,
                       const IntegratorConfig& cfg, const EscapeThresholds& thr);

}  // namespace lin3b
