#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lin3b/util.hpp"

namespace lin3b {

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = 1.0;
    double max_time = 1e4;
    double event_tol = 1e-10;
    long max_steps = 20'000'000;

    void validate() const {
        if (!(rel_tol >= 1e-14)) throw std::invalid_argument("IntegratorConfig: rel_tol must be >= 1e-14");
        if (!(abs_tol > 0 && max_step > 0 && max_time > 0 && event_tol > 0 && max_steps > 0))
            throw std::invalid_argument("IntegratorConfig: all bounds must be positive");
    }
};

enum class Chart { Cartesian, McGehee, ZeroEnergy, ReducedZeroEnergy, InfinityH0, PositiveEnergy, InfinityHpos };
enum class Clock { PhysicalT, McGeheeTau, RegularizedSigma };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::Cartesian: return "cartesian";
        case Chart::McGehee: return "mcgehee";
        case Chart::ZeroEnergy: return "zero_energy";
        case Chart::ReducedZeroEnergy: return "reduced_zero_energy";
        case Chart::InfinityH0: return "infinity_h0";
        case Chart::PositiveEnergy: return "positive_energy";
        case Chart::InfinityHpos: return "infinity_hpos";
    }
    return "?";
}

inline const char* clock_name(Clock c) {
    switch (c) {
        case Clock::PhysicalT: return "t";
        case Clock::McGeheeTau: return "tau";
        case Clock::RegularizedSigma: return "sigma";
    }
    return "?";
}

enum class TerminalKind { Event, MaxTime, StepUnderflow, StepLimit, Observer };

template <std::size_t N>
struct Sample {
    double t;
    std::array<double, N> x;
    double energy_residual;
};

template <std::size_t N>
struct TerminalEvent {
    std::string name;
    TerminalKind kind;
    double t;
    std::array<double, N> x;
};

template <std::size_t N>
struct Trajectory {
    Chart chart = Chart::ReducedZeroEnergy;
    Clock clock = Clock::RegularizedSigma;
    std::vector<Sample<N>> samples;
    std::optional<TerminalEvent<N>> terminal;

    const Sample<N>& back() const { return samples.back(); }
};

// Zero crossing of g along the solution.  direction > 0 triggers on
// negative-to-positive crossings, < 0 the opposite, 0 on both.  An event is
// discarded (integration continues) when `accept` returns false at the
// located root.
template <std::size_t N>
struct EventSpec {
    std::string name;
    std::function<double(double, const std::array<double, N>&)> g;
    int direction = 0;
    std::function<bool(double, const std::array<double, N>&)> accept;
};

// Called after every accepted step; a returned string terminates.
template <std::size_t N>
using Observer = std::function<std::optional<std::string>(double, const std::array<double, N>&)>;

template <std::size_t N>
using ResidualFn = std::function<double(const std::array<double, N>&)>;

// Dormand-Prince 5(4) with the classic quartic dense output.  Works for
// increasing or decreasing time.
template <std::size_t N, class F>
class Dopri5 {
public:
    using State = std::array<double, N>;

    Dopri5(F rhs, const IntegratorConfig& cfg) : f_(rhs), cfg_(cfg) { cfg_.validate(); }

    struct StepResult {
        double t0, h;
        State x0, x1;
        std::array<State, 7> k;
    };

    // One adaptive step from (t, x); updates t, x and the suggested h.
    bool step(double& t, State& x, double& h, double t_end, StepResult& out) {
        const double dir = (t_end >= t) ? 1.0 : -1.0;
        for (int attempt = 0; attempt < 60; ++attempt) {
            double hs = dir * std::min(std::abs(h), cfg_.max_step);
            bool last = false;
            if (dir * (t + hs - t_end) > 0) { hs = t_end - t; last = true; }
            if (std::abs(hs) < 1e-14 * std::max(1.0, std::abs(t))) return false;

            State k1 = k_first_ ? *k_first_ : f_(x);
            State xt;
            auto stage = [&](const double* a, int n) {
                for (std::size_t i = 0; i < N; ++i) {
                    double acc = 0;
                    for (int j = 0; j < n; ++j) acc += a[j] * ks_[j][i];
                    xt[i] = x[i] + hs * acc;
                }
            };
            ks_[0] = k1;
            static constexpr double a2[] = {0.2};
            static constexpr double a3[] = {3.0 / 40.0, 9.0 / 40.0};
            static constexpr double a4[] = {44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0};
            static constexpr double a5[] = {19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0};
            static constexpr double a6[] = {9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0};
            static constexpr double b5[] = {35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0};

            try {
                stage(a2, 1); ks_[1] = f_(xt);
                stage(a3, 2); ks_[2] = f_(xt);
                stage(a4, 3); ks_[3] = f_(xt);
                stage(a5, 4); ks_[4] = f_(xt);
                stage(a6, 5); ks_[5] = f_(xt);
                stage(b5, 6); ks_[6] = f_(xt);  // FSAL stage at x1
            } catch (const std::domain_error&) {
                h = 0.5 * std::abs(hs);
                k_first_.reset();
                continue;
            }
            const State x1 = xt;

            static constexpr double e[] = {71.0 / 57600.0, 0.0, -71.0 / 16695.0, 71.0 / 1920.0,
                                           -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0};
            double err = 0;
            for (std::size_t i = 0; i < N; ++i) {
                double ei = 0;
                for (int j = 0; j < 7; ++j) ei += e[j] * ks_[j][i];
                ei *= hs;
                const double sc = cfg_.abs_tol + cfg_.rel_tol * std::max(std::abs(x[i]), std::abs(x1[i]));
                err += (ei / sc) * (ei / sc);
            }
            err = std::sqrt(err / N);

            if (err <= 1.0 || std::abs(hs) <= 1e-13 * std::max(1.0, std::abs(t))) {
                out.t0 = t;
                out.h = hs;
                out.x0 = x;
                out.x1 = x1;
                out.k = ks_;
                t = last ? t_end : t + hs;
                x = x1;
                k_first_ = ks_[6];
                const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 10.0);
                h = std::abs(hs) * fac;
                return true;
            }
            h = std::abs(hs) * std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            k_first_.reset();
            k_first_ = k1;
        }
        return false;
    }

    // Quartic interpolant on the last step, theta in [0, 1].
    static State dense(const StepResult& st, double theta) {
        static constexpr double d[] = {-12715105075.0 / 11282082432.0,
                                       0.0,
                                       87487479700.0 / 32700410799.0,
                                       -10690763975.0 / 1880347072.0,
                                       701980252875.0 / 199316789632.0,
                                       -1453857185.0 / 822651844.0,
                                       69997945.0 / 29380423.0};
        State r;
        for (std::size_t i = 0; i < N; ++i) {
            const double ydiff = st.x1[i] - st.x0[i];
            const double bspl = st.h * st.k[0][i] - ydiff;
            const double c4 = ydiff - st.h * st.k[6][i] - bspl;
            double c5 = 0;
            for (int j = 0; j < 7; ++j) c5 += d[j] * st.k[j][i];
            c5 *= st.h;
            const double th1 = 1.0 - theta;
            r[i] = st.x0[i] + theta * (ydiff + th1 * (bspl + theta * (c4 + th1 * c5)));
        }
        return r;
    }

    void reset() { k_first_.reset(); }

private:
    F f_;
    IntegratorConfig cfg_;
    std::array<State, 7> ks_{};
    std::optional<State> k_first_;
};

// Adaptive integration with event detection.  Samples are recorded at every
// accepted step; the first accepted terminal event truncates the step.
template <std::size_t N, class F>
Trajectory<N> integrate(F&& rhs, const std::array<double, N>& x0, double t0, double t_end,
                        const IntegratorConfig& cfg,
                        std::vector<EventSpec<N>> events = {},
                        Observer<N> observer = {},
                        ResidualFn<N> residual = {},
                        Chart chart = Chart::ReducedZeroEnergy,
                        Clock clock = Clock::RegularizedSigma) {
    cfg.validate();
    using State = std::array<double, N>;
    auto f = [&rhs](const State& x) { return rhs(x); };
    Dopri5<N, decltype(f)> stepper(f, cfg);

    Trajectory<N> traj;
    traj.chart = chart;
    traj.clock = clock;
    auto res_of = [&](const State& x) { return residual ? residual(x) : 0.0; };
    traj.samples.push_back({t0, x0, res_of(x0)});

    std::vector<double> gprev(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) gprev[i] = events[i].g(t0, x0);

    double t = t0;
    State x = x0;
    double h = std::min(cfg.max_step, 1e-2 * std::abs(t_end - t0) + 1e-6);

    for (long nstep = 0; nstep < cfg.max_steps; ++nstep) {
        typename Dopri5<N, decltype(f)>::StepResult st;
        if (!stepper.step(t, x, h, t_end, st)) {
            traj.terminal = TerminalEvent<N>{"step_underflow", TerminalKind::StepUnderflow, t, x};
            return traj;
        }

        // Event localization on the dense interpolant.
        double best_theta = 2.0;
        std::size_t best_ev = events.size();
        for (std::size_t i = 0; i < events.size(); ++i) {
            const double g1 = events[i].g(t, x);
            const double g0 = gprev[i];
            const bool crossed = (g0 < 0 && g1 >= 0 && events[i].direction >= 0) ||
                                 (g0 > 0 && g1 <= 0 && events[i].direction <= 0);
            gprev[i] = g1;
            if (!crossed) continue;

            double lo = 0.0, hi = 1.0;
            double glo = g0;
            while ((hi - lo) * std::abs(st.h) > cfg.event_tol) {
                const double mid = 0.5 * (lo + hi);
                const double gm = events[i].g(st.t0 + mid * st.h, stepper.dense(st, mid));
                if ((gm < 0) == (glo < 0)) { lo = mid; glo = gm; }
                else hi = mid;
            }
            const double theta = hi;
            const State xev = stepper.dense(st, theta);
            const double tev = st.t0 + theta * st.h;
            if (events[i].accept && !events[i].accept(tev, xev)) continue;
            if (theta < best_theta) {
                best_theta = theta;
                best_ev = i;
            }
        }
        if (best_ev < events.size()) {
            const State xev = stepper.dense(st, best_theta);
            const double tev = st.t0 + best_theta * st.h;
            traj.samples.push_back({tev, xev, res_of(xev)});
            traj.terminal = TerminalEvent<N>{events[best_ev].name, TerminalKind::Event, tev, xev};
            return traj;
        }

        traj.samples.push_back({t, x, res_of(x)});

        if (observer) {
            if (auto stop = observer(t, x)) {
                traj.terminal = TerminalEvent<N>{*stop, TerminalKind::Observer, t, x};
                return traj;
            }
        }

        if (t == t_end) {
            traj.terminal = TerminalEvent<N>{"max_time", TerminalKind::MaxTime, t, x};
            return traj;
        }
    }
    traj.terminal = TerminalEvent<N>{"step_limit", TerminalKind::StepLimit, t, x};
    return traj;
}

}  // namespace lin3b
