#include "lin3b/escape.hpp"

#include <cmath>
#include <memory>
#include <random>
#include <thread>

#include "lin3b/analysis.hpp"

namespace lin3b {

EscapeOutcome classify_escape(const std::string& terminal_name, double sigma,
                              double s, double y) {
    EscapeOutcome out;
    out.sigma_end = sigma;
    out.asymptotic_s = s;
    out.asymptotic_y = y;
    if (terminal_name == "dc_left") out.cls = EscapeClass::TwoPlusOneLeft;
    else if (terminal_name == "dc_right") out.cls = EscapeClass::TwoPlusOneRight;
    else if (terminal_name == "equilibrium_P-" || terminal_name == "equilibrium_P+" ||
             terminal_name == "nh_plus" || terminal_name == "nh_minus")
        out.cls = EscapeClass::OneOneOne;
    else out.cls = EscapeClass::Undetermined;
    return out;
}

ClassifiedRunH0 classify_run_h0(const ShapePotentials& pot, const ReducedState& st,
                                const IntegratorConfig& cfg, const EscapeThresholds& thr,
                                bool backward) {
    ReducedZeroEnergyFlow flow(pot);
    auto rhs = [&flow](const std::array<double, 3>& x) { return flow.rhs(x); };

    const double edge = 1.0 - thr.s_margin;
    auto accept_2p1 = [&pot, thr](double, const std::array<double, 3>& x) {
        const double R = slave_R(pot, x[0], x[1], x[2]);
        const double rho = (1.0 - x[1] * x[1]) * R;
        return R < thr.R_esc || rho < thr.rho_esc;
    };
    std::vector<EventSpec<3>> events{
        EventSpec<3>{"dc_right", [edge](double, const std::array<double, 3>& x) { return x[1] - edge; },
                     +1, accept_2p1},
        EventSpec<3>{"dc_left", [edge](double, const std::array<double, 3>& x) { return x[1] + edge; },
                     -1, accept_2p1}};

    // Convergence to P-+ confirmed by residence inside a small ball.
    const auto [Pm, Pp] = equilibria_h0(pot);
    struct Dwell {
        std::array<double, 3> target;
        const char* name;
        bool active = false;
        double since = 0;
    };
    auto dwell = std::make_shared<std::array<Dwell, 2>>();
    (*dwell)[0] = {{Pm.y, Pm.s, Pm.w}, "equilibrium_P-", false, 0};
    (*dwell)[1] = {{Pp.y, Pp.s, Pp.w}, "equilibrium_P+", false, 0};
    const double delta = thr.prox_delta, dwell_span = thr.dwell_sigma;
    Observer<3> obs = [dwell, delta, dwell_span](double t, const std::array<double, 3>& x)
        -> std::optional<std::string> {
        for (auto& d : *dwell) {
            double acc = 0;
            for (int i = 0; i < 3; ++i) acc += (x[i] - d.target[i]) * (x[i] - d.target[i]);
            const double dist = std::sqrt(acc);
            if (!d.active && dist < delta) { d.active = true; d.since = t; }
            else if (d.active && dist > 2.0 * delta) d.active = false;
            else if (d.active && std::abs(t - d.since) >= dwell_span) return std::string(d.name);
        }
        return std::nullopt;
    };

    ClassifiedRunH0 run;
    const double t_end = backward ? -cfg.max_time : cfg.max_time;
    // For runs started on the infinity manifold, record its residual.
    const bool on_m = std::abs(flow.admissibility({st.y, st.s, st.w})) <= 1e-8;
    ResidualFn<3> resid;
    if (on_m)
        resid = [&flow](const std::array<double, 3>& x) { return flow.admissibility(x); };
    run.trajectory = integrate<3>(rhs, {st.y, st.s, st.w}, 0.0, t_end, cfg, events, obs, resid,
                                  Chart::ReducedZeroEnergy, Clock::RegularizedSigma);
    const auto& term = run.trajectory.terminal;
    run.outcome = classify_escape(term ? term->name : "none", term ? term->t : 0.0,
                                  term ? term->x[1] : st.s, term ? term->x[0] : st.y);
    return run;
}

ClassifiedRunHpos classify_run_hpos(const ShapePotentials& pot, const PositiveEnergyState& st,
                                    const IntegratorConfig& cfg, const EscapeThresholds& thr) {
    PositiveEnergyFlow flow(pot);
    const double h = pot.params().h;
    if (!(h > 0)) throw std::domain_error("classify_run_hpos: requires h > 0");
    auto rhs = [&flow](const std::array<double, 4>& x) { return flow.rhs(x); };

    const double edge = 1.0 - thr.s_margin;
    auto accept_2p1 = [thr](double, const std::array<double, 4>& x) {
        const double rho = (1.0 - x[2] * x[2]) * x[0];
        return rho < thr.rho_esc;
    };
    std::vector<EventSpec<4>> events{
        EventSpec<4>{"dc_right", [edge](double, const std::array<double, 4>& x) { return x[2] - edge; },
                     +1, accept_2p1},
        EventSpec<4>{"dc_left", [edge](double, const std::array<double, 4>& x) { return x[2] + edge; },
                     -1, accept_2p1}};

    const double sq2h = std::sqrt(2.0 * h);
    const double delta = thr.prox_delta, Resc = thr.R_esc;
    Observer<4> obs = [sq2h, delta, Resc](double, const std::array<double, 4>& x)
        -> std::optional<std::string> {
        const double dp = std::sqrt(x[0] * x[0] + (x[1] - sq2h) * (x[1] - sq2h) + x[3] * x[3]);
        if (dp < delta && x[0] < Resc) return std::string("nh_plus");
        const double dm = std::sqrt(x[0] * x[0] + (x[1] + sq2h) * (x[1] + sq2h) + x[3] * x[3]);
        if (dm < delta && x[0] < Resc) return std::string("nh_minus");
        return std::nullopt;
    };

    ClassifiedRunHpos run;
    ResidualFn<4> resid = [&flow](const std::array<double, 4>& x) { return flow.first_integral(x); };
    run.trajectory = integrate<4>(rhs, {st.R, st.v, st.s, st.u}, 0.0, cfg.max_time, cfg, events,
                                  obs, resid, Chart::PositiveEnergy, Clock::RegularizedSigma);
    const auto& term = run.trajectory.terminal;
    run.outcome = classify_escape(term ? term->name : "none", term ? term->t : 0.0,
                                  term ? term->x[2] : st.s, term ? term->x[1] : st.v);
    return run;
}

// ------------------------------------------------------------------ sweep

namespace {

double u01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

}  // namespace

ReducedState sample_state_h0(const ShapePotentials& pot, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const double s = -0.9 + 1.8 * u01(gen);
    const double ymax = 0.9 * std::sqrt(2.0 * pot.U(s));
    const double y = ymax * (2.0 * u01(gen) - 1.0);
    const double gap0 = manifold_gap(pot, y, s, 0.0);
    const double w = (u01(gen) < 0.5 ? -1.0 : 1.0) * std::sqrt(2.0 * gap0);
    return ReducedState{y, s, w};
}

double hpos_R_max(const ShapePotentials& pot, double h, double s) {
    const auto re = pot.reg_eval(s);
    const double a = pot.params().exp_a, b = pot.params().exp_b;
    auto kappa = [&](double R) {
        return h + std::pow(R, a) * re.P - std::pow(R, b) * re.Q;
    };
    // kappa is positive up to its unique root beyond the maximum.
    double lo = std::pow(a * re.P / (b * re.Q), 1.0 / (b - a));
    double hi = lo;
    while (kappa(hi) > 0) hi *= 2.0;
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        const double m = 0.5 * (lo + hi);
        (kappa(m) > 0 ? lo : hi) = m;
    }
    return 0.5 * (lo + hi);
}

PositiveEnergyState sample_state_hpos(const ShapePotentials& pot, double h, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const double s = -0.9 + 1.8 * u01(gen);
    const double Rmax = hpos_R_max(pot, h, s);
    const double R = 0.95 * Rmax * (1.0 - u01(gen));
    const auto re = pot.reg_eval(s);
    const double a = pot.params().exp_a, b = pot.params().exp_b;
    const double kap = h + std::pow(R, a) * re.P - std::pow(R, b) * re.Q;
    const double v = 0.9 * std::sqrt(2.0 * kap) * (2.0 * u01(gen) - 1.0);
    const double u = (u01(gen) < 0.5 ? -1.0 : 1.0) * std::sqrt(2.0 * kap - v * v);
    return PositiveEnergyState{R, v, s, u};
}

namespace {

template <class Task>
void run_parallel(int n, int workers, Task&& task) {
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) task(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int wkr = 0; wkr < workers; ++wkr)
        pool.emplace_back([&, wkr]() {
            for (int i = wkr; i < n; i += workers) task(i);
        });
    for (auto& th : pool) th.join();
}

void tally(SweepResult& res) {
    for (const auto& r : res.records) {
        switch (r.outcome.cls) {
            case EscapeClass::TwoPlusOneLeft: ++res.two_plus_one_left; break;
            case EscapeClass::TwoPlusOneRight: ++res.two_plus_one_right; break;
            case EscapeClass::OneOneOne: ++res.one_one_one; break;
            case EscapeClass::Undetermined: ++res.undetermined; break;
        }
    }
}

}  // namespace

SweepResult sweep_h0(const ShapePotentials& pot, const SweepOptions& opt,
                     const IntegratorConfig& cfg, const EscapeThresholds& thr) {
    SweepResult res;
    res.n = opt.n;
    res.records.resize(opt.n);
    run_parallel(opt.n, opt.workers, [&](int i) {
        const std::uint64_t sd = task_seed(opt.seed, static_cast<std::uint64_t>(i));
        const ReducedState st = sample_state_h0(pot, sd);
        const auto run = classify_run_h0(pot, st, cfg, thr);
        res.records[i] = SweepRecord{i, sd, {st.y, st.s, st.w, 0.0}, run.outcome};
    });
    tally(res);
    return res;
}

SweepResult sweep_hpos(const ShapePotentials& pot, double h, const SweepOptions& opt,
                       const IntegratorConfig& cfg, const EscapeThresholds& thr) {
    SweepResult res;
    res.n = opt.n;
    res.records.resize(opt.n);
    const SystemParams par_h = pot.params().with_energy(h);
    const ShapePotentials pot_h(pot.geometry(), par_h);
    run_parallel(opt.n, opt.workers, [&](int i) {
        const std::uint64_t sd = task_seed(opt.seed, static_cast<std::uint64_t>(i));
        const PositiveEnergyState st = sample_state_hpos(pot_h, h, sd);
        const auto run = classify_run_hpos(pot_h, st, cfg, thr);
        res.records[i] = SweepRecord{i, sd, {st.R, st.v, st.s, st.u}, run.outcome};
    });
    tally(res);
    return res;
}

}  // namespace lin3b
