// Command-line front end: simulate orbits, report equilibria, refine the
// periodic orbit, trace the heteroclinic connection, run escape sweeps and
// sample the infinity-manifold flow.  Outputs are CSV (17 significant
// digits) plus optional SVG projections; reruns with the same config and
// seed are byte-identical.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "lin3b/analysis.hpp"
#include "lin3b/escape.hpp"
#include "lin3b/io.hpp"
#include "lin3b/shooting.hpp"

namespace fs = std::filesystem;
using namespace lin3b;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitConvergence = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool svg = false;
    std::string chart_override;
};

ShapePotentials make_potentials(const SystemParams& par) {
    return ShapePotentials(build_geometry(par.m1, par.m2, par.m3), par);
}

void write_summary(const fs::path& path, const std::vector<std::pair<std::string, std::string>>& kv) {
    std::ofstream out(path);
    out << "{\n";
    for (std::size_t i = 0; i < kv.size(); ++i)
        out << "  \"" << kv[i].first << "\": " << kv[i].second << (i + 1 < kv.size() ? ",\n" : "\n");
    out << "}\n";
}

std::string quoted(const std::string& s) { return "\"" + s + "\""; }

int cmd_simulate(const RunConfig& cfg, const CommonArgs& args) {
    if (!cfg.simulate) throw config_error("config has no `simulate` block");
    SimulateConfig sc = *cfg.simulate;
    if (!args.chart_override.empty()) sc.chart = args.chart_override;
    const fs::path out = fs::path(args.out_dir);
    fs::create_directories(out);
    auto pot = make_potentials(cfg.params);

    if (sc.chart == "h0") {
        if (cfg.params.h != 0.0) throw config_error("simulate chart h0 requires params.h = 0");
        ZeroEnergyFlow flow(pot);
        const std::array<double, 4> x0{sc.state[0], sc.state[1], sc.state[2], sc.state[3]};
        ResidualFn<4> resid = [&flow](const std::array<double, 4>& x) {
            return flow.first_integral(x);
        };
        Trajectory<4> traj;
        EscapeOutcome outcome;
        if (sc.events) {
            // Classify through the reduced system; R stays slaved.
            const auto run = classify_run_h0(pot, ReducedState{x0[1], x0[2], x0[3]},
                                             cfg.integrator, cfg.thresholds);
            outcome = run.outcome;
            traj.chart = Chart::ZeroEnergy;
            traj.clock = run.trajectory.clock;
            for (const auto& s : run.trajectory.samples) {
                const double R = slave_R(pot, s.x[0], s.x[1], s.x[2]);
                traj.samples.push_back({s.t, {R, s.x[0], s.x[1], s.x[2]},
                                        flow.first_integral({R, s.x[0], s.x[1], s.x[2]})});
            }
            traj.terminal.emplace();
            traj.terminal->name = run.trajectory.terminal->name;
            traj.terminal->kind = run.trajectory.terminal->kind;
            traj.terminal->t = run.trajectory.terminal->t;
            const auto& tx = run.trajectory.terminal->x;
            traj.terminal->x = {slave_R(pot, tx[0], tx[1], tx[2]), tx[0], tx[1], tx[2]};
        } else {
            auto rhs = [&flow](const std::array<double, 4>& x) { return flow.rhs(x); };
            traj = integrate<4>(rhs, x0, 0.0, cfg.integrator.max_time, cfg.integrator, {}, nullptr,
                                resid, Chart::ZeroEnergy, Clock::RegularizedSigma);
            outcome = classify_escape(traj.terminal->name, traj.terminal->t,
                                      traj.terminal->x[2], traj.terminal->x[1]);
        }
        write_trajectory_csv(out / "trajectory.csv", traj, {"R", "y", "s", "w"});
        write_summary(out / "summary.json",
                      {{"chart", quoted("h0")},
                       {"terminal_event", quoted(traj.terminal ? traj.terminal->name : "none")},
                       {"escape_class", quoted(escape_class_name(outcome.cls))},
                       {"asymptotic_s", format_double(outcome.asymptotic_s)},
                       {"asymptotic_y", format_double(outcome.asymptotic_y)},
                       {"sigma_end", format_double(outcome.sigma_end)}});
        if (args.svg) {
            std::vector<double> xs, ys;
            for (const auto& s : traj.samples) { xs.push_back(s.x[2]); ys.push_back(s.x[3]); }
            write_svg_polyline(out / "trajectory.svg", xs, ys, "s", "w");
        }
    } else {
        if (!(cfg.params.h > 0.0)) throw config_error("simulate chart hpos requires params.h > 0");
        const PositiveEnergyState st{sc.state[0], sc.state[1], sc.state[2], sc.state[3]};
        auto run = classify_run_hpos(pot, st, cfg.integrator, cfg.thresholds);
        write_trajectory_csv(out / "trajectory.csv", run.trajectory, {"Rt", "vt", "st", "ut"});
        write_summary(out / "summary.json",
                      {{"chart", quoted("hpos")},
                       {"terminal_event",
                        quoted(run.trajectory.terminal ? run.trajectory.terminal->name : "none")},
                       {"escape_class", quoted(escape_class_name(run.outcome.cls))},
                       {"asymptotic_s", format_double(run.outcome.asymptotic_s)},
                       {"asymptotic_v", format_double(run.outcome.asymptotic_y)},
                       {"sigma_end", format_double(run.outcome.sigma_end)}});
        if (args.svg) {
            std::vector<double> xs, ys;
            for (const auto& s : run.trajectory.samples) { xs.push_back(s.x[2]); ys.push_back(s.x[3]); }
            write_svg_polyline(out / "trajectory.svg", xs, ys, "st", "ut");
        }
    }
    return kExitOk;
}

int cmd_equilibria(const RunConfig& cfg, const CommonArgs& args) {
    const fs::path out = fs::path(args.out_dir);
    fs::create_directories(out);
    auto pot = make_potentials(cfg.params);

    std::vector<std::vector<double>> rows;
    std::ostringstream txt;
    txt << "critical shape s_e = " << format_double(pot.critical_shape()) << "\n";

    if (cfg.params.h == 0.0) {
        const auto reports = classify_P(pot);
        for (const auto* rep : {&reports.first, &reports.second}) {
            txt << rep->chart << " equilibrium at (";
            for (std::size_t i = 0; i < rep->location.size(); ++i)
                txt << format_double(rep->location[i]) << (i + 1 < rep->location.size() ? ", " : ")");
            txt << "\n  eigenvalues:";
            for (const auto& z : rep->eigenvalues)
                txt << " " << format_double(z.real()) << (z.imag() ? "+i*" + format_double(z.imag()) : "");
            txt << "\n  dim Ws = " << rep->stable_dim << ", dim Wu = " << rep->unstable_dim
                << ", dim Wc = " << rep->center_dim << "\n";
            std::vector<double> row = rep->location;
            for (const auto& z : rep->eigenvalues) { row.push_back(z.real()); row.push_back(z.imag()); }
            row.push_back(rep->stable_dim);
            row.push_back(rep->unstable_dim);
            rows.push_back(row);
        }
        write_csv(out / "equilibria.csv",
                  {"y", "s", "w", "xi1_re", "xi1_im", "xi2_re", "xi2_im", "xi3_re", "xi3_im",
                   "stable_dim", "unstable_dim"},
                  rows);
    } else if (cfg.params.h > 0.0) {
        const double h = cfg.params.h;
        txt << "equilibrium families on the infinity manifold (h = " << format_double(h) << "):\n"
            << "  N+ = (sqrt(2h), s, 0), N- = (-sqrt(2h), s, 0) for s in [-1,1]\n"
            << "  D1+- = (v, 1, +-sqrt(2h - v^2)), D-1+- = (v, -1, +-sqrt(2h - v^2))\n";
        for (double s : {-0.5, 0.0, 0.5}) {
            for (int sign : {+1, -1}) {
                const auto J = restricted_jacobian_at_c(pot, h, s, sign);
                std::vector<std::vector<double>> A(3, std::vector<double>(3));
                for (int i = 0; i < 3; ++i)
                    for (int jj = 0; jj < 3; ++jj) A[i][jj] = J[i][jj];
                const auto ev = eigen_small(A);
                txt << "  restricted spectrum at c" << (sign > 0 ? "+" : "-") << "(s=" << format_double(s)
                    << "):";
                std::vector<double> row{s, static_cast<double>(sign)};
                for (const auto& z : ev) {
                    txt << " " << format_double(z.real());
                    row.push_back(z.real());
                }
                txt << "\n";
                rows.push_back(row);
            }
        }
        write_csv(out / "equilibria.csv", {"s", "sign", "eig1", "eig2", "eig3"}, rows);
    } else {
        const auto eq = mcgehee_equilibrium(pot);
        if (eq) {
            txt << "mcgehee rest point at r = " << format_double(eq->r)
                << ", s = " << format_double(eq->s) << " (energy " << format_double(eq->energy)
                << ")\n";
            rows.push_back({eq->r, eq->s, eq->energy});
        } else {
            txt << "no mcgehee rest point found\n";
        }
        write_csv(out / "equilibria.csv", {"r", "s", "energy"}, rows);
    }

    std::ofstream(out / "equilibria.txt") << txt.str();
    std::cout << txt.str();
    return kExitOk;
}

int cmd_po_search(const RunConfig& cfg, const CommonArgs& args) {
    if (!cfg.po_search) throw config_error("config has no `po_search` block");
    const fs::path out = fs::path(args.out_dir);
    fs::create_directories(out);
    auto pot = make_potentials(cfg.params);
    if (!pot.params().mass_symmetric())
        throw config_error("po-search requires a mass-symmetric system");

    PoOptions opts;
    opts.tol = cfg.po_search->tol;
    opts.max_iter = cfg.po_search->max_iter;
    const auto po = find_periodic_orbit(pot, cfg.po_search->seed_y, cfg.po_search->seed_w,
                                        cfg.integrator, opts);
    if (!po.converged) {
        std::cerr << "po-search: refinement did not reach tolerance; last residual "
                  << format_double(po.residual_history.back()) << "\n";
        return kExitConvergence;
    }

    // One closed loop sampled for the data product.
    ReducedZeroEnergyFlow flow(pot);
    auto rhs = [&flow](const std::array<double, 3>& x) { return flow.rhs(x); };
    auto traj = integrate<3>(rhs, {po.y, 0.0, po.w}, 0.0, po.period_sigma, cfg.integrator, {},
                             nullptr, nullptr, Chart::ReducedZeroEnergy, Clock::RegularizedSigma);
    write_trajectory_csv(out / "po.csv", traj, {"y", "s", "w"});
    write_summary(out / "po_summary.json",
                  {{"y0", format_double(po.y)},
                   {"w0", format_double(po.w)},
                   {"period_sigma", format_double(po.period_sigma)},
                   {"period_t", format_double(po.period_t)},
                   {"multiplier1_re", format_double(po.multipliers[0].real())},
                   {"multiplier1_im", format_double(po.multipliers[0].imag())},
                   {"multiplier2_re", format_double(po.multipliers[1].real())},
                   {"multiplier2_im", format_double(po.multipliers[1].imag())},
                   {"return_displacement", format_double(po.residual_history.back())}});
    if (args.svg) {
        std::vector<double> xs, ys;
        for (const auto& s : traj.samples) { xs.push_back(s.x[1]); ys.push_back(s.x[2]); }
        write_svg_polyline(out / "po.svg", xs, ys, "s", "w");
    }
    std::cout << "periodic orbit: w0 = " << format_double(po.w)
              << ", period (sigma) = " << format_double(po.period_sigma) << "\n";
    return kExitOk;
}

int cmd_hetero(const RunConfig& cfg, const CommonArgs& args) {
    const fs::path out = fs::path(args.out_dir);
    fs::create_directories(out);
    auto pot = make_potentials(cfg.params);
    if (!pot.params().mass_symmetric())
        throw config_error("hetero requires a mass-symmetric system");
    if (cfg.params.h != 0.0) throw config_error("hetero requires params.h = 0");

    const double span = cfg.hetero ? cfg.hetero->sigma_span : 20.0;
    ReducedZeroEnergyFlow flow(pot);
    const auto [Pm, Pp] = equilibria_h0(pot);
    TraceOptions topt;
    topt.sigma_span = 2.0 * span + 10.0;
    topt.stop_near = {};
    auto traj = trace_unstable_manifold(flow, {Pm.y, Pm.s, Pm.w}, {1.0, 0.0, 0.0}, cfg.integrator,
                                        topt);

    // Align the trace clock with the closed form at the y = 0 crossing.
    const double U0 = pot.U(0.0);
    const double rate = heteroclinic_rate(pot) * std::sqrt(0.5 * U0);
    double sigma0 = 0.0;
    const double y_seed = traj.samples.front().x[0];
    sigma0 = -std::atanh(std::clamp(y_seed / std::sqrt(2.0 * U0), -1.0 + 1e-16, 1.0 - 1e-16)) / rate;

    double max_dev = 0.0;
    std::vector<std::vector<double>> rows;
    for (const auto& s : traj.samples) {
        const double closed = heteroclinic_y(pot, s.t - sigma0);
        max_dev = std::max(max_dev, std::abs(s.x[0] - closed));
        rows.push_back({s.t - sigma0, s.x[0], closed, s.x[1], s.x[2]});
    }
    write_csv(out / "hetero.csv", {"sigma", "y", "y_closed_form", "s", "w"}, rows);
    write_summary(out / "hetero_summary.json",
                  {{"max_deviation_from_closed_form", format_double(max_dev)},
                   {"y_limit", format_double(std::sqrt(2.0 * U0))}});
    std::cout << "heteroclinic trace max deviation from closed form: " << format_double(max_dev)
              << "\n";
    if (args.svg) {
        std::vector<double> xs, ys;
        for (const auto& r : rows) { xs.push_back(r[0]); ys.push_back(r[1]); }
        write_svg_polyline(out / "hetero.svg", xs, ys, "sigma", "y");
    }
    return max_dev < 1e-6 ? kExitOk : kExitConvergence;
}

int cmd_sweep(const RunConfig& cfg, const CommonArgs& args) {
    if (!cfg.sweep) throw config_error("config has no `sweep` block");
    SweepConfig sc = *cfg.sweep;
    if (args.seed_set) sc.seed = args.seed;
    if (!args.chart_override.empty()) sc.chart = args.chart_override;
    const fs::path out = fs::path(args.out_dir);
    fs::create_directories(out);
    auto pot = make_potentials(cfg.params);

    SweepOptions opt;
    opt.n = sc.n;
    opt.seed = sc.seed;
    opt.workers = sc.workers;
    SweepResult res;
    if (sc.chart == "h0") {
        if (cfg.params.h != 0.0) throw config_error("sweep chart h0 requires params.h = 0");
        res = sweep_h0(pot, opt, cfg.integrator, cfg.thresholds);
    } else if (sc.chart == "hpos") {
        if (!(cfg.params.h > 0.0)) throw config_error("sweep chart hpos requires params.h > 0");
        res = sweep_hpos(pot, cfg.params.h, opt, cfg.integrator, cfg.thresholds);
    } else {
        throw config_error("sweep.chart must be h0 or hpos");
    }

    write_csv(out / "sweep_counts.csv",
              {"n", "two_plus_one_left", "two_plus_one_right", "one_one_one", "undetermined"},
              {{static_cast<double>(res.n), static_cast<double>(res.two_plus_one_left),
                static_cast<double>(res.two_plus_one_right), static_cast<double>(res.one_one_one),
                static_cast<double>(res.undetermined)}});
    std::vector<std::vector<double>> rows;
    for (const auto& r : res.records)
        rows.push_back({static_cast<double>(r.index), static_cast<double>(r.seed), r.init[0],
                        r.init[1], r.init[2], r.init[3], static_cast<double>(static_cast<int>(r.outcome.cls)),
                        r.outcome.sigma_end, r.outcome.asymptotic_s, r.outcome.asymptotic_y});
    write_csv(out / "sweep_samples.csv",
              {"index", "seed", "x0", "x1", "x2", "x3", "class", "sigma_end", "asymptotic_s",
               "asymptotic_y"},
              rows);
    std::cout << "sweep (" << sc.chart << ", n = " << res.n << "): 2+1 = " << res.two_plus_one()
              << ", 1+1+1 = " << res.one_one_one << ", undetermined = " << res.undetermined << "\n";
    return kExitOk;
}

int cmd_infinity(const RunConfig& cfg, const CommonArgs& args) {
    const fs::path out = fs::path(args.out_dir);
    fs::create_directories(out);
    auto pot = make_potentials(cfg.params);
    InfinityConfig ic = cfg.infinity ? *cfg.infinity : InfinityConfig{};
    if (!args.chart_override.empty()) ic.chart = args.chart_override;

    if (ic.chart == "hpos") {
        if (!(cfg.params.h > 0.0)) throw config_error("infinity chart hpos requires params.h > 0");
        const double h = cfg.params.h;
        InfinityFlowHpos flow(pot, h);
        auto rhs = [&flow](const std::array<double, 3>& x) { return flow.rhs(x); };
        const double sq2h = std::sqrt(2.0 * h);
        std::vector<std::vector<double>> rows;
        for (int k = 0; k < ic.orbits; ++k) {
            // Orbits started across the cylinder, u > 0 branch.
            const double chi0 = -1.2 + 2.4 * k / std::max(1, ic.orbits - 1);
            const std::array<double, 3> x0{sq2h * std::sin(chi0), -0.95, sq2h * std::cos(chi0)};
            auto traj = integrate<3>(rhs, x0, 0.0, ic.sigma_span, cfg.integrator, {}, nullptr,
                                     [&flow](const std::array<double, 3>& x) {
                                         return flow.first_integral(x);
                                     },
                                     Chart::InfinityHpos, Clock::RegularizedSigma);
            double chi_prev = std::atan2(x0[0], x0[2]);
            double wind = 0.0;
            for (const auto& smp : traj.samples) {
                double chi = std::atan2(smp.x[0], smp.x[2]) + wind;
                while (chi - chi_prev > 3.141592653589793) { chi -= 6.283185307179586; wind -= 6.283185307179586; }
                while (chi - chi_prev < -3.141592653589793) { chi += 6.283185307179586; wind += 6.283185307179586; }
                rows.push_back({static_cast<double>(k), smp.t, smp.x[1], chi, smp.x[0], smp.x[2],
                                smp.energy_residual});
                chi_prev = chi;
            }
        }
        write_csv(out / "infinity.csv", {"orbit", "sigma", "st", "chi", "vt", "ut", "cylinder_residual"},
                  rows);
        if (args.svg) {
            std::vector<double> xs, ys;
            for (const auto& r : rows)
                if (r[0] == 0.0) { xs.push_back(r[2]); ys.push_back(r[3]); }
            write_svg_polyline(out / "infinity.svg", xs, ys, "st", "chi");
        }
        std::cout << "infinity-manifold flow (h > 0): " << rows.size() << " samples, lambda = "
                  << format_double(pot.geometry().lambda) << "\n";
    } else if (ic.chart == "h0") {
        if (cfg.params.h != 0.0) throw config_error("infinity chart h0 requires params.h = 0");
        InfinityFlowH0 flow(pot);
        auto rhs = [&flow](const std::array<double, 3>& x) { return flow.rhs(x); };
        std::vector<std::vector<double>> rows;
        std::uint64_t sd = 99;
        for (int k = 0; k < ic.orbits; ++k) {
            const ReducedState st = sample_state_h0(pot, task_seed(sd, k));
            auto traj = integrate<3>(rhs, {st.y, st.s, st.w}, 0.0, ic.sigma_span, cfg.integrator,
                                     {}, nullptr,
                                     [&flow](const std::array<double, 3>& x) {
                                         return flow.first_integral(x);
                                     },
                                     Chart::InfinityH0, Clock::RegularizedSigma);
            for (const auto& smp : traj.samples)
                rows.push_back({static_cast<double>(k), smp.t, smp.x[0], smp.x[1], smp.x[2],
                                smp.energy_residual});
        }
        write_csv(out / "infinity.csv", {"orbit", "sigma", "y", "s", "w", "manifold_residual"}, rows);
        if (args.svg) {
            std::vector<double> xs, ys;
            for (const auto& r : rows)
                if (r[0] == 0.0) { xs.push_back(r[3]); ys.push_back(r[4]); }
            write_svg_polyline(out / "infinity.svg", xs, ys, "s", "w");
        }
        std::cout << "infinity-manifold flow (h = 0): " << rows.size() << " samples\n";
    } else {
        throw config_error("infinity.chart must be h0 or hpos");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collinear three-mass escape dynamics toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    app.add_option("--config", args.config_path, "JSON run configuration")->required();
    app.add_option("--out", args.out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", args.seed, "override sweep seed");
    app.add_flag("--svg", args.svg, "also write SVG projections");
    app.add_option("--chart", args.chart_override, "override chart (h0|hpos)");

    auto* sub_sim = app.add_subcommand("simulate", "integrate one orbit and classify its exit");
    auto* sub_eq = app.add_subcommand("equilibria", "equilibria, eigenvalues and manifold dimensions");
    auto* sub_po = app.add_subcommand("po-search", "refine the symmetric periodic orbit");
    auto* sub_het = app.add_subcommand("hetero", "trace the heteroclinic connection");
    auto* sub_sw = app.add_subcommand("sweep", "Monte-Carlo escape statistics");
    auto* sub_inf = app.add_subcommand("infinity", "flow on the infinity manifold");

    CLI11_PARSE(app, argc, argv);
    args.seed_set = seed_opt->count() > 0;

    try {
        const RunConfig cfg = load_run_config(args.config_path);
        if (sub_sim->parsed()) return cmd_simulate(cfg, args);
        if (sub_eq->parsed()) return cmd_equilibria(cfg, args);
        if (sub_po->parsed()) return cmd_po_search(cfg, args);
        if (sub_het->parsed()) return cmd_hetero(cfg, args);
        if (sub_sw->parsed()) return cmd_sweep(cfg, args);
        if (sub_inf->parsed()) return cmd_infinity(cfg, args);
        std::cerr << "no subcommand given\n";
        return kExitConfig;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    }
}
