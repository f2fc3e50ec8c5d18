#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lin3b/escape.hpp"
#include "lin3b/integrate.hpp"
#include "lin3b/params.hpp"

namespace lin3b {

// All numeric output uses 17 significant digits so reruns are byte-identical
// and values round-trip exactly.
std::string format_double(double x);

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Same, with a leading text column holding the clock id.
void write_csv_with_clock(const std::filesystem::path& path, const std::vector<std::string>& header,
                          const std::string& clock, const std::vector<std::vector<double>>& rows);

template <std::size_t N>
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory<N>& traj,
                          const std::vector<std::string>& state_names) {
    std::vector<std::string> header{"clock", "time"};
    header.insert(header.end(), state_names.begin(), state_names.end());
    header.push_back("energy_residual");
    std::vector<std::vector<double>> rows;
    rows.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        std::vector<double> row;
        row.reserve(N + 2);
        row.push_back(s.t);
        for (std::size_t i = 0; i < N; ++i) row.push_back(s.x[i]);
        row.push_back(s.energy_residual);
        rows.push_back(std::move(row));
    }
    write_csv_with_clock(path, header, clock_name(traj.clock), rows);
}

// Plain polyline plot: data mapped into a fixed viewport with axis lines and
// min/max labels.  No interactivity.
void write_svg_polyline(const std::filesystem::path& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& xlabel,
                        const std::string& ylabel);

// ------------------------------------------------------------- run config

struct SimulateConfig {
    std::string chart = "h0";        // h0 | hpos
    std::vector<double> state;       // (R,y,s,w) or (R,v,s,u)
    bool events = true;
};

struct PoSearchConfig {
    double seed_y = 0.0;
    double seed_w = 0.0;
    int max_iter = 40;
    double tol = 1e-8;
};

struct HeteroConfig {
    double sigma_span = 20.0;
};

struct SweepConfig {
    int n = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string chart = "h0";
};

struct InfinityConfig {
    std::string chart = "hpos";
    int orbits = 5;
    double sigma_span = 50.0;
};

struct RunConfig {
    SystemParams params;
    IntegratorConfig integrator;
    EscapeThresholds thresholds;
    std::optional<SimulateConfig> simulate;
    std::optional<PoSearchConfig> po_search;
    std::optional<HeteroConfig> hetero;
    std::optional<SweepConfig> sweep;
    std::optional<InfinityConfig> infinity;
};

RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace lin3b
