#include "lin3b/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace lin3b {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void write_table(std::ofstream& out, const std::vector<std::string>& header,
                 const std::string* clock, const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        std::size_t col = 0;
        if (clock) {
            out << *clock;
            col = 1;
        }
        for (std::size_t i = 0; i < row.size(); ++i, ++col)
            out << (col ? "," : "") << format_double(row[i]);
        out << "\n";
    }
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    write_table(out, header, nullptr, rows);
}

void write_csv_with_clock(const std::filesystem::path& path, const std::vector<std::string>& header,
                          const std::string& clock, const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv_with_clock: cannot open " + path.string());
    write_table(out, header, &clock, rows);
}

void write_svg_polyline(const std::filesystem::path& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& xlabel,
                        const std::string& ylabel) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("write_svg_polyline: need matching nonempty data");
    const double W = 800, H = 600, m = 60;
    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = *std::min_element(ys.begin(), ys.end());
    double ymax = *std::max_element(ys.begin(), ys.end());
    if (xmax == xmin) { xmax += 1; xmin -= 1; }
    if (ymax == ymin) { ymax += 1; ymin -= 1; }
    auto X = [&](double x) { return m + (x - xmin) / (xmax - xmin) * (W - 2 * m); };
    auto Y = [&](double y) { return H - m - (y - ymin) / (ymax - ymin) * (H - 2 * m); };

    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_svg_polyline: cannot open " + path.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m << "\" y2=\"" << H - m
        << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << m << "\" y1=\"" << m << "\" x2=\"" << m << "\" y2=\"" << H - m
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">" << xlabel
        << "</text>\n";
    out << "<text x=\"15\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << H / 2 << ")\">" << ylabel << "</text>\n";
    out << "<text x=\"" << m << "\" y=\"" << H - m + 20 << "\">" << format_double(xmin) << "</text>\n";
    out << "<text x=\"" << W - m << "\" y=\"" << H - m + 20 << "\" text-anchor=\"end\">"
        << format_double(xmax) << "</text>\n";
    out << "<text x=\"" << m - 5 << "\" y=\"" << H - m << "\" text-anchor=\"end\">"
        << format_double(ymin) << "</text>\n";
    out << "<text x=\"" << m - 5 << "\" y=\"" << m << "\" text-anchor=\"end\">"
        << format_double(ymax) << "</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << X(xs[i]) << "," << Y(ys[i]) << (i + 1 < xs.size() ? " " : "");
    out << "\"/>\n</svg>\n";
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error(std::string("config parse failure: ") + e.what());
    }

    auto req = [&](const nlohmann::json& o, const char* key) -> const nlohmann::json& {
        if (!o.contains(key)) throw config_error(std::string("config missing key: ") + key);
        return o.at(key);
    };

    try {
        const auto& pj = req(j, "params");
        const auto m = req(pj, "m").get<std::vector<double>>();
        if (m.size() != 3) throw config_error("params.m must have three entries");
        SystemParams params(m[0], m[1], m[2],
                            req(pj, "alpha12").get<double>(), req(pj, "alpha23").get<double>(),
                            req(pj, "alpha13").get<double>(),
                            req(pj, "beta12").get<double>(), req(pj, "beta23").get<double>(),
                            req(pj, "beta13").get<double>(),
                            req(pj, "exp_a").get<double>(), req(pj, "exp_b").get<double>(),
                            pj.value("h", 0.0));

        RunConfig cfg{params, IntegratorConfig{}, EscapeThresholds{}, {}, {}, {}, {}, {}};
        if (j.contains("integrator")) {
            const auto& ij = j.at("integrator");
            cfg.integrator.rel_tol = ij.value("rel_tol", cfg.integrator.rel_tol);
            cfg.integrator.abs_tol = ij.value("abs_tol", cfg.integrator.abs_tol);
            cfg.integrator.max_step = ij.value("max_step", cfg.integrator.max_step);
            cfg.integrator.max_time = ij.value("max_time", cfg.integrator.max_time);
            cfg.integrator.event_tol = ij.value("event_tol", cfg.integrator.event_tol);
            cfg.integrator.validate();
        }
        if (j.contains("thresholds")) {
            const auto& tj = j.at("thresholds");
            cfg.thresholds.R_esc = tj.value("R_esc", cfg.thresholds.R_esc);
            cfg.thresholds.s_margin = tj.value("s_margin", cfg.thresholds.s_margin);
            cfg.thresholds.prox_delta = tj.value("prox_delta", cfg.thresholds.prox_delta);
            cfg.thresholds.dwell_sigma = tj.value("dwell_sigma", cfg.thresholds.dwell_sigma);
            cfg.thresholds.rho_esc = tj.value("rho_esc", cfg.thresholds.rho_esc);
        }
        if (j.contains("simulate")) {
            const auto& sj = j.at("simulate");
            SimulateConfig sc;
            sc.chart = sj.value("chart", sc.chart);
            sc.state = req(sj, "state").get<std::vector<double>>();
            sc.events = sj.value("events", true);
            if (sc.state.size() != 4)
                throw config_error("simulate.state must have four entries");
            if (sc.chart != "h0" && sc.chart != "hpos")
                throw config_error("simulate.chart must be h0 or hpos");
            cfg.simulate = sc;
        }
        if (j.contains("po_search")) {
            const auto& sj = j.at("po_search");
            PoSearchConfig pc;
            pc.seed_y = sj.value("seed_y", 0.0);
            pc.seed_w = req(sj, "seed_w").get<double>();
            pc.max_iter = sj.value("max_iter", 40);
            pc.tol = sj.value("tol", 1e-8);
            cfg.po_search = pc;
        }
        if (j.contains("hetero")) {
            HeteroConfig hc;
            hc.sigma_span = j.at("hetero").value("sigma_span", 20.0);
            cfg.hetero = hc;
        }
        if (j.contains("sweep")) {
            const auto& sj = j.at("sweep");
            SweepConfig sc;
            sc.n = sj.value("n", 1000);
            sc.seed = sj.value("seed", std::uint64_t{1});
            sc.workers = sj.value("workers", 1);
            sc.chart = sj.value("chart", std::string("h0"));
            if (sc.n < 1) throw config_error("sweep.n must be >= 1");
            cfg.sweep = sc;
        }
        if (j.contains("infinity")) {
            const auto& sj = j.at("infinity");
            InfinityConfig ic;
            ic.chart = sj.value("chart", std::string("hpos"));
            ic.orbits = sj.value("orbits", 5);
            ic.sigma_span = sj.value("sigma_span", 50.0);
            cfg.infinity = ic;
        }
        return cfg;
    } catch (const config_error&) {
        throw;
    } catch (const std::exception& e) {
        throw config_error(std::string("invalid config: ") + e.what());
    }
}

}  // namespace lin3b
