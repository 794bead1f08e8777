// Command-line front end: config-driven sweeps, bound and
// repeatability tables, and the verification suite.
//
// Exit codes: 0 success, 1 check failure, 2 config error,
// 3 numerical-precondition error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "waysim/waysim.hpp"

namespace {

struct Overrides {
    std::vector<double> lambdas;
    std::string model;
    std::string out;
    int grid_n = 0;
    double grid_span = 0.0;
    std::optional<std::uint64_t> seed;
    bool emit_plot_data = false;
};

void add_common_options(CLI::App* cmd, std::string& config_path, Overrides& ov) {
    cmd->add_option("-c,--config", config_path, "JSON config file")->required();
    cmd->add_option("--lambda", ov.lambdas, "override lambda values");
    cmd->add_option("--model", ov.model, "override model (ozawa|alt)");
    cmd->add_option("-o,--out", ov.out, "override output path prefix");
    cmd->add_option("--grid-n", ov.grid_n, "override grid cell count");
    cmd->add_option("--grid-span", ov.grid_span, "override grid halfspan");
    cmd->add_option("--seed", ov.seed, "override RNG seed");
    cmd->add_flag("--emit-plot-data", ov.emit_plot_data,
                  "also write per-lambda error-density samples (x, e(x)) as TSV");
}

waysim::SweepConfig load_with_overrides(const std::string& path, const Overrides& ov) {
    waysim::SweepConfig cfg = waysim::load_config(path);
    if (!ov.lambdas.empty()) cfg.lambda_values = ov.lambdas;
    if (!ov.model.empty()) {
        if (ov.model == "ozawa")
            cfg.model = waysim::Model::ozawa;
        else if (ov.model == "alt")
            cfg.model = waysim::Model::alt;
        else
            throw waysim::config_error("--model must be ozawa or alt");
    }
    if (!ov.out.empty()) cfg.output_path = ov.out;
    if (ov.grid_n > 0) {
        if (!waysim::is_power_of_two(ov.grid_n))
            throw waysim::config_error("--grid-n must be a power of two");
        cfg.grid_n = ov.grid_n;
    }
    if (ov.grid_span > 0.0) cfg.grid_span = ov.grid_span;
    if (ov.seed) cfg.seed = *ov.seed;
    if (ov.emit_plot_data) cfg.emit_plot_data = true;
    for (double l : cfg.lambda_values)
        if (!(l > 1e-9)) throw waysim::config_error("every lambda must exceed 1e-9");
    if (cfg.lambda_values.empty()) throw waysim::config_error("lambda_values must be nonempty");
    return cfg;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw waysim::config_error("cannot write " + path);
    out << content;
}

void emit_plot_files(const waysim::SweepConfig& cfg) {
    const waysim::GridSpec grid = cfg.base_grid();
    for (std::size_t i = 0; i < cfg.lambda_values.size(); ++i) {
        const double lam = cfg.lambda_values[i];
        waysim::Density e = [&] {
            if (cfg.model == waysim::Model::ozawa) {
                const waysim::ozawa::Probe probe{
                    waysim::sample_wavefunction(grid, cfg.ozawa_probes.phi1),
                    waysim::sample_wavefunction(grid, cfg.ozawa_probes.phi2),
                    waysim::sample_wavefunction(grid, cfg.ozawa_probes.phi_v)};
                return waysim::ozawa::error_density(probe, lam, grid.dx());
            }
            const waysim::alt::Probe probe{
                waysim::sample_wavefunction(grid, cfg.alt_probes.probe)};
            return waysim::alt::error_density(probe, lam);
        }();
        write_file(cfg.output_path + "_e" + std::to_string(i) + ".tsv", waysim::density_dump(e));
    }
}

int run_sweep_cmd(const waysim::SweepConfig& cfg) {
    const auto records = waysim::run_sweep(cfg);
    write_file(cfg.output_path + ".csv", waysim::sweep_csv(records));
    write_file(cfg.output_path + ".json", waysim::sweep_report_json(cfg, records).dump(2) + "\n");
    if (cfg.emit_plot_data) emit_plot_files(cfg);
    std::printf("wrote %s.csv and %s.json (%zu rows)\n", cfg.output_path.c_str(),
                cfg.output_path.c_str(), records.size());
    return 0;
}

int run_bounds_cmd(const waysim::SweepConfig& cfg) {
    const auto reports = waysim::run_bounds(cfg);
    write_file(cfg.output_path + "_bounds.csv", waysim::bounds_csv(reports));
    int violations = 0;
    for (const auto& r : reports) {
        std::printf("lambda %-10.6g eps^2 %-12.6g rhs_general %-12.6g rhs_yanase %-12.6g %s%s\n",
                    r.lambda, r.eps_sq, r.rhs_general, r.rhs_yanase,
                    r.general_ok ? "general:ok " : "general:VIOLATED ",
                    r.yanase_ok ? "yanase:ok"
                                : (r.yanase_applicable ? "yanase:VIOLATED"
                                                       : "yanase:violated(expected)"));
        if (!r.general_ok || (r.yanase_applicable && !r.yanase_ok)) ++violations;
    }
    std::printf("wrote %s_bounds.csv\n", cfg.output_path.c_str());
    return violations == 0 ? 0 : 1;
}

int run_repeat_cmd(const waysim::SweepConfig& cfg) {
    const auto records = waysim::run_repeat(cfg);
    write_file(cfg.output_path + "_repeat.csv", waysim::repeat_csv(records));
    int failures = 0;
    for (const auto& r : records) {
        if (std::isnan(r.predicted_d)) {
            std::printf("lambda %-10.6g repeat_width %-10.6g (no compact-support prediction)\n",
                        r.lambda, r.repeat_width);
        } else {
            std::printf("lambda %-10.6g repeat_width %-10.6g predicted %-10.6g %s\n", r.lambda,
                        r.repeat_width, r.predicted_d,
                        r.within_prediction > 0.5 ? "ok" : "OVER PREDICTION");
            if (r.within_prediction < 0.5) ++failures;
        }
    }
    std::printf("wrote %s_repeat.csv\n", cfg.output_path.c_str());
    return failures == 0 ? 0 : 1;
}

int run_verify_cmd(const waysim::SweepConfig& cfg) {
    const auto report = waysim::verify(cfg);
    for (const auto& r : report.results) {
        const char* tag = r.status == waysim::checks::Status::pass ? " ok "
                          : r.status == waysim::checks::Status::expected_violation
                              ? "expv"
                              : "FAIL";
        std::printf("[%s] %-32s %s (%.2fs)\n", tag, r.name.c_str(), r.detail.c_str(),
                    r.elapsed_s);
    }
    write_file(cfg.output_path + "_verify.json",
               waysim::verify_report_json(cfg, report).dump(2) + "\n");
    std::printf("%s; wrote %s_verify.json\n",
                report.passed() ? "all checks passed" : "CHECK FAILURES", cfg.output_path.c_str());
    return report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"momentum-conserving position-measurement simulator"};
    app.set_version_flag("--version", waysim::version_string);
    app.require_subcommand(1);

    std::string config_path;
    Overrides ov;
    auto* sweep = app.add_subcommand("sweep", "run the lambda sweep and emit CSV/JSON");
    auto* verify = app.add_subcommand("verify", "run the full invariant suite");
    auto* bounds = app.add_subcommand("bounds", "evaluate the error bounds per lambda");
    auto* repeat = app.add_subcommand("repeat", "evaluate repeatability widths per lambda");
    for (auto* cmd : {sweep, verify, bounds, repeat}) add_common_options(cmd, config_path, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const waysim::SweepConfig cfg = load_with_overrides(config_path, ov);
        if (sweep->parsed()) return run_sweep_cmd(cfg);
        if (verify->parsed()) return run_verify_cmd(cfg);
        if (bounds->parsed()) return run_bounds_cmd(cfg);
        return run_repeat_cmd(cfg);
    } catch (const waysim::config_error& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const waysim::precondition_error& e) {
        std::fprintf(stderr, "numerical precondition: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
