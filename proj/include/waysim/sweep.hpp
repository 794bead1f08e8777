#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "waysim/checks.hpp"
#include "waysim/version.hpp"

namespace waysim {

/// Malformed or semantically invalid configuration. Distinct from
/// precondition_error so the CLI can map it to its own exit code.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& message) : std::runtime_error(message) {}
};

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

struct OzawaProbeConfig {
    ProbeFamily phi1 = GaussianShape{0.0, 0.5};
    ProbeFamily phi2 = GaussianShape{0.0, 1.0};
    ProbeFamily phi_v = GaussianShape{0.0, 1.0};
};

struct AltProbeConfig {
    ProbeFamily probe = GaussianShape{0.0, 1.0};
};

struct SweepConfig {
    Model model = Model::ozawa;
    std::vector<double> lambda_values{1.0, 2.0, 5.0, 10.0};
    double grid_span = 16.0;  // grid is [-span, span)
    int grid_n = 2048;
    ProbeFamily object_state = GaussianShape{0.0, 1.0};
    OzawaProbeConfig ozawa_probes;
    AltProbeConfig alt_probes;
    double eps_width = 0.05;
    double eps_repeat = 1e-6;
    std::string output_path = "waysim_out";
    std::uint64_t seed = 20240801;
    int oracle_n = 512;
    double repeat_window = 4.0;
    int repeat_intervals = 8;
    bool emit_plot_data = false;

    GridSpec base_grid() const { return make_centered_grid(grid_span, grid_n); }
    GridSpec oracle_grid() const {
        return make_centered_grid(std::min(grid_span, 12.0), oracle_n);
    }
};

namespace cfg_detail {

inline ProbeFamily family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw config_error("probe family needs an object with a \"kind\" field");
    const std::string kind = j.at("kind").get<std::string>();
    ProbeFamily f;
    if (kind == "gaussian") {
        f = GaussianShape{j.value("center", 0.0), j.value("sigma", 1.0)};
    } else if (kind == "box") {
        f = BoxShape{j.value("center", 0.0), j.value("halfwidth", 1.0),
                     j.value("edge_smoothing", 0.0)};
    } else if (kind == "triangle") {
        f = TriangleShape{j.value("center", 0.0), j.value("halfwidth", 1.0)};
    } else if (kind == "skewed_gaussian") {
        f = SkewedGaussianShape{j.value("center", 0.0), j.value("sigma", 1.0),
                                j.value("skew", 0.0)};
    } else {
        throw config_error("unknown probe family kind \"" + kind + "\"");
    }
    try {
        validate(f);
    } catch (const precondition_error& e) {
        throw config_error(e.what());
    }
    return f;
}

inline nlohmann::json family_to_json(const ProbeFamily& f) {
    nlohmann::json j;
    j["kind"] = kind_name(f);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            j["center"] = s.center;
            if constexpr (std::is_same_v<T, GaussianShape>) {
                j["sigma"] = s.sigma;
            } else if constexpr (std::is_same_v<T, BoxShape>) {
                j["halfwidth"] = s.halfwidth;
                j["edge_smoothing"] = s.edge_smoothing;
            } else if constexpr (std::is_same_v<T, TriangleShape>) {
                j["halfwidth"] = s.halfwidth;
            } else {
                j["sigma"] = s.sigma;
                j["skew"] = s.skew;
            }
        },
        f);
    return j;
}

} // namespace cfg_detail

inline SweepConfig config_from_json(const nlohmann::json& j) {
    SweepConfig c;
    try {
        if (j.contains("model")) {
            const std::string m = j.at("model").get<std::string>();
            if (m == "ozawa")
                c.model = Model::ozawa;
            else if (m == "alt")
                c.model = Model::alt;
            else
                throw config_error("model must be \"ozawa\" or \"alt\", got \"" + m + "\"");
        }
        if (j.contains("lambda_values"))
            c.lambda_values = j.at("lambda_values").get<std::vector<double>>();
        if (j.contains("grid")) {
            c.grid_span = j.at("grid").value("span", c.grid_span);
            c.grid_n = j.at("grid").value("n", c.grid_n);
        }
        if (j.contains("object_state"))
            c.object_state = cfg_detail::family_from_json(j.at("object_state"));
        if (j.contains("probe_states")) {
            const auto& p = j.at("probe_states");
            if (p.contains("phi1")) c.ozawa_probes.phi1 = cfg_detail::family_from_json(p.at("phi1"));
            if (p.contains("phi2")) c.ozawa_probes.phi2 = cfg_detail::family_from_json(p.at("phi2"));
            if (p.contains("phi_v"))
                c.ozawa_probes.phi_v = cfg_detail::family_from_json(p.at("phi_v"));
            if (p.contains("probe")) c.alt_probes.probe = cfg_detail::family_from_json(p.at("probe"));
        }
        c.eps_width = j.value("eps_width", c.eps_width);
        c.eps_repeat = j.value("eps_repeat", c.eps_repeat);
        c.output_path = j.value("output_path", c.output_path);
        c.seed = j.value("seed", c.seed);
        c.oracle_n = j.value("oracle_n", c.oracle_n);
        c.repeat_window = j.value("repeat_window", c.repeat_window);
        c.repeat_intervals = j.value("repeat_intervals", c.repeat_intervals);
        c.emit_plot_data = j.value("emit_plot_data", c.emit_plot_data);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse: ") + e.what());
    }

    if (c.lambda_values.empty()) throw config_error("lambda_values must be nonempty");
    for (double l : c.lambda_values)
        if (!(l > 1e-9)) throw config_error("every lambda must exceed 1e-9");
    if (!(c.eps_width > 0.0 && c.eps_width < 1.0)) throw config_error("eps_width must be in (0,1)");
    if (!(c.eps_repeat > 0.0 && c.eps_repeat < 1.0))
        throw config_error("eps_repeat must be in (0,1)");
    if (!(c.grid_span > 0.0)) throw config_error("grid span must be positive");
    if (!is_power_of_two(c.grid_n) || c.grid_n < 8)
        throw config_error("grid n must be a power of two >= 8");
    if (!is_power_of_two(c.oracle_n) || c.oracle_n < 8)
        throw config_error("oracle_n must be a power of two >= 8");
    if (c.repeat_intervals < 1) throw config_error("repeat_intervals must be >= 1");
    return c;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("config parse: ") + e.what());
    }
    return config_from_json(j);
}

inline nlohmann::json config_to_json(const SweepConfig& c) {
    nlohmann::json j;
    j["model"] = to_string(c.model);
    j["lambda_values"] = c.lambda_values;
    j["grid"] = {{"span", c.grid_span}, {"n", c.grid_n}};
    j["object_state"] = cfg_detail::family_to_json(c.object_state);
    if (c.model == Model::ozawa) {
        j["probe_states"] = {{"phi1", cfg_detail::family_to_json(c.ozawa_probes.phi1)},
                             {"phi2", cfg_detail::family_to_json(c.ozawa_probes.phi2)},
                             {"phi_v", cfg_detail::family_to_json(c.ozawa_probes.phi_v)}};
    } else {
        j["probe_states"] = {{"probe", cfg_detail::family_to_json(c.alt_probes.probe)}};
    }
    j["eps_width"] = c.eps_width;
    j["eps_repeat"] = c.eps_repeat;
    j["output_path"] = c.output_path;
    j["seed"] = c.seed;
    j["oracle_n"] = c.oracle_n;
    j["repeat_window"] = c.repeat_window;
    j["repeat_intervals"] = c.repeat_intervals;
    j["emit_plot_data"] = c.emit_plot_data;
    return j;
}

// ---------------------------------------------------------------------------
// sweep engine
// ---------------------------------------------------------------------------

/// One row of sweep output for a single coupling strength.
struct SweepRecord {
    double lambda = 0.0;
    double var_e = 0.0;
    double width_e = 0.0;
    double eps_sq = 0.0;
    double mu_sq = 0.0;
    double delta_p_apparatus_sq = 0.0;
    double rhs_general = 0.0;
    double rhs_yanase = 0.0;
    bool bound_general_ok = false;
    bool bound_yanase_ok = false;
    double repeat_width = 0.0;
    double predicted_d = 0.0;  // NaN when the probes are not compactly supported
    double oracle_l1_gap = 0.0;
};

namespace sweep_detail {

/// Outcome grid wide enough for the object's mass-bearing region plus
/// the error support, at the base spacing.
inline GridSpec outcome_grid(const Density& rho_obj, const Density& e) {
    const auto sx = effective_support(rho_obj);
    const auto se = effective_support(e);
    const double radius = std::max(std::abs(sx.first), std::abs(sx.second)) +
                          std::max(std::abs(se.first), std::abs(se.second)) + 1.0;
    const double dx = rho_obj.grid().dx();
    const int n = next_power_of_two(static_cast<int>(std::ceil(2.0 * radius / dx)));
    return GridSpec{-radius, -radius + n * dx, n};
}

} // namespace sweep_detail

inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
    require(cfg.grid_n >= 64, "grid-inadequate",
            "sweeps need a grid of at least 64 cells, got " + std::to_string(cfg.grid_n));
    const GridSpec grid = cfg.base_grid();
    const WaveFunction obj = sample_wavefunction(grid, cfg.object_state);
    const double dpo = variance(momentum_density(obj));

    // oracle-resolution copies for the quadrature gap column
    const GridSpec ogrid = cfg.oracle_grid();
    const WaveFunction obj_o = sample_wavefunction(ogrid, cfg.object_state);

    std::vector<SweepRecord> records;
    records.reserve(cfg.lambda_values.size());

    for (double lam : cfg.lambda_values) {
        SweepRecord rec;
        rec.lambda = lam;

        Density e = [&] {
            if (cfg.model == Model::ozawa) {
                const ozawa::Probe probe{sample_wavefunction(grid, cfg.ozawa_probes.phi1),
                                         sample_wavefunction(grid, cfg.ozawa_probes.phi2),
                                         sample_wavefunction(grid, cfg.ozawa_probes.phi_v)};
                return ozawa::error_density(probe, lam, grid.dx());
            }
            const alt::Probe probe{sample_wavefunction(grid, cfg.alt_probes.probe)};
            return alt::error_density(probe, lam);
        }();
        rec.var_e = variance(e);
        rec.width_e = overall_width(e, cfg.eps_width);

        const GridSpec w_grid = sweep_detail::outcome_grid(density_of(obj), e);

        if (cfg.model == Model::ozawa) {
            const ozawa::Probe probe{sample_wavefunction(grid, cfg.ozawa_probes.phi1),
                                     sample_wavefunction(grid, cfg.ozawa_probes.phi2),
                                     sample_wavefunction(grid, cfg.ozawa_probes.phi_v)};
            const auto joint = ozawa::joint_object_outcome_density(
                obj, probe, lam, w_grid, ozawa::JointMethod::closed_form);
            rec.eps_sq = noise_moment(joint);
            rec.mu_sq = mu_moment(joint);
            rec.delta_p_apparatus_sq = apparatus_momentum_spread_sq(probe);
            const auto b = check_bounds(Model::ozawa, lam, rec.eps_sq, rec.mu_sq, dpo,
                                        rec.delta_p_apparatus_sq,
                                        reference_momentum_spread_sq(probe));
            rec.rhs_general = b.rhs_general;
            rec.rhs_yanase = b.rhs_yanase;
            rec.bound_general_ok = b.general_ok;
            rec.bound_yanase_ok = b.yanase_ok;

            const IntervalFamily family = IntervalFamily::partition(
                w_grid, -cfg.repeat_window, cfg.repeat_window, cfg.repeat_intervals);
            rec.repeat_width = repeatability_width(joint, family, cfg.eps_repeat);
            try {
                rec.predicted_d = predicted_halfwidth_ozawa(
                    support_halfwidth(cfg.ozawa_probes.phi1),
                    support_halfwidth(cfg.ozawa_probes.phi2), lam);
            } catch (const precondition_error&) {
                rec.predicted_d = std::nan("");
            }

            const ozawa::Probe probe_o{sample_wavefunction(ogrid, cfg.ozawa_probes.phi1),
                                       sample_wavefunction(ogrid, cfg.ozawa_probes.phi2),
                                       sample_wavefunction(ogrid, cfg.ozawa_probes.phi_v)};
            rec.oracle_l1_gap = checks::oracle_gap_ozawa(ogrid, obj_o, probe_o, lam);
        } else {
            const alt::Probe probe{sample_wavefunction(grid, cfg.alt_probes.probe)};
            const auto joint = alt::joint_object_outcome_density(obj, probe, lam, w_grid);
            rec.eps_sq = noise_moment(joint);
            rec.mu_sq = mu_moment(joint);
            rec.delta_p_apparatus_sq = apparatus_momentum_spread_sq(probe);
            const auto b = check_bounds(Model::alt, lam, rec.eps_sq, rec.mu_sq, dpo,
                                        rec.delta_p_apparatus_sq,
                                        reference_momentum_spread_sq(probe));
            rec.rhs_general = b.rhs_general;
            rec.rhs_yanase = b.rhs_yanase;
            rec.bound_general_ok = b.general_ok;
            rec.bound_yanase_ok = b.yanase_ok;

            const IntervalFamily family = IntervalFamily::partition(
                w_grid, -cfg.repeat_window, cfg.repeat_window, cfg.repeat_intervals);
            rec.repeat_width = repeatability_width(joint, family, cfg.eps_repeat);
            try {
                rec.predicted_d =
                    predicted_halfwidth_alt(support_halfwidth(cfg.alt_probes.probe), lam);
            } catch (const precondition_error&) {
                rec.predicted_d = std::nan("");
            }

            const alt::Probe probe_o{sample_wavefunction(ogrid, cfg.alt_probes.probe)};
            rec.oracle_l1_gap = checks::oracle_gap_alt(ogrid, obj_o, probe_o, lam);
        }
        records.push_back(rec);
    }
    return records;
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace fmt_detail {

inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace fmt_detail

inline constexpr const char* sweep_csv_schema = "waysim.sweep.v1";

inline std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    os << "# schema=" << sweep_csv_schema << "\n";
    os << "lambda,var_e,width_e,eps_sq,mu_sq,delta_p_apparatus_sq,rhs_general,rhs_yanase,"
          "bound_general_ok,bound_yanase_ok,repeat_width,predicted_d,oracle_l1_gap\n";
    using fmt_detail::num17;
    for (const auto& r : records) {
        os << num17(r.lambda) << ',' << num17(r.var_e) << ',' << num17(r.width_e) << ','
           << num17(r.eps_sq) << ',' << num17(r.mu_sq) << ',' << num17(r.delta_p_apparatus_sq)
           << ',' << num17(r.rhs_general) << ',' << num17(r.rhs_yanase) << ','
           << (r.bound_general_ok ? 1 : 0) << ',' << (r.bound_yanase_ok ? 1 : 0) << ','
           << num17(r.repeat_width) << ',' << num17(r.predicted_d) << ','
           << num17(r.oracle_l1_gap) << '\n';
    }
    return os.str();
}

inline nlohmann::json record_to_json(const SweepRecord& r) {
    nlohmann::json j;
    j["lambda"] = r.lambda;
    j["var_e"] = r.var_e;
    j["width_e"] = r.width_e;
    j["eps_sq"] = r.eps_sq;
    j["mu_sq"] = r.mu_sq;
    j["delta_p_apparatus_sq"] = r.delta_p_apparatus_sq;
    j["rhs_general"] = r.rhs_general;
    j["rhs_yanase"] = r.rhs_yanase;
    j["bound_general_ok"] = r.bound_general_ok;
    j["bound_yanase_ok"] = r.bound_yanase_ok;
    j["repeat_width"] = r.repeat_width;
    if (std::isnan(r.predicted_d))
        j["predicted_d"] = nullptr;
    else
        j["predicted_d"] = r.predicted_d;
    j["oracle_l1_gap"] = r.oracle_l1_gap;
    return j;
}

inline nlohmann::json sweep_report_json(const SweepConfig& cfg,
                                        const std::vector<SweepRecord>& records) {
    nlohmann::json j;
    j["tool"] = "waysim";
    j["version"] = version_string;
    j["command"] = "sweep";
    j["config"] = config_to_json(cfg);
    j["records"] = nlohmann::json::array();
    for (const auto& r : records) j["records"].push_back(record_to_json(r));
    return j;
}

/// Per-lambda error-density samples for external plotting, two
/// tab-separated columns (x, e(x)).
inline std::string density_dump(const Density& d) {
    std::ostringstream os;
    using fmt_detail::num17;
    for (int i = 0; i < d.size(); ++i)
        os << num17(d.grid().node(i)) << '\t' << num17(d.val(i)) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// bounds / repeat command payloads
// ---------------------------------------------------------------------------

inline constexpr const char* bounds_csv_schema = "waysim.bounds.v1";

inline std::string bounds_csv(const std::vector<BoundReport>& reports) {
    std::ostringstream os;
    os << "# schema=" << bounds_csv_schema << "\n";
    os << "lambda,eps_sq,mu_sq,delta_p_object_sq,delta_p_apparatus_sq,delta_p_reference_sq,"
          "commutator_magnitude,rhs_general,rhs_yanase,yanase_applicable,bound_general_ok,"
          "bound_yanase_ok,bound_mu_ok\n";
    using fmt_detail::num17;
    for (const auto& r : reports) {
        os << num17(r.lambda) << ',' << num17(r.eps_sq) << ',' << num17(r.mu_sq) << ','
           << num17(r.delta_p_object_sq) << ',' << num17(r.delta_p_apparatus_sq) << ','
           << num17(r.delta_p_reference_sq) << ',' << num17(r.commutator_magnitude) << ','
           << num17(r.rhs_general) << ',' << num17(r.rhs_yanase) << ','
           << (r.yanase_applicable ? 1 : 0) << ',' << (r.general_ok ? 1 : 0) << ','
           << (r.yanase_ok ? 1 : 0) << ',' << (r.mu_ok ? 1 : 0) << '\n';
    }
    return os.str();
}

/// Bound reports for the configured states across the lambda list.
inline std::vector<BoundReport> run_bounds(const SweepConfig& cfg) {
    require(cfg.grid_n >= 64, "grid-inadequate",
            "bound runs need a grid of at least 64 cells, got " + std::to_string(cfg.grid_n));
    const GridSpec grid = cfg.base_grid();
    const WaveFunction obj = sample_wavefunction(grid, cfg.object_state);
    const double dpo = variance(momentum_density(obj));
    std::vector<BoundReport> reports;
    for (double lam : cfg.lambda_values) {
        if (cfg.model == Model::ozawa) {
            const ozawa::Probe probe{sample_wavefunction(grid, cfg.ozawa_probes.phi1),
                                     sample_wavefunction(grid, cfg.ozawa_probes.phi2),
                                     sample_wavefunction(grid, cfg.ozawa_probes.phi_v)};
            const Density e = ozawa::error_density(probe, lam, grid.dx());
            const GridSpec w_grid = sweep_detail::outcome_grid(density_of(obj), e);
            const auto joint = ozawa::joint_object_outcome_density(
                obj, probe, lam, w_grid, ozawa::JointMethod::closed_form);
            reports.push_back(check_bounds(Model::ozawa, lam, noise_moment(joint),
                                           mu_moment(joint), dpo,
                                           apparatus_momentum_spread_sq(probe),
                                           reference_momentum_spread_sq(probe)));
        } else {
            const alt::Probe probe{sample_wavefunction(grid, cfg.alt_probes.probe)};
            const Density e = alt::error_density(probe, lam);
            const GridSpec w_grid = sweep_detail::outcome_grid(density_of(obj), e);
            const auto joint = alt::joint_object_outcome_density(obj, probe, lam, w_grid);
            reports.push_back(check_bounds(Model::alt, lam, noise_moment(joint), mu_moment(joint),
                                           dpo, apparatus_momentum_spread_sq(probe),
                                           reference_momentum_spread_sq(probe)));
        }
    }
    return reports;
}

struct RepeatRecord {
    double lambda = 0.0;
    double repeat_width = 0.0;
    double predicted_d = 0.0;  // NaN for non-compact probes
    double within_prediction = 0.0;
};

inline constexpr const char* repeat_csv_schema = "waysim.repeat.v1";

inline std::string repeat_csv(const std::vector<RepeatRecord>& records) {
    std::ostringstream os;
    os << "# schema=" << repeat_csv_schema << "\n";
    os << "lambda,repeat_width,predicted_d,within_prediction\n";
    using fmt_detail::num17;
    for (const auto& r : records)
        os << num17(r.lambda) << ',' << num17(r.repeat_width) << ',' << num17(r.predicted_d)
           << ',' << num17(r.within_prediction) << '\n';
    return os.str();
}

inline std::vector<RepeatRecord> run_repeat(const SweepConfig& cfg) {
    require(cfg.grid_n >= 64, "grid-inadequate",
            "repeatability runs need a grid of at least 64 cells, got " +
                std::to_string(cfg.grid_n));
    const GridSpec grid = cfg.base_grid();
    const WaveFunction obj = sample_wavefunction(grid, cfg.object_state);
    std::vector<RepeatRecord> records;
    for (double lam : cfg.lambda_values) {
        RepeatRecord rec;
        rec.lambda = lam;
        Density e = [&] {
            if (cfg.model == Model::ozawa) {
                const ozawa::Probe probe{sample_wavefunction(grid, cfg.ozawa_probes.phi1),
                                         sample_wavefunction(grid, cfg.ozawa_probes.phi2),
                                         sample_wavefunction(grid, cfg.ozawa_probes.phi_v)};
                return ozawa::error_density(probe, lam, grid.dx());
            }
            const alt::Probe probe{sample_wavefunction(grid, cfg.alt_probes.probe)};
            return alt::error_density(probe, lam);
        }();
        const GridSpec w_grid = sweep_detail::outcome_grid(density_of(obj), e);
        const IntervalFamily family = IntervalFamily::partition(
            w_grid, -cfg.repeat_window, cfg.repeat_window, cfg.repeat_intervals);
        if (cfg.model == Model::ozawa) {
            const ozawa::Probe probe{sample_wavefunction(grid, cfg.ozawa_probes.phi1),
                                     sample_wavefunction(grid, cfg.ozawa_probes.phi2),
                                     sample_wavefunction(grid, cfg.ozawa_probes.phi_v)};
            const auto joint = ozawa::joint_object_outcome_density(obj, probe, lam, w_grid);
            rec.repeat_width = repeatability_width(joint, family, cfg.eps_repeat);
            try {
                rec.predicted_d = predicted_halfwidth_ozawa(
                    support_halfwidth(cfg.ozawa_probes.phi1),
                    support_halfwidth(cfg.ozawa_probes.phi2), lam);
            } catch (const precondition_error&) {
                rec.predicted_d = std::nan("");
            }
        } else {
            const alt::Probe probe{sample_wavefunction(grid, cfg.alt_probes.probe)};
            const auto joint = alt::joint_object_outcome_density(obj, probe, lam, w_grid);
            rec.repeat_width = repeatability_width(joint, family, cfg.eps_repeat);
            try {
                rec.predicted_d =
                    predicted_halfwidth_alt(support_halfwidth(cfg.alt_probes.probe), lam);
            } catch (const precondition_error&) {
                rec.predicted_d = std::nan("");
            }
        }
        rec.within_prediction =
            std::isnan(rec.predicted_d)
                ? std::nan("")
                : (rec.repeat_width <= rec.predicted_d + 4.0 * grid.dx() ? 1.0 : 0.0);
        records.push_back(rec);
    }
    return records;
}

// ---------------------------------------------------------------------------
// verify: the full invariant suite
// ---------------------------------------------------------------------------

struct VerifyReport {
    std::vector<checks::CheckResult> results;

    bool passed() const {
        for (const auto& r : results)
            if (!r.ok()) return false;
        return true;
    }
};

/// Byte-exact CSV reproduction over two sweep evaluations of the same
/// config (capped at three lambda points to keep verify quick).
inline checks::CheckResult csv_determinism(const SweepConfig& cfg) {
    checks::detail::Stopwatch sw;
    SweepConfig small = cfg;
    if (small.lambda_values.size() > 3) small.lambda_values.resize(3);
    const std::string a = sweep_csv(run_sweep(small));
    const std::string b = sweep_csv(run_sweep(small));
    const bool ok = a == b && !a.empty();
    return {"csv-determinism", ok ? checks::Status::pass : checks::Status::fail,
            ok ? std::to_string(a.size()) + " bytes identical across two runs"
               : "outputs differ between runs",
            sw.seconds()};
}

inline VerifyReport verify(const SweepConfig& cfg) {
    require(cfg.grid_n >= 64, "grid-inadequate",
            "verification needs a grid of at least 64 cells, got " + std::to_string(cfg.grid_n));
    using namespace checks;
    const GridSpec grid = cfg.base_grid();
    // invariant tolerances are tied to these quadrature scales, so the
    // oracle checks do not inherit a coarser config grid
    const GridSpec ogrid = make_centered_grid(12.0, std::max(cfg.oracle_n, 512));
    const GridSpec bgrid = make_centered_grid(16.0, 1024);
    const GridSpec fine = make_centered_grid(12.0, 2048);  // narrow-kernel box cases
    VerifyReport rep;

    rep.results.push_back(convolution_moments(grid, 40, cfg.seed));
    rep.results.push_back(convolution_width_bound(grid, 40, cfg.seed + 1));
    rep.results.push_back(width_monotonicity(grid, 20, cfg.seed + 2));
    rep.results.push_back(uncertainty_relation(grid, 100, cfg.seed + 3));

    rep.results.push_back(variance_identity(grid, 0.5, 1.0, {1.0, 2.0, 5.0, 10.0}));
    rep.results.push_back(accuracy_floor(grid, {1.0, 10.0, 100.0, 1e4}, cfg.eps_width));
    rep.results.push_back(lambda_scaling(grid, 0.5, 1.0, {1.0, 3.1622776601683795, 10.0}));
    rep.results.push_back(oracle_equivalence_ozawa(ogrid, {0.5, 1.0, 2.0, 10.0}));
    {
        // box probes on the finer grid: the inaccuracy kernel shrinks
        // toward the cell scale and needs the resolution
        checks::detail::Stopwatch sw;
        const WaveFunction obj = sample_wavefunction(fine, GaussianShape{0.5, 1.0});
        const ozawa::Probe boxp{sample_wavefunction(fine, BoxShape{0.0, 1.0, 0.0}),
                                sample_wavefunction(fine, BoxShape{0.3, 2.0, 0.0}),
                                sample_wavefunction(fine, GaussianShape{0.0, 1.0})};
        double worst = 0.0;
        for (double lam : {0.5, 2.0, 10.0})
            worst = std::max(worst, oracle_gap_ozawa(fine, obj, boxp, lam));
        rep.results.push_back({"ozawa-oracle-equivalence-box",
                               worst <= 1e-3 ? Status::pass : Status::fail,
                               "max L1 gap " + checks::detail::fmt(worst) + " (box probes)",
                               sw.seconds()});
    }
    rep.results.push_back(oracle_equivalence_alt(ogrid, {0.3, std::log(2.0), 1.0, 3.0}));
    {
        const WaveFunction obj = sample_wavefunction(fine, GaussianShape{0.5, 1.0});
        const alt::Probe boxp{sample_wavefunction(fine, BoxShape{0.2, 1.0, 0.0})};
        double worst = 0.0;
        for (double lam : {0.3, std::log(2.0), 1.0, 3.0})
            worst = std::max(worst, oracle_gap_alt(fine, obj, boxp, lam));
        rep.results.push_back({"alt-oracle-equivalence-box",
                               worst <= 1e-3 ? Status::pass : Status::fail,
                               "max L1 gap " + checks::detail::fmt(worst) + " (box probe)", 0.0});
    }

    rep.results.push_back(exponential_scaling(grid, 1.0, {0.5, 1.0, 2.0, 3.0}));
    rep.results.push_back(no_accuracy_floor(grid, 1.0, cfg.eps_width));
    rep.results.push_back(alt_unitarity(grid, {0.5, 1.0, 3.0}));

    rep.results.push_back(repeatability_predictions(make_centered_grid(12.0, 512), cfg.eps_repeat));

    {
        // one ozawa bound sweep feeds both the general and the
        // Yanase-form judgments
        checks::detail::Stopwatch sw;
        const auto sweep = bound_sweep(Model::ozawa, bgrid);
        int gen_fail = 0, yan_fail = 0;
        for (const auto& r : sweep.reports) {
            gen_fail += r.general_ok ? 0 : 1;
            yan_fail += (r.yanase_ok && r.mu_ok) ? 0 : 1;
        }
        const double elapsed = sw.seconds();
        const bool enough = static_cast<int>(sweep.reports.size()) >= 20;
        rep.results.push_back({"general-bound-ozawa",
                               (gen_fail == 0 && enough) ? Status::pass : Status::fail,
                               std::to_string(sweep.reports.size()) + " configs, " +
                                   std::to_string(gen_fail) + " failures, " +
                                   std::to_string(sweep.quadrature_spot_checks) +
                                   " quadrature spot checks",
                               elapsed});
        rep.results.push_back({"yanase-bound-ozawa",
                               (yan_fail == 0 && enough) ? Status::pass : Status::fail,
                               std::to_string(sweep.reports.size()) + " configs, " +
                                   std::to_string(yan_fail) + " failures",
                               0.0});
    }
    rep.results.push_back(general_bound_suite(Model::alt, bgrid));
    rep.results.push_back(yanase_violation_alt(bgrid));

    rep.results.push_back(csv_determinism(cfg));
    return rep;
}

inline nlohmann::json verify_report_json(const SweepConfig& cfg, const VerifyReport& rep) {
    nlohmann::json j;
    j["tool"] = "waysim";
    j["version"] = version_string;
    j["command"] = "verify";
    j["config"] = config_to_json(cfg);
    j["passed"] = rep.passed();
    j["checks"] = nlohmann::json::array();
    for (const auto& r : rep.results) {
        j["checks"].push_back({{"name", r.name},
                               {"status", checks::to_string(r.status)},
                               {"detail", r.detail},
                               {"elapsed_s", r.elapsed_s}});
    }
    return j;
}

} // namespace waysim
