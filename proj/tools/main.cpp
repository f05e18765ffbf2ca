// Scenario runner: reproduces the engine's table/figure data as CSV plus
// JSON reports. Exit codes: 0 success, 2 config error, 3 numerical-quality
// failure (norm drift or invariance residual beyond tolerance).
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "superad/engine.hpp"
#include "superad/propagator.hpp"
#include "superad/protocols.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace superad;

namespace {

constexpr double kDriftTol = 1e-7;
constexpr double kResidualTol = 1e-6;

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QualityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    std::string kind = "landau_zener";
    double alpha = -20.0;
    double omega0 = 0.2;
    double tf = 0.2;
    int jmax = 5;
    int samples = 20001;
    double ratio_threshold = 10.0;
    double nu = 1.0;
    std::string out;
    // region scan
    std::vector<double> tf_list{0.2, 2.0};
    double omega_min = 1.0;
    double omega_max = 1000.0;
    int omega_steps = 1000;
};

void validate(const ScenarioConfig& c) {
    if (c.tf <= 0.0) throw ConfigError("tf must be > 0");
    if (c.samples < 1001 || c.samples % 2 == 0)
        throw ConfigError("samples must be odd and >= 1001");
    if (c.jmax < 0 || c.jmax > 8) throw ConfigError("jmax must be in [0, 8]");
    if (c.kind != "landau_zener" && c.kind != "invariant")
        throw ConfigError("kind must be landau_zener or invariant");
    if (c.ratio_threshold <= 0.0) throw ConfigError("ratio_threshold must be > 0");
    if (c.omega_steps < 2) throw ConfigError("omega_steps must be >= 2");
    if (c.omega_min <= 0.0 || c.omega_max <= c.omega_min)
        throw ConfigError("need 0 < omega_min < omega_max");
    for (double t : c.tf_list)
        if (t <= 0.0) throw ConfigError("tf_list entries must be > 0");
}

void load_config_file(const std::string& path, ScenarioConfig& c) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    try {
        if (j.contains("kind")) c.kind = j["kind"].get<std::string>();
        if (j.contains("alpha")) c.alpha = j["alpha"].get<double>();
        if (j.contains("omega0")) c.omega0 = j["omega0"].get<double>();
        if (j.contains("tf")) c.tf = j["tf"].get<double>();
        if (j.contains("jmax")) c.jmax = j["jmax"].get<int>();
        if (j.contains("samples")) c.samples = j["samples"].get<int>();
        if (j.contains("ratio_threshold")) c.ratio_threshold = j["ratio_threshold"].get<double>();
        if (j.contains("nu")) c.nu = j["nu"].get<double>();
        if (j.contains("out")) c.out = j["out"].get<std::string>();
        if (j.contains("tf_list")) c.tf_list = j["tf_list"].get<std::vector<double>>();
        if (j.contains("omega_min")) c.omega_min = j["omega_min"].get<double>();
        if (j.contains("omega_max")) c.omega_max = j["omega_max"].get<double>();
        if (j.contains("omega_steps")) c.omega_steps = j["omega_steps"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config type error: ") + e.what());
    }
}

fs::path output_dir(const ScenarioConfig& c) {
    if (!c.out.empty()) return c.out;
    if (const char* env = std::getenv("SUPERAD_OUT")) return env;
    return ".";
}

// Atomic write: stage to a sibling temp file, then rename over the target.
void write_file(const fs::path& path, const std::string& body) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << body;
    }
    fs::rename(tmp, path);
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_report(const fs::path& path, const json& j) {
    write_file(path, j.dump(2) + "\n");
    std::printf("wrote %s\n", path.c_str());
}

void write_csv(const fs::path& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::string body = header + "\n";
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) body += ',';
            body += num(row[k]);
        }
        body += '\n';
    }
    write_file(path, body);
    std::printf("wrote %s\n", path.c_str());
}

IterationStack build_stack(const ScenarioConfig& c, int depth) {
    const int order = std::max(depth + 1, 2);
    if (c.kind == "invariant") {
        const ControlProtocol p = invariant_to_controls(invariant_ansatz(c.tf, c.nu), c.samples,
                                                        order + 1);
        return iterate(p, depth);
    }
    const ControlProtocol p =
        landau_zener({c.alpha, c.omega0, c.tf}, c.samples, order + 1);
    return iterate(p, depth);
}

json bc_report_json(const AnalysisReport& rep) {
    json out{{"order_j", rep.order_j}, {"threshold", rep.threshold}, {"pass", rep.pass}};
    out["ratios"] = json::array();
    for (const auto& r : rep.ratios)
        out["ratios"].push_back({{"frame", r.frame},
                                 {"ratio_start", r.ratio_start},
                                 {"ratio_end", r.ratio_end},
                                 {"required", r.required},
                                 {"pass", r.pass}});
    return out;
}

void require_drift(const StateTrajectory& traj) {
    if (traj.max_norm_drift > kDriftTol)
        throw QualityError("norm drift " + num(traj.max_norm_drift) + " exceeds tolerance");
}

int cmd_table1(const ScenarioConfig& c) {
    const IterationStack stack = build_stack(c, c.jmax);
    std::vector<std::vector<double>> rows;
    for (int j = 0; j <= c.jmax; ++j) {
        const auto h = (j == 0) ? stack.h0() : stack.h0_modified(j);
        double mx = 0.0, my = 0.0;
        for (const auto& v : h) {
            mx = std::max(mx, std::abs(v.x));
            my = std::max(my, std::abs(v.y));
        }
        rows.push_back({static_cast<double>(j), mx, my});
    }
    const fs::path dir = output_dir(c);
    write_csv(dir / "table1.csv", "j,x_max,y_max", rows);
    json rep{{"alpha", c.alpha}, {"omega0", c.omega0}, {"tf", c.tf}, {"jmax", c.jmax}};
    if (c.kind == "landau_zener") {
        const LZParams p{c.alpha, c.omega0, c.tf};
        const FeasibilityBounds fb = lz_feasibility(p);
        rep["adiabaticity_margin"] = adiabaticity_margin(landau_zener(p, c.samples));
        rep["feasible"] = fb.feasible;
        rep["alpha_lower"] = 10.0 * fb.lower;
        rep["alpha_upper"] = 0.1 * fb.upper;
    }
    write_report(dir / "table1_report.json", rep);
    return 0;
}

int cmd_populations(const ScenarioConfig& c) {
    const IterationStack stack = build_stack(c, c.jmax);
    const Spinor psi0{1.0, 0.0};
    const TimeGrid grid = stack.grid();
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) rows[static_cast<std::size_t>(i)].push_back(grid.t(i));
    std::string header = "t,p1_h0";
    double worst_drift = 0.0;
    for (int j = 0; j <= c.jmax; ++j) {
        const auto h = (j == 0) ? stack.h0() : stack.h0_modified(j);
        const StateTrajectory traj = propagate(h, grid, psi0);
        require_drift(traj);
        worst_drift = std::max(worst_drift, traj.max_norm_drift);
        if (j > 0) header += ",p1_h0_" + std::to_string(j);
        const PopulationTrace pops = populations(traj);
        for (int i = 0; i < grid.n; ++i) rows[static_cast<std::size_t>(i)].push_back(pops.p1[i]);
    }
    const fs::path dir = output_dir(c);
    write_csv(dir / "populations.csv", header, rows);
    write_report(dir / "populations_report.json",
                 {{"max_norm_drift", worst_drift},
                  {"bc_check", bc_report_json(
                       shortcut_bc_check(stack, std::max(c.jmax, 1), c.ratio_threshold))}});
    return 0;
}

int cmd_region(const ScenarioConfig& c) {
    std::vector<std::vector<double>> rows;
    for (double tf : c.tf_list) {
        for (int k = 0; k < c.omega_steps; ++k) {
            const double w = c.omega_min + (c.omega_max - c.omega_min) * k / (c.omega_steps - 1);
            const double lower = 20.0 * w / tf; // min |alpha| for a fast sweep
            const double upper = 0.2 * w * w;   // max |alpha| for validity
            rows.push_back({tf, w, lower, upper, upper > lower ? 1.0 : 0.0});
        }
    }
    write_csv(output_dir(c) / "region.csv", "tf,omega0,alpha_min,alpha_max,feasible", rows);
    return 0;
}

int cmd_invariant(const ScenarioConfig& c) {
    const InvariantAnsatz ansatz = invariant_ansatz(c.tf, c.nu);
    const ControlProtocol protocol =
        invariant_to_controls(ansatz, c.samples, std::max(c.jmax + 2, 8));
    const double residual = invariance_residual(ansatz, protocol);
    const StateTrajectory traj =
        propagate(protocol.hamiltonian_samples(), protocol.grid(), {1.0, 0.0});
    require_drift(traj);
    if (residual > kResidualTol)
        throw QualityError("invariance residual " + num(residual) + " exceeds tolerance");
    const PopulationTrace pops = populations(traj);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < protocol.n_samples(); ++i) {
        const double t = protocol.grid().t(i);
        rows.push_back({t, ansatz.gamma(t), ansatz.beta(t), protocol.omega(i).value(),
                        protocol.delta(i).value(), pops.p1[i]});
    }
    const fs::path dir = output_dir(c);
    write_csv(dir / "invariant.csv", "t,gamma,beta,omega_r,delta,p1", rows);
    const IterationStack stack = iterate(protocol, std::max(c.jmax, 1));
    write_report(dir / "invariant_report.json",
                 {{"invariance_residual", residual},
                  {"max_norm_drift", traj.max_norm_drift},
                  {"final_p1", pops.p1[pops.p1.grid.n - 1]},
                  {"bc_check", bc_report_json(
                       shortcut_bc_check(stack, std::max(c.jmax, 1), c.ratio_threshold))}});
    return 0;
}

int cmd_iterate(const ScenarioConfig& c) {
    const IterationStack stack = build_stack(c, c.jmax);
    const TimeGrid grid = stack.grid();
    std::string header = "t";
    for (int j = 0; j <= c.jmax; ++j) {
        const std::string s = std::to_string(j);
        header += ",x" + s + ",y" + s + ",z" + s;
    }
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        row.push_back(grid.t(i));
        for (int j = 0; j <= c.jmax; ++j) {
            const CartesianTriple v = stack.frame(j).cartesian_at(i);
            row.push_back(v.x);
            row.push_back(v.y);
            row.push_back(v.z);
        }
    }
    const fs::path dir = output_dir(c);
    write_csv(dir / "frames.csv", header, rows);
    write_report(dir / "iterate_report.json",
                 {{"jmax", c.jmax},
                  {"bc_check", bc_report_json(
                       shortcut_bc_check(stack, std::max(c.jmax, 1), c.ratio_threshold))}});
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"superadiabatic iteration engine"};
    app.require_subcommand(1);

    ScenarioConfig cfg;
    std::string config_path;
    std::optional<double> f_alpha, f_omega0, f_tf;
    std::optional<int> f_jmax, f_samples;
    std::optional<std::string> f_out;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--alpha", f_alpha, "detuning chirp rate");
        sub->add_option("--omega0", f_omega0, "Rabi frequency");
        sub->add_option("--tf", f_tf, "protocol duration");
        sub->add_option("--jmax", f_jmax, "maximum iteration order");
        sub->add_option("--samples", f_samples, "time samples (odd, >= 1001)");
        sub->add_option("--out", f_out, "output directory");
        sub->add_option("--kind", cfg.kind, "protocol kind: landau_zener | invariant");
    };
    for (const char* name : {"table1", "populations", "region", "invariant", "iterate"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (f_alpha) cfg.alpha = *f_alpha;
        if (f_omega0) cfg.omega0 = *f_omega0;
        if (f_tf) cfg.tf = *f_tf;
        if (f_jmax) cfg.jmax = *f_jmax;
        if (f_samples) cfg.samples = *f_samples;
        if (f_out) cfg.out = *f_out;
        const CLI::App* sub = app.get_subcommands().front();
        if (sub->get_name() == "invariant") cfg.kind = "invariant";
        validate(cfg);

        if (sub->get_name() == "table1") return cmd_table1(cfg);
        if (sub->get_name() == "populations") return cmd_populations(cfg);
        if (sub->get_name() == "region") return cmd_region(cfg);
        if (sub->get_name() == "invariant") return cmd_invariant(cfg);
        return cmd_iterate(cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const QualityError& e) {
        std::fprintf(stderr, "numerical-quality failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
