#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdiff/config.hpp"
#include "gdiff/errors.hpp"

namespace fs = std::filesystem;
using namespace gdiff;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::string orders_range;
    std::string method;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

void apply_overrides(RunConfig& cfg, const CliOptions& opt) {
    if (opt.seed_set)
        cfg.mc.seed = opt.seed;
    if (!opt.method.empty())
        cfg.method = opt.method;
    if (!opt.orders_range.empty()) {
        const auto colon = opt.orders_range.find(':');
        if (colon == std::string::npos)
            throw ConfigError("--orders expects min:max");
        try {
            cfg.nmin = std::stoi(opt.orders_range.substr(0, colon));
            cfg.nmax = std::stoi(opt.orders_range.substr(colon + 1));
        } catch (const std::exception&) {
            throw ConfigError("--orders expects integers min:max");
        }
        if (cfg.nmin > cfg.nmax)
            throw ConfigError("--orders: min must not exceed max");
    }
}

double beam_mass(const RunConfig& cfg) {
    return cfg.kind == BeamKind::trimer ? 3.0 * cfg.mass : cfg.mass;
}

void validity_gate(const RunConfig& cfg, double speed) {
    const Beam b{beam_mass(cfg), speed, cfg.theta};
    const double ratio = validity_ratio(cfg.grating, b);
    if (ratio > 0.05)
        throw ConfigError("de Broglie wavelength too large: lambda/d = " +
                          std::to_string(ratio) + " > 0.05");
    if (ratio > 0.01)
        std::cerr << "warning: lambda/d = " << ratio
                  << " above 0.01, diffraction formulas degrade\n";
}

fs::path prepare_out(const CliOptions& opt) {
    fs::path dir(opt.out_dir);
    fs::create_directories(dir);
    return dir;
}

int cmd_pattern(const CliOptions& opt) {
    RunConfig cfg = load_config(opt.config_path);
    apply_overrides(cfg, opt);
    validity_gate(cfg, cfg.speed);
    const fs::path dir = prepare_out(opt);
    const SlitFrame f = slit_frame(cfg.grating);
    const bool exact = cfg.method == "exact" || cfg.method == "both";
    const bool cumulant = cfg.method == "cumulant" || cfg.method == "both";
    if (cfg.kind == BeamKind::atom) {
        const Beam b{cfg.mass, cfg.speed, cfg.theta};
        if (exact)
            write_pattern_csv((dir / "pattern_atom_exact.csv").string(),
                              pattern_exact(cfg.grating, f, b, cfg.c3, cfg.nmin,
                                            cfg.nmax, cfg.quad_tol),
                              cfg);
        if (cumulant)
            write_pattern_csv((dir / "pattern_atom_cumulant.csv").string(),
                              pattern_cumulant(cfg.grating, f, b, cfg.c3,
                                               cfg.nmin, cfg.nmax,
                                               cfg.quad_tol),
                              cfg);
    } else {
        const TrimerModel model = make_model(cfg.family, cfg.mean_r, cfg.mass);
        if (exact)
            write_pattern_csv(
                (dir / "pattern_trimer_exact.csv").string(),
                pattern_trimer_exact(cfg.grating, f, model, cfg.speed,
                                     cfg.theta, cfg.c3, cfg.nmin, cfg.nmax,
                                     cfg.mc),
                cfg);
        if (cumulant)
            write_pattern_csv(
                (dir / "pattern_trimer_cumulant.csv").string(),
                pattern_trimer_cumulant(cfg.grating, f, model, cfg.speed,
                                        cfg.theta, cfg.c3, cfg.nmin, cfg.nmax,
                                        cfg.mc),
                cfg);
    }
    return 0;
}

int cmd_fit(const CliOptions& opt, const std::string& pattern_path,
            const std::string& kind) {
    RunConfig cfg = load_config(opt.config_path);
    apply_overrides(cfg, opt);
    if (kind == "atom")
        cfg.kind = BeamKind::atom;
    else if (kind == "trimer")
        cfg.kind = BeamKind::trimer;
    else if (!kind.empty())
        throw ConfigError("--kind must be atom or trimer");
    const fs::path dir = prepare_out(opt);
    const Pattern data = read_pattern_csv(pattern_path, cfg);
    const SlitFrame f = slit_frame(cfg.grating);
    const FitResult fr =
        fit_pattern(data, f.S0, cfg.kind == BeamKind::trimer);
    write_fit_report((dir / "fit_report.json").string(), fr, cfg.speed, cfg);
    return 0;
}

int cmd_extract_size(const CliOptions& opt,
                     const std::vector<std::string>& reports) {
    RunConfig cfg = load_config(opt.config_path);
    apply_overrides(cfg, opt);
    const fs::path dir = prepare_out(opt);
    const SlitFrame f = slit_frame(cfg.grating);
    std::vector<double> speeds, seff;
    if (!reports.empty()) {
        std::uint64_t h0 = 0;
        bool first = true;
        for (const std::string& path : reports) {
            const FitReport r = read_fit_report(path);
            if (first) {
                h0 = r.config_hash;
                first = false;
            } else if (r.config_hash != h0) {
                throw ConfigError("fit reports disagree on the configuration");
            }
            speeds.push_back(r.speed);
            seff.push_back(r.fit.seff);
        }
    } else {
        // synthetic pipeline: generate, fit, collect S_eff per velocity
        speeds = cfg.speeds.empty() ? velocity_design() : cfg.speeds;
        const TrimerModel model = make_model(cfg.family, cfg.mean_r, cfg.mass);
        for (double v : speeds) {
            validity_gate(cfg, v);
            const Pattern p =
                pattern_trimer_exact(cfg.grating, f, model, v, cfg.theta,
                                     cfg.c3, cfg.nmin, cfg.nmax, cfg.mc);
            seff.push_back(fit_pattern(p, f.S0, true).seff);
        }
    }
    const SizeEstimate est =
        extract_size(cfg.grating, f, cfg.theta, cfg.c3, speeds, seff);
    nlohmann::json j;
    j["tool"] = "gdiff extract-size v1";
    j["config_hash"] = cfg.hash();
    j["method"] = est.with_vdw ? "geom+vdw-reduced" : "geom-only";
    j["mean_r_nm"] = est.mean_r;
    j["uncertainty_nm"] = est.uncertainty;
    j["objective_nm2"] = est.objective;
    j["speeds_m_s"] = nlohmann::json::array();
    j["seff_nm"] = nlohmann::json::array();
    for (std::size_t i = 0; i < speeds.size(); ++i) {
        j["speeds_m_s"].push_back(speeds[i] / units::m_per_s);
        j["seff_nm"].push_back(seff[i]);
    }
    std::ofstream out(dir / "size_report.json");
    if (!out)
        throw ConfigError("cannot write size_report.json");
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_scan(const CliOptions& opt) {
    RunConfig cfg = load_config(opt.config_path);
    apply_overrides(cfg, opt);
    if (cfg.scan_variable.empty() || cfg.scan_values.empty())
        throw ConfigError("scan requires scan.variable and scan.values");
    const fs::path dir = prepare_out(opt);
    const SlitFrame f = slit_frame(cfg.grating);
    std::ofstream out(dir / ("scan_" + cfg.scan_variable + ".csv"));
    if (!out)
        throw ConfigError("cannot write scan output");
    out << std::setprecision(12);
    out << "# gdiff scan v1\n# config_hash=" << std::hex << cfg.hash()
        << std::dec << "\n# seed=" << cfg.mc.seed << "\n";
    if (cfg.scan_variable == "v") {
        const TrimerModel model = make_model(cfg.family, cfg.mean_r, cfg.mass);
        out << "v_m_s,seff_geom_nm,svdw_reduced_nm,svdw_full_nm,svdw_full_stderr_nm,"
               "seff_total_reduced_nm,seff_total_full_nm\n";
        const double sgeom = effective_width_geometric(f, model, cfg.theta);
        for (double v_ms : cfg.scan_values) {
            const double v = v_ms * units::m_per_s;
            const double red = effective_width_vdw_reduced(
                cfg.grating, f, model.mean_r_perp(), v, cfg.theta, cfg.c3,
                cfg.quad_tol);
            const McValue full = effective_width_vdw_full(
                cfg.grating, f, model, v, cfg.theta, cfg.c3, cfg.mc);
            out << v_ms << ',' << sgeom << ',' << red << ',' << full.value
                << ',' << full.stderr_mc << ',' << sgeom + red << ','
                << sgeom + full.value << "\n";
        }
    } else if (cfg.scan_variable == "theta") {
        out << "theta_deg,d_perp_nm,s_perp_nm,projected_ratio\n";
        for (double th_deg : cfg.scan_values) {
            const double th = th_deg * units::deg;
            const double dp = cfg.grating.period * std::cos(th);
            const double sp = f.S0 * std::cos(f.alpha + th);
            if (sp <= 0.0)
                throw ConfigError("scan: total shadowing at theta = " +
                                  std::to_string(th_deg) + " deg");
            out << th_deg << ',' << dp << ',' << sp << ',' << dp / sp << "\n";
        }
    } else if (cfg.scan_variable == "w") {
        const TrimerModel ground = make_model(cfg.family, 0.96, cfg.mass);
        const TrimerModel excited = make_model(cfg.family, 7.97, cfg.mass);
        std::vector<double> speeds = cfg.speeds;
        if (speeds.empty())
            speeds = {400.0 * units::m_per_s, 700.0 * units::m_per_s,
                      1100.0 * units::m_per_s};
        const auto table = mixed_beam_analysis(
            cfg.grating, f, cfg.theta, cfg.c3, ground, excited,
            cfg.scan_values, speeds, cfg.nmin, cfg.nmax, cfg.mc);
        out << "w_ground,seff_mean_nm,apparent_mean_r_nm\n";
        for (const MixedPoint& p : table)
            out << p.w_ground << ',' << p.seff_mean << ',' << p.apparent_r
                << "\n";
    } else {
        throw ConfigError("scan.variable must be one of v, theta, w");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matter-wave diffraction of atoms and helium trimers from a "
                 "deep transmission grating"};
    app.require_subcommand(1);
    CliOptions opt;
    std::string pattern_path, fit_kind;
    std::vector<std::string> reports;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON config file")
            ->required();
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--seed", opt.seed, "override MC seed")
            ->each([&](const std::string&) { opt.seed_set = true; });
        sub->add_option("--orders", opt.orders_range, "order range min:max");
        sub->add_option("--method", opt.method,
                        "exact | cumulant | both (pattern command)");
    };

    CLI::App* p_pattern =
        app.add_subcommand("pattern", "compute diffraction patterns");
    add_common(p_pattern);
    CLI::App* p_fit = app.add_subcommand("fit", "fit the cumulant model");
    add_common(p_fit);
    p_fit->add_option("--pattern", pattern_path, "pattern CSV to fit")
        ->required();
    p_fit->add_option("--kind", fit_kind, "atom | trimer");
    CLI::App* p_extract =
        app.add_subcommand("extract-size", "extract <r> from S_eff(v)");
    add_common(p_extract);
    p_extract->add_option("--report", reports,
                          "fit report JSON (repeatable); omit to run the "
                          "synthetic pipeline");
    CLI::App* p_scan = app.add_subcommand("scan", "sweep theta, v, or w");
    add_common(p_scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (p_pattern->parsed())
            return cmd_pattern(opt);
        if (p_fit->parsed())
            return cmd_fit(opt, pattern_path, fit_kind);
        if (p_extract->parsed())
            return cmd_extract_size(opt, reports);
        if (p_scan->parsed())
            return cmd_scan(opt);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const GeometryError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
