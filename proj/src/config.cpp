#include "gdiff/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <json.hpp>

#include "gdiff/errors.hpp"

namespace gdiff {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& block,
                const std::set<std::string>& allowed) {
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key))
            throw ConfigError("unknown key '" + key + "' in " + block);
}

double require_positive(double v, const std::string& name) {
    if (!(v > 0.0))
        throw ConfigError(name + " must be positive");
    return v;
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

std::uint64_t RunConfig::hash() const {
    std::ostringstream os;
    os << std::setprecision(17);
    os << grating.period << '|' << grating.slit_width << '|'
       << grating.thickness << '|' << grating.wedge << '|'
       << (kind == BeamKind::atom ? "atom" : "trimer") << '|' << mass << '|'
       << speed << '|' << theta << '|' << c3 << '|'
       << (family == Family::gaussian ? "gaussian" : "exponential") << '|'
       << mean_r << '|' << nmin << ':' << nmax << '|' << mc.samples << '|'
       << quad_tol;
    for (double v : speeds)
        os << '|' << v;
    return fnv1a(os.str());
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    check_keys(j, "config root",
               {"geometry", "beam", "surface", "trimer", "orders", "mc",
                "quadrature", "method", "scan"});
    RunConfig cfg;
    if (j.contains("geometry")) {
        const json& g = j["geometry"];
        check_keys(g, "geometry",
                   {"period_nm", "slit_width_nm", "thickness_nm", "wedge_deg"});
        cfg.grating.period =
            require_positive(g.value("period_nm", 100.0), "period_nm");
        cfg.grating.slit_width =
            require_positive(g.value("slit_width_nm", 60.0), "slit_width_nm");
        cfg.grating.thickness = g.value("thickness_nm", 120.0);
        cfg.grating.wedge = g.value("wedge_deg", 6.0) * units::deg;
    }
    if (j.contains("beam")) {
        const json& b = j["beam"];
        check_keys(b, "beam",
                   {"kind", "mass_amu", "speed_m_s", "speeds_m_s", "theta_deg"});
        const std::string kind = b.value("kind", "atom");
        if (kind == "atom")
            cfg.kind = BeamKind::atom;
        else if (kind == "trimer")
            cfg.kind = BeamKind::trimer;
        else
            throw ConfigError("beam.kind must be 'atom' or 'trimer'");
        cfg.mass = require_positive(b.value("mass_amu", 4.002602), "mass_amu") *
                   units::amu;
        cfg.speed =
            require_positive(b.value("speed_m_s", 500.0), "speed_m_s") *
            units::m_per_s;
        cfg.theta = b.value("theta_deg", 21.0) * units::deg;
        if (b.contains("speeds_m_s"))
            for (double v : b["speeds_m_s"])
                cfg.speeds.push_back(require_positive(v, "speeds_m_s entry") *
                                     units::m_per_s);
    }
    if (j.contains("surface")) {
        check_keys(j["surface"], "surface", {"c3_mev_nm3"});
        cfg.c3 = j["surface"].value("c3_mev_nm3", 0.1);
        if (cfg.c3 < 0.0)
            throw ConfigError("c3_mev_nm3 must be non-negative");
    }
    if (j.contains("trimer")) {
        const json& t = j["trimer"];
        check_keys(t, "trimer", {"family", "mean_r_nm", "state"});
        const std::string fam = t.value("family", "gaussian");
        if (fam == "gaussian")
            cfg.family = Family::gaussian;
        else if (fam == "exponential")
            cfg.family = Family::exponential;
        else
            throw ConfigError("trimer.family must be gaussian or exponential");
        if (t.contains("state")) {
            const std::string st = t["state"];
            if (st == "he3-ground")
                cfg.mean_r = 0.96;
            else if (st == "he3-excited")
                cfg.mean_r = 7.97;
            else
                throw ConfigError("unknown trimer.state preset: " + st);
        }
        if (t.contains("mean_r_nm"))
            cfg.mean_r = require_positive(t["mean_r_nm"], "mean_r_nm");
    }
    if (j.contains("orders")) {
        check_keys(j["orders"], "orders", {"min", "max"});
        cfg.nmin = j["orders"].value("min", -10);
        cfg.nmax = j["orders"].value("max", 10);
        if (cfg.nmin > cfg.nmax)
            throw ConfigError("orders.min must not exceed orders.max");
    }
    if (j.contains("mc")) {
        const json& m = j["mc"];
        check_keys(m, "mc", {"samples", "seed", "workers", "tol"});
        cfg.mc.samples = m.value("samples", std::size_t{1000000});
        if (cfg.mc.samples == 0)
            throw ConfigError("mc.samples must be positive");
        cfg.mc.seed = m.value("seed", std::uint64_t{20120});
        cfg.mc.workers = m.value("workers", 0u);
        cfg.mc.tol = require_positive(m.value("tol", 1e-4), "mc.tol");
    }
    if (j.contains("quadrature")) {
        check_keys(j["quadrature"], "quadrature", {"tol"});
        cfg.quad_tol =
            require_positive(j["quadrature"].value("tol", 1e-8), "quadrature.tol");
    }
    if (j.contains("method")) {
        cfg.method = j["method"];
        if (cfg.method != "exact" && cfg.method != "cumulant" &&
            cfg.method != "both")
            throw ConfigError("method must be exact, cumulant, or both");
    }
    if (j.contains("scan")) {
        const json& s = j["scan"];
        check_keys(s, "scan", {"variable", "values"});
        cfg.scan_variable = s.value("variable", "");
        if (s.contains("values"))
            for (double v : s["values"])
                cfg.scan_values.push_back(v);
    }
    cfg.grating.validate();
    return cfg;
}

void write_pattern_csv(const std::string& path, const Pattern& p,
                       const RunConfig& cfg) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << "# gdiff pattern v1\n";
    out << "# config_hash=" << std::hex << cfg.hash() << std::dec << "\n";
    out << "# seed=" << cfg.mc.seed << "\n";
    out << "# method=" << p.method << "\n";
    out << "# kind=" << (cfg.kind == BeamKind::atom ? "atom" : "trimer")
        << "\n";
    out << "# speed_m_s=" << std::setprecision(17) << cfg.speed / units::m_per_s
        << "\n";
    out << "# theta_deg=" << cfg.theta / units::deg << "\n";
    out << "# evanescent=";
    for (std::size_t i = 0; i < p.evanescent.size(); ++i)
        out << (i ? ";" : "") << p.evanescent[i];
    out << "\n";
    out << "n,theta_n_deg,delta_p_s2_per_hbar_nm_inv,intensity_rel,mc_stderr\n";
    out << std::setprecision(12);
    for (std::size_t i = 0; i < p.orders.size(); ++i) {
        const Order& o = p.orders[i];
        out << o.n << ',' << o.theta_n / units::deg << ',' << o.kappa << ','
            << p.intensity[i] << ',';
        if (!p.stderr_mc.empty())
            out << p.stderr_mc[i];
        out << "\n";
    }
}

Pattern read_pattern_csv(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open pattern file: " + path);
    std::string line;
    std::string method = "unknown";
    std::string kind = cfg.kind == BeamKind::atom ? "atom" : "trimer";
    double speed = cfg.speed;
    int lineno = 0;
    Pattern p;
    std::vector<std::array<double, 5>> rows;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos) {
                const std::string key = line.substr(2, eq - 2);
                const std::string val = line.substr(eq + 1);
                if (key == "method")
                    method = val;
                else if (key == "kind")
                    kind = val;
                else if (key == "speed_m_s")
                    speed = std::stod(val) * units::m_per_s;
            }
            continue;
        }
        if (!header_seen) {
            if (line.rfind("n,theta_n_deg", 0) != 0)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": missing column header");
            header_seen = true;
            continue;
        }
        std::array<double, 5> row{0, 0, 0, 0, 0};
        std::stringstream ss(line);
        std::string cell;
        int col = 0;
        while (std::getline(ss, cell, ',')) {
            if (col >= 5)
                throw ConfigError(path + ":" + std::to_string(lineno) +
                                  ": too many columns");
            row[col++] = cell.empty() ? 0.0 : std::stod(cell);
        }
        if (col < 4)
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected at least 4 columns");
        rows.push_back(row);
    }
    if (rows.empty())
        throw ConfigError(path + ": no data rows");
    const double mass = kind == "trimer" ? 3.0 * cfg.mass : cfg.mass;
    const Beam beam{mass, speed, cfg.theta};
    const SlitFrame f = slit_frame(cfg.grating);
    p.method = method;
    for (const auto& row : rows) {
        const int n = static_cast<int>(std::lround(row[0]));
        const auto ord = orders(cfg.grating, f, beam, n, n);
        if (ord.empty())
            throw ConfigError(path + ": order " + std::to_string(n) +
                              " is evanescent for this config");
        p.orders.push_back(ord[0]);
        p.intensity.push_back(row[3]);
        p.stderr_mc.push_back(row[4]);
    }
    return p;
}

void write_fit_report(const std::string& path, const FitResult& fr,
                      double speed, const RunConfig& cfg) {
    json j;
    j["tool"] = "gdiff fit v1";
    j["config_hash"] = cfg.hash();
    j["speed_m_s"] = speed / units::m_per_s;
    j["parameters"] = {{"scale", fr.scale},   {"seff_nm", fr.seff},
                       {"delta_nm", fr.delta}, {"gamma_nm", fr.gamma},
                       {"sigma_nm", fr.sigma}, {"omega_nm2", fr.omega}};
    j["with_omega"] = fr.with_omega;
    j["stderrs"] = fr.stderrs;
    j["residual_norm"] = fr.residual_norm;
    j["iterations"] = fr.iterations;
    j["converged"] = fr.converged;
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << j.dump(2) << "\n";
}

FitReport read_fit_report(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open fit report: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    FitReport r;
    r.config_hash = j.at("config_hash");
    r.speed = static_cast<double>(j.at("speed_m_s")) * units::m_per_s;
    const json& p = j.at("parameters");
    r.fit.scale = p.at("scale");
    r.fit.seff = p.at("seff_nm");
    r.fit.delta = p.at("delta_nm");
    r.fit.gamma = p.at("gamma_nm");
    r.fit.sigma = p.at("sigma_nm");
    r.fit.omega = p.at("omega_nm2");
    r.fit.with_omega = j.value("with_omega", false);
    r.fit.converged = j.value("converged", false);
    return r;
}

} // namespace gdiff
