#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdiff/extraction.hpp"

namespace gdiff {

enum class BeamKind { atom, trimer };

struct RunConfig {
    Grating grating;
    BeamKind kind = BeamKind::atom;
    double mass = units::mass_he4; // per-atom mass
    double speed = 500.0 * units::m_per_s;
    std::vector<double> speeds;    // optional velocity list (extract/scan)
    double theta = 21.0 * units::deg;
    double c3 = 0.1;               // meV nm^3
    Family family = Family::gaussian;
    double mean_r = 0.96;          // nm
    int nmin = -10, nmax = 10;
    McSettings mc;
    double quad_tol = 1e-8;
    std::string method = "both";   // exact | cumulant | both
    // scan block
    std::string scan_variable;     // "v" | "theta" | "w"
    std::vector<double> scan_values;

    std::uint64_t hash() const;    // over physical parameters
};

RunConfig load_config(const std::string& path);

// Pattern CSV with a reproducible header (config hash, seed, method).
void write_pattern_csv(const std::string& path, const Pattern& p,
                       const RunConfig& cfg);
Pattern read_pattern_csv(const std::string& path, const RunConfig& cfg);

void write_fit_report(const std::string& path, const FitResult& fr,
                      double speed, const RunConfig& cfg);

struct FitReport {
    FitResult fit;
    double speed;
    std::uint64_t config_hash;
};
FitReport read_fit_report(const std::string& path);

} // namespace gdiff
