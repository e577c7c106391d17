#pragma once

#include "gdiff/fit.hpp"
#include "gdiff/trimer.hpp"

namespace gdiff {

struct SizeEstimate {
    double mean_r = 0.0;     // nm
    double uncertainty = 0.0;
    double objective = 0.0;  // sum of squared S_eff residuals at the optimum
    bool with_vdw = false;
};

// One-parameter fit of <r> through
//   S_eff(v) = S0 - (3/4)<r>/cos(alpha+theta') + S_vdw_reduced(v; <r>/2).
// With c3 == 0 and a single velocity this is the closed-form inversion.
SizeEstimate extract_size(const Grating& g, const SlitFrame& f, double theta,
                          double c3, const std::vector<double>& speeds,
                          const std::vector<double>& seff_values);

// Default velocity design: count log-spaced speeds in [lo, hi] (nm/s).
// The window starts at the typical beam speed of 500 m/s: below that the
// van der Waals narrowing grows beyond the validity of the two-term
// cumulant model the inversion relies on.
std::vector<double> velocity_design(std::size_t count = 5,
                                    double lo = 500.0 * units::m_per_s,
                                    double hi = 2000.0 * units::m_per_s);

struct MixedPoint {
    double w_ground;
    double seff_mean; // averaged over the velocity design
    double apparent_r;
};

// Incoherent two-state beam: pattern = w*I_ground + (1-w)*I_excited per
// velocity, fitted and analyzed as if it were a pure beam.
std::vector<MixedPoint> mixed_beam_analysis(
    const Grating& g, const SlitFrame& f, double theta, double c3,
    const TrimerModel& ground, const TrimerModel& excited,
    const std::vector<double>& w_grid, const std::vector<double>& speeds,
    int nmin, int nmax, const McSettings& mc);

struct ResolutionMetrics {
    double n_c;         // number of resolvable orders d_perp/s_perp
    double sensitivity; // (d n_c/d<r>)/n_c at leading order [1/nm]
};

ResolutionMetrics resolution_metrics(const Grating& g, const SlitFrame& f,
                                     double theta, double mean_r);

} // namespace gdiff
