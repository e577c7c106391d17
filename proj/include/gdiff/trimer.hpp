#pragma once

#include <functional>

#include "gdiff/atom.hpp"
#include "gdiff/trimer_model.hpp"

namespace gdiff {

struct McSettings {
    std::size_t samples = 1000000;
    std::uint64_t seed = 20120;
    double tol = 1e-4;        // absolute tolerance of per-sample quadratures, x S0
    unsigned workers = 0;     // 0 = hardware concurrency
};

struct McValue {
    double value = 0.0;
    double stderr_mc = 0.0;
};

// Trimer transmission function: expectation over the bound-state density of
// the product of the three atom transmission functions, each evaluated at
// the projected atom position on the slit line.  S2 is the center of mass
// coordinate; per-atom offsets on the slit line are r_i_perp/cos(alpha+theta').
class TrimerTransmission {
public:
    TrimerTransmission(const Grating& g, const SlitFrame& f,
                       const TrimerModel& model, double speed, double theta,
                       double c3, const McSettings& mc);

    cdouble tau(double S2) const; // MC average, 0 when no atom fits

    // Per-sample slit-line integral Int e^{-i kappa S2} prod tau ds over the
    // support of sample i; building block of all trimer observables.
    cdouble sample_amplitude(std::size_t i, double kappa) const;

    std::size_t samples() const { return shifts_.size(); }
    const Transmission& atom() const { return atom_; }
    double S0() const { return atom_.S0(); }

    // Integral of prod tau over [a, b] clipped to the sample's support,
    // with e^{-i kappa S2} weight (kappa = 0 for cumulant integrals).
    cdouble sample_integral(std::size_t i, double a, double b,
                            double kappa) const;
    cdouble sample_weighted(std::size_t i, double a, double b,
                            const std::function<cdouble(double)>& weight) const;

private:
    Transmission atom_;
    std::vector<std::array<double, 3>> shifts_; // per-atom slit-line offsets
    double tol_abs_;
};

Pattern pattern_trimer_exact(const Grating& g, const SlitFrame& f,
                             const TrimerModel& model, double speed,
                             double theta, double c3, int nmin, int nmax,
                             const McSettings& mc);

Cumulants cumulants_trimer(const TrimerTransmission& t, const SlitFrame& f,
                           const McSettings& mc);

Pattern pattern_trimer_cumulant(const Grating& g, const SlitFrame& f,
                                const TrimerModel& model, double speed,
                                double theta, double c3, int nmin, int nmax,
                                const McSettings& mc);

// Geometric part of the effective slit width.
double effective_width_geometric(const SlitFrame& f, const TrimerModel& model,
                                 double theta);
// MC version from samples; supports unequal masses through the three
// projected pair distances.
McValue effective_width_geometric_mc(const SlitFrame& f,
                                     const std::vector<RelSample>& samples,
                                     double theta);

// Van der Waals part: reduced closed form (shifts <|r_perp|> and
// (5/4)<|r_perp|>) and full MC over the density.
double effective_width_vdw_reduced(const Grating& g, const SlitFrame& f,
                                   double mean_r_perp, double speed,
                                   double theta, double c3, double tol = 1e-8);
McValue effective_width_vdw_full(const Grating& g, const SlitFrame& f,
                                 const TrimerModel& model, double speed,
                                 double theta, double c3, const McSettings& mc);

} // namespace gdiff
