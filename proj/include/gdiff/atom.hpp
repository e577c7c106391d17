#pragma once

#include <string>
#include <vector>

#include "gdiff/quadrature.hpp"
#include "gdiff/surface.hpp"

namespace gdiff {

// Single-slit diffraction pattern, intensities relative to order zero.
struct Pattern {
    std::vector<Order> orders;
    std::vector<double> intensity;
    std::vector<double> stderr_mc; // empty unless Monte Carlo based
    std::vector<int> evanescent;
    std::string method;
};

// N-slit grating factor H_N = sin(N x/2)/sin(x/2), x = dp2*d/hbar.
double grating_factor(double x, int n_slits);

// Slit function a(kappa) = Int e^{-i kappa s2} tau(s2) ds2 over the slit,
// with the divergent-phase edge bands trimmed below the error budget.
cdouble slit_amplitude(const Transmission& t, double kappa, double tol);

struct Cumulants {
    cdouble r1p, r1m, r2p, r2m;
    double s0 = 0.0;

    double seff() const { return s0 - (r1p + r1m).real(); }
    double delta() const { return (r1p + r1m).imag(); }
    double gamma() const { return (r1p - r1m).imag(); }
    double sigma() const;
    double omega() const { return 0.5 * (r2p - r2m).imag(); }
};

Cumulants cumulants(const Transmission& t, double tol);

// I_n/I_0 of the two-term cumulant approximation; `with_omega` retains the
// second-order asymmetry term used for trimers.
double cumulant_intensity(const Cumulants& c, const Order& o, bool with_omega);

Pattern pattern_exact(const Grating& g, const SlitFrame& f, const Beam& b,
                      double c3, int nmin, int nmax, double tol = 1e-8);

Pattern pattern_cumulant(const Grating& g, const SlitFrame& f, const Beam& b,
                         double c3, int nmin, int nmax, double tol = 1e-8,
                         bool with_omega = false);

} // namespace gdiff
