#pragma once

#include <vector>

#include "gdiff/atom.hpp"

namespace gdiff {

// Weighted least-squares fit of the cumulant intensity model
//   I(kappa) = scale * obliquity^2/(Seff^2+Delta^2) * exp(-(kappa Sigma)^2
//              - Gamma kappa) * (sin^2(kappa Seff/2)
//              + sinh^2((kappa Delta + kappa^2 Omega)/2))/(kappa/2)^2
// against a measured/synthetic pattern.  Omega is a free parameter for
// trimers only.
struct FitResult {
    double scale = 1.0;
    double seff = 0.0;
    double delta = 0.0;
    double gamma = 0.0;
    double sigma = 0.0;
    double omega = 0.0;
    bool with_omega = false;
    double residual_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> stderrs; // same ordering as parameter vector
};

double fit_model_intensity(const FitResult& p, const Order& o);

// weights: Poisson-like 1/sqrt(I + floor) unless counts are supplied.
FitResult fit_pattern(const Pattern& data, double s0_hint, bool with_omega);

} // namespace gdiff
