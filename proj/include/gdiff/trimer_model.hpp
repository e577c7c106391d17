#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gdiff/jacobi.hpp"
#include "gdiff/units.hpp"

namespace gdiff {

enum class Family { gaussian, exponential };

// One sample of the relative motion in the frame of particle 1:
// rho = x1 - (x2 + x3)/2, r = x2 - x3.
struct RelSample {
    Vec3 rho, r;
};

// Stand-in bound-state density for a trimer of three identical bosons,
// parameterized by the mean pair distance <r>.
//  - gaussian:    |phi|^2 ~ exp(-(r12^2 + r23^2 + r31^2)/(2 sigma^2))
//  - exponential: |phi|^2 ~ exp(-q/sigma), q^2 = (3/2) r^2 + 2 rho^2
//                 (q is proportional to the hyperradius, heavier tail)
// Both densities depend on the hyperradius / pair distances only and are
// therefore symmetric under relabeling of the three particles.
struct TrimerModel {
    Family family;
    double sigma;  // internal scale [nm]
    double mean_r; // <r> [nm]
    double mass;   // per-atom mass

    double total_mass() const { return 3.0 * mass; }
    // <|r_perp|> = <r>/2, exact for any spherically symmetric density.
    double mean_r_perp() const { return 0.5 * mean_r; }
};

TrimerModel make_model(Family family, double mean_r,
                       double mass = units::mass_he4);

std::vector<RelSample> sample_relative(const TrimerModel& m,
                                       std::uint64_t seed, std::size_t count);

struct Moments {
    double mean_r;      // <|x2 - x3|>
    double mean_r_perp; // <|(x2 - x3)_x|>
    double stderr_r;
    double stderr_r_perp;
};

Moments pair_moments(const std::vector<RelSample>& samples);

// Binned probability density of the mass-weighted hyperradius,
// mu0 R^2 = (2/3) m rho^2 + (1/2) m r^2 with mu_ratio = mu0/m (default 1/2).
std::vector<std::pair<double, double>>
hyperradial_density(const std::vector<RelSample>& samples, std::size_t bins,
                    double r_max, double mu_ratio = 0.5);

double mean_hyperradius(const std::vector<RelSample>& samples,
                        double mu_ratio = 0.5);

} // namespace gdiff
