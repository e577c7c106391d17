#pragma once

#include <complex>

#include "gdiff/geometry.hpp"

namespace gdiff {

// Eikonal transmission function of a single slit.  The phase accumulated
// by an atom passing the slit at coordinate s2 on the slit line follows
// from the -C3/l^3 particle-wall potential integrated along the straight
// trajectory through the grating bars; it diverges ~K/xi^2 towards either
// edge (distance xi).
class Transmission {
public:
    // `speed` is the per-atom speed entering the phase (nm/s); for a bound
    // cluster it equals the beam speed.
    Transmission(const Grating& g, const SlitFrame& f, double theta,
                 double speed, double c3);

    double S0() const { return S0_; }
    double c3() const { return c3_; }

    double phase(double s2) const;
    std::complex<double> tau(double s2) const; // 0 outside (-S0/2, S0/2)

    // Divergence coefficients phase ~ K/xi^2 at the left/right edge.
    double k_left() const { return k_left_; }
    double k_right() const { return k_right_; }

    // Width of the edge band whose contribution to an amplitude integral
    // is below `contrib_tol` (stationary-phase bound delta^3/K), floored
    // at eps_edge = 1e-4*S0.  Zero when c3 == 0.
    double edge_trim_left(double contrib_tol) const;
    double edge_trim_right(double contrib_tol) const;

private:
    double trim(double k_edge, double tol) const;

    double S0_;
    double c3_;
    double pref_ = 0.0;    // C3/(2 hbar v cos^2 theta' cos^2(alpha+theta'))
    double ta_ = 0.0;      // tan theta' + tan beta
    double tb_ = 0.0;      // tan theta' - tan beta
    double d_t_ = 0.0;     // d cos(theta')/cos(alpha+theta')
    double s0_t_ = 0.0;    // s0 cos(theta')/cos(alpha+theta')
    double off12_ = 0.0;   // xi12 - xi22 = S0 cos(alpha-theta')/cos(alpha+theta')
    double k_left_ = 0.0;
    double k_right_ = 0.0;
};

} // namespace gdiff
