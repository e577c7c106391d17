#pragma once

#include <vector>

#include "gdiff/units.hpp"

namespace gdiff {

// Bar/slit geometry of the transmission grating. Angles in radians.
struct Grating {
    double period = 100.0;           // d  [nm]
    double slit_width = 60.0;        // s0 [nm]
    double thickness = 120.0;        // t  [nm]
    double wedge = 6.0 * units::deg; // beta, bar sidewall angle

    void validate() const;
};

// Frame attached to the projected slit line.  For a grating of finite
// thickness at oblique incidence the slit line connects the two shadowing
// bar edges; alpha is its tilt against the grating plane and S0 its length.
// The complementary chord (A, eta) closes the momentum identity
// dp_a2*A + dp_s2*S0 = dp2*d exactly.
struct SlitFrame {
    double alpha; // tilt of slit line [rad]
    double S0;    // projected slit width [nm]
    double A;     // shadow chord length [nm]
    double eta;   // shadow chord tilt [rad]
};

SlitFrame slit_frame(const Grating& g);
// Degenerate frame of an idealized thin grating (alpha = 0, S0 = s0).
SlitFrame thin_frame(const Grating& g);

struct Beam {
    double mass;        // meV s^2/nm^2
    double speed;       // nm/s
    double theta = 0.0; // incidence angle theta' [rad]

    double wavenumber() const { return mass * speed / units::hbar; }
    double wavelength() const { return 2.0 * units::pi / wavenumber(); }
};

// Ratio lambda_dB/d controlling validity of the small-angle treatment.
double validity_ratio(const Grating& g, const Beam& b);

// Kinematics of one propagating diffraction order.
struct Order {
    int n;
    double theta_n;    // final angle [rad]
    double kappa;      // dp_s2/hbar, momentum transfer along slit line [1/nm]
    double kappa_d;    // dp2*d/hbar = n*2*pi, kept for the grating factor
    double ps1;        // p_s1/hbar, outgoing normal component [1/nm]
    double pps1;       // p'_s1/hbar, incoming normal component [1/nm]
    double obliquity;  // (p_s1 + p'_s1)/(2 p'_s1)
};

// Propagating orders in [nmin, nmax]; evanescent ones (|sin theta_n| > 1)
// are skipped and reported in `evanescent` when non-null.
std::vector<Order> orders(const Grating& g, const SlitFrame& f, const Beam& b,
                          int nmin, int nmax,
                          std::vector<int>* evanescent = nullptr);

// dp_a2/hbar along the shadow chord; satisfies the momentum identity.
double kappa_shadow(const SlitFrame& f, const Beam& b, const Order& o);

// Relative deviation of kappa_n from its linearization in n, the signature
// of the quadratic angle-dependence at oblique incidence.
double quadratic_shift(const SlitFrame& f, const Beam& b, const Order& o);

} // namespace gdiff
