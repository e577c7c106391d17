#include "gdiff/geometry.hpp"

#include <cmath>

#include "gdiff/errors.hpp"

namespace gdiff {

void Grating::validate() const {
    if (period <= 0.0 || slit_width <= 0.0 || thickness < 0.0)
        throw GeometryError("grating dimensions must be positive");
    if (slit_width >= period)
        throw GeometryError("slit width must be smaller than the period");
    if (wedge < 0.0 || wedge >= 0.5 * units::pi)
        throw GeometryError("wedge angle out of range");
}

SlitFrame slit_frame(const Grating& g) {
    g.validate();
    if (g.thickness == 0.0)
        return thin_frame(g);
    const double cot_alpha = std::tan(g.wedge) + g.slit_width / g.thickness;
    const double alpha = std::atan2(1.0, cot_alpha);
    const double S0 = g.thickness / std::sin(alpha);
    const double ax = g.period - S0 * std::cos(alpha);
    const double ay = -S0 * std::sin(alpha);
    SlitFrame f;
    f.alpha = alpha;
    f.S0 = S0;
    f.A = std::hypot(ax, ay);
    f.eta = std::atan2(ay, ax);
    return f;
}

SlitFrame thin_frame(const Grating& g) {
    g.validate();
    return SlitFrame{0.0, g.slit_width, g.period - g.slit_width, 0.0};
}

double validity_ratio(const Grating& g, const Beam& b) {
    return b.wavelength() / g.period;
}

std::vector<Order> orders(const Grating& g, const SlitFrame& f, const Beam& b,
                          int nmin, int nmax, std::vector<int>* evanescent) {
    g.validate();
    if (nmin > nmax)
        throw GeometryError("empty order range");
    const double k = b.wavenumber();
    const double gvec = 2.0 * units::pi / g.period;
    const double sin_in = std::sin(b.theta);
    std::vector<Order> out;
    out.reserve(static_cast<std::size_t>(nmax - nmin + 1));
    for (int n = nmin; n <= nmax; ++n) {
        const double s = sin_in + n * gvec / k;
        if (std::abs(s) > 1.0) {
            if (evanescent)
                evanescent->push_back(n);
            continue;
        }
        Order o;
        o.n = n;
        o.theta_n = std::asin(s);
        o.kappa = k * (std::sin(f.alpha + o.theta_n) - std::sin(f.alpha + b.theta));
        o.kappa_d = n * 2.0 * units::pi;
        o.ps1 = k * std::cos(f.alpha + o.theta_n);
        o.pps1 = k * std::cos(f.alpha + b.theta);
        o.obliquity = (o.ps1 + o.pps1) / (2.0 * o.pps1);
        out.push_back(o);
    }
    return out;
}

double kappa_shadow(const SlitFrame& f, const Beam& b, const Order& o) {
    const double k = b.wavenumber();
    return k * (std::sin(o.theta_n + f.eta) - std::sin(b.theta + f.eta));
}

double quadratic_shift(const SlitFrame& f, const Beam& b, const Order& o) {
    if (o.n == 0)
        return 0.0;
    // Linearization of kappa in n, using d(theta)/dn at n = 0.
    const double k = b.wavenumber();
    const double lin = k * (std::sin(o.theta_n) - std::sin(b.theta)) *
                       std::cos(f.alpha + b.theta) / std::cos(b.theta);
    return o.kappa / lin - 1.0;
}

} // namespace gdiff
