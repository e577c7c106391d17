#include "gdiff/atom.hpp"

#include <cmath>

#include "gdiff/quadrature.hpp"

namespace gdiff {

double grating_factor(double x, int n_slits) {
    const double s = std::sin(0.5 * x);
    if (std::abs(s) < 1e-12) {
        const double sign = std::cos(0.5 * x * n_slits) / std::cos(0.5 * x);
        return n_slits * (sign >= 0.0 ? 1.0 : -1.0);
    }
    return std::sin(0.5 * n_slits * x) / s;
}

cdouble slit_amplitude(const Transmission& t, double kappa, double tol) {
    const double h = 0.5 * t.S0();
    const double abs_tol = 0.5 * tol * t.S0();
    const double edge_budget = 0.25 * tol * t.S0();
    const double a = -h + t.edge_trim_left(edge_budget);
    const double b = h - t.edge_trim_right(edge_budget);
    if (a >= b)
        return {0.0, 0.0};
    auto f = [&](double s) {
        return std::exp(cdouble(0.0, -kappa * s)) * t.tau(s);
    };
    return integrate(f, a, b, abs_tol).value;
}

double Cumulants::sigma() const {
    const double v = 0.5 * (r2p + r2m).real();
    return v > 0.0 ? std::sqrt(v) : 0.0;
}

Cumulants cumulants(const Transmission& t, double tol) {
    const double h = 0.5 * t.S0();
    const double abs_tol = 0.5 * tol * t.S0();
    const double edge_budget = 0.25 * tol * t.S0();
    const double dr = t.edge_trim_right(edge_budget);
    const double dl = t.edge_trim_left(edge_budget);
    Cumulants c;
    c.s0 = t.S0();
    // R1+- = S0/2 - Int_0^{S0/2} tau(+-u) du, edge band counts as zero tau.
    c.r1p = h - integrate([&](double u) { return t.tau(u); }, 0.0, h - dr, abs_tol).value;
    c.r1m = h - integrate([&](double u) { return t.tau(-u); }, 0.0, h - dl, abs_tol).value;
    // R2+- = (S0/2)^2 - (R1+-)^2 - 2 Int_0^{S0/2} xi tau(+-(S0/2-xi)) dxi;
    // the xi-weight suppresses the edge, the same trim bound applies.
    const cdouble i2p =
        integrate([&](double xi) { return xi * t.tau(h - xi); }, dr, h, abs_tol).value;
    const cdouble i2m =
        integrate([&](double xi) { return xi * t.tau(-(h - xi)); }, dl, h, abs_tol).value;
    c.r2p = h * h - c.r1p * c.r1p - 2.0 * i2p;
    c.r2m = h * h - c.r1m * c.r1m - 2.0 * i2m;
    return c;
}

double cumulant_intensity(const Cumulants& c, const Order& o, bool with_omega) {
    const double seff = c.seff();
    const double delta = c.delta();
    const double norm = seff * seff + delta * delta;
    const double kappa = o.kappa;
    if (kappa == 0.0)
        return o.obliquity * o.obliquity;
    const double sg = c.sigma();
    const double arg_sh = 0.5 * (kappa * delta +
                                 (with_omega ? kappa * kappa * c.omega() : 0.0));
    const double num = std::pow(std::sin(0.5 * kappa * seff), 2) +
                       std::pow(std::sinh(arg_sh), 2);
    const double env = std::exp(-kappa * kappa * sg * sg - c.gamma() * kappa);
    return o.obliquity * o.obliquity / norm * env * num / (0.25 * kappa * kappa);
}

Pattern pattern_exact(const Grating& g, const SlitFrame& f, const Beam& b,
                      double c3, int nmin, int nmax, double tol) {
    Pattern p;
    p.method = "exact";
    p.orders = orders(g, f, b, nmin, nmax, &p.evanescent);
    const Transmission t(g, f, b.theta, b.speed, c3);
    const cdouble a0 = slit_amplitude(t, 0.0, tol);
    const double norm = std::norm(a0);
    p.intensity.reserve(p.orders.size());
    for (const Order& o : p.orders) {
        const cdouble a = slit_amplitude(t, o.kappa, tol);
        p.intensity.push_back(o.obliquity * o.obliquity * std::norm(a) / norm);
    }
    return p;
}

Pattern pattern_cumulant(const Grating& g, const SlitFrame& f, const Beam& b,
                         double c3, int nmin, int nmax, double tol,
                         bool with_omega) {
    Pattern p;
    p.method = "cumulant";
    p.orders = orders(g, f, b, nmin, nmax, &p.evanescent);
    const Transmission t(g, f, b.theta, b.speed, c3);
    const Cumulants c = cumulants(t, tol);
    p.intensity.reserve(p.orders.size());
    for (const Order& o : p.orders)
        p.intensity.push_back(cumulant_intensity(c, o, with_omega));
    return p;
}

} // namespace gdiff
