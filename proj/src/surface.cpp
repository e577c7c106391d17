#include "gdiff/surface.hpp"

#include <cmath>

#include "gdiff/errors.hpp"

namespace gdiff {

namespace {
inline double inv2(double x) { return 1.0 / (x * x); }
}

Transmission::Transmission(const Grating& g, const SlitFrame& f, double theta,
                           double speed, double c3)
    : S0_(f.S0), c3_(c3) {
    if (c3_ == 0.0)
        return;
    const double ct = std::cos(theta);
    const double ca = std::cos(f.alpha + theta);
    if (ca <= 0.0)
        throw GeometryError("slit line parallel to the beam");
    ta_ = std::tan(theta) + std::tan(g.wedge);
    tb_ = std::tan(theta) - std::tan(g.wedge);
    if (std::abs(ta_) < 1e-6 || std::abs(tb_) < 1e-6)
        throw GeometryError("trajectory parallel to a bar wall");
    pref_ = c3_ / (2.0 * units::hbar * speed * ct * ct * ca * ca);
    d_t_ = g.period * ct / ca;
    s0_t_ = g.slit_width * ct / ca;
    off12_ = S0_ * std::cos(f.alpha - theta) / ca;
    k_right_ = std::abs(pref_ / ta_);
    k_left_ = std::abs(pref_ / tb_);
}

double Transmission::phase(double s2) const {
    if (c3_ == 0.0)
        return 0.0;
    const double xi11 = 0.5 * S0_ - s2;
    const double xi21 = 0.5 * S0_ + s2;
    const double xi22 = 0.5 * S0_ - s2 - s0_t_;
    const double xi12 = xi22 + off12_;
    const double t1 = inv2(xi11) + inv2(xi11 - d_t_) - inv2(xi12) - inv2(xi12 + d_t_);
    const double t2 = inv2(xi21) + inv2(xi21 - d_t_) - inv2(xi22) - inv2(xi22 - d_t_);
    return pref_ * (t1 / ta_ + t2 / tb_);
}

std::complex<double> Transmission::tau(double s2) const {
    if (std::abs(s2) >= 0.5 * S0_)
        return {0.0, 0.0};
    if (c3_ == 0.0)
        return {1.0, 0.0};
    return std::exp(std::complex<double>(0.0, phase(s2)));
}

double Transmission::trim(double k_edge, double tol) const {
    if (c3_ == 0.0)
        return 0.0;
    const double floor = 1e-4 * S0_;
    if (k_edge <= 0.0)
        return floor;
    return std::max(floor, std::cbrt(tol * k_edge));
}

double Transmission::edge_trim_left(double contrib_tol) const {
    return trim(k_left_, contrib_tol);
}

double Transmission::edge_trim_right(double contrib_tol) const {
    return trim(k_right_, contrib_tol);
}

} // namespace gdiff
