#include "gdiff/trimer_model.hpp"

#include <cmath>

#include "gdiff/errors.hpp"
#include "gdiff/rng.hpp"

namespace gdiff {

namespace {
// <r>/sigma of the exponential family: sqrt(2/3)*<|u_{1:3}|> with u = q*nhat,
// q ~ Gamma(6): <q> = 6 sigma, <|nhat_{1:3}|> on S^5 = 4/(1.875 pi).
const double exp_mean_r_factor =
    std::sqrt(2.0 / 3.0) * 6.0 * 4.0 / (1.875 * units::pi);
} // namespace

TrimerModel make_model(Family family, double mean_r, double mass) {
    if (mean_r <= 0.0 || mass <= 0.0)
        throw ConfigError("trimer model requires positive <r> and mass");
    TrimerModel m;
    m.family = family;
    m.mean_r = mean_r;
    m.mass = mass;
    if (family == Family::gaussian) {
        // pair-distance form factorizes; <r> = 4 sigma/sqrt(3 pi)
        m.sigma = mean_r * std::sqrt(3.0 * units::pi) / 4.0;
    } else {
        m.sigma = mean_r / exp_mean_r_factor;
    }
    return m;
}

std::vector<RelSample> sample_relative(const TrimerModel& m,
                                       std::uint64_t seed, std::size_t count) {
    std::vector<RelSample> out;
    out.reserve(count);
    Rng rng(seed);
    if (m.family == Family::gaussian) {
        // exp(-sum r_jk^2/(2 sigma^2)) separates into independent Gaussians:
        // r components N(0, 2 sigma^2/3), rho components N(0, sigma^2/2).
        const double sr = m.sigma * std::sqrt(2.0 / 3.0);
        const double srho = m.sigma / std::sqrt(2.0);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back({rng.normal3(srho), rng.normal3(sr)});
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const double q = rng.gamma_int(6, m.sigma);
            double u[6];
            double n2 = 0.0;
            do {
                n2 = 0.0;
                for (double& c : u) {
                    c = rng.normal();
                    n2 += c * c;
                }
            } while (n2 == 0.0);
            const double s = q / std::sqrt(n2);
            const Vec3 r = std::sqrt(2.0 / 3.0) * Vec3{u[0], u[1], u[2]} * s;
            const Vec3 rho = Vec3{u[3], u[4], u[5]} * (s / std::sqrt(2.0));
            out.push_back({rho, r});
        }
    }
    return out;
}

Moments pair_moments(const std::vector<RelSample>& samples) {
    double s1 = 0.0, s2 = 0.0, p1 = 0.0, p2 = 0.0;
    for (const RelSample& s : samples) {
        const double r = s.r.norm();
        const double rp = std::abs(s.r.x);
        s1 += r;
        s2 += r * r;
        p1 += rp;
        p2 += rp * rp;
    }
    const double n = static_cast<double>(samples.size());
    Moments m;
    m.mean_r = s1 / n;
    m.mean_r_perp = p1 / n;
    m.stderr_r = std::sqrt(std::max(0.0, s2 / n - m.mean_r * m.mean_r) / n);
    m.stderr_r_perp =
        std::sqrt(std::max(0.0, p2 / n - m.mean_r_perp * m.mean_r_perp) / n);
    return m;
}

namespace {
double hyperradius(const RelSample& s, double mu_ratio) {
    const double rho2 = s.rho.x * s.rho.x + s.rho.y * s.rho.y + s.rho.z * s.rho.z;
    const double r2 = s.r.x * s.r.x + s.r.y * s.r.y + s.r.z * s.r.z;
    return std::sqrt(((2.0 / 3.0) * rho2 + 0.5 * r2) / mu_ratio);
}
} // namespace

std::vector<std::pair<double, double>>
hyperradial_density(const std::vector<RelSample>& samples, std::size_t bins,
                    double r_max, double mu_ratio) {
    std::vector<std::pair<double, double>> hist(bins);
    const double w = r_max / static_cast<double>(bins);
    for (std::size_t i = 0; i < bins; ++i)
        hist[i] = {(i + 0.5) * w, 0.0};
    for (const RelSample& s : samples) {
        const auto b = static_cast<std::size_t>(hyperradius(s, mu_ratio) / w);
        if (b < bins)
            hist[b].second += 1.0;
    }
    const double norm = 1.0 / (static_cast<double>(samples.size()) * w);
    for (auto& [R, p] : hist)
        p *= norm;
    return hist;
}

double mean_hyperradius(const std::vector<RelSample>& samples, double mu_ratio) {
    double s = 0.0;
    for (const RelSample& smp : samples)
        s += hyperradius(smp, mu_ratio);
    return s / static_cast<double>(samples.size());
}

} // namespace gdiff
