#include "gdiff/extraction.hpp"

#include <cmath>

#include "gdiff/errors.hpp"
#include "gdiff/quadrature.hpp"

namespace gdiff {

SizeEstimate extract_size(const Grating& g, const SlitFrame& f, double theta,
                          double c3, const std::vector<double>& speeds,
                          const std::vector<double>& seff_values) {
    if (speeds.size() != seff_values.size() || speeds.empty())
        throw ConfigError("extract_size: speeds and S_eff values must pair up");
    for (double s : seff_values)
        if (s > f.S0)
            throw ConfigError("extract_size: S_eff above the geometric width");
    const double c = std::cos(f.alpha + theta);
    SizeEstimate est;
    est.with_vdw = c3 != 0.0;
    if (c3 == 0.0) {
        // closed-form inversion, averaged over the supplied velocities
        double acc = 0.0, acc2 = 0.0;
        for (double s : seff_values) {
            const double r = (4.0 / 3.0) * (f.S0 - s) * c;
            acc += r;
            acc2 += r * r;
        }
        const double n = static_cast<double>(seff_values.size());
        est.mean_r = acc / n;
        est.uncertainty =
            n > 1 ? std::sqrt(std::max(0.0, acc2 / n - est.mean_r * est.mean_r) /
                              (n - 1.0))
                  : 0.0;
        return est;
    }
    if (speeds.size() < 2)
        throw ConfigError("extract_size with vdW needs at least 2 velocities");
    auto sse = [&](double r) {
        double s = 0.0;
        for (std::size_t i = 0; i < speeds.size(); ++i) {
            const double model =
                f.S0 - 0.75 * r / c +
                effective_width_vdw_reduced(g, f, 0.5 * r, speeds[i], theta, c3);
            const double d = model - seff_values[i];
            s += d * d;
        }
        return s;
    };
    const double r_hi = 0.8 * f.S0 * c / 0.75;
    est.mean_r = golden_min(sse, 1e-4, r_hi, 1e-5);
    est.objective = sse(est.mean_r);
    // curvature-based uncertainty from the 1-d objective
    const double h = std::max(1e-4, 1e-3 * est.mean_r);
    const double d2 =
        (sse(est.mean_r + h) - 2.0 * est.objective + sse(est.mean_r - h)) /
        (h * h);
    const double dof = std::max<std::size_t>(speeds.size() - 1, 1);
    if (d2 > 0.0)
        est.uncertainty = std::sqrt(2.0 * est.objective / dof / d2);
    return est;
}

std::vector<double> velocity_design(std::size_t count, double lo, double hi) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = count > 1 ? static_cast<double>(i) / (count - 1) : 0.0;
        v[i] = lo * std::pow(hi / lo, t);
    }
    return v;
}

std::vector<MixedPoint> mixed_beam_analysis(
    const Grating& g, const SlitFrame& f, double theta, double c3,
    const TrimerModel& ground, const TrimerModel& excited,
    const std::vector<double>& w_grid, const std::vector<double>& speeds,
    int nmin, int nmax, const McSettings& mc) {
    // pure-state patterns once per velocity, mixed afterwards
    std::vector<Pattern> pg, pe;
    pg.reserve(speeds.size());
    pe.reserve(speeds.size());
    for (double v : speeds) {
        pg.push_back(
            pattern_trimer_exact(g, f, ground, v, theta, c3, nmin, nmax, mc));
        pe.push_back(
            pattern_trimer_exact(g, f, excited, v, theta, c3, nmin, nmax, mc));
    }
    std::vector<MixedPoint> out;
    out.reserve(w_grid.size());
    for (double w : w_grid) {
        std::vector<double> seff(speeds.size());
        double seff_sum = 0.0;
        for (std::size_t i = 0; i < speeds.size(); ++i) {
            Pattern mix = pg[i];
            mix.method = "trimer-mixed";
            for (std::size_t j = 0; j < mix.intensity.size(); ++j)
                mix.intensity[j] =
                    w * pg[i].intensity[j] + (1.0 - w) * pe[i].intensity[j];
            const FitResult fr = fit_pattern(mix, f.S0, true);
            seff[i] = fr.seff;
            seff_sum += fr.seff;
        }
        const SizeEstimate est =
            extract_size(g, f, theta, c3, speeds, seff);
        out.push_back(
            {w, seff_sum / static_cast<double>(speeds.size()), est.mean_r});
    }
    return out;
}

ResolutionMetrics resolution_metrics(const Grating& g, const SlitFrame& f,
                                     double theta, double mean_r) {
    const double c = std::cos(f.alpha + theta);
    const double d_perp = g.period * std::cos(theta);
    const double seff_geom = f.S0 - 0.75 * mean_r / c;
    if (seff_geom <= 0.0)
        throw GeometryError("trimer wider than the projected slit");
    ResolutionMetrics m;
    m.n_c = d_perp / (seff_geom * c);
    m.sensitivity = 0.75 / (f.S0 * c);
    return m;
}

} // namespace gdiff
