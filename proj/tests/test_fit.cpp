#include <doctest.h>

#include <cmath>

#include "gdiff/errors.hpp"
#include "gdiff/extraction.hpp"

using namespace gdiff;
using namespace gdiff::units;

namespace {
const Grating g{100.0, 60.0, 120.0, 6.0 * deg};
const Beam he500{mass_he4, 500.0 * m_per_s, 21.0 * deg};
} // namespace

TEST_CASE("noiseless round trip recovers the generator parameters") {
    const SlitFrame f = slit_frame(g);
    FitResult truth;
    truth.scale = 1.0;
    truth.seff = 130.4;
    truth.delta = -9.56;
    truth.gamma = 1.18;
    truth.sigma = 4.82;
    truth.with_omega = false;
    Pattern p;
    p.method = "synthetic";
    p.orders = orders(g, f, he500, -8, 8);
    for (const Order& o : p.orders)
        p.intensity.push_back(fit_model_intensity(truth, o));
    const FitResult fr = fit_pattern(p, f.S0, false);
    CHECK(fr.converged);
    CHECK(fr.seff == doctest::Approx(truth.seff).epsilon(1e-6));
    CHECK(fr.delta == doctest::Approx(truth.delta).epsilon(1e-5));
    CHECK(fr.gamma == doctest::Approx(truth.gamma).epsilon(1e-4));
    CHECK(fr.sigma == doctest::Approx(truth.sigma).epsilon(1e-5));
    CHECK(fr.scale == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fit is invariant under a common intensity rescale") {
    const SlitFrame f = slit_frame(g);
    const Pattern p = pattern_exact(g, f, he500, 0.1, -7, 7, 1e-8);
    Pattern scaled = p;
    for (double& v : scaled.intensity)
        v *= 37.5;
    const FitResult a = fit_pattern(p, f.S0, false);
    const FitResult b = fit_pattern(scaled, f.S0, false);
    CHECK(a.seff == doctest::Approx(b.seff).epsilon(1e-8));
    CHECK(b.scale / a.scale == doctest::Approx(37.5).epsilon(1e-6));
}

TEST_CASE("exact helium pattern yields a narrowed effective width") {
    const SlitFrame f = slit_frame(g);
    const Pattern p = pattern_exact(g, f, he500, 0.1, -8, 8, 1e-8);
    const FitResult fr = fit_pattern(p, f.S0, false);
    CHECK(fr.seff < f.S0);
    CHECK(fr.seff > 0.85 * f.S0);
    // close to the forward-model cumulant value
    CHECK(fr.seff == doctest::Approx(130.407).epsilon(0.01));
}

TEST_CASE("too few orders is an error") {
    const SlitFrame f = slit_frame(g);
    Pattern p;
    p.orders = orders(g, f, he500, -2, 2);
    p.intensity.assign(p.orders.size(), 1.0);
    CHECK_THROWS_AS(fit_pattern(p, f.S0, false), ConfigError);
}

TEST_CASE("closed-form size inversion without van der Waals") {
    const SlitFrame f = slit_frame(g);
    const double c = std::cos(f.alpha + he500.theta);
    const double r_true = 2.5;
    const double seff = f.S0 - 0.75 * r_true / c;
    const SizeEstimate est =
        extract_size(g, f, he500.theta, 0.0, {500.0 * m_per_s}, {seff});
    CHECK(est.mean_r == doctest::Approx(r_true).epsilon(1e-12));
}

TEST_CASE("size fit with van der Waals round-trips on model data") {
    const SlitFrame f = slit_frame(g);
    const double c = std::cos(f.alpha + he500.theta);
    const double r_true = 4.0;
    const auto speeds = velocity_design(4);
    std::vector<double> seff;
    for (double v : speeds)
        seff.push_back(f.S0 - 0.75 * r_true / c +
                       effective_width_vdw_reduced(g, f, 0.5 * r_true, v,
                                                   he500.theta, 0.1));
    const SizeEstimate est =
        extract_size(g, f, he500.theta, 0.1, speeds, seff);
    CHECK(est.mean_r == doctest::Approx(r_true).epsilon(1e-4));
    CHECK(est.objective < 1e-8);
}

TEST_CASE("monotone recovery across sizes") {
    const SlitFrame f = slit_frame(g);
    const double c = std::cos(f.alpha + he500.theta);
    const auto speeds = velocity_design(3);
    double prev = 0.0;
    for (double r_true : {0.5, 2.0, 6.0, 10.0}) {
        std::vector<double> seff;
        for (double v : speeds)
            seff.push_back(f.S0 - 0.75 * r_true / c +
                           effective_width_vdw_reduced(g, f, 0.5 * r_true, v,
                                                       he500.theta, 0.1));
        const SizeEstimate est =
            extract_size(g, f, he500.theta, 0.1, speeds, seff);
        CHECK(est.mean_r > prev);
        prev = est.mean_r;
    }
}

TEST_CASE("inconsistent effective widths are rejected") {
    const SlitFrame f = slit_frame(g);
    CHECK_THROWS_AS(extract_size(g, f, he500.theta, 0.0, {500.0 * m_per_s},
                                 {f.S0 + 1.0}),
                    ConfigError);
}

TEST_CASE("resolution metrics") {
    const SlitFrame f = slit_frame(g);
    const ResolutionMetrics m21 = resolution_metrics(g, f, 21.0 * deg, 0.0);
    CHECK(m21.sensitivity ==
          doctest::Approx(0.75 / (f.S0 * std::cos(f.alpha + 21.0 * deg))));
    const ResolutionMetrics m0 =
        resolution_metrics(g, thin_frame(g), 0.0, 0.0);
    CHECK(m0.sensitivity == doctest::Approx(0.0125));
    CHECK(m0.n_c == doctest::Approx(100.0 / 60.0));
}
