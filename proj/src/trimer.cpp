#include "gdiff/trimer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

#include "gdiff/quadrature.hpp"

namespace gdiff {

namespace {

unsigned worker_count(const McSettings& mc) {
    if (mc.workers > 0)
        return mc.workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Run f(i) for i in [0, n) distributed over tasks; results are assembled
// by index so the outcome does not depend on the worker count.
template <class F>
void parallel_for(unsigned workers, std::size_t n, F&& f) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            f(i);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w)
        futs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < n; i = next++)
                f(i);
        }));
    for (auto& fu : futs)
        fu.get();
}

} // namespace

TrimerTransmission::TrimerTransmission(const Grating& g, const SlitFrame& f,
                                       const TrimerModel& model, double speed,
                                       double theta, double c3,
                                       const McSettings& mc)
    : atom_(g, f, theta, speed, c3), tol_abs_(mc.tol * f.S0) {
    const double c = std::cos(f.alpha + theta);
    const auto rel = sample_relative(model, mc.seed, mc.samples);
    shifts_.reserve(rel.size());
    for (const RelSample& s : rel) {
        // atom offsets from the center of mass, equal masses:
        // x1 = (2/3) rho, x2/x3 = -rho/3 +- r/2; slit-line projection 1/c.
        const double a1 = (2.0 / 3.0) * s.rho.x / c;
        const double a2 = (-s.rho.x / 3.0 + 0.5 * s.r.x) / c;
        const double a3 = (-s.rho.x / 3.0 - 0.5 * s.r.x) / c;
        shifts_.push_back({a1, a2, a3});
    }
}

cdouble TrimerTransmission::tau(double S2) const {
    cdouble sum{0.0, 0.0};
    for (const auto& d : shifts_)
        sum += atom_.tau(S2 + d[0]) * atom_.tau(S2 + d[1]) * atom_.tau(S2 + d[2]);
    return sum / static_cast<double>(shifts_.size());
}

cdouble TrimerTransmission::sample_weighted(
    std::size_t i, double a, double b,
    const std::function<cdouble(double)>& weight) const {
    const double h = 0.5 * atom_.S0();
    const auto& d = shifts_[i];
    const double dmin = std::min({d[0], d[1], d[2]});
    const double dmax = std::max({d[0], d[1], d[2]});
    const double lo = -h - dmin;
    const double hi = h - dmax;
    double a_eff = std::max(a, lo);
    double b_eff = std::min(b, hi);
    // the atom that defines the support touches a slit edge there
    const double edge_budget = 0.25 * tol_abs_;
    const double dl = atom_.edge_trim_left(edge_budget);
    const double dr = atom_.edge_trim_right(edge_budget);
    if (a_eff - lo < dl)
        a_eff = lo + dl;
    if (hi - b_eff < dr)
        b_eff = hi - dr;
    if (a_eff >= b_eff)
        return {0.0, 0.0};
    auto f = [&](double s) {
        return weight(s) * atom_.tau(s + d[0]) * atom_.tau(s + d[1]) *
               atom_.tau(s + d[2]);
    };
    return integrate(f, a_eff, b_eff, tol_abs_).value;
}

cdouble TrimerTransmission::sample_integral(std::size_t i, double a, double b,
                                            double kappa) const {
    if (kappa == 0.0)
        return sample_weighted(i, a, b, [](double) { return cdouble{1.0, 0.0}; });
    return sample_weighted(i, a, b, [kappa](double s) {
        return std::exp(cdouble(0.0, -kappa * s));
    });
}

cdouble TrimerTransmission::sample_amplitude(std::size_t i, double kappa) const {
    const double inf = std::numeric_limits<double>::infinity();
    return sample_integral(i, -inf, inf, kappa);
}

Pattern pattern_trimer_exact(const Grating& g, const SlitFrame& f,
                             const TrimerModel& model, double speed,
                             double theta, double c3, int nmin, int nmax,
                             const McSettings& mc) {
    const TrimerTransmission t(g, f, model, speed, theta, c3, mc);
    const Beam beam{model.total_mass(), speed, theta};
    Pattern p;
    p.method = "trimer-exact";
    p.orders = orders(g, f, beam, nmin, nmax, &p.evanescent);
    const std::size_t nord = p.orders.size();
    const std::size_t ns = t.samples();
    std::vector<cdouble> amp(nord);
    std::vector<double> var_re(nord), var_im(nord);
    parallel_for(worker_count(mc), nord, [&](std::size_t j) {
        cdouble s{0.0, 0.0};
        double s2r = 0.0, s2i = 0.0;
        const double kappa = p.orders[j].kappa;
        for (std::size_t i = 0; i < ns; ++i) {
            const cdouble a = t.sample_amplitude(i, kappa);
            s += a;
            s2r += a.real() * a.real();
            s2i += a.imag() * a.imag();
        }
        const double n = static_cast<double>(ns);
        amp[j] = s / n;
        var_re[j] = std::max(0.0, s2r / n - amp[j].real() * amp[j].real()) / n;
        var_im[j] = std::max(0.0, s2i / n - amp[j].imag() * amp[j].imag()) / n;
    });
    // locate n = 0 for normalization
    double norm = 0.0;
    for (std::size_t j = 0; j < nord; ++j)
        if (p.orders[j].n == 0)
            norm = std::norm(amp[j]);
    if (norm == 0.0) {
        cdouble s{0.0, 0.0};
        for (std::size_t i = 0; i < ns; ++i)
            s += t.sample_amplitude(i, 0.0);
        norm = std::norm(s / static_cast<double>(ns));
    }
    p.intensity.resize(nord);
    p.stderr_mc.resize(nord);
    for (std::size_t j = 0; j < nord; ++j) {
        const double ob2 = p.orders[j].obliquity * p.orders[j].obliquity;
        p.intensity[j] = ob2 * std::norm(amp[j]) / norm;
        p.stderr_mc[j] =
            ob2 * 2.0 *
            std::sqrt(std::pow(amp[j].real(), 2) * var_re[j] +
                      std::pow(amp[j].imag(), 2) * var_im[j]) /
            norm;
    }
    return p;
}

Cumulants cumulants_trimer(const TrimerTransmission& t, const SlitFrame& f,
                           const McSettings& mc) {
    const double h = 0.5 * f.S0;
    const std::size_t ns = t.samples();
    // four averaged integrals of tau^tri: over [0,h], [-h,0], and the
    // xi-weighted pair entering R2
    std::array<cdouble, 4> acc{};
    std::vector<std::array<cdouble, 4>> part(ns);
    parallel_for(worker_count(mc), ns, [&](std::size_t i) {
        part[i][0] = t.sample_integral(i, 0.0, h, 0.0);
        part[i][1] = t.sample_integral(i, -h, 0.0, 0.0);
        part[i][2] = t.sample_weighted(i, 0.0, h, [h](double u) { return h - u; });
        part[i][3] = t.sample_weighted(i, -h, 0.0, [h](double u) { return h + u; });
    });
    for (const auto& q : part)
        for (int j = 0; j < 4; ++j)
            acc[j] += q[j];
    for (auto& v : acc)
        v /= static_cast<double>(ns);
    Cumulants c;
    c.s0 = f.S0;
    c.r1p = h - acc[0];
    c.r1m = h - acc[1];
    c.r2p = h * h - c.r1p * c.r1p - 2.0 * acc[2];
    c.r2m = h * h - c.r1m * c.r1m - 2.0 * acc[3];
    return c;
}

Pattern pattern_trimer_cumulant(const Grating& g, const SlitFrame& f,
                                const TrimerModel& model, double speed,
                                double theta, double c3, int nmin, int nmax,
                                const McSettings& mc) {
    const TrimerTransmission t(g, f, model, speed, theta, c3, mc);
    const Cumulants c = cumulants_trimer(t, f, mc);
    const Beam beam{model.total_mass(), speed, theta};
    Pattern p;
    p.method = "trimer-cumulant";
    p.orders = orders(g, f, beam, nmin, nmax, &p.evanescent);
    p.intensity.reserve(p.orders.size());
    for (const Order& o : p.orders)
        p.intensity.push_back(cumulant_intensity(c, o, true));
    return p;
}

double effective_width_geometric(const SlitFrame& f, const TrimerModel& model,
                                 double theta) {
    const double c = std::cos(f.alpha + theta);
    return f.S0 - 1.5 * model.mean_r_perp() / c;
}

McValue effective_width_geometric_mc(const SlitFrame& f,
                                     const std::vector<RelSample>& samples,
                                     double theta) {
    const double c = std::cos(f.alpha + theta);
    double s1 = 0.0, s2 = 0.0;
    for (const RelSample& s : samples) {
        // projected pair distances in the frame of particle 1, equal masses
        const double w = std::abs(s.r.x) + std::abs(s.rho.x - 0.5 * s.r.x) +
                         std::abs(s.rho.x + 0.5 * s.r.x);
        s1 += w;
        s2 += w * w;
    }
    const double n = static_cast<double>(samples.size());
    const double mean = s1 / n;
    const double var = std::max(0.0, s2 / n - mean * mean) / n;
    McValue v;
    v.value = f.S0 - 0.5 * mean / c;
    v.stderr_mc = 0.5 * std::sqrt(var) / c;
    return v;
}

namespace {

// One side of eq-style triple-tau integrals: h - Int_a^b tau(u) tau(u -+ D1)
// tau(u -+ D2) du on [0,h] (upper, minus shifts) or [-h,0] (plus shifts).
cdouble triple_side(const Transmission& t, double d1, double d2, bool upper,
                    double tol_abs) {
    const double h = 0.5 * t.S0();
    const double edge_budget = 0.25 * tol_abs;
    const double dl = t.edge_trim_left(edge_budget);
    const double dr = t.edge_trim_right(edge_budget);
    double a, b;
    if (upper) {
        const double lo = -h + std::max({0.0, d1, d2});
        a = std::max(0.0, lo);
        if (a - lo < dl)
            a = std::max(a, lo + dl);
        b = h - dr;
    } else {
        const double hi = h - std::max({0.0, d1, d2});
        b = std::min(0.0, hi);
        if (hi - b < dr)
            b = std::min(b, hi - dr);
        a = -h + dl;
    }
    if (a >= b)
        return {h, 0.0};
    auto f = upper ? std::function<cdouble(double)>([&t, d1, d2](double u) {
        return t.tau(u) * t.tau(u - d1) * t.tau(u - d2);
    })
                   : std::function<cdouble(double)>([&t, d1, d2](double u) {
                         return t.tau(u) * t.tau(u + d1) * t.tau(u + d2);
                     });
    return h - integrate(f, a, b, tol_abs).value;
}

} // namespace

double effective_width_vdw_reduced(const Grating& g, const SlitFrame& f,
                                   double mean_r_perp, double speed,
                                   double theta, double c3, double tol) {
    const Transmission t(g, f, theta, speed, c3);
    const double c = std::cos(f.alpha + theta);
    const double d1 = mean_r_perp / c;
    const double d2 = 1.25 * mean_r_perp / c;
    const double tol_abs = tol * f.S0;
    const cdouble up = triple_side(t, d1, d2, true, tol_abs);
    const cdouble lo = triple_side(t, d1, d2, false, tol_abs);
    return -(up + lo).real();
}

McValue effective_width_vdw_full(const Grating& g, const SlitFrame& f,
                                 const TrimerModel& model, double speed,
                                 double theta, double c3, const McSettings& mc) {
    const Transmission t(g, f, theta, speed, c3);
    const double c = std::cos(f.alpha + theta);
    const auto rel = sample_relative(model, mc.seed, mc.samples);
    const double tol_abs = mc.tol * f.S0;
    const std::size_t ns = rel.size();
    std::vector<double> vals(ns);
    parallel_for(worker_count(mc), ns, [&](std::size_t i) {
        const double rp = std::abs(rel[i].r.x);
        const double rho = rel[i].rho.x;
        const double d1u = std::abs(rho - 0.5 * rp) / c;
        const double d2u = (rp + std::max(0.0, rho - 0.5 * rp)) / c;
        const double d1l = std::abs(rho + 0.5 * rp) / c;
        const double d2l = (rp + std::max(0.0, -(rho + 0.5 * rp))) / c;
        const cdouble up = triple_side(t, d1u, d2u, true, tol_abs);
        const cdouble lo = triple_side(t, d1l, d2l, false, tol_abs);
        vals[i] = -(up + lo).real();
    });
    double s1 = 0.0, s2 = 0.0;
    for (double v : vals) {
        s1 += v;
        s2 += v * v;
    }
    const double n = static_cast<double>(ns);
    McValue out;
    out.value = s1 / n;
    out.stderr_mc = std::sqrt(std::max(0.0, s2 / n - out.value * out.value) / n);
    return out;
}

} // namespace gdiff
