#include <doctest.h>

#include <cmath>

#include "gdiff/trimer.hpp"

using namespace gdiff;
using namespace gdiff::units;

namespace {
const Grating g{100.0, 60.0, 120.0, 6.0 * deg};
const double th21 = 21.0 * deg;

McSettings quick(std::size_t n, std::uint64_t seed = 5) {
    McSettings mc;
    mc.samples = n;
    mc.seed = seed;
    mc.tol = 1e-5;
    return mc;
}
} // namespace

TEST_CASE("point-like trimer transmission is the cubed atom phase") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel tiny = make_model(Family::gaussian, 1e-4);
    const TrimerTransmission tt(g, f, tiny, 500.0 * m_per_s, th21, 0.1,
                                quick(200));
    const Transmission at(g, f, th21, 500.0 * m_per_s, 0.1);
    const cdouble expect = std::exp(cdouble(0.0, 3.0 * at.phase(0.0)));
    const cdouble got = tt.tau(0.0);
    CHECK(std::abs(got - expect) < 1e-6);
    CHECK(std::abs(tt.tau(0.7 * f.S0)) == 0.0);
}

TEST_CASE("extended model attenuates near the slit edge") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel m = make_model(Family::gaussian, 7.97);
    const TrimerTransmission tt(g, f, m, 500.0 * m_per_s, th21, 0.0,
                                quick(5000));
    const double near_edge = std::abs(tt.tau(0.5 * f.S0 - 5.0));
    CHECK(near_edge > 0.0);
    CHECK(near_edge < 1.0);
    CHECK(std::abs(tt.tau(0.0)) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("trimer cumulants vanish for trivial transmission") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel tiny = make_model(Family::gaussian, 1e-4);
    const McSettings mc = quick(100);
    const TrimerTransmission tt(g, f, tiny, 500.0 * m_per_s, th21, 0.0, mc);
    const Cumulants c = cumulants_trimer(tt, f, mc);
    CHECK(std::abs(c.r1p) < 1e-3);
    CHECK(std::abs(c.r1m) < 1e-3);
    CHECK(std::abs(c.r2p) < 1.0);
    CHECK(std::abs(c.omega()) < 1.0);
    CHECK(c.seff() == doctest::Approx(f.S0).epsilon(1e-5));
}

TEST_CASE("trimer pattern basics") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel m = make_model(Family::gaussian, 0.96);
    const Pattern p = pattern_trimer_exact(g, f, m, 500.0 * m_per_s, th21, 0.1,
                                           -3, 3, quick(2000));
    REQUIRE(p.orders.size() == 7);
    for (std::size_t i = 0; i < p.orders.size(); ++i)
        if (p.orders[i].n == 0)
            CHECK(p.intensity[i] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.stderr_mc.size() == p.orders.size());
}

TEST_CASE("geometric effective width, closed form and MC") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel mg = make_model(Family::gaussian, 0.96);
    const TrimerModel me = make_model(Family::gaussian, 7.97);
    CHECK(effective_width_geometric(f, mg, th21) ==
          doctest::Approx(136.18453898778).epsilon(1e-9));
    CHECK(effective_width_geometric(f, me, th21) ==
          doctest::Approx(106.43276442884).epsilon(1e-9));
    const auto s = sample_relative(mg, 31, 200000);
    const McValue v = effective_width_geometric_mc(f, s, th21);
    CHECK(std::abs(v.value - effective_width_geometric(f, mg, th21)) <
          3.0 * v.stderr_mc);
    // excited state: smaller effective width
    CHECK(effective_width_geometric(f, me, th21) <
          effective_width_geometric(f, mg, th21));
}

TEST_CASE("reduced van der Waals width, frozen values") {
    const SlitFrame f = slit_frame(g);
    CHECK(effective_width_vdw_reduced(g, f, 0.48, 500.0 * m_per_s, th21, 0.1) ==
          doctest::Approx(-13.714223188).epsilon(1e-5));
    CHECK(effective_width_vdw_reduced(g, f, 3.985, 500.0 * m_per_s, th21, 0.1) ==
          doctest::Approx(-10.175740130).epsilon(1e-5));
    CHECK(effective_width_vdw_reduced(g, f, 0.48, 500.0 * m_per_s, th21, 0.0) ==
          doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("full van der Waals width is near the reduced form") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel m = make_model(Family::gaussian, 0.96);
    const McValue full = effective_width_vdw_full(g, f, m, 500.0 * m_per_s,
                                                  th21, 0.1, quick(4000));
    const double red =
        effective_width_vdw_reduced(g, f, m.mean_r_perp(), 500.0 * m_per_s,
                                    th21, 0.1);
    CHECK(full.value < 0.0);
    CHECK(red < 0.0);
    CHECK(std::abs(full.value - red) < 0.3 * std::abs(red));
}

TEST_CASE("doubling the MC budget is stable within errors") {
    const SlitFrame f = slit_frame(g);
    const TrimerModel m = make_model(Family::gaussian, 7.97);
    const auto s1 = sample_relative(m, 17, 100000);
    const auto s2 = sample_relative(m, 17, 200000);
    const McValue a = effective_width_geometric_mc(f, s1, th21);
    const McValue b = effective_width_geometric_mc(f, s2, th21);
    CHECK(std::abs(a.value - b.value) <
          2.0 * std::sqrt(a.stderr_mc * a.stderr_mc + b.stderr_mc * b.stderr_mc));
}

TEST_CASE("off-diagonal neglect: ground-sized pairs never span a bar") {
    const double c = std::cos(slit_frame(g).alpha + th21);
    for (Family fam : {Family::gaussian, Family::exponential}) {
        const TrimerModel m = make_model(fam, 0.96);
        const auto s = sample_relative(m, 23, 1000000);
        std::size_t bad = 0;
        for (const RelSample& q : s)
            if (std::abs(q.r.x) / c > g.period - g.slit_width)
                ++bad;
        CHECK(static_cast<double>(bad) / static_cast<double>(s.size()) <
              1e-6);
    }
}
