#include <doctest.h>

#include <cmath>

#include "gdiff/errors.hpp"
#include "gdiff/quadrature.hpp"
#include "gdiff/surface.hpp"

using namespace gdiff;
using namespace gdiff::units;

namespace {
Transmission helium_tau(double c3 = 0.1) {
    const Grating g{100.0, 60.0, 120.0, 6.0 * deg};
    return Transmission(g, slit_frame(g), 21.0 * deg, 500.0 * m_per_s, c3);
}
} // namespace

TEST_CASE("eikonal phase golden values") {
    const Transmission t = helium_tau();
    CHECK(t.phase(0.0) ==
          doctest::Approx(0.0060878193300521969).epsilon(1e-10));
    CHECK(t.phase(20.0) == doctest::Approx(0.00674683066518001).epsilon(1e-9));
    CHECK(t.phase(-20.0) == doctest::Approx(0.00901219232835464).epsilon(1e-9));
}

TEST_CASE("phase grows toward the edges and tau stays unimodular") {
    const Transmission t = helium_tau();
    CHECK(t.phase(-69.0) > t.phase(-50.0));
    CHECK(t.phase(69.0) > t.phase(50.0));
    CHECK(std::abs(t.tau(10.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.tau(80.0) == cdouble{0.0, 0.0});
    CHECK(t.tau(-71.0) == cdouble{0.0, 0.0});
}

TEST_CASE("edge divergence coefficients") {
    const Transmission t = helium_tau();
    // phase ~ K/xi^2 near an edge
    const double xi = 1e-3;
    CHECK(t.phase(0.5 * t.S0() - xi) * xi * xi ==
          doctest::Approx(t.k_right()).epsilon(1e-3));
    CHECK(t.phase(-0.5 * t.S0() + xi) * xi * xi ==
          doctest::Approx(t.k_left()).epsilon(1e-3));
    CHECK(t.k_left() > t.k_right()); // theta' < 90: lee side steeper
}

TEST_CASE("edge trim respects the floor and the contribution bound") {
    const Transmission t = helium_tau();
    const double tol = 1e-10;
    const double d = t.edge_trim_right(tol);
    CHECK(d >= 1e-4 * t.S0());
    const double loose = t.edge_trim_right(1e-2);
    CHECK(loose == doctest::Approx(std::cbrt(1e-2 * t.k_right())));
}

TEST_CASE("no interaction means unit transmission and no trim") {
    const Transmission t = helium_tau(0.0);
    CHECK(t.tau(30.0) == cdouble{1.0, 0.0});
    CHECK(t.phase(30.0) == 0.0);
    CHECK(t.edge_trim_left(1e-10) == 0.0);
    CHECK(t.edge_trim_right(1e-10) == 0.0);
}

TEST_CASE("trajectory parallel to a bar wall is rejected") {
    const Grating g{100.0, 60.0, 120.0, 6.0 * deg};
    CHECK_THROWS_AS(
        Transmission(g, slit_frame(g), 6.0 * deg, 500.0 * m_per_s, 0.1),
        GeometryError);
    // but fine when C3 = 0 (no phase evaluated)
    CHECK_NOTHROW(
        Transmission(g, slit_frame(g), 6.0 * deg, 500.0 * m_per_s, 0.0));
}
