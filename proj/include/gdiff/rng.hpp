#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "gdiff/jacobi.hpp"
#include "gdiff/units.hpp"

namespace gdiff {

// mt19937_64 with hand-rolled transforms so that sampled streams are
// bit-identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {
        // 53-bit mantissa in [0, 1)
        return (eng_() >> 11) * 0x1.0p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * units::pi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    Vec3 normal3(double stddev) {
        return {stddev * normal(), stddev * normal(), stddev * normal()};
    }

    // Gamma(shape = n, scale) for small integer n, as a sum of exponentials.
    double gamma_int(int n, double scale) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            double u = uniform();
            while (u <= 0.0)
                u = uniform();
            s -= std::log(u);
        }
        return scale * s;
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace gdiff
