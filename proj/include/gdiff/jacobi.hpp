#pragma once

#include <array>
#include <cmath>

namespace gdiff {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Relative Jacobi coordinates for three particles, cycle (i, j, k):
//   rho_i = x_i - (m_j x_j + m_k x_k)/(m_j + m_k),   r_i = x_j - x_k.
// The 2x2 block maps (rho_i, r_i) -> (rho_j, r_j) for the cyclically next
// particle; the center of mass is untouched.
struct JacobiBlock {
    double a11, a12, a21, a22;

    double det() const { return a11 * a22 - a12 * a21; }

    std::array<Vec3, 2> apply(const Vec3& rho, const Vec3& r) const {
        return {a11 * rho + a12 * r, a21 * rho + a22 * r};
    }

    JacobiBlock operator*(const JacobiBlock& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
};

// Transformation from the frame of particle i to the frame of particle j
// within the cycle (i, j, k); masses in any consistent unit.
JacobiBlock jacobi_rel(double mi, double mj, double mk);

// Pair separations x_i - x_j and x_i - x_k expressed in frame-i coordinates.
inline Vec3 pair_ij(const Vec3& rho, const Vec3& r, double mj, double mk) {
    return rho - (mk / (mj + mk)) * r;
}
inline Vec3 pair_ik(const Vec3& rho, const Vec3& r, double mj, double mk) {
    return rho + (mj / (mj + mk)) * r;
}

} // namespace gdiff
