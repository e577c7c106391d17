#include "gdiff/jacobi.hpp"

namespace gdiff {

JacobiBlock jacobi_rel(double mi, double mj, double mk) {
    const double m = mi + mj + mk;
    return {-mi / (mi + mk), mk * m / ((mj + mk) * (mk + mi)),
            -1.0, -mj / (mj + mk)};
}

} // namespace gdiff
