#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <queue>
#include <vector>

#include "gdiff/errors.hpp"

namespace gdiff {

using cdouble = std::complex<double>;

struct QuadResult {
    cdouble value{0.0, 0.0};
    double error = 0.0;
    std::size_t evaluations = 0;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1].
inline constexpr double gk_half_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double gk_half_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Embedded 7-point Gauss weights (nonzero at odd Kronrod half-indices).
inline constexpr double gk_half_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

} // namespace detail

template <class F>
inline QuadResult gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    cdouble sk{0.0, 0.0};
    cdouble sg{0.0, 0.0};
    for (int i = 0; i < 8; ++i) {
        const double x = detail::gk_half_nodes[i];
        cdouble v = f(c - h * x);
        if (i < 7)
            v += f(c + h * x);
        sk += detail::gk_half_wk[i] * v;
        if (i % 2 == 1)
            sg += detail::gk_half_wg[i / 2] * v;
    }
    QuadResult r;
    r.value = sk * h;
    r.error = std::abs((sk - sg) * h);
    r.evaluations = 15;
    return r;
}

// Globally adaptive bisection on the Gauss-Kronrod 7-15 pair.  The error
// request is absolute; tightens intervals with the largest error first.
template <class F>
inline QuadResult integrate(F&& f, double a, double b, double abs_tol,
                            std::size_t max_intervals = 200000) {
    QuadResult total;
    if (a == b)
        return total;
    struct Seg {
        double a, b, error;
        cdouble value;
        bool operator<(const Seg& o) const { return error < o.error; }
    };
    std::priority_queue<Seg> heap;
    QuadResult first = gk15(f, a, b);
    total.evaluations = first.evaluations;
    heap.push(Seg{a, b, first.error, first.value});
    double err_sum = first.error;
    cdouble val_sum = first.value;
    std::size_t n_seg = 1;
    while (err_sum > abs_tol && n_seg < max_intervals) {
        Seg top = heap.top();
        heap.pop();
        const double m = 0.5 * (top.a + top.b);
        QuadResult l = gk15(f, top.a, m);
        QuadResult r = gk15(f, m, top.b);
        total.evaluations += l.evaluations + r.evaluations;
        val_sum += l.value + r.value - top.value;
        err_sum += l.error + r.error - top.error;
        heap.push(Seg{top.a, m, l.error, l.value});
        heap.push(Seg{m, top.b, r.error, r.value});
        ++n_seg;
    }
    if (err_sum > std::max(abs_tol * 16.0, 1e-6 * std::abs(val_sum) + abs_tol))
        throw NumericsError("quadrature failed to converge");
    total.value = val_sum;
    total.error = err_sum;
    return total;
}

// Golden-section minimization of a unimodal scalar function.
inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, double xtol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > xtol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace gdiff
