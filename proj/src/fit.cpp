#include "gdiff/fit.hpp"

#include <cmath>

#include "gdiff/errors.hpp"

namespace gdiff {

namespace {

using Params = std::vector<double>;

double model_value(const Params& p, bool with_omega, const Order& o) {
    const double scale = p[0], seff = p[1], delta = p[2], gamma = p[3],
                 sigma = p[4];
    const double omega = with_omega ? p[5] : 0.0;
    const double ob2 = o.obliquity * o.obliquity;
    const double kappa = o.kappa;
    const double norm = seff * seff + delta * delta;
    if (kappa == 0.0)
        return scale * ob2;
    const double num = std::pow(std::sin(0.5 * kappa * seff), 2) +
                       std::pow(std::sinh(0.5 * (kappa * delta +
                                                 kappa * kappa * omega)),
                                2);
    const double env =
        std::exp(-kappa * kappa * sigma * sigma - gamma * kappa);
    return scale * ob2 / norm * env * num / (0.25 * kappa * kappa);
}

// Gaussian elimination with partial pivoting; a is destroyed.
bool solve_linear(std::vector<std::vector<double>>& a, std::vector<double>& b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c]))
                piv = r;
        if (std::abs(a[piv][c]) < 1e-300)
            return false;
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = n; c-- > 0;) {
        for (std::size_t k = c + 1; k < n; ++k)
            b[c] -= a[c][k] * b[k];
        b[c] /= a[c][c];
    }
    return true;
}

struct Problem {
    const Pattern& data;
    bool with_omega;
    std::vector<double> weight;

    double cost(const Params& p) const {
        double s = 0.0;
        for (std::size_t i = 0; i < data.orders.size(); ++i) {
            const double r =
                (model_value(p, with_omega, data.orders[i]) - data.intensity[i]) *
                weight[i];
            s += r * r;
        }
        return 0.5 * s;
    }

    void residuals(const Params& p, std::vector<double>& r) const {
        r.resize(data.orders.size());
        for (std::size_t i = 0; i < data.orders.size(); ++i)
            r[i] = (model_value(p, with_omega, data.orders[i]) -
                    data.intensity[i]) *
                   weight[i];
    }

    void jacobian(const Params& p, std::vector<std::vector<double>>& jac) const {
        const std::size_t m = data.orders.size();
        const std::size_t np = p.size();
        jac.assign(m, std::vector<double>(np, 0.0));
        Params q = p;
        std::vector<double> rp, rm;
        for (std::size_t j = 0; j < np; ++j) {
            const double step = 1e-6 * std::max(std::abs(p[j]), 1.0);
            q[j] = p[j] + step;
            residuals(q, rp);
            q[j] = p[j] - step;
            residuals(q, rm);
            q[j] = p[j];
            for (std::size_t i = 0; i < m; ++i)
                jac[i][j] = (rp[i] - rm[i]) / (2.0 * step);
        }
    }
};

FitResult run_lm(const Problem& prob, Params p) {
    const std::size_t np = p.size();
    double lambda = 1e-3;
    double cost = prob.cost(p);
    FitResult res;
    std::vector<double> r;
    std::vector<std::vector<double>> jac;
    int it = 0;
    for (; it < 200; ++it) {
        prob.residuals(p, r);
        prob.jacobian(p, jac);
        std::vector<std::vector<double>> jtj(np, std::vector<double>(np, 0.0));
        std::vector<double> jtr(np, 0.0);
        for (std::size_t i = 0; i < r.size(); ++i)
            for (std::size_t a = 0; a < np; ++a) {
                jtr[a] += jac[i][a] * r[i];
                for (std::size_t b = a; b < np; ++b)
                    jtj[a][b] += jac[i][a] * jac[i][b];
            }
        for (std::size_t a = 0; a < np; ++a)
            for (std::size_t b = 0; b < a; ++b)
                jtj[a][b] = jtj[b][a];
        bool improved = false;
        for (int tries = 0; tries < 12 && !improved; ++tries) {
            auto lhs = jtj;
            for (std::size_t a = 0; a < np; ++a)
                lhs[a][a] += lambda * std::max(jtj[a][a], 1e-12);
            std::vector<double> step(jtr);
            for (double& v : step)
                v = -v;
            if (!solve_linear(lhs, step)) {
                lambda *= 10.0;
                continue;
            }
            Params q(np);
            for (std::size_t a = 0; a < np; ++a)
                q[a] = p[a] + step[a];
            const double c2 = prob.cost(q);
            if (c2 < cost) {
                double snorm = 0.0;
                for (std::size_t a = 0; a < np; ++a)
                    snorm += step[a] * step[a] /
                             std::pow(std::max(std::abs(p[a]), 1.0), 2);
                p = q;
                const double dc = cost - c2;
                cost = c2;
                lambda = std::max(lambda / 3.0, 1e-12);
                improved = true;
                if (std::sqrt(snorm) < 1e-10 || dc < 1e-16 * (1.0 + cost)) {
                    res.converged = true;
                    tries = 12;
                }
            } else {
                lambda *= 10.0;
            }
        }
        if (!improved || res.converged) {
            res.converged = res.converged || !improved;
            break;
        }
    }
    res.scale = p[0];
    res.seff = std::abs(p[1]);
    res.delta = p[2];
    res.gamma = p[3];
    res.sigma = std::abs(p[4]);
    res.omega = np > 5 ? p[5] : 0.0;
    res.residual_norm = std::sqrt(2.0 * cost);
    res.iterations = it;
    // covariance from (J^T J)^-1 at the solution
    prob.residuals(p, r);
    prob.jacobian(p, jac);
    std::vector<std::vector<double>> jtj(np, std::vector<double>(np, 0.0));
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t a = 0; a < np; ++a)
            for (std::size_t b = 0; b < np; ++b)
                jtj[a][b] += jac[i][a] * jac[i][b];
    const double dof =
        static_cast<double>(r.size() > np ? r.size() - np : 1);
    const double s2 = 2.0 * cost / dof;
    res.stderrs.assign(np, 0.0);
    for (std::size_t a = 0; a < np; ++a) {
        auto lhs = jtj;
        std::vector<double> e(np, 0.0);
        e[a] = 1.0;
        if (solve_linear(lhs, e) && e[a] > 0.0)
            res.stderrs[a] = std::sqrt(e[a] * s2);
    }
    return res;
}

} // namespace

double fit_model_intensity(const FitResult& p, const Order& o) {
    Params v{p.scale, p.seff, p.delta, p.gamma, p.sigma};
    if (p.with_omega)
        v.push_back(p.omega);
    return model_value(v, p.with_omega, o);
}

FitResult fit_pattern(const Pattern& data, double s0_hint, bool with_omega) {
    const std::size_t np = with_omega ? 6 : 5;
    if (data.orders.size() < np + 1)
        throw ConfigError("not enough diffraction orders for the fit");
    Problem prob{data, with_omega, {}};
    // relative intensities carry no count statistics: uniform weights
    prob.weight.assign(data.intensity.size(), 1.0);
    double i0 = 1.0;
    for (std::size_t i = 0; i < data.orders.size(); ++i)
        if (data.orders[i].n == 0)
            i0 = data.intensity[i];
    FitResult best;
    bool have = false;
    // delta enters the model quadratically near zero, so start it off-axis;
    // the model is even under (delta, omega) -> (-delta, -omega), the
    // attractive-wall branch delta <= 0 is reported.
    for (double frac : {1.0, 0.8, 0.6}) {
        for (double dfrac : {-0.05, 0.05}) {
            Params p(np, 0.0);
            p[0] = i0;
            p[1] = frac * s0_hint;
            p[2] = dfrac * s0_hint;
            p[4] = 0.01 * s0_hint;
            FitResult r = run_lm(prob, p);
            r.with_omega = with_omega;
            if (r.delta > 0.0) {
                r.delta = -r.delta;
                r.omega = -r.omega;
            }
            if (!have || r.residual_norm < best.residual_norm) {
                best = r;
                have = true;
            }
        }
    }
    return best;
}

} // namespace gdiff
