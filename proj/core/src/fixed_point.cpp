#include "distreg/fixed_point.hpp"

#include <cmath>
#include <string>

#include "distreg/errors.hpp"

namespace distreg {

FixedPointSolution solve_e(double gamma, const ScaleDistribution& g, double tol, int max_iter) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("solve_e: gamma must be in (0,1), got " + std::to_string(gamma));

    // E[Te/(1+gamma Te)] is 0 at e = 0 and reaches 1 no later than
    // e = 1/((1-gamma) * s_min): at that point each integrand term is at least 1.
    double lo = 0.0;
    double hi = 1.0 / ((1.0 - gamma) * g.min_scale());
    // guard against rounding right at the bracket edge
    while (g.fp_moment(gamma, hi) < 1.0) hi *= 2.0;

    FixedPointSolution sol;
    int it = 0;
    for (; it < max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g.fp_moment(gamma, mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }

    // keep the better bracket end, then Newton-polish
    double e = hi;
    double res = g.fp_moment(gamma, e) - 1.0;
    if (lo > 0.0) {
        const double res_lo = g.fp_moment(gamma, lo) - 1.0;
        if (std::abs(res_lo) < std::abs(res)) {
            e = lo;
            res = res_lo;
        }
    }
    for (int polish = 0; polish < 8 && res != 0.0; ++polish, ++it) {
        const double deriv = g.fp_moment_derivative(gamma, e);
        if (!(deriv > 0.0)) break;
        const double next = e - res / deriv;
        if (!(next > 0.0) || next == e) break;
        const double next_res = g.fp_moment(gamma, next) - 1.0;
        if (std::abs(next_res) >= std::abs(res)) break;
        e = next;
        res = next_res;
    }

    sol.e = e;
    sol.f = gamma * e;
    sol.residual = std::abs(res);
    sol.iterations = it;
    if (!(sol.residual <= tol))
        throw NumericalError("solve_e did not converge: residual " +
                             std::to_string(sol.residual) + " after " + std::to_string(it) +
                             " iterations");
    return sol;
}

double f_inverse_eta(double gamma, const ScaleDistribution& g) {
    return solve_e(gamma, g).f;
}

double eta_inverse(const ScaleDistribution& g, double y) {
    if (!(y > 0.0 && y < 1.0)) throw ConfigError("eta_inverse: target must be in (0,1)");

    double lo = 0.0;
    double hi = 1.0;
    while (g.eta(hi) >= y) {
        hi *= 2.0;
        if (hi > 1e15)
            throw NumericalError("eta_inverse: bracket exceeded 1e15; eta plateaus above target");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (g.eta(mid) > y)
            lo = mid;
        else
            hi = mid;
    }
    // Newton polish (eta is smooth and strictly decreasing)
    double x = 0.5 * (lo + hi);
    double res = g.eta(x) - y;
    for (int it = 0; it < 60 && res != 0.0; ++it) {
        const double deriv = g.eta_derivative(x);
        if (!(deriv < 0.0)) break;
        const double next = x - res / deriv;
        if (!(next > 0.0) || next == x) break;
        const double next_res = g.eta(next) - y;
        if (std::abs(next_res) >= std::abs(res)) break;
        x = next;
        res = next_res;
    }
    return x;
}

}  // namespace distreg
