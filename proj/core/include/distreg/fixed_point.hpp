#pragma once

#include "distreg/scale_distribution.hpp"

namespace distreg {

// Solution of E_G[T e / (1 + gamma T e)] = 1 in e > 0. The map is strictly
// increasing in e, so the root is unique; f = gamma * e is the inverse eta
// transform of G at 1 - gamma.
struct FixedPointSolution {
    double e = 0.0;
    double f = 0.0;         // gamma * e, exactly
    double residual = 0.0;  // |E[Te/(1+gamma Te)] - 1| at the returned e
    int iterations = 0;
};

// Bracketed bisection on (0, 1/((1-gamma) * min scale)] followed by a Newton
// polish; residual at most `tol` or NumericalError after `max_iter` rounds.
FixedPointSolution solve_e(double gamma, const ScaleDistribution& g, double tol = 1e-13,
                           int max_iter = 200);

// f(gamma, G): the value x with eta_G(x) = 1 - gamma, computed as gamma * e.
double f_inverse_eta(double gamma, const ScaleDistribution& g);

// Direct functional inversion of eta at y in (0, 1): brackets by doubling x
// until eta(x) < y (capped at x = 1e15), then bisects. Used as the
// cross-check route for f_inverse_eta.
double eta_inverse(const ScaleDistribution& g, double y);

}  // namespace distreg
