#pragma once

#include <optional>
#include <vector>

#include "distreg/fixed_point.hpp"
#include "distreg/scale_distribution.hpp"

namespace distreg {

// Proportional-limit description of a distributed regression problem: pooled
// aspect ratio gamma = lim p/n, per-machine ratios gamma_i = lim p/n_i with
// sum 1/gamma_i = 1/gamma, pooled scale law G and per-machine laws G_i with
// G/gamma = sum_i G_i/gamma_i. The feature-spectrum law may be attached for
// completeness; every implemented limit is free of it (the equivalence check
// probes that empirically under non-identity covariances).
struct AsymptoticRegime {
    double gamma = 0.0;
    std::vector<double> gammas;
    ScaleDistribution g = ScaleDistribution::point_mass(1.0);
    std::vector<ScaleDistribution> gs;
    std::optional<ScaleDistribution> feature_spectrum;  // accepted, never read

    int k() const { return static_cast<int>(gammas.size()); }

    // k equal machines, every G_i equal to G.
    static AsymptoticRegime equal_split(double gamma, int k, ScaleDistribution g);
    // Marchenko-Pastur special case (all scales 1).
    static AsymptoticRegime mp(double gamma, int k);

    void validate() const;
};

// Almost-sure limits of the finite-sample efficiencies. Values in [0, 1];
// limits clamp to 0 whenever some gamma_i >= 1 (a machine with fewer rows
// than columns).
double are_limit(const AsymptoticRegime& regime);                // estimation
double fe_limit(const AsymptoticRegime& regime);                 // regression function
double ie_limit(const AsymptoticRegime& regime);                 // in-sample
double oe_limit(const AsymptoticRegime& regime, double g_t);     // out-of-sample, given g_t
double ce_limit(const AsymptoticRegime& regime);                 // coordinate; equals are_limit

// Closed forms for the Marchenko-Pastur model, used as reference laws.
namespace mp {
double are(double gamma, double k);  // (1 - k*gamma)/(1 - gamma), clamped at 0
double ie(double gamma, double k);   // 1/(1 + (k-1)gamma^2/((1-k*gamma)(1-gamma)))
double oe(double gamma, double k);   // 1/(1 + (k-1)gamma^2/(1-k*gamma))
double fe(double gamma, const std::vector<double>& gammas);
double are_finite(int n, int p, int k);  // (n-kp)/(n-p), clamped at 0
double oe_finite(int n, int p, int k);   // 1/(1 + p^2 (k-1)/(n(n-kp)))
}  // namespace mp

// Largest machine count with efficiency at least 1/2, and the efficiency at
// the edge k* = 1/gamma - 1, for the estimation / in-sample / out-of-sample
// laws.
struct Criticality {
    double k_estimation, k_insample, k_outsample;
    double edge_estimation, edge_insample, edge_outsample;
};
Criticality criticality(double gamma);

// Estimation efficiency limit for the two-point scale mixture
// (1-c) at tau, c at alpha*tau, computed from the closed quadratic roots of
// the eta inversion. Independent of tau.
double worst_case_are(int k, double gamma, double c, double alpha, double tau);

// ARE(k) = k f(gamma,G)/f(k gamma,G) sampled on a grid of (possibly
// fractional) machine counts, with discrete monotonicity/convexity checks.
struct AreScan {
    struct Point {
        double k;
        double are;
    };
    std::vector<Point> points;
    bool strictly_decreasing = false;
    bool midpoint_convex = false;  // on uniformly spaced grids
};
AreScan are_monotonicity_scan(double gamma, const ScaleDistribution& g,
                              const std::vector<double>& k_grid);

}  // namespace distreg
