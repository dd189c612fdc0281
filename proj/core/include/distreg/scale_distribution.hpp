#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "distreg/rng.hpp"

namespace distreg {

// Law of the per-sample scale in the elliptical data model x = g^{1/2} S^{1/2} z.
//
// Supported families: a point mass, a two-point mixture, a uniform interval,
// and a general finite discrete law. Weights must sum to one (within 1e-12),
// every atom must be strictly positive, and a uniform law needs 0 < lo < hi.
// The Marchenko-Pastur model is point_mass(1).
class ScaleDistribution {
public:
    enum class Kind { PointMass, TwoPoint, Uniform, Discrete };

    static ScaleDistribution point_mass(double scale);
    static ScaleDistribution two_point(double w1, double s1, double w2, double s2);
    static ScaleDistribution uniform(double lo, double hi);
    // atoms are (weight, scale) pairs
    static ScaleDistribution discrete(std::vector<std::pair<double, double>> atoms);

    Kind kind() const { return kind_; }
    bool is_point_mass() const { return kind_ == Kind::PointMass; }

    double mean() const;       // E[T]
    double min_scale() const;  // essential infimum of the support
    double max_scale() const;

    // eta(x) = E[1/(1 + xT)], defined for x >= 0; decreasing with eta(0) = 1.
    double eta(double x) const;
    double eta_derivative(double x) const;

    // E[T e /(1 + gamma T e)] and its derivative in e; the map whose root in e
    // drives every asymptotic efficiency formula. Closed form for all kinds.
    double fp_moment(double gamma, double e) const;
    double fp_moment_derivative(double gamma, double e) const;

    double sample(Rng& rng) const;

    // "pointmass(1)", "twopoint(0.5,1,0.5,2)", "uniform(1e-6,1)",
    // "discrete(w1,s1,w2,s2,...)"
    static ScaleDistribution parse(std::string_view text);
    std::string to_string() const;

    bool operator==(const ScaleDistribution&) const = default;

    // atoms for discrete kinds; empty for Uniform
    const std::vector<std::pair<double, double>>& atoms() const { return atoms_; }
    double uniform_lo() const { return lo_; }
    double uniform_hi() const { return hi_; }

private:
    ScaleDistribution() = default;

    Kind kind_ = Kind::PointMass;
    std::vector<std::pair<double, double>> atoms_;
    double lo_ = 0.0, hi_ = 0.0;
};

// eta transform of G at x (x >= 0). Thin wrapper with the precondition check.
double eta_transform(const ScaleDistribution& g, double x);

}  // namespace distreg
