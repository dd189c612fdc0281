#include "distreg/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "distreg/errors.hpp"

namespace distreg {

AsymptoticRegime AsymptoticRegime::equal_split(double gamma, int k, ScaleDistribution g) {
    AsymptoticRegime r;
    r.gamma = gamma;
    r.gammas.assign(static_cast<std::size_t>(k), gamma * k);
    r.g = g;
    r.gs.assign(static_cast<std::size_t>(k), std::move(g));
    return r;
}

AsymptoticRegime AsymptoticRegime::mp(double gamma, int k) {
    return equal_split(gamma, k, ScaleDistribution::point_mass(1.0));
}

namespace {

// merged atom list of a discrete law, scaled by `weight_scale`
void accumulate_atoms(std::map<double, double>& acc, const ScaleDistribution& g,
                      double weight_scale) {
    for (const auto& [w, s] : g.atoms()) acc[s] += w * weight_scale;
}

bool atoms_match(const std::map<double, double>& lhs, const std::map<double, double>& rhs) {
    if (lhs.size() != rhs.size()) return false;
    auto it = rhs.begin();
    for (const auto& [s, w] : lhs) {
        if (std::abs(s - it->first) > 1e-12 * std::max(1.0, std::abs(s))) return false;
        if (std::abs(w - it->second) > 1e-9) return false;
        ++it;
    }
    return true;
}

}  // namespace

void AsymptoticRegime::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("regime: gamma must be in (0,1)");
    if (gammas.empty()) throw ConfigError("regime: needs at least one machine");
    if (gs.size() != gammas.size()) throw ConfigError("regime: one scale law per machine");
    double inv = 0.0;
    for (const double gi : gammas) {
        if (!(gi > 0.0)) throw ConfigError("regime: gamma_i must be positive");
        inv += 1.0 / gi;
    }
    if (std::abs(inv - 1.0 / gamma) > 1e-10 * (1.0 / gamma))
        throw ConfigError("regime: sum of 1/gamma_i must equal 1/gamma");

    // mixture identity G/gamma = sum_i G_i/gamma_i, checkable for discrete laws
    const bool all_discrete =
        g.kind() != ScaleDistribution::Kind::Uniform &&
        std::all_of(gs.begin(), gs.end(), [](const ScaleDistribution& gi) {
            return gi.kind() != ScaleDistribution::Kind::Uniform;
        });
    if (all_discrete) {
        std::map<double, double> pooled, combined;
        accumulate_atoms(pooled, g, 1.0 / gamma);
        for (std::size_t i = 0; i < gs.size(); ++i)
            accumulate_atoms(combined, gs[i], 1.0 / gammas[i]);
        if (!atoms_match(pooled, combined))
            throw ConfigError("regime: scale laws violate G/gamma = sum G_i/gamma_i");
    } else if (g.kind() == ScaleDistribution::Kind::Uniform) {
        for (const ScaleDistribution& gi : gs)
            if (!(gi == g))
                throw ConfigError("regime: uniform scale laws must match across machines");
    } else {
        throw ConfigError("regime: unsupported mixture of scale law kinds");
    }
}

namespace {

bool feasible(const AsymptoticRegime& r) {
    return std::all_of(r.gammas.begin(), r.gammas.end(),
                       [](double gi) { return gi < 1.0; });
}

}  // namespace

double are_limit(const AsymptoticRegime& regime) {
    regime.validate();
    if (!feasible(regime)) return 0.0;
    double inv_sum = 0.0;
    for (int i = 0; i < regime.k(); ++i)
        inv_sum += 1.0 / f_inverse_eta(regime.gammas[i], regime.gs[i]);
    return std::max(f_inverse_eta(regime.gamma, regime.g) * inv_sum, 0.0);
}

double fe_limit(const AsymptoticRegime& regime) {
    regime.validate();
    if (!feasible(regime)) return 0.0;
    const double pooled_mean_over_gamma = regime.g.mean() / regime.gamma;
    double v = 0.0;
    for (int i = 0; i < regime.k(); ++i) {
        const double fi = f_inverse_eta(regime.gammas[i], regime.gs[i]);
        const double drift = pooled_mean_over_gamma - regime.gs[i].mean() / regime.gammas[i];
        v += 1.0 / (1.0 + drift * fi);
    }
    return v;
}

double ie_limit(const AsymptoticRegime& regime) {
    regime.validate();
    if (!feasible(regime)) return 0.0;
    const double gamma = regime.gamma;
    const double pooled_mean = regime.g.mean();
    double psi_sum = 0.0;
    for (int i = 0; i < regime.k(); ++i) {
        const double fi = f_inverse_eta(regime.gammas[i], regime.gs[i]);
        const double drift = pooled_mean - (gamma / regime.gammas[i]) * regime.gs[i].mean();
        psi_sum += 1.0 / (gamma + drift * fi);
    }
    return (1.0 - gamma) / (1.0 - 2.0 * gamma + 1.0 / psi_sum);
}

double oe_limit(const AsymptoticRegime& regime, double g_t) {
    regime.validate();
    if (g_t < 0.0) throw ConfigError("oe limit: test scale must be nonnegative");
    if (!feasible(regime)) return 0.0;
    if (g_t == 0.0) return 1.0;
    double inv_sum = 0.0;
    for (int i = 0; i < regime.k(); ++i)
        inv_sum += 1.0 / f_inverse_eta(regime.gammas[i], regime.gs[i]);
    const double f_pooled = f_inverse_eta(regime.gamma, regime.g);
    return (1.0 + g_t * f_pooled) / (1.0 + g_t / inv_sum);
}

double ce_limit(const AsymptoticRegime& regime) { return are_limit(regime); }

namespace mp {

double are(double gamma, double k) {
    return std::max((1.0 - k * gamma) / (1.0 - gamma), 0.0);
}

double ie(double gamma, double k) {
    const double denom = 1.0 - k * gamma;
    if (denom <= 0.0) return 0.0;
    return 1.0 / (1.0 + (k - 1.0) * gamma * gamma / (denom * (1.0 - gamma)));
}

double oe(double gamma, double k) {
    const double denom = 1.0 - k * gamma;
    if (denom <= 0.0) return 0.0;
    return 1.0 / (1.0 + (k - 1.0) * gamma * gamma / denom);
}

double fe(double gamma, const std::vector<double>& gammas) {
    double v = 0.0;
    for (const double gi : gammas) {
        if (gi >= 1.0) return 0.0;
        v += (1.0 - gi) / gi;
    }
    return gamma / (1.0 - gamma) * v;
}

double are_finite(int n, int p, int k) {
    return std::max(static_cast<double>(n - k * p) / (n - p), 0.0);
}

double oe_finite(int n, int p, int k) {
    const double denom = static_cast<double>(n) * (n - static_cast<double>(k) * p);
    if (denom <= 0.0) return 0.0;
    return 1.0 / (1.0 + static_cast<double>(p) * p * (k - 1.0) / denom);
}

}  // namespace mp

Criticality criticality(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("criticality: gamma must be in (0,1)");
    Criticality c{};
    c.k_estimation = (gamma + 1.0) / (2.0 * gamma);
    c.k_insample = (gamma * gamma - gamma + 1.0) / gamma;
    c.k_outsample = (gamma * gamma + 1.0) / (gamma * gamma + gamma);
    c.edge_estimation = gamma / (1.0 - gamma);
    c.edge_insample = (1.0 - gamma) / (2.0 - 3.0 * gamma);
    c.edge_outsample = 1.0 / (2.0 * (1.0 - gamma));
    return c;
}

namespace {

// positive root of (1-c)/(1+tau x) + c/(1+alpha tau x) = 1 - q
double mixture_eta_root(double q, double c, double alpha, double tau) {
    const double b = (q - c) * alpha + c + q - 1.0;
    const double disc = b * b + 4.0 * q * (1.0 - q) * alpha;
    return (b + std::sqrt(disc)) / (2.0 * (1.0 - q) * alpha * tau);
}

}  // namespace

double worst_case_are(int k, double gamma, double c, double alpha, double tau) {
    if (k < 1) throw ConfigError("worst_case_are: k must be at least 1");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("worst_case_are: gamma in (0,1)");
    if (!(c >= 0.0 && c <= 1.0)) throw ConfigError("worst_case_are: c in [0,1]");
    if (!(alpha > 1.0)) throw ConfigError("worst_case_are: alpha must exceed 1");
    if (!(tau > 0.0)) throw ConfigError("worst_case_are: tau must be positive");
    if (k * gamma >= 1.0) return 0.0;
    const double x1 = mixture_eta_root(gamma, c, alpha, tau);
    const double xk = mixture_eta_root(k * gamma, c, alpha, tau);
    return k * x1 / xk;
}

AreScan are_monotonicity_scan(double gamma, const ScaleDistribution& g,
                              const std::vector<double>& k_grid) {
    if (k_grid.empty()) throw ConfigError("are scan: empty grid");
    AreScan scan;
    scan.points.reserve(k_grid.size());
    const double f1 = f_inverse_eta(gamma, g);
    for (const double k : k_grid) {
        if (!(k >= 1.0 && k * gamma < 1.0))
            throw ConfigError("are scan: k must lie in [1, 1/gamma)");
        const double are = (k == 1.0) ? 1.0 : k * f1 / f_inverse_eta(k * gamma, g);
        scan.points.push_back({k, are});
    }
    scan.strictly_decreasing = true;
    for (std::size_t i = 1; i < scan.points.size(); ++i)
        if (!(scan.points[i].are < scan.points[i - 1].are)) scan.strictly_decreasing = false;
    scan.midpoint_convex = true;
    for (std::size_t i = 1; i + 1 < scan.points.size(); ++i) {
        const double step_lo = scan.points[i].k - scan.points[i - 1].k;
        const double step_hi = scan.points[i + 1].k - scan.points[i].k;
        if (std::abs(step_lo - step_hi) > 1e-9) continue;  // uneven grid, skip the check
        const double chord = 0.5 * (scan.points[i - 1].are + scan.points[i + 1].are);
        if (scan.points[i].are > chord + 1e-9) scan.midpoint_convex = false;
    }
    return scan;
}

}  // namespace distreg
