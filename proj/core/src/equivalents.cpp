#include "distreg/equivalents.hpp"

#include <algorithm>
#include <cmath>

#include "distreg/errors.hpp"
#include "distreg/fixed_point.hpp"
#include "distreg/linalg.hpp"
#include "distreg/parallel.hpp"
#include "distreg/rng.hpp"

namespace distreg {

const char* family_name(TestMatrixFamily family) {
    switch (family) {
        case TestMatrixFamily::ScaledIdentity:
            return "scaled_identity";
        case TestMatrixFamily::CoordinateUnit:
            return "coordinate_unit";
        case TestMatrixFamily::RandomRankOne:
            return "random_rank_one";
        case TestMatrixFamily::ProductRuleDiag:
            return "product_rule_diag";
    }
    return "";
}

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// e_p from the realized scales: (1/n) sum_i e g_i/(1 + gamma_p e g_i) = 1,
// i.e. the fixed point under the empirical scale distribution.
double sample_level_e(const Eigen::VectorXd& g, double gamma_p) {
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(static_cast<std::size_t>(g.size()));
    const double w = 1.0 / static_cast<double>(g.size());
    for (int i = 0; i < g.size(); ++i) atoms.emplace_back(w, g[i]);
    return solve_e(gamma_p, ScaleDistribution::discrete(std::move(atoms))).e;
}

}  // namespace

std::vector<EquivalenceRow> equivalence_check(const std::vector<int>& n_grid, double gamma,
                                              const CovarianceSpec& cov,
                                              const ScaleDistribution& scales,
                                              const std::vector<TestMatrixFamily>& families,
                                              int replicates, std::uint64_t seed) {
    if (n_grid.empty() || families.empty() || replicates < 1)
        throw ConfigError("equivalence check: empty grid");
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("equivalence check: gamma must be in (0,1)");

    std::vector<EquivalenceRow> rows;
    for (const int n : n_grid) {
        const int p = std::max(1, static_cast<int>(std::lround(gamma * n)));
        const double gamma_p = static_cast<double>(p) / n;
        const Eigen::VectorXd sigma_diag = cov.materialize(p);
        const Eigen::VectorXd sigma_sqrt = sigma_diag.cwiseSqrt();
        const Eigen::VectorXd sigma_inv = sigma_diag.cwiseInverse();

        std::vector<std::vector<double>> abs_err(
            families.size(), std::vector<double>(static_cast<std::size_t>(replicates)));
        parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t rep_index) {
            const int rep = static_cast<int>(rep_index);
            Rng scale_rng(seed, "equiv_scales", static_cast<std::uint64_t>(n) * 1000 + rep);
            Eigen::VectorXd g(n);
            for (int i = 0; i < n; ++i) g[i] = scales.sample(scale_rng);

            Rng z_rng(seed, "equiv_z", static_cast<std::uint64_t>(n) * 1000 + rep);
            Eigen::MatrixXd x(n, p);
            for (int i = 0; i < n; ++i) {
                const double gi = std::sqrt(g[i]);
                for (int j = 0; j < p; ++j)
                    x(i, j) = gi * z_rng.next_normal() * sigma_sqrt[j];
            }

            const double e_p = scales.is_point_mass() && scales.min_scale() == 1.0
                                   ? 1.0 / (1.0 - gamma_p)
                                   : sample_level_e(g, gamma_p);

            // Sigma_hat^{-1} = n (X^T X)^{-1}
            const GramFactor gram(x);
            for (std::size_t fi = 0; fi < families.size(); ++fi) {
                double err = 0.0;
                switch (families[fi]) {
                    case TestMatrixFamily::ScaledIdentity:
                        err = (static_cast<double>(n) * gram.trace_inverse() -
                               e_p * sigma_inv.sum()) /
                              n;
                        break;
                    case TestMatrixFamily::CoordinateUnit:
                        err = static_cast<double>(n) * gram.inverse_entry(0) -
                              e_p * sigma_inv[0];
                        break;
                    case TestMatrixFamily::RandomRankOne: {
                        Rng u_rng(seed, "equiv_u", static_cast<std::uint64_t>(n) * 1000 + rep);
                        Eigen::VectorXd u(p);
                        for (int j = 0; j < p; ++j) u[j] = u_rng.next_normal();
                        u.normalize();
                        err = static_cast<double>(n) * gram.quad_form_inverse(u) -
                              e_p * u.cwiseProduct(sigma_inv.cwiseProduct(u)).sum();
                        break;
                    }
                    case TestMatrixFamily::ProductRuleDiag: {
                        // C = n^{-1} D with D_jj = 1 + j/p; bounded operator norm
                        Eigen::VectorXd d(p);
                        for (int j = 0; j < p; ++j)
                            d[j] = 1.0 + static_cast<double>(j) / p;
                        const Eigen::MatrixXd dmat = d.asDiagonal();
                        const double tr_hat =
                            static_cast<double>(n) * gram.trace_inverse_times(dmat);
                        const double tr_det = e_p * d.cwiseProduct(sigma_inv).sum();
                        err = (tr_hat - tr_det) / n;
                        break;
                    }
                }
                abs_err[fi][rep_index] = std::abs(err);
            }
        });

        for (std::size_t fi = 0; fi < families.size(); ++fi) {
            EquivalenceRow row;
            row.n = n;
            row.p = p;
            row.family = families[fi];
            row.median_abs = median(abs_err[fi]);
            row.mean_abs = 0.0;
            for (const double e : abs_err[fi]) row.mean_abs += e;
            row.mean_abs /= static_cast<double>(abs_err[fi].size());
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace distreg
