// Acceptance suite: every release criterion as one pass/fail line.
// Exit code 0 only if all criteria hold.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "distreg/asymptotic.hpp"
#include "distreg/efficiency.hpp"
#include "distreg/equivalents.hpp"
#include "distreg/estimators.hpp"
#include "distreg/fixed_point.hpp"
#include "distreg/linalg.hpp"
#include "distreg/multishot.hpp"
#include "distreg/parallel.hpp"
#include "distreg/rng.hpp"

using namespace distreg;

namespace {

int failures = 0;
int criterion_index = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    ++criterion_index;
    std::printf("[%2d/12] %s  %s — %s\n", criterion_index, ok ? "PASS" : "FAIL",
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

Eigen::MatrixXd random_matrix(int n, int p, Rng& rng) {
    Eigen::MatrixXd x(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) x(i, j) = rng.next_normal();
    return x;
}

struct SweepStats {
    // per k: mean estimation efficiency and mean test-point efficiency
    std::map<int, double> mean_re, mean_oe;
};

// shared data pass for criteria 1 and 2
SweepStats mp_sweep(int n, int p, const std::vector<int>& k_grid, int replicates,
                    int test_points, std::uint64_t seed) {
    ProblemSpec spec;
    spec.n = n;
    spec.p = p;
    const CovarianceSpec cov = CovarianceSpec::uniform_diagonal(1.0, 2.0, 5);
    const Eigen::VectorXd sigma_sqrt = cov.materialize(p).cwiseSqrt();
    const PartitionPlan trivial = make_partition(n, p, 1, PartitionMode::Equal);

    std::vector<std::map<int, double>> re_slots(replicates), oe_slots(replicates);
    parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t rep) {
        const std::uint64_t data_seed = Rng(seed, "sweep_data", rep).next_u64();
        const Dataset ds = sample_dataset(spec, ScaleDistribution::point_mass(1.0), cov,
                                          trivial, data_seed);
        for (const int k : k_grid) {
            const PartitionPlan plan =
                make_partition(n, p, k, PartitionMode::RandomMinP,
                               Rng(seed, "sweep_part", rep * 1000 + k).next_u64());
            Dataset view = ds;
            view.partition = plan;
            const BlockGrams grams(view, plan);
            re_slots[rep][k] = re_finite(grams);
            Rng test_rng(seed, "sweep_test", rep * 1000 + k);
            double oe_acc = 0.0;
            for (int t = 0; t < test_points; ++t) {
                Eigen::VectorXd x_t(p);
                for (int j = 0; j < p; ++j) x_t[j] = test_rng.next_normal() * sigma_sqrt[j];
                oe_acc += oe_finite(x_t, grams);
            }
            oe_slots[rep][k] = oe_acc / test_points;
        }
    });

    SweepStats stats;
    for (const int k : k_grid) {
        double re_sum = 0.0, oe_sum = 0.0;
        for (int rep = 0; rep < replicates; ++rep) {
            re_sum += re_slots[rep][k];
            oe_sum += oe_slots[rep][k];
        }
        stats.mean_re[k] = re_sum / replicates;
        stats.mean_oe[k] = oe_sum / replicates;
    }
    return stats;
}

struct MeanSe {
    double mean = 0.0, se = 0.0;
};

MeanSe mean_se(const std::vector<double>& values) {
    MeanSe out;
    const double n = static_cast<double>(values.size());
    for (const double v : values) out.mean += v;
    out.mean /= n;
    double var = 0.0;
    for (const double v : values) var += (v - out.mean) * (v - out.mean);
    out.se = std::sqrt(var / (n - 1.0) / n);
    return out;
}

}  // namespace

// ---------------------------------------------------------------- criteria

namespace {

std::map<int, SweepStats> sweep_cache;

void criterion_1_estimation_law() {
    const auto start = std::chrono::steady_clock::now();
    const int n = 10000;
    const std::map<int, std::vector<int>> grids = {
        {100, {2, 5, 10, 20, 30, 40, 50, 60}},
        {20, {2, 5, 10, 25, 50, 100, 150, 200}},
    };
    double worst = 0.0;
    int worst_k = 0, worst_p = 0;
    for (const auto& [p, k_grid] : grids) {
        sweep_cache[p] = mp_sweep(n, p, k_grid, 20, 100, 2026);
        for (const int k : k_grid) {
            const double law = static_cast<double>(n - k * p) / (n - p);
            const double dev = std::abs(sweep_cache[p].mean_re.at(k) - law) / law;
            if (dev > worst) {
                worst = dev;
                worst_k = k;
                worst_p = p;
            }
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(worst <= 0.05 && seconds < 120.0, "estimation efficiency law (n-kp)/(n-p)",
           "n=10000, p in {20,100}, 20 replicates; worst relative deviation " + fmt(worst) +
               " at (p=" + std::to_string(worst_p) + ", k=" + std::to_string(worst_k) +
               "), tol 0.05; runtime " + fmt(seconds) + "s (target 120s)");
}

void criterion_2_test_error_law() {
    const int n = 10000;
    double worst = 0.0;
    int worst_k = 0, worst_p = 0;
    for (const auto& [p, stats] : sweep_cache) {
        for (const auto& [k, oe] : stats.mean_oe) {
            if (k > static_cast<int>(0.8 * n / p)) continue;
            const double law = mp::oe_finite(n, p, k);
            const double dev = std::abs(oe - law) / law;
            if (dev > worst) {
                worst = dev;
                worst_k = k;
                worst_p = p;
            }
        }
    }
    report(worst <= 0.05, "test-error efficiency law 1/(1+p^2(k-1)/(n(n-kp)))",
           "same sweep, k <= 0.8 n/p; worst relative deviation " + fmt(worst) + " at (p=" +
               std::to_string(worst_p) + ", k=" + std::to_string(worst_k) + "), tol 0.05");
}

void criterion_3_efficiency_bound() {
    Rng rng(31, "bound");
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int p = 2 + static_cast<int>(rng.next_below(19));
        const int k = 1 + static_cast<int>(rng.next_below(5));
        std::vector<Eigen::MatrixXd> blocks;
        for (int i = 0; i < k; ++i)
            blocks.push_back(random_matrix(p + 2 + static_cast<int>(rng.next_below(30)), p, rng));
        const int d = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p)));
        const Eigen::MatrixXd a =
            trial % 3 ? random_matrix(d, p, rng) : Eigen::MatrixXd::Identity(p, p);
        worst = std::max(worst, efficiency_general(a, blocks) - 1.0);
    }
    double tight_dev = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int p = 2 + static_cast<int>(rng.next_below(15));
        const int k = 2 + static_cast<int>(rng.next_below(4));
        const Eigen::MatrixXd x0 = random_matrix(p + 5 + static_cast<int>(rng.next_below(20)), p, rng);
        const std::vector<Eigen::MatrixXd> blocks(static_cast<std::size_t>(k), x0);
        tight_dev = std::max(
            tight_dev, std::abs(efficiency_general(Eigen::MatrixXd::Identity(p, p), blocks) - 1.0));
    }
    report(worst <= 1e-8 && tight_dev <= 1e-10, "efficiency bounded by one",
           "1000 random block sets: max excess " + fmt(worst) +
               " (tol 1e-8); identical blocks off unity by " + fmt(tight_dev) +
               " (tol 1e-10)");
}

void criterion_4_ordering() {
    const std::vector<double> gammas = {0.005, 0.01, 0.02, 0.05};
    // exact asymptotic ordering at every feasible machine count
    bool exact_ok = true;
    for (const double gamma : gammas) {
        for (int k = 2; k * gamma < 1.0; ++k) {
            const double are = mp::are(gamma, k), ie = mp::ie(gamma, k), oe = mp::oe(gamma, k);
            if (!(oe >= ie - 1e-12 && ie >= are - 1e-12)) exact_ok = false;
        }
    }

    // empirical ordering within five Monte Carlo standard errors
    bool empirical_ok = true;
    std::string empirical_worst = "-";
    double worst_z = -1e9;
    const int p = 10, replicates = 25, test_points = 40;
    for (const double gamma : gammas) {
        const int n = static_cast<int>(std::lround(p / gamma));
        const int k_top = n / (p + 2);  // every block keeps a couple of spare rows
        std::vector<int> k_grid;
        for (int k = 2; k <= k_top; ++k) k_grid.push_back(k);

        std::vector<std::map<int, std::array<double, 3>>> slots(replicates);
        ProblemSpec spec;
        spec.n = n;
        spec.p = p;
        const PartitionPlan trivial = make_partition(n, p, 1, PartitionMode::Equal);
        parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t rep) {
            const std::uint64_t data_seed =
                Rng(2027, "order_data", rep * 100 + static_cast<std::uint64_t>(1e3 * gamma))
                    .next_u64();
            const Dataset ds = sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                                              CovarianceSpec::identity(), trivial, data_seed);
            for (const int k : k_grid) {
                const PartitionPlan plan = make_partition(n, p, k, PartitionMode::Equal);
                Dataset view = ds;
                view.partition = plan;
                const BlockGrams grams(view, plan, 1e14);
                Rng test_rng(2027, "order_test", rep * 1000 + k);
                double oe_acc = 0.0;
                for (int t = 0; t < test_points; ++t) {
                    Eigen::VectorXd x_t(p);
                    for (int j = 0; j < p; ++j) x_t[j] = test_rng.next_normal();
                    oe_acc += oe_finite(x_t, grams);
                }
                slots[rep][k] = {oe_acc / test_points, ie_finite(grams), re_finite(grams)};
            }
        });
        for (const int k : k_grid) {
            std::vector<double> oe_ie, ie_re;
            for (int rep = 0; rep < replicates; ++rep) {
                oe_ie.push_back(slots[rep][k][0] - slots[rep][k][1]);
                ie_re.push_back(slots[rep][k][1] - slots[rep][k][2]);
            }
            for (const auto& diffs : {mean_se(oe_ie), mean_se(ie_re)}) {
                const double z = -diffs.mean / std::max(diffs.se, 1e-300);
                if (z > worst_z) {
                    worst_z = z;
                    empirical_worst =
                        "gamma=" + fmt(gamma) + ", k=" + std::to_string(k);
                }
                if (diffs.mean < -5.0 * diffs.se) empirical_ok = false;
            }
        }
    }
    report(exact_ok && empirical_ok, "ordering test >= in-sample >= estimation",
           std::string("asymptotic comparison ") + (exact_ok ? "exact" : "violated") +
               "; empirical worst z " + fmt(worst_z) + " (limit 5) at " + empirical_worst);
}

void criterion_5_fixed_points() {
    double worst_e = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double gamma = 0.0095 * j;
        const FixedPointSolution s = solve_e(gamma, ScaleDistribution::point_mass(1.0));
        worst_e = std::max(worst_e, std::abs(s.e - 1.0 / (1.0 - gamma)));
    }
    double worst_dual = 0.0;
    const std::vector<ScaleDistribution> laws = {
        ScaleDistribution::point_mass(1.0),
        ScaleDistribution::two_point(0.3, 0.5, 0.7, 3.0),
        ScaleDistribution::uniform(1e-6, 1.0),
        ScaleDistribution::discrete({{0.2, 0.3}, {0.5, 1.0}, {0.3, 2.5}}),
    };
    for (const auto& g : laws)
        for (int j = 1; j <= 18; ++j) {
            const double gamma = 0.05 * j;
            worst_dual = std::max(worst_dual, std::abs(f_inverse_eta(gamma, g) -
                                                       eta_inverse(g, 1.0 - gamma)));
        }
    report(worst_e <= 1e-12 && worst_dual <= 1e-9, "scale fixed point and eta inversion",
           "100 aspect ratios: max |e - 1/(1-gamma)| = " + fmt(worst_e) +
               " (tol 1e-12); dual-route gap " + fmt(worst_dual) + " (tol 1e-9)");
}

void criterion_6_elliptical_law() {
    const int n = 10000;
    const ScaleDistribution g = ScaleDistribution::uniform(1e-6, 1.0);
    const CovarianceSpec cov = CovarianceSpec::uniform_diagonal(1.0, 2.0, 5);
    const std::map<int, std::vector<int>> grids = {
        {100, {2, 5, 10, 20, 40}},
        {20, {2, 5, 10, 25, 50, 100}},
    };
    double worst = 0.0;
    int worst_k = 0, worst_p = 0;
    for (const auto& [p, k_grid] : grids) {
        ProblemSpec spec;
        spec.n = n;
        spec.p = p;
        const double gamma = static_cast<double>(p) / n;
        const PartitionPlan trivial = make_partition(n, p, 1, PartitionMode::Equal);
        const int replicates = 20;
        std::vector<std::map<int, double>> slots(replicates);
        parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t rep) {
            const std::uint64_t data_seed =
                Rng(2028, "ell_data", rep * 10 + static_cast<std::uint64_t>(p)).next_u64();
            const Dataset ds = sample_dataset(spec, g, cov, trivial, data_seed);
            for (const int k : k_grid) {
                const PartitionPlan plan = make_partition(n, p, k, PartitionMode::Equal);
                Dataset view = ds;
                view.partition = plan;
                slots[rep][k] = re_finite(BlockGrams(view, plan));
            }
        });
        for (const int k : k_grid) {
            double mean = 0.0;
            for (int rep = 0; rep < replicates; ++rep) mean += slots[rep][k];
            mean /= replicates;
            const double limit = are_limit(AsymptoticRegime::equal_split(gamma, k, g));
            const double dev = std::abs(mean - limit) / limit;
            if (dev > worst) {
                worst = dev;
                worst_k = k;
                worst_p = p;
            }
        }
    }
    report(worst <= 0.05, "elliptical estimation efficiency law",
           "uniform scales, n=10000, p in {20,100}, 20 replicates; worst relative deviation " +
               fmt(worst) + " at (p=" + std::to_string(worst_p) + ", k=" +
               std::to_string(worst_k) + "), tol 0.05");
}

void criterion_7_worst_case() {
    double tau_dev = 0.0;
    for (const int k : {2, 3, 5})
        for (const double alpha : {1e3, 1e8})
            tau_dev = std::max(tau_dev,
                               std::abs(worst_case_are(k, 0.01, 0.05, alpha, 1.0) -
                                        worst_case_are(k, 0.01, 0.05, alpha, 1e-3)));

    double cell_dev = 0.0;
    for (const int k : {2, 3, 4})  // c = 5 gamma, below the large-scale budget
        cell_dev = std::max(cell_dev, std::abs(worst_case_are(k, 0.01, 0.05, 1e8, 1.0) -
                                               (0.05 - k * 0.01) / 0.04));

    std::vector<double> scaled;
    for (const double tau : {1e-2, 1e-4, 1e-6})
        scaled.push_back(worst_case_are(2, 0.01, 0.01, 1.0 / (0.01 * tau), tau) /
                         std::sqrt(tau));
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    const bool bounded = *lo > 1.5 && *hi < 2.5 && (*hi / *lo) < 1.15;

    report(tau_dev <= 1e-10 && cell_dev <= 1e-3 && bounded,
           "worst-case scale mixture",
           "tau invariance " + fmt(tau_dev) + " (tol 1e-10); plateau cell deviation " +
               fmt(cell_dev) + " (tol 1e-3); ARE(2)/sqrt(tau) in [" + fmt(*lo) + ", " +
               fmt(*hi) + "]");
}

void criterion_8_gradient_descent_sync() {
    Rng rng(41, "dgd");
    double worst = 0.0;
    for (int instance = 0; instance < 20; ++instance) {
        const int p = 2 + static_cast<int>(rng.next_below(14));
        const int k = 2 + static_cast<int>(rng.next_below(5));
        const int n = k * p + 40 + static_cast<int>(rng.next_below(200));
        ProblemSpec spec;
        spec.n = n;
        spec.p = p;
        const PartitionPlan plan = make_partition(n, p, k, PartitionMode::RandomMinP, instance);
        const Dataset ds = sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                                          CovarianceSpec::identity(), plan,
                                          1000 + static_cast<std::uint64_t>(instance));
        const Eigen::MatrixXd gram = ds.X.transpose() * ds.X;
        const Eigen::VectorXd xty = ds.X.transpose() * ds.Y;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
        AlgorithmConfig cfg;
        cfg.method = Method::Dgd;
        cfg.alpha = 0.4 * k / es.eigenvalues().maxCoeff();
        cfg.max_rounds = 50;
        cfg.tol = 0.0;
        const IterTrace trace = run(cfg, ds, plan);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
        for (int t = 1; t <= 50; ++t) {
            beta -= cfg.alpha * (2.0 / k) * (gram * beta - xty);
            worst = std::max(worst,
                             (trace.rounds[static_cast<std::size_t>(t)].iterate - beta).norm());
        }
    }
    report(worst <= 1e-10, "distributed gradient descent is centralized descent",
           "20 instances, 50 rounds; max per-round deviation " + fmt(worst) + " (tol 1e-10)");
}

void criterion_9_iterative_averaging() {
    // (a) noiseless geometric contraction, every round
    bool geometric_ok = true;
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        ProblemSpec spec;
        spec.n = 240;
        spec.p = 8;
        spec.sigma2 = 0.0;
        const PartitionPlan plan = make_partition(240, 8, 4, PartitionMode::Equal);
        const Dataset ds = sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                                          CovarianceSpec::identity(), plan, seed);
        const double rate = iteravg_fixed_point(ds, plan, {0.5}).contraction;
        AlgorithmConfig cfg;
        cfg.method = Method::IterAvg;
        cfg.rhos = {0.5};
        cfg.max_rounds = 50;
        cfg.tol = 0.0;
        const IterTrace trace = run(cfg, ds, plan, TraceTarget::TrueBeta);
        const double beta_norm = ds.beta_true->norm();
        for (const auto& round : trace.rounds)
            if (round.err_to_target >
                std::pow(rate, round.round) * beta_norm * (1.0 + 1e-10) + 1e-12)
                geometric_ok = false;
    }

    // (b) endpoint laws for the limiting estimator and its mse
    ProblemSpec spec;
    spec.n = 400;
    spec.p = 10;
    const PartitionPlan plan = make_partition(400, 10, 4, PartitionMode::Equal);
    const Dataset ds = sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                                      CovarianceSpec::identity(), plan, 9);
    const IterAvgAnalysis at_zero = iteravg_fixed_point(ds, plan, {0.0});
    const FitResult naive = distributed_fit_naive(ds, plan);
    double naive_mse = 0.0;
    for (int i = 0; i < 4; ++i) naive_mse += GramFactor(ds.x_block(i)).trace_inverse();
    naive_mse /= 16.0;
    const double beta_zero_dev =
        (at_zero.beta_star - naive.beta_hat).norm() / naive.beta_hat.norm();
    const double psi_zero_dev = std::abs(at_zero.psi - naive_mse) / naive_mse;

    const IterAvgAnalysis at_inf = iteravg_fixed_point(ds, plan, {1e9});
    const Eigen::VectorXd beta_ols = ols(ds.X, ds.Y);
    const double ols_mse = GramFactor(ds.X).trace_inverse();
    const double beta_inf_dev = (at_inf.beta_star - beta_ols).norm() / beta_ols.norm();
    const double psi_inf_dev = std::abs(at_inf.psi - ols_mse) / ols_mse;
    const bool endpoints_ok = beta_zero_dev <= 1e-4 && psi_zero_dev <= 1e-4 &&
                              beta_inf_dev <= 1e-4 && psi_inf_dev <= 1e-4;

    // (c) monotone mse along a 50-point log grid
    std::vector<double> grid;
    for (int j = 0; j < 50; ++j) grid.push_back(std::pow(10.0, -4.0 + 10.0 * j / 49.0));
    const auto points = psi_curve(ds, plan, grid);
    bool monotone_ok = true;
    for (std::size_t j = 1; j < points.size(); ++j)
        if (points[j].psi > points[j - 1].psi + 1e-12) monotone_ok = false;

    // (d) derivative against central finite differences
    bool derivative_ok = true;
    double worst_fd = 0.0;
    for (const auto& pt : points) {
        const double h = pt.rho * 1e-5;
        const double up = iteravg_fixed_point(ds, plan, {pt.rho + h}).psi;
        const double dn = iteravg_fixed_point(ds, plan, {pt.rho - h}).psi;
        const double fd = (up - dn) / (2.0 * h);
        const double err = std::abs(pt.psi_prime - fd);
        worst_fd = std::max(worst_fd, err);
        if (err > std::max(1e-6, 1e-4 * std::abs(pt.psi_prime))) derivative_ok = false;
    }

    report(geometric_ok && endpoints_ok && monotone_ok && derivative_ok,
           "iterative ridge-centered averaging",
           std::string("geometric bound ") + (geometric_ok ? "holds" : "violated") +
               "; endpoint deviations (beta0 " + fmt(beta_zero_dev) + ", psi0 " +
               fmt(psi_zero_dev) + ", betaInf " + fmt(beta_inf_dev) + ", psiInf " +
               fmt(psi_inf_dev) + ", tol 1e-4); psi " +
               (monotone_ok ? "nonincreasing" : "NOT monotone") + "; max fd gap " +
               fmt(worst_fd));
}

void criterion_10_degrees_of_freedom() {
    Rng rng(51, "dof");
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int p = 1 + static_cast<int>(rng.next_below(12));
        const int k = 1 + static_cast<int>(rng.next_below(6));
        int n = 0;
        std::vector<Eigen::MatrixXd> blocks;
        for (int i = 0; i < k; ++i) {
            const int rows = p + 1 + static_cast<int>(rng.next_below(40));
            blocks.push_back(random_matrix(rows, p, rng));
            n += rows;
        }
        worst = std::max(worst, std::abs(dof_residual(blocks) - (n - k * p)));
    }
    report(worst <= 1e-6, "residual degrees of freedom n - kp",
           "100 random full-rank instances; max |dof - (n-kp)| = " + fmt(worst) +
               " (tol 1e-6)");
}

void criterion_11_equivalents_decay() {
    const std::vector<TestMatrixFamily> families = {TestMatrixFamily::ScaledIdentity,
                                                    TestMatrixFamily::CoordinateUnit,
                                                    TestMatrixFamily::RandomRankOne};
    const auto rows = equivalence_check({500, 2000, 8000}, 0.1,
                                        CovarianceSpec::uniform_diagonal(1.0, 2.0, 3),
                                        ScaleDistribution::point_mass(1.0), families, 20, 11);
    bool ok = true;
    std::string detail;
    for (std::size_t f = 0; f < families.size(); ++f) {
        const double m500 = rows[f].median_abs;
        const double m2000 = rows[families.size() + f].median_abs;
        const double m8000 = rows[2 * families.size() + f].median_abs;
        if (!(m2000 < m500 && m8000 < m2000)) ok = false;
        detail += std::string(family_name(families[f])) + " " + fmt(m500) + " > " +
                  fmt(m2000) + " > " + fmt(m8000) + "; ";
    }
    report(ok, "deterministic-equivalent trace decay", detail + "non-identity diagonal Sigma");
}

void criterion_12_criticality() {
    const Criticality c = criticality(0.01);
    double worst = 0.0;
    worst = std::max(worst, std::abs(c.k_estimation - 1.01 / 0.02));
    worst = std::max(worst, std::abs(c.k_insample - (0.01 * 0.01 - 0.01 + 1.0) / 0.01));
    worst = std::max(worst, std::abs(c.k_outsample - (0.01 * 0.01 + 1.0) / (0.01 * 0.01 + 0.01)));
    worst = std::max(worst, std::abs(c.edge_estimation - 0.01 / 0.99));
    worst = std::max(worst, std::abs(c.edge_insample - 0.99 / 1.97));
    worst = std::max(worst, std::abs(c.edge_outsample - 1.0 / 1.98));

    const Criticality tiny = criticality(1e-4);
    double asym = 0.0;
    asym = std::max(asym, std::abs(tiny.k_estimation * 1e-4 / 0.5 - 1.0));
    asym = std::max(asym, std::abs(tiny.k_insample * 1e-4 - 1.0));
    asym = std::max(asym, std::abs(tiny.k_outsample * 1e-4 - 1.0));
    asym = std::max(asym, std::abs(tiny.edge_estimation / 1e-4 - 1.0));
    asym = std::max(asym, std::abs(tiny.edge_insample / (0.5 + 1e-4 / 4.0) - 1.0));
    asym = std::max(asym, std::abs(tiny.edge_outsample / (0.5 + 1e-4 / 2.0) - 1.0));

    report(worst <= 1e-12 && asym <= 0.01, "critical machine counts and edge efficiencies",
           "gamma 0.01 hand-arithmetic deviation " + fmt(worst) +
               " (tol 1e-12); gamma -> 0 laws off by " + fmt(asym) + " (tol 0.01)");
}

}  // namespace

int main() {
    std::printf("acceptance suite: one-shot and iterative distributed regression\n");
    criterion_1_estimation_law();
    criterion_2_test_error_law();
    criterion_3_efficiency_bound();
    criterion_4_ordering();
    criterion_5_fixed_points();
    criterion_6_elliptical_law();
    criterion_7_worst_case();
    criterion_8_gradient_descent_sync();
    criterion_9_iterative_averaging();
    criterion_10_degrees_of_freedom();
    criterion_11_equivalents_decay();
    criterion_12_criticality();
    if (failures == 0)
        std::printf("all 12 criteria passed\n");
    else
        std::printf("%d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
