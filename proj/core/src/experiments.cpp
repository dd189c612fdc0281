#include "distreg/experiments.hpp"

#include <cmath>

#include "distreg/asymptotic.hpp"
#include "distreg/efficiency.hpp"
#include "distreg/errors.hpp"
#include "distreg/estimators.hpp"
#include "distreg/linalg.hpp"
#include "distreg/multishot.hpp"
#include "distreg/parallel.hpp"
#include "distreg/rng.hpp"

namespace distreg {

namespace {

std::vector<int> default_k_grid(int n, int p) {
    // log-ish spacing up to 0.8 n/p
    const int k_cap = static_cast<int>(0.8 * n / p);
    std::vector<int> grid;
    for (int k = 1; k <= k_cap;) {
        grid.push_back(k);
        k = std::max(k + 1, static_cast<int>(std::lround(k * 1.6)));
    }
    return grid;
}

double realized_error_ratio(const Dataset& ds, const PartitionPlan& plan,
                            const Eigen::VectorXd& beta_ols) {
    const FitResult dist = distributed_fit_optimal(ds, plan);
    const Eigen::VectorXd& beta = *ds.beta_true;
    const double denom = (dist.beta_hat - beta).squaredNorm();
    return denom == 0.0 ? 1.0 : (beta_ols - beta).squaredNorm() / denom;
}

}  // namespace

ResultTable run_oneshot_sweep(const ExperimentConfig& cfg) {
    if (cfg.problem.n <= 0 || cfg.problem.p <= 0)
        throw ConfigError("oneshot sweep: set [problem] n and p");
    const int n = cfg.problem.n, p = cfg.problem.p;
    const std::vector<int> k_grid = cfg.k_grid.empty() ? default_k_grid(n, p) : cfg.k_grid;
    if (k_grid.empty()) throw ConfigError("oneshot sweep: empty k grid");
    const double gamma = static_cast<double>(p) / n;
    const bool is_mp = cfg.scale.is_point_mass();

    struct Slot {
        std::vector<ResultRow> rows;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(cfg.replicates));

    parallel_for(slots.size(), [&](std::size_t rep) {
        const auto repl = static_cast<long>(rep);
        const std::uint64_t data_seed = Rng(cfg.base_seed, "oneshot_data", rep).next_u64();
        // the dataset and its pooled fit are shared across k within one replicate
        const PartitionPlan trivial = make_partition(n, p, 1, PartitionMode::Equal);
        const Dataset ds = sample_dataset(cfg.problem, cfg.scale, cfg.cov, trivial, data_seed);
        const Eigen::VectorXd beta_ols = ols(ds.X, ds.Y);

        for (const int k : k_grid) {
            const std::uint64_t part_seed =
                Rng(cfg.base_seed, "oneshot_part", rep * 100000 + static_cast<std::uint64_t>(k))
                    .next_u64();
            const PartitionPlan plan = make_partition(n, p, k, cfg.partition, part_seed);
            Dataset view = ds;
            view.partition = plan;

            const BlockGrams grams(view, plan);
            const auto emit = [&](const std::string& metric, double value) {
                ResultRow row;
                row.experiment = "oneshot_sweep";
                row.metric = metric;
                row.n = n;
                row.p = p;
                row.k = k;
                row.gamma = gamma;
                row.replicate = repl;
                row.seed = data_seed;
                row.value = value;
                slots[rep].rows.push_back(std::move(row));
            };

            emit("re_finite", re_finite(grams));
            emit("fe_finite", fe_finite(grams));
            emit("ie_finite", ie_finite(grams));
            emit("ce_finite", ce_finite(0, grams));

            // out-of-sample efficiency, Monte Carlo over fresh test points
            Rng test_rng(cfg.base_seed, "oneshot_test", rep * 100000 + static_cast<std::uint64_t>(k));
            const Eigen::VectorXd sigma_sqrt = cfg.cov.materialize(p).cwiseSqrt();
            double oe_sum = 0.0;
            for (int t = 0; t < cfg.test_points; ++t) {
                const double g_t = cfg.scale.sample(test_rng);
                Eigen::VectorXd x_t(p);
                for (int j = 0; j < p; ++j)
                    x_t[j] = std::sqrt(g_t) * test_rng.next_normal() * sigma_sqrt[j];
                oe_sum += oe_finite(x_t, grams);
            }
            emit("oe_emp", oe_sum / cfg.test_points);
            emit("realized_re", realized_error_ratio(view, plan, beta_ols));
        }
    });

    ResultTable table;
    for (const Slot& slot : slots)
        table.rows.insert(table.rows.end(), slot.rows.begin(), slot.rows.end());

    // theory rows, one per k
    for (const int k : k_grid) {
        const auto emit = [&](const std::string& metric, double value) {
            ResultRow row;
            row.experiment = "oneshot_sweep";
            row.metric = metric;
            row.n = n;
            row.p = p;
            row.k = k;
            row.gamma = gamma;
            row.seed = cfg.base_seed;
            row.value = value;
            table.rows.push_back(std::move(row));
        };
        if (is_mp) {
            emit("theory_are", mp::are_finite(n, p, k));
            emit("theory_ie", mp::ie(gamma, k));
            emit("theory_oe", mp::oe_finite(n, p, k));
        } else {
            const AsymptoticRegime regime = AsymptoticRegime::equal_split(gamma, k, cfg.scale);
            emit("theory_are", are_limit(regime));
            emit("theory_ie", ie_limit(regime));
            emit("theory_oe", oe_limit(regime, cfg.scale.mean()));
        }
    }
    return table;
}

ResultTable run_asymptotic_curves(const ExperimentConfig& cfg) {
    if (cfg.as_kmax < 1) throw ConfigError("asymptotic curves: set kmax");
    const double gamma = cfg.as_gamma;
    if (!(gamma > 0.0 && gamma < 1.0))
        throw ConfigError("asymptotic curves: gamma must be in (0,1)");
    ResultTable table;
    const bool is_mp = cfg.scale.is_point_mass();
    for (int k = 1; k <= cfg.as_kmax; ++k) {
        const auto emit = [&](const std::string& metric, double value) {
            ResultRow row;
            row.experiment = "asymptotic_curves";
            row.metric = metric;
            row.k = k;
            row.gamma = gamma;
            row.g_t = cfg.as_gt;
            row.seed = cfg.base_seed;
            row.value = value;
            table.rows.push_back(std::move(row));
        };
        if (is_mp || k * gamma >= 1.0) {
            emit("are", mp::are(gamma, k));
            emit("ie", mp::ie(gamma, k));
            emit("oe", mp::oe(gamma, k));
        } else {
            const AsymptoticRegime regime = AsymptoticRegime::equal_split(gamma, k, cfg.scale);
            emit("are", are_limit(regime));
            emit("ie", ie_limit(regime));
            emit("oe", oe_limit(regime, cfg.as_gt));
        }
    }
    return table;
}

ResultTable run_multishot_compare(const ExperimentConfig& cfg) {
    if (cfg.problem.n <= 0 || cfg.problem.p <= 0)
        throw ConfigError("multishot compare: set [problem] n and p");
    const int k = cfg.k > 0 ? cfg.k : 20;
    const std::vector<double> rho_grid =
        cfg.rho_grid.empty() ? std::vector<double>{0.01, 1.0, 100.0} : cfg.rho_grid;
    const std::vector<double> alpha_fracs =
        cfg.alpha_fractions.empty() ? std::vector<double>{0.2, 0.5, 0.9} : cfg.alpha_fractions;

    struct Slot {
        std::vector<ResultRow> rows;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(cfg.replicates));

    parallel_for(slots.size(), [&](std::size_t rep) {
        const auto repl = static_cast<long>(rep);
        const std::uint64_t seed = Rng(cfg.base_seed, "multishot_data", rep).next_u64();
        const PartitionPlan plan = make_partition(cfg.problem.n, cfg.problem.p, k,
                                                  PartitionMode::Equal);
        const Dataset ds = sample_dataset(cfg.problem, cfg.scale, cfg.cov, plan, seed);
        const Eigen::VectorXd beta_ols = ols(ds.X, ds.Y);
        const Eigen::VectorXd& beta = *ds.beta_true;
        const double ols_err = (beta_ols - beta).squaredNorm();

        const auto emit_trace = [&](const IterTrace& trace, const std::string& method,
                                    std::optional<double> rho, std::optional<double> alpha) {
            for (const IterTrace::Round& r : trace.rounds) {
                ResultRow row;
                row.experiment = "multishot_compare";
                row.method = method;
                row.metric = "re_vs_ols";
                row.n = cfg.problem.n;
                row.p = cfg.problem.p;
                row.k = k;
                row.rho = rho;
                row.alpha = alpha;
                row.round = r.round;
                row.replicate = repl;
                row.seed = seed;
                const double err = (r.iterate - beta).squaredNorm();
                row.value = err == 0.0 ? 1.0 : ols_err / err;
                slots[rep].rows.push_back(std::move(row));
            }
        };
        const auto emit_flag = [&](const std::string& method, std::optional<double> rho,
                                   std::optional<double> alpha) {
            ResultRow row;
            row.experiment = "multishot_compare";
            row.method = method;
            row.metric = "diverged";
            row.n = cfg.problem.n;
            row.p = cfg.problem.p;
            row.k = k;
            row.rho = rho;
            row.alpha = alpha;
            row.replicate = repl;
            row.seed = seed;
            row.value = 1.0;
            slots[rep].rows.push_back(std::move(row));
        };

        AlgorithmConfig base;
        base.max_rounds = cfg.rounds;
        base.tol = 0.0;  // fixed round count so the curves are comparable

        for (const double rho : rho_grid) {
            AlgorithmConfig c = base;
            c.method = Method::IterAvg;
            c.rhos = {rho};
            emit_trace(run(c, ds, plan, TraceTarget::GlobalOls), "iteravg", rho, std::nullopt);
        }
        {
            AlgorithmConfig c = base;
            c.method = Method::Dane;
            c.rho = cfg.dane_rho;
            c.eta = cfg.dane_eta;
            emit_trace(run(c, ds, plan, TraceTarget::GlobalOls), "dane", cfg.dane_rho,
                       std::nullopt);
        }
        {
            AlgorithmConfig c = base;
            c.method = Method::Admm;
            c.rho = cfg.admm_rho;
            emit_trace(run(c, ds, plan, TraceTarget::GlobalOls), "admm", cfg.admm_rho,
                       std::nullopt);
        }
        {
            // stability bound of the gradient iteration: alpha < k/lambda_max(X^T X)
            const GramFactor gram(ds.X);
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram.gram());
            const double alpha_max = k / es.eigenvalues().maxCoeff();
            for (const double frac : alpha_fracs) {
                AlgorithmConfig c = base;
                c.method = Method::Dgd;
                c.alpha = frac * alpha_max;
                try {
                    emit_trace(run(c, ds, plan, TraceTarget::GlobalOls), "dgd", std::nullopt,
                               c.alpha);
                } catch (const NumericalError&) {
                    emit_flag("dgd", std::nullopt, c.alpha);
                }
            }
        }
        {
            const FitResult dist = distributed_fit_optimal(ds, plan);
            emit_trace(one_shot_trace(ds, plan, dist.beta_hat, TraceTarget::GlobalOls),
                       "oneshot", std::nullopt, std::nullopt);
        }
    });

    ResultTable table;
    for (const Slot& slot : slots)
        table.rows.insert(table.rows.end(), slot.rows.begin(), slot.rows.end());
    return table;
}

ResultTable run_worstcase_scan(const ExperimentConfig& cfg) {
    const std::vector<double> taus =
        cfg.wc_tau_grid.empty() ? std::vector<double>{1.0} : cfg.wc_tau_grid;
    std::vector<int> ks = cfg.wc_k_grid;
    if (ks.empty()) {
        for (int k = 1; k * cfg.wc_gamma < 1.0 && k <= 100; ++k) ks.push_back(k);
    }
    ResultTable table;
    for (const double tau : taus) {
        for (const int k : ks) {
            ResultRow row;
            row.experiment = "worstcase_scan";
            row.metric = "are";
            row.k = k;
            row.gamma = cfg.wc_gamma;
            row.c = cfg.wc_c;
            row.alpha = cfg.wc_alpha;
            row.tau = tau;
            row.seed = cfg.base_seed;
            row.value = worst_case_are(k, cfg.wc_gamma, cfg.wc_c, cfg.wc_alpha, tau);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace distreg
