#include "distreg/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "distreg/asymptotic.hpp"
#include "distreg/config.hpp"
#include "distreg/csv.hpp"
#include "distreg/efficiency.hpp"
#include "distreg/empirical.hpp"
#include "distreg/errors.hpp"
#include "distreg/estimators.hpp"
#include "distreg/experiments.hpp"
#include "distreg/fixed_point.hpp"
#include "distreg/multishot.hpp"
#include "distreg/rng.hpp"

namespace distreg {

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool needs_config) {
    auto* config = cmd->add_option("--config", opts.config_path, "experiment config file");
    if (needs_config) config->required();
    cmd->add_option("--seed", opts.seed, "base seed")->each([&](const std::string&) {
        opts.seed_given = true;
    });
    cmd->add_option("--out", opts.out_path, "output path (default: stdout)");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
}

std::uint64_t resolve_seed(const CommonOpts& opts) {
    if (opts.seed_given) return opts.seed;
    if (const char* env = std::getenv("DISTREG_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ConfigError("DISTREG_SEED is not an integer");
        }
    }
    return opts.seed;
}

void emit_table(const ResultTable& table, const CommonOpts& opts) {
    const std::string text = opts.format == "json" ? table.to_json() : table.to_csv();
    if (opts.out_path.empty())
        std::cout << text;
    else
        write_text_file(opts.out_path, text);
}

int run_selftest() {
    const auto check = [](bool ok, const std::string& what) {
        std::cout << (ok ? "ok" : "FAIL") << ": " << what << "\n";
        if (!ok) throw NumericalError("selftest failed: " + what);
    };

    check(std::abs(eta_transform(ScaleDistribution::point_mass(1.0), 1.0) - 0.5) < 1e-15,
          "eta of the unit point mass at 1 is 1/2");
    check(std::abs(eta_transform(ScaleDistribution::two_point(0.5, 1, 0.5, 2), 1.0) -
                   5.0 / 12.0) < 1e-15,
          "eta of a two-point mixture matches the atom expectation");

    bool fixed_point_ok = true;
    for (int i = 1; i <= 20; ++i) {
        const double gamma = 0.045 * i;
        const FixedPointSolution s = solve_e(gamma, ScaleDistribution::point_mass(1.0));
        fixed_point_ok = fixed_point_ok && std::abs(s.e - 1.0 / (1.0 - gamma)) < 1e-11;
    }
    check(fixed_point_ok, "unit-scale fixed point equals 1/(1-gamma)");

    const ScaleDistribution mix = ScaleDistribution::two_point(0.3, 0.5, 0.7, 3.0);
    bool dual_ok = true;
    for (const double gamma : {0.05, 0.2, 0.5, 0.8}) {
        const double via_e = f_inverse_eta(gamma, mix);
        const double via_eta = eta_inverse(mix, 1.0 - gamma);
        dual_ok = dual_ok && std::abs(via_e - via_eta) < 1e-9;
    }
    check(dual_ok, "fixed-point and eta-inversion routes agree");

    {
        ProblemSpec spec;
        spec.n = 120;
        spec.p = 6;
        const PartitionPlan plan = make_partition(120, 6, 3, PartitionMode::Equal);
        const Dataset ds = sample_dataset(spec, ScaleDistribution::point_mass(1.0),
                                          CovarianceSpec::identity(), plan, 11);
        std::vector<Eigen::MatrixXd> blocks;
        for (int i = 0; i < 3; ++i) blocks.emplace_back(ds.x_block(i));
        check(std::abs(dof_residual(blocks) - (120 - 3 * 6)) < 1e-6,
              "residual degrees of freedom equal n - k*p");
        check(re_finite(blocks) <= 1.0 + 1e-8, "estimation efficiency at most 1");

        AlgorithmConfig dgd;
        dgd.method = Method::Dgd;
        dgd.alpha = 0.01;
        dgd.max_rounds = 25;
        dgd.tol = 0.0;
        const IterTrace trace = run(dgd, ds, plan);
        Eigen::VectorXd beta = Eigen::VectorXd::Zero(6);
        const Eigen::MatrixXd gram = ds.X.transpose() * ds.X;
        const Eigen::VectorXd xty = ds.X.transpose() * ds.Y;
        double max_dev = 0.0;
        for (int t = 1; t <= 25; ++t) {
            beta -= (2.0 * dgd.alpha / 3.0) * (gram * beta - xty);
            max_dev = std::max(max_dev, (trace.rounds[static_cast<std::size_t>(t)].iterate - beta).norm());
        }
        check(max_dev < 1e-10, "distributed gradient descent tracks the centralized iteration");
    }
    std::cout << "selftest passed\n";
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"distributed linear regression workbench"};
    app.require_subcommand(1);

    CommonOpts gen_opts, oneshot_opts, asym_opts, multi_opts, worst_opts, emp_opts;

    auto* gen = app.add_subcommand("gen", "generate a synthetic dataset (CSV + metadata)");
    add_common(gen, gen_opts, /*needs_config=*/true);

    auto* oneshot = app.add_subcommand("oneshot", "one-shot averaging efficiency sweep");
    add_common(oneshot, oneshot_opts, /*needs_config=*/true);

    auto* asym = app.add_subcommand("asymptotic", "asymptotic efficiency curves");
    add_common(asym, asym_opts, /*needs_config=*/false);
    double as_gamma = 0.01, as_gt = 1.0;
    int as_kmax = 0;
    std::string as_scale;
    asym->add_option("--gamma", as_gamma, "aspect ratio p/n");
    asym->add_option("--kmax", as_kmax, "largest machine count")->required();
    asym->add_option("--gt", as_gt, "test point scale");
    asym->add_option("--scale", as_scale, "scale distribution (default: pointmass(1))");

    auto* multi = app.add_subcommand("multishot", "iterative methods comparison");
    add_common(multi, multi_opts, /*needs_config=*/true);

    auto* worst = app.add_subcommand("worstcase", "worst-case scale mixture scan");
    add_common(worst, worst_opts, /*needs_config=*/true);

    auto* emp = app.add_subcommand("empirical", "efficiency pipeline on a CSV dataset");
    add_common(emp, emp_opts, /*needs_config=*/true);
    std::string emp_csv;
    emp->add_option("--csv", emp_csv, "input CSV (overrides the config)");

    auto* selftest = app.add_subcommand("selftest", "quick invariant checks");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(gen_opts.config_path);
            const std::uint64_t seed = gen_opts.seed_given || std::getenv("DISTREG_SEED")
                                           ? resolve_seed(gen_opts)
                                           : cfg.base_seed;
            if (gen_opts.out_path.empty()) throw ConfigError("gen: --out is required");
            const int k = cfg.k > 0 ? cfg.k : 1;
            const PartitionPlan plan = make_partition(
                cfg.problem.n, cfg.problem.p, k, cfg.partition,
                Rng(seed, "gen_partition").next_u64());
            const Dataset ds = sample_dataset(cfg.problem, cfg.scale, cfg.cov, plan, seed);
            write_dataset_csv(ds, gen_opts.out_path);
            write_text_file(gen_opts.out_path + ".meta.json",
                            dataset_metadata_json(ds, seed, cfg.scale.to_string(),
                                                  cfg.cov.to_string()));
            return 0;
        }
        if (oneshot->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(oneshot_opts.config_path);
            if (oneshot_opts.seed_given || std::getenv("DISTREG_SEED"))
                cfg.base_seed = resolve_seed(oneshot_opts);
            emit_table(run_oneshot_sweep(cfg), oneshot_opts);
            return 0;
        }
        if (asym->parsed()) {
            ExperimentConfig cfg;
            if (!asym_opts.config_path.empty())
                cfg = ExperimentConfig::load_file(asym_opts.config_path);
            cfg.as_gamma = as_gamma;
            cfg.as_kmax = as_kmax;
            cfg.as_gt = as_gt;
            if (!as_scale.empty()) cfg.scale = ScaleDistribution::parse(as_scale);
            cfg.base_seed = resolve_seed(asym_opts);
            emit_table(run_asymptotic_curves(cfg), asym_opts);
            return 0;
        }
        if (multi->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(multi_opts.config_path);
            if (multi_opts.seed_given || std::getenv("DISTREG_SEED"))
                cfg.base_seed = resolve_seed(multi_opts);
            emit_table(run_multishot_compare(cfg), multi_opts);
            return 0;
        }
        if (worst->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(worst_opts.config_path);
            emit_table(run_worstcase_scan(cfg), worst_opts);
            return 0;
        }
        if (emp->parsed()) {
            ExperimentConfig cfg = ExperimentConfig::load_file(emp_opts.config_path);
            EmpiricalOptions options;
            options.target = cfg.target;
            options.one_hot = cfg.one_hot;
            options.n_train = cfg.n_train;
            options.k_max = cfg.k_max;
            options.corr_threshold = cfg.corr_threshold;
            options.seed = emp_opts.seed_given || std::getenv("DISTREG_SEED")
                               ? resolve_seed(emp_opts)
                               : cfg.base_seed;
            const std::string path = emp_csv.empty() ? cfg.input : emp_csv;
            if (path.empty()) throw ConfigError("empirical: no input CSV given");
            emit_table(run_empirical(options, CsvTable::read_file(path)), emp_opts);
            return 0;
        }
        if (selftest->parsed()) return run_selftest();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}

}  // namespace distreg
