#include "distreg/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "distreg/asymptotic.hpp"
#include "distreg/errors.hpp"
#include "distreg/estimators.hpp"
#include "distreg/linalg.hpp"
#include "distreg/partition.hpp"
#include "distreg/rng.hpp"

namespace distreg {

namespace {

bool parse_cell(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    try {
        std::size_t used = 0;
        out = std::stod(cell, &used);
        return used == cell.size() && std::isfinite(out);
    } catch (const std::exception&) {
        return false;
    }
}

}  // namespace

NumericFrame assemble_numeric(const CsvTable& table, const std::vector<std::string>& one_hot) {
    const std::set<std::string> hot(one_hot.begin(), one_hot.end());
    const long n_raw = table.n_rows();
    const int c_raw = table.cols();

    // a row is kept only if every cell is present (non-empty)
    std::vector<long> kept_rows;
    for (long i = 0; i < n_raw; ++i) {
        const bool complete = std::all_of(table.rows[i].begin(), table.rows[i].end(),
                                          [](const std::string& s) { return !s.empty(); });
        if (complete) kept_rows.push_back(i);
    }
    if (kept_rows.empty()) throw ConfigError("empirical: no complete rows");

    NumericFrame frame;
    std::vector<std::vector<double>> columns;
    for (int j = 0; j < c_raw; ++j) {
        const std::string& name = table.names[j];
        if (hot.contains(name)) {
            // category levels in sorted order so the expansion is deterministic
            std::set<std::string> levels;
            for (const long i : kept_rows) levels.insert(table.rows[i][j]);
            for (const std::string& level : levels) {
                std::vector<double> col;
                col.reserve(kept_rows.size());
                for (const long i : kept_rows)
                    col.push_back(table.rows[i][j] == level ? 1.0 : 0.0);
                frame.names.push_back(name + "=" + level);
                columns.push_back(std::move(col));
            }
            continue;
        }
        std::vector<double> col;
        col.reserve(kept_rows.size());
        bool numeric = true;
        for (const long i : kept_rows) {
            double v = 0.0;
            if (!parse_cell(table.rows[i][j], v)) {
                numeric = false;
                break;
            }
            col.push_back(v);
        }
        if (!numeric)
            throw ConfigError("empirical: column '" + name +
                              "' is not numeric; list it under one_hot to expand it");
        frame.names.push_back(name);
        columns.push_back(std::move(col));
    }

    frame.values.resize(static_cast<long>(kept_rows.size()), static_cast<long>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        frame.values.col(static_cast<long>(j)) = Eigen::Map<const Eigen::VectorXd>(
            columns[j].data(), static_cast<long>(columns[j].size()));
    return frame;
}

std::vector<int> prune_correlated(const Eigen::MatrixXd& values, double threshold) {
    const int c = static_cast<int>(values.cols());
    const long n = values.rows();
    Eigen::MatrixXd centered = values.rowwise() - values.colwise().mean();
    Eigen::VectorXd norms(c);
    for (int j = 0; j < c; ++j) norms[j] = centered.col(j).norm();

    std::vector<bool> kept(static_cast<std::size_t>(c), true);
    for (int i = 0; i < c; ++i) {
        if (!kept[i]) continue;
        for (int j = i + 1; j < c; ++j) {
            if (!kept[j]) continue;
            double r;
            if (norms[i] == 0.0 && norms[j] == 0.0)
                r = 1.0;  // two constant columns are duplicates
            else if (norms[i] == 0.0 || norms[j] == 0.0)
                r = 0.0;
            else
                r = centered.col(i).dot(centered.col(j)) / (norms[i] * norms[j]);
            if (std::abs(r) > threshold) kept[j] = false;  // drop the later column
        }
    }
    (void)n;
    std::vector<int> out;
    for (int j = 0; j < c; ++j)
        if (kept[j]) out.push_back(j);
    return out;
}

ResultTable run_empirical(const EmpiricalOptions& options, const CsvTable& raw) {
    if (options.target.empty()) throw ConfigError("empirical: set the target column");

    const NumericFrame frame = assemble_numeric(raw, options.one_hot);
    const std::vector<int> kept = prune_correlated(frame.values, options.corr_threshold);

    int target_col = -1;
    std::vector<int> feature_cols;
    for (const int j : kept) {
        if (frame.names[static_cast<std::size_t>(j)] == options.target)
            target_col = j;
        else
            feature_cols.push_back(j);
    }
    if (target_col < 0) {
        // the target may have been pruned as a duplicate; look it up pre-pruning
        for (std::size_t j = 0; j < frame.names.size(); ++j)
            if (frame.names[j] == options.target) target_col = static_cast<int>(j);
        if (target_col < 0)
            throw ConfigError("empirical: target column '" + options.target + "' not found");
        feature_cols.clear();
        for (const int j : kept)
            if (j != target_col) feature_cols.push_back(j);
    }
    const int p = static_cast<int>(feature_cols.size());
    if (p < 1) throw ConfigError("empirical: no feature columns survived pruning");

    const long n_avail = frame.values.rows();
    const int n = options.n_train > 0 ? options.n_train : static_cast<int>(n_avail / 2);
    if (2L * n > n_avail)
        throw ConfigError("empirical: need " + std::to_string(2 * n) + " rows, have " +
                          std::to_string(n_avail));
    if (n < p) throw ConfigError("empirical: train size below the feature count");

    // disjoint train/test sample of 2n rows (partial Fisher-Yates)
    std::vector<long> index(static_cast<std::size_t>(n_avail));
    for (long i = 0; i < n_avail; ++i) index[static_cast<std::size_t>(i)] = i;
    Rng rng(options.seed, "empirical_sample");
    for (long i = 0; i < 2L * n; ++i) {
        const long j = i + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(n_avail - i)));
        std::swap(index[static_cast<std::size_t>(i)], index[static_cast<std::size_t>(j)]);
    }

    const auto gather = [&](long offset, long rows, Eigen::MatrixXd& x, Eigen::VectorXd& y) {
        x.resize(rows, p);
        y.resize(rows);
        for (long i = 0; i < rows; ++i) {
            const long r = index[static_cast<std::size_t>(offset + i)];
            y[i] = frame.values(r, target_col);
            for (int j = 0; j < p; ++j) x(i, j) = frame.values(r, feature_cols[static_cast<std::size_t>(j)]);
        }
    };
    Eigen::MatrixXd x_train, x_test;
    Eigen::VectorXd y_train, y_test;
    gather(0, n, x_train, y_train);
    gather(n, n, x_test, y_test);

    Dataset train;
    train.X = x_train;
    train.Y = y_train;
    train.sigma2 = 1.0;

    const Eigen::VectorXd beta_global = ols(x_train, y_train);
    const double test_err_global = (y_test - x_test * beta_global).squaredNorm() / n;

    const int k_cap = options.k_max > 0 ? std::min(options.k_max, n / p) : n / p;
    const double gamma = static_cast<double>(p) / n;

    ResultTable table;
    const auto emit = [&](int k, const std::string& metric, double value) {
        ResultRow row;
        row.experiment = "empirical";
        row.metric = metric;
        row.n = n;
        row.p = p;
        row.k = k;
        row.gamma = gamma;
        row.seed = options.seed;
        row.value = value;
        table.rows.push_back(std::move(row));
    };
    emit(0, "columns_kept", static_cast<double>(kept.size()));
    emit(0, "rows_complete", static_cast<double>(n_avail));

    for (int k = 1; k <= k_cap; ++k) {
        const PartitionPlan plan = make_partition(n, p, k, PartitionMode::Equal);
        train.partition = plan;
        double oe_emp;
        if (k == 1) {
            oe_emp = 1.0;
        } else {
            const FitResult dist = distributed_fit_optimal(train, plan);
            const double test_err_dist =
                (y_test - x_test * dist.beta_hat).squaredNorm() / n;
            oe_emp = test_err_global / test_err_dist;
        }
        emit(k, "oe_emp", oe_emp);
        emit(k, "oe_theory", mp::oe_finite(n, p, k));
    }
    return table;
}

}  // namespace distreg
