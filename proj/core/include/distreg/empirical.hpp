#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "distreg/csv.hpp"
#include "distreg/result_table.hpp"

namespace distreg {

// Generic tabular pipeline: drop rows with missing entries, one-hot expand the
// listed categorical columns, prune one column of every pair with absolute
// correlation above the threshold (the later column goes), then sample
// disjoint train/test sets of equal size and measure the test-error ratio of
// the pooled fit against the optimally weighted one-shot fit for every k.
struct EmpiricalOptions {
    std::string target;
    std::vector<std::string> one_hot;
    int n_train = 0;
    int k_max = 0;  // 0 = every feasible k
    double corr_threshold = 0.8;
    std::uint64_t seed = 0;
};

// Numeric design assembled from a raw table; exposed for testing the pipeline
// stages individually.
struct NumericFrame {
    std::vector<std::string> names;
    Eigen::MatrixXd values;  // complete rows only
};

NumericFrame assemble_numeric(const CsvTable& table, const std::vector<std::string>& one_hot);
std::vector<int> prune_correlated(const Eigen::MatrixXd& values, double threshold);

ResultTable run_empirical(const EmpiricalOptions& options, const CsvTable& raw);

}  // namespace distreg
