#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "distreg/estimators.hpp"

namespace distreg {

// Finite-sample relative efficiencies: expected loss of the pooled OLS fit
// divided by the expected loss of the optimally weighted one-shot fit,
// conditional on the design. Always at most 1 (up to rounding); equal to 1
// for a single machine or identical blocks.

// General functional with transform A:
//   tr[(X^T X)^{-1} A^T A] * sum_i 1 / tr[(X_i^T X_i)^{-1} A^T A]
double efficiency_general(const Eigen::MatrixXd& a, const std::vector<Eigen::MatrixXd>& blocks,
                          double cond_bound = kDefaultCondBound);

// Specialized functionals. re: estimation (A = I); fe: regression function
// (A = X); ie: in-sample prediction; oe: out-of-sample prediction at x_t;
// ce: one coordinate (squared confidence interval length).
double re_finite(const std::vector<Eigen::MatrixXd>& blocks);
double fe_finite(const std::vector<Eigen::MatrixXd>& blocks);
double ie_finite(const std::vector<Eigen::MatrixXd>& blocks);
double oe_finite(const Eigen::VectorXd& x_t, const std::vector<Eigen::MatrixXd>& blocks);
double ce_finite(int j, const std::vector<Eigen::MatrixXd>& blocks);

// Same functionals on pre-factored blocks (shared across metrics in sweeps).
double re_finite(const BlockGrams& grams);
double fe_finite(const BlockGrams& grams);
double ie_finite(const BlockGrams& grams);
double oe_finite(const Eigen::VectorXd& x_t, const BlockGrams& grams);
double ce_finite(int j, const BlockGrams& grams);

// Residual effective degrees of freedom of the one-shot distributed fit,
// tr(I - H_dist) with H_dist block diagonal in the per-machine hat matrices.
// Equals n - k*p for full-rank blocks.
double dof_residual(const std::vector<Eigen::MatrixXd>& blocks);

// Asymptotic efficiency of plain (unweighted) averaging relative to pooled
// OLS, for aspect ratios gamma_i per machine and pooled aspect ratio gamma:
//   k^2 gamma/(1-gamma) / sum_i gamma_i/(1-gamma_i)
double are_subopt_ratio(const std::vector<double>& gammas, double gamma);

// One efficiency measurement, ready to serialize as a CSV row.
struct EfficiencyReport {
    std::string task;
    int n = 0, p = 0, k = 0;
    double finite = 0.0;
    double asymptotic = 0.0;
    std::uint64_t seed = 0;

    static std::string csv_header();  // task,n,p,k,finite,asymptotic,seed
    std::string csv_row() const;
};

}  // namespace distreg
