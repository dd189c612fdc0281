#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>

#include "distreg/covariance.hpp"
#include "distreg/partition.hpp"
#include "distreg/scale_distribution.hpp"

namespace distreg {

// Problem dimensions, noise level, and the choice of true coefficient vector.
struct ProblemSpec {
    enum class BetaKind { Zero, Ones, Gaussian, Explicit };

    int n = 0;
    int p = 0;
    double sigma2 = 1.0;
    BetaKind beta_kind = BetaKind::Gaussian;
    Eigen::VectorXd beta_explicit;

    Eigen::VectorXd make_beta(std::uint64_t seed) const;
    void validate() const;
};

// One synthetic regression problem: rows x_i = g_i^{1/2} Sigma^{1/2} z_i with
// z iid standard normal, responses Y = X beta + noise. Immutable after
// construction; blocks are views into consecutive row ranges.
struct Dataset {
    Eigen::MatrixXd X;
    Eigen::VectorXd Y;
    std::optional<Eigen::VectorXd> beta_true;
    double sigma2 = 1.0;
    std::optional<Eigen::VectorXd> scales;  // realized g_i, all positive
    PartitionPlan partition;

    int n() const { return static_cast<int>(X.rows()); }
    int p() const { return static_cast<int>(X.cols()); }

    Eigen::Block<const Eigen::MatrixXd> x_block(int i) const;
    Eigen::VectorBlock<const Eigen::VectorXd> y_block(int i) const;

    void validate() const;
};

// Draws a dataset from the elliptical model. Scales are drawn iid from
// `scale_dist` and then fixed for the dataset. Output is reproducible per seed:
// derived streams keyed "beta"/"scales"/"z"/"noise" fix the generation order.
Dataset sample_dataset(const ProblemSpec& spec, const ScaleDistribution& scale_dist,
                       const CovarianceSpec& cov, const PartitionPlan& partition,
                       std::uint64_t seed);

}  // namespace distreg
