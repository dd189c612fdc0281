#include "distreg/dataset.hpp"

#include "distreg/errors.hpp"
#include "distreg/rng.hpp"

namespace distreg {

Eigen::VectorXd ProblemSpec::make_beta(std::uint64_t seed) const {
    switch (beta_kind) {
        case BetaKind::Zero:
            return Eigen::VectorXd::Zero(p);
        case BetaKind::Ones:
            return Eigen::VectorXd::Ones(p);
        case BetaKind::Gaussian: {
            Rng rng(seed, "beta");
            Eigen::VectorXd b(p);
            for (int j = 0; j < p; ++j) b[j] = rng.next_normal();
            return b;
        }
        case BetaKind::Explicit:
            if (beta_explicit.size() != p)
                throw ConfigError("explicit beta has the wrong dimension");
            return beta_explicit;
    }
    return Eigen::VectorXd::Zero(p);
}

void ProblemSpec::validate() const {
    if (n <= 0 || p <= 0) throw ConfigError("problem: n and p must be positive");
    if (n < p) throw ConfigError("problem: n must be at least p");
    if (sigma2 < 0.0) throw ConfigError("problem: sigma2 must be nonnegative");
}

Eigen::Block<const Eigen::MatrixXd> Dataset::x_block(int i) const {
    const auto [offset, rows] = partition.block_range(i);
    return X.block(offset, 0, rows, X.cols());
}

Eigen::VectorBlock<const Eigen::VectorXd> Dataset::y_block(int i) const {
    const auto [offset, rows] = partition.block_range(i);
    return Y.segment(offset, rows);
}

void Dataset::validate() const {
    partition.validate();
    if (X.rows() != partition.n || X.cols() != partition.p)
        throw ConfigError("dataset: X dimensions do not match the partition");
    if (Y.size() != X.rows()) throw ConfigError("dataset: Y length does not match X");
    if (beta_true && beta_true->size() != X.cols())
        throw ConfigError("dataset: beta length does not match X");
    if (scales) {
        if (scales->size() != X.rows())
            throw ConfigError("dataset: scales length does not match X");
        if ((scales->array() <= 0.0).any())
            throw ConfigError("dataset: scales must be positive");
    }
}

Dataset sample_dataset(const ProblemSpec& spec, const ScaleDistribution& scale_dist,
                       const CovarianceSpec& cov, const PartitionPlan& partition,
                       std::uint64_t seed) {
    spec.validate();
    if (partition.n != spec.n || partition.p != spec.p)
        throw ConfigError("sample_dataset: partition does not match the problem spec");

    const int n = spec.n, p = spec.p;
    const Eigen::VectorXd beta = spec.make_beta(seed);
    const Eigen::VectorXd sigma_diag = cov.materialize(p);
    const Eigen::VectorXd sigma_sqrt = sigma_diag.cwiseSqrt();

    Eigen::VectorXd g(n);
    {
        Rng rng(seed, "scales");
        for (int i = 0; i < n; ++i) g[i] = scale_dist.sample(rng);
    }

    Dataset ds;
    ds.X.resize(n, p);
    {
        Rng rng(seed, "z");
        for (int i = 0; i < n; ++i) {
            const double gi = std::sqrt(g[i]);
            for (int j = 0; j < p; ++j) ds.X(i, j) = gi * rng.next_normal() * sigma_sqrt[j];
        }
    }

    ds.Y = ds.X * beta;
    if (spec.sigma2 > 0.0) {
        Rng rng(seed, "noise");
        const double sd = std::sqrt(spec.sigma2);
        for (int i = 0; i < n; ++i) ds.Y[i] += sd * rng.next_normal();
    }

    ds.beta_true = beta;
    ds.sigma2 = spec.sigma2;
    ds.scales = std::move(g);
    ds.partition = partition;
    ds.validate();
    return ds;
}

}  // namespace distreg
