#include "distreg/estimators.hpp"

#include <json.hpp>

#include "distreg/errors.hpp"

namespace distreg {

FunctionalTask FunctionalTask::estimation() { return {}; }

FunctionalTask FunctionalTask::regression_function() {
    FunctionalTask t;
    t.kind = Kind::RegressionFunction;
    return t;
}

FunctionalTask FunctionalTask::coordinate_ci(int j) {
    FunctionalTask t;
    t.kind = Kind::CoordinateCI;
    t.coordinate = j;
    return t;
}

FunctionalTask FunctionalTask::test_point(Eigen::VectorXd x_t, double g_t) {
    FunctionalTask t;
    t.kind = Kind::TestPoint;
    t.x_test = std::move(x_t);
    t.g_test = g_t;
    return t;
}

FunctionalTask FunctionalTask::in_sample() {
    FunctionalTask t;
    t.kind = Kind::InSample;
    return t;
}

double FunctionalTask::noise_scale() const {
    return (kind == Kind::TestPoint || kind == Kind::InSample) ? 1.0 : 0.0;
}

int FunctionalTask::functional_dim(int n) const {
    switch (kind) {
        case Kind::Estimation:
            return -1;  // p; resolved by the caller
        case Kind::RegressionFunction:
        case Kind::InSample:
            return n;
        case Kind::CoordinateCI:
        case Kind::TestPoint:
            return 1;
    }
    return -1;
}

void FunctionalTask::validate(int p) const {
    if (kind == Kind::CoordinateCI && (coordinate < 0 || coordinate >= p))
        throw ConfigError("task: coordinate index out of range");
    if (kind == Kind::TestPoint && x_test.size() != p)
        throw ConfigError("task: test point has the wrong dimension");
}

std::string FunctionalTask::name() const {
    switch (kind) {
        case Kind::Estimation:
            return "estimation";
        case Kind::RegressionFunction:
            return "regression_function";
        case Kind::CoordinateCI:
            return "coordinate_ci";
        case Kind::TestPoint:
            return "test_point";
        case Kind::InSample:
            return "in_sample";
    }
    return {};
}

WeightVector WeightVector::naive(int k) {
    WeightVector wv;
    wv.w = Eigen::VectorXd::Constant(k, 1.0 / k);
    return wv;
}

void WeightVector::validate() const {
    if (w.size() == 0) throw ConfigError("weights: empty");
    if (std::abs(w.sum() - 1.0) > 1e-10)
        throw ConfigError("weights must sum to 1 (got " + std::to_string(w.sum()) + ")");
}

std::string FitResult::to_json() const {
    nlohmann::json j;
    j["beta_hat"] = std::vector<double>(beta_hat.data(), beta_hat.data() + beta_hat.size());
    if (weights.size() > 0)
        j["weights"] = std::vector<double>(weights.data(), weights.data() + weights.size());
    if (per_machine.size() > 0) {
        nlohmann::json cols = nlohmann::json::array();
        for (int i = 0; i < per_machine.cols(); ++i) {
            cols.push_back(std::vector<double>(per_machine.col(i).data(),
                                               per_machine.col(i).data() + per_machine.rows()));
        }
        j["per_machine"] = cols;
    }
    return j.dump();
}

FitResult FitResult::from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    FitResult r;
    const auto beta = j.at("beta_hat").get<std::vector<double>>();
    r.beta_hat = Eigen::Map<const Eigen::VectorXd>(beta.data(), static_cast<long>(beta.size()));
    if (j.contains("weights")) {
        const auto w = j.at("weights").get<std::vector<double>>();
        r.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
    }
    if (j.contains("per_machine")) {
        const auto& cols = j.at("per_machine");
        const long k = static_cast<long>(cols.size());
        if (k > 0) {
            const auto first = cols[0].get<std::vector<double>>();
            r.per_machine.resize(static_cast<long>(first.size()), k);
            for (long i = 0; i < k; ++i) {
                const auto col = cols[static_cast<std::size_t>(i)].get<std::vector<double>>();
                r.per_machine.col(i) =
                    Eigen::Map<const Eigen::VectorXd>(col.data(), static_cast<long>(col.size()));
            }
        }
    }
    return r;
}

BlockGrams::BlockGrams(const Dataset& ds, const PartitionPlan& plan, double cond_bound) {
    const int k = plan.k();
    const int p = plan.p;
    if (ds.n() != plan.n || ds.p() != p)
        throw ConfigError("block grams: dataset and partition disagree");
    blocks_.reserve(k);
    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(p, p);
    for (int i = 0; i < k; ++i) {
        const auto [offset, rows] = plan.block_range(i);
        blocks_.emplace_back(ds.X.block(offset, 0, rows, p), cond_bound, i);
        pooled += blocks_.back().gram();
    }
    global_ = GramFactor::from_gram(std::move(pooled), cond_bound, -1);
    n_ = plan.n;
}

BlockGrams::BlockGrams(const std::vector<Eigen::MatrixXd>& blocks, double cond_bound) {
    if (blocks.empty()) throw ConfigError("block grams: no blocks");
    const int p = static_cast<int>(blocks.front().cols());
    blocks_.reserve(blocks.size());
    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(p, p);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].cols() != p) throw ConfigError("block grams: inconsistent dimensions");
        blocks_.emplace_back(blocks[i], cond_bound, static_cast<int>(i));
        pooled += blocks_.back().gram();
        n_ += static_cast<int>(blocks[i].rows());
    }
    global_ = GramFactor::from_gram(std::move(pooled), cond_bound, -1);
}

double BlockGrams::task_trace(const FunctionalTask& task, int i) const {
    const GramFactor& g = blocks_[i];
    switch (task.kind) {
        case FunctionalTask::Kind::Estimation:
            return g.trace_inverse();
        case FunctionalTask::Kind::RegressionFunction:
        case FunctionalTask::Kind::InSample:
            return g.trace_inverse_times(global_gram());
        case FunctionalTask::Kind::CoordinateCI:
            return g.inverse_entry(task.coordinate);
        case FunctionalTask::Kind::TestPoint:
            return g.quad_form_inverse(task.x_test);
    }
    return 0.0;
}

double BlockGrams::task_trace_global(const FunctionalTask& task) const {
    switch (task.kind) {
        case FunctionalTask::Kind::Estimation:
            return global_.trace_inverse();
        case FunctionalTask::Kind::RegressionFunction:
        case FunctionalTask::Kind::InSample:
            return static_cast<double>(p());
        case FunctionalTask::Kind::CoordinateCI:
            return global_.inverse_entry(task.coordinate);
        case FunctionalTask::Kind::TestPoint:
            return global_.quad_form_inverse(task.x_test);
    }
    return 0.0;
}

double BlockGrams::task_cross(const FunctionalTask& task) const {
    // tr(A G^-1 X^T N) with N in units of sigma^2: nonzero only in-sample,
    // where it collapses to tr[(X_i^T X_i)^{-1} X_i^T X_i] = p.
    return task.kind == FunctionalTask::Kind::InSample ? static_cast<double>(p()) : 0.0;
}

WeightVector optimal_weights(const FunctionalTask& task, const BlockGrams& grams) {
    const int k = grams.k();
    Eigen::VectorXd a(k);
    for (int i = 0; i < k; ++i) {
        a[i] = grams.task_trace(task, i);
        if (!(a[i] > 0.0))
            throw SingularGramError("optimal weights: nonpositive trace on machine " +
                                        std::to_string(i),
                                    i);
    }
    const double b = grams.task_cross(task);
    const double inv_sum = (1.0 / a.array()).sum();
    const double lambda = (1.0 - b * inv_sum) / inv_sum;
    WeightVector wv;
    wv.w = (lambda + b) / a.array();
    wv.validate();
    return wv;
}

WeightVector optimal_weights(const FunctionalTask& task, const Dataset& ds,
                             const PartitionPlan& plan) {
    task.validate(ds.p());
    return optimal_weights(task, BlockGrams(ds, plan));
}

FitResult distributed_fit(const Dataset& ds, const PartitionPlan& plan,
                          const WeightVector& weights) {
    weights.validate();
    const int k = plan.k();
    if (weights.w.size() != k) throw ConfigError("distributed fit: weight count != k");
    const int p = ds.p();
    FitResult result;
    result.per_machine.resize(p, k);
    for (int i = 0; i < k; ++i)
        result.per_machine.col(i) = ols(ds.x_block(i), ds.y_block(i), kDefaultCondBound, i);
    result.weights = weights.w;
    result.beta_hat = Eigen::VectorXd::Zero(p);
    for (int i = 0; i < k; ++i) result.beta_hat += weights.w[i] * result.per_machine.col(i);
    return result;
}

FitResult distributed_fit_optimal(const Dataset& ds, const PartitionPlan& plan,
                                  const FunctionalTask& task) {
    return distributed_fit(ds, plan, optimal_weights(task, ds, plan));
}

FitResult distributed_fit_naive(const Dataset& ds, const PartitionPlan& plan) {
    return distributed_fit(ds, plan, WeightVector::naive(plan.k()));
}

namespace {

double noise_term(const FunctionalTask& task, const BlockGrams& grams) {
    const int d = task.functional_dim(grams.n());
    return task.noise_scale() * static_cast<double>(d < 0 ? grams.p() : d);
}

}  // namespace

double mse_general(const FunctionalTask& task, double sigma2, const BlockGrams& grams) {
    const double a = grams.task_trace_global(task);
    const double b = grams.task_cross(task);
    return sigma2 * (a - 2.0 * b + noise_term(task, grams));
}

double mse_general(const FunctionalTask& task, double sigma2, const BlockGrams& grams,
                   const WeightVector& weights) {
    weights.validate();
    if (weights.w.size() != grams.k()) throw ConfigError("mse: weight count != k");
    const double b = grams.task_cross(task);
    double quad = 0.0;
    for (int i = 0; i < grams.k(); ++i) {
        const double wi = weights.w[i];
        quad += wi * wi * grams.task_trace(task, i) - 2.0 * wi * b;
    }
    return sigma2 * (quad + noise_term(task, grams));
}

double mse_general(const FunctionalTask& task, const Dataset& ds) {
    task.validate(ds.p());
    const GramFactor g(ds.X);
    const int n = ds.n(), p = ds.p();
    double a = 0.0;
    switch (task.kind) {
        case FunctionalTask::Kind::Estimation:
            a = g.trace_inverse();
            break;
        case FunctionalTask::Kind::RegressionFunction:
        case FunctionalTask::Kind::InSample:
            a = static_cast<double>(p);
            break;
        case FunctionalTask::Kind::CoordinateCI:
            a = g.inverse_entry(task.coordinate);
            break;
        case FunctionalTask::Kind::TestPoint:
            a = g.quad_form_inverse(task.x_test);
            break;
    }
    const double b = task.kind == FunctionalTask::Kind::InSample ? static_cast<double>(p) : 0.0;
    const int d = task.functional_dim(n);
    const double hd = task.noise_scale() * static_cast<double>(d < 0 ? p : d);
    return ds.sigma2 * (a - 2.0 * b + hd);
}

double mse_general(const FunctionalTask& task, const Dataset& ds, const PartitionPlan& plan,
                   const WeightVector& weights) {
    task.validate(ds.p());
    return mse_general(task, ds.sigma2, BlockGrams(ds, plan), weights);
}

}  // namespace distreg
