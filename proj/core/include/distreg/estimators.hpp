#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "distreg/dataset.hpp"
#include "distreg/linalg.hpp"

namespace distreg {

// A statistical target expressed as a linear functional A*beta plus optional
// noise. Each kind pins the transform A, the noise scale h, and the
// noise/response cross-covariance N:
//   Estimation          A = I_p    h = 0  N = 0
//   RegressionFunction  A = X      h = 0  N = 0
//   CoordinateCI(j)     A = e_j^T  h = 0  N = 0
//   TestPoint(x_t)      A = x_t^T  h = 1  N = 0
//   InSample            A = X      h = 1  N = sigma^2 I_n
struct FunctionalTask {
    enum class Kind { Estimation, RegressionFunction, CoordinateCI, TestPoint, InSample };

    Kind kind = Kind::Estimation;
    int coordinate = -1;         // CoordinateCI only, 0-based
    Eigen::VectorXd x_test;      // TestPoint only
    double g_test = 1.0;         // scale g_t of the test point, for asymptotics

    static FunctionalTask estimation();
    static FunctionalTask regression_function();
    static FunctionalTask coordinate_ci(int j);
    static FunctionalTask test_point(Eigen::VectorXd x_t, double g_t = 1.0);
    static FunctionalTask in_sample();

    double noise_scale() const;       // h
    int functional_dim(int n) const;  // d
    void validate(int p) const;
    std::string name() const;
};

// Combination weights for one-shot averaging. Must sum to one (within 1e-10);
// negative entries are allowed.
struct WeightVector {
    Eigen::VectorXd w;

    static WeightVector naive(int k);
    void validate() const;
};

// Output of a (distributed) least squares fit. For distributed fits,
// beta_hat = sum_i w_i * per_machine.col(i) exactly.
struct FitResult {
    Eigen::VectorXd beta_hat;
    Eigen::MatrixXd per_machine;  // p x k; empty for a global fit
    Eigen::VectorXd weights;      // empty for a global fit

    std::string to_json() const;
    static FitResult from_json(const std::string& text);
};

// Per-machine Gram factorizations plus the pooled Gram, shared by the weight
// and efficiency computations so each matrix is factored once.
class BlockGrams {
public:
    BlockGrams(const Dataset& ds, const PartitionPlan& plan,
               double cond_bound = kDefaultCondBound);
    explicit BlockGrams(const std::vector<Eigen::MatrixXd>& blocks,
                        double cond_bound = kDefaultCondBound);

    int k() const { return static_cast<int>(blocks_.size()); }
    int p() const { return global_.dim(); }
    int n() const { return n_; }
    const GramFactor& block(int i) const { return blocks_[i]; }
    const GramFactor& global() const { return global_; }
    const Eigen::MatrixXd& global_gram() const { return global_.gram(); }

    // a_i = tr[(X_i^T X_i)^{-1} A^T A] for the task's A.
    double task_trace(const FunctionalTask& task, int i) const;
    double task_trace_global(const FunctionalTask& task) const;
    // b_i: nonzero only for the in-sample task, where it equals p.
    double task_cross(const FunctionalTask& task) const;

private:
    std::vector<GramFactor> blocks_;
    GramFactor global_;
    int n_ = 0;
};

// Minimum-MSE combination weights for the given task: w_i = (lambda* + b_i)/a_i
// with lambda* chosen so the weights sum to one. For noiseless tasks this
// reduces to w_i proportional to 1/a_i.
WeightVector optimal_weights(const FunctionalTask& task, const BlockGrams& grams);
WeightVector optimal_weights(const FunctionalTask& task, const Dataset& ds,
                             const PartitionPlan& plan);

// Independent per-machine least squares fits combined with the given weights
// ("optimal" resolves them for the task; "naive" uses 1/k). Per-machine solves
// are independent and may run concurrently; the combination always reduces in
// machine-index order.
FitResult distributed_fit(const Dataset& ds, const PartitionPlan& plan,
                          const WeightVector& weights);
FitResult distributed_fit_optimal(const Dataset& ds, const PartitionPlan& plan,
                                  const FunctionalTask& task = FunctionalTask::estimation());
FitResult distributed_fit_naive(const Dataset& ds, const PartitionPlan& plan);

// Exact expected MSE of the task functional conditional on X (no Monte Carlo),
// for the global OLS fit and for a weighted distributed fit.
double mse_general(const FunctionalTask& task, const Dataset& ds);
double mse_general(const FunctionalTask& task, const Dataset& ds, const PartitionPlan& plan,
                   const WeightVector& weights);
double mse_general(const FunctionalTask& task, double sigma2, const BlockGrams& grams);
double mse_general(const FunctionalTask& task, double sigma2, const BlockGrams& grams,
                   const WeightVector& weights);

}  // namespace distreg
