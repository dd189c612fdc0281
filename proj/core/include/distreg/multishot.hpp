#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "distreg/dataset.hpp"

namespace distreg {

// Multi-round parameter-server methods for the shared objective
// f(beta) = (1/k) sum_i ||X_i beta - Y_i||^2. All four methods start from
// beta = 0, update the k machines independently each round, and reduce in
// machine-index order, so runs are deterministic.
enum class Method { Dgd, Admm, Dane, IterAvg, OneShot };

const char* method_name(Method m);

struct AlgorithmConfig {
    Method method = Method::IterAvg;
    double alpha = 0.1;         // DGD step size
    double rho = 1.0;           // ADMM penalty / DANE regularizer
    double eta = 1.0;           // DANE step size
    std::vector<double> rhos;   // per-machine ridge centers for IterAvg; a
                                // single entry broadcasts to every machine
    int max_rounds = 100;
    double tol = 1e-10;         // stop when ||change|| <= tol * (1 + ||iterate||)

    void validate() const;
};

enum class TraceTarget { GlobalOls, BetaStar, TrueBeta };

// Per-round record of one run. Round 0 is the initial state (beta = 0,
// no messages); message counts are exact per the method's protocol, in units
// of one p-vector.
struct IterTrace {
    struct Round {
        int round = 0;
        Eigen::VectorXd iterate;
        double err_to_target = 0.0;
        double objective = 0.0;
        long vectors_up = 0;
        long vectors_down = 0;
    };

    Method method{};
    TraceTarget target{};
    std::vector<Round> rounds;

    const Eigen::VectorXd& final_iterate() const { return rounds.back().iterate; }
    static std::string csv_header();  // round,err_to_target,objective,cum_vectors
    std::string to_csv() const;
};

// Errors if the iterate norm exceeds 1e8 * (1 + ||beta^0||) (divergence).
IterTrace run(const AlgorithmConfig& config, const Dataset& ds, const PartitionPlan& plan,
              TraceTarget target = TraceTarget::GlobalOls);

// One round of weighted averaging (k vectors up, none down), for use as a
// communication-cost baseline next to the iterative traces.
IterTrace one_shot_trace(const Dataset& ds, const PartitionPlan& plan,
                         const Eigen::VectorXd& beta_hat, TraceTarget target);

// Closed-form limit of the ridge-centered averaging iteration: the iterates
// contract toward beta_star at rate lambda_max(W), W = (1/k) sum_i W_i with
// W_i = n_i rho_i (X_i^T X_i + n_i rho_i I)^{-1}. psi is the exact MSE of
// beta_star; psi_prime is filled only for equal block sizes and a common rho
// (NaN otherwise).
struct IterAvgAnalysis {
    std::vector<double> rhos;
    double contraction = 0.0;
    Eigen::VectorXd beta_star;
    double psi = 0.0;
    double psi_prime = 0.0;
};

IterAvgAnalysis iteravg_fixed_point(const Dataset& ds, const PartitionPlan& plan,
                                    const std::vector<double>& rhos);

struct PsiPoint {
    double rho = 0.0;
    double psi = 0.0;
    double psi_prime = 0.0;
};

// psi and psi' on a grid of common regularizers. Requires equal block sizes
// (the derivative formula's hypothesis); psi alone accepts any sizes through
// iteravg_fixed_point.
std::vector<PsiPoint> psi_curve(const Dataset& ds, const PartitionPlan& plan,
                                const std::vector<double>& rho_grid);

// The consensus ADMM round is affine: z' = A z + b over the stacked state
// (beta_1..beta_k, u_1..u_k, beta). The round conserves the dual sum
// sum_i u_i exactly (each u_i absorbs the deviation of beta_i from their
// mean), so A always carries p structural unit eigenvalues and the iteration
// lives on the leaf {sum u_i = sum u_i^0}.
struct AdmmRecursion {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    int p = 0;
    int k = 0;
};
AdmmRecursion admm_recursion(const Dataset& ds, const PartitionPlan& plan, double rho);

// Fixed point of the recursion on the zero-dual-sum leaf (the one reached
// from the all-zero start): solves (I - A) z = b subject to sum_i u_i = 0.
Eigen::VectorXd admm_fixed_point(const AdmmRecursion& rec);

// Spectral radius of the recursion with the p structural unit eigenvalues
// removed; convergence of run() is expected when this is below 1. Falls back
// to the raw radius if the unit eigenvalues are not where conservation puts
// them.
double admm_spectral_check(const Dataset& ds, const PartitionPlan& plan, double rho);

struct CommunicationCost {
    long vectors_up = 0;
    long vectors_down = 0;
    int rounds = 0;
};
CommunicationCost communication_cost(const IterTrace& trace);

}  // namespace distreg
