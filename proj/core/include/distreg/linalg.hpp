#pragma once

#include <Eigen/Dense>

namespace distreg {

inline constexpr double kDefaultCondBound = 1e12;

// Cholesky factor of one Gram matrix X^T X, with the trace/quadratic-form
// queries the efficiency functionals need. Traces of inverses are computed
// through triangular solves against identity columns (O(p^3 + p^2 * rhs)),
// never by forming an explicit inverse.
//
// Construction throws SingularGramError when the factorization fails or the
// estimated condition number of the Gram exceeds `cond_bound`.
class GramFactor {
public:
    GramFactor() = default;  // empty until assigned
    GramFactor(const Eigen::Ref<const Eigen::MatrixXd>& x,
               double cond_bound = kDefaultCondBound, int machine = -1);

    // Build directly from a symmetric positive definite matrix.
    static GramFactor from_gram(Eigen::MatrixXd gram,
                                double cond_bound = kDefaultCondBound, int machine = -1);

    const Eigen::MatrixXd& gram() const { return gram_; }
    int dim() const { return static_cast<int>(gram_.rows()); }

    double trace_inverse() const;                                // tr(G^-1)
    double trace_inverse_times(const Eigen::MatrixXd& s) const;  // tr(G^-1 S)
    double inverse_entry(int j) const;                           // [G^-1]_jj
    double quad_form_inverse(const Eigen::VectorXd& v) const;    // v^T G^-1 v

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    Eigen::MatrixXd solve(const Eigen::MatrixXd& b) const;

    // tr(X G^-1 X^T) for the row block X that generated this Gram.
    double hat_trace(const Eigen::Ref<const Eigen::MatrixXd>& x) const;

private:
    void factorize(double cond_bound, int machine);

    Eigen::MatrixXd gram_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

// Least squares fit of Y on X through a column-pivoted QR of X (no explicit
// Gram inversion). Throws SingularGramError if the implied Gram condition
// number exceeds `cond_bound`; `machine` names the offending block.
Eigen::VectorXd ols(const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y,
                    double cond_bound = kDefaultCondBound, int machine = -1);

// Solves (X^T X + lambda I) b = X^T Y + lambda * center. lambda = 0 falls back
// to plain least squares and then requires full rank.
Eigen::VectorXd ridge(const Eigen::Ref<const Eigen::MatrixXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y, double lambda,
                      const Eigen::VectorXd& center,
                      double cond_bound = kDefaultCondBound, int machine = -1);

}  // namespace distreg
