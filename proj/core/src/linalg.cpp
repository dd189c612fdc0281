#include "distreg/linalg.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "distreg/errors.hpp"

namespace distreg {

namespace {

std::string block_label(int machine) {
    return machine < 0 ? std::string("pooled data") : "machine " + std::to_string(machine);
}

}  // namespace

GramFactor::GramFactor(const Eigen::Ref<const Eigen::MatrixXd>& x, double cond_bound,
                       int machine) {
    const int p = static_cast<int>(x.cols());
    gram_ = Eigen::MatrixXd::Zero(p, p);
    gram_.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    gram_ = gram_.selfadjointView<Eigen::Lower>();
    factorize(cond_bound, machine);
}

GramFactor GramFactor::from_gram(Eigen::MatrixXd gram, double cond_bound, int machine) {
    GramFactor f;
    f.gram_ = std::move(gram);
    f.factorize(cond_bound, machine);
    return f;
}

void GramFactor::factorize(double cond_bound, int machine) {
    llt_.compute(gram_);
    if (llt_.info() != Eigen::Success)
        throw SingularGramError("Gram matrix not positive definite on " + block_label(machine),
                                machine);
    const double rcond = llt_.rcond();
    if (!(rcond > 1.0 / cond_bound))
        throw SingularGramError("Gram matrix too ill-conditioned on " + block_label(machine) +
                                    " (rcond = " + std::to_string(rcond) + ")",
                                machine);
}

double GramFactor::trace_inverse() const {
    const int p = dim();
    const Eigen::MatrixXd linv =
        llt_.matrixL().solve(Eigen::MatrixXd::Identity(p, p));
    return linv.squaredNorm();
}

double GramFactor::trace_inverse_times(const Eigen::MatrixXd& s) const {
    return llt_.solve(s).trace();
}

double GramFactor::inverse_entry(int j) const {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim());
    e[j] = 1.0;
    return llt_.matrixL().solve(e).squaredNorm();
}

double GramFactor::quad_form_inverse(const Eigen::VectorXd& v) const {
    return llt_.matrixL().solve(v).squaredNorm();
}

Eigen::VectorXd GramFactor::solve(const Eigen::VectorXd& b) const { return llt_.solve(b); }

Eigen::MatrixXd GramFactor::solve(const Eigen::MatrixXd& b) const { return llt_.solve(b); }

double GramFactor::hat_trace(const Eigen::Ref<const Eigen::MatrixXd>& x) const {
    // tr(X G^-1 X^T) = sum of squared norms of L^-1 x_r over the rows x_r
    return llt_.matrixL().solve(x.transpose()).squaredNorm();
}

Eigen::VectorXd ols(const Eigen::Ref<const Eigen::MatrixXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& y, double cond_bound,
                    int machine) {
    if (x.rows() < x.cols())
        throw SingularGramError("least squares needs at least p rows on " + block_label(machine),
                                machine);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    const auto& r = qr.matrixR();
    const int p = static_cast<int>(x.cols());
    double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
    for (int j = 0; j < p; ++j) {
        const double d = std::abs(r(j, j));
        rmax = std::max(rmax, d);
        rmin = std::min(rmin, d);
    }
    // (rmax/rmin)^2 estimates the Gram condition number
    if (!(rmin > 0.0) || (rmax / rmin) * (rmax / rmin) > cond_bound)
        throw SingularGramError("Gram matrix too ill-conditioned on " + block_label(machine),
                                machine);
    return qr.solve(y);
}

Eigen::VectorXd ridge(const Eigen::Ref<const Eigen::MatrixXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y, double lambda,
                      const Eigen::VectorXd& center, double cond_bound, int machine) {
    if (lambda < 0.0) throw ConfigError("ridge: lambda must be nonnegative");
    if (lambda == 0.0) return ols(x, y, cond_bound, machine);
    const int p = static_cast<int>(x.cols());
    Eigen::MatrixXd g = Eigen::MatrixXd::Zero(p, p);
    g.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    g = g.selfadjointView<Eigen::Lower>();
    g.diagonal().array() += lambda;
    const Eigen::VectorXd rhs = x.transpose() * y + lambda * center;
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success)
        throw SingularGramError("ridge system not positive definite on " + block_label(machine),
                                machine);
    return llt.solve(rhs);
}

}  // namespace distreg
