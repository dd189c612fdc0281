#include "distreg/efficiency.hpp"

#include <cmath>
#include <cstdio>

#include "distreg/errors.hpp"

namespace distreg {

double efficiency_general(const Eigen::MatrixXd& a, const std::vector<Eigen::MatrixXd>& blocks,
                          double cond_bound) {
    const BlockGrams grams(blocks, cond_bound);
    const Eigen::MatrixXd ata = a.transpose() * a;
    double inv_sum = 0.0;
    for (int i = 0; i < grams.k(); ++i)
        inv_sum += 1.0 / grams.block(i).trace_inverse_times(ata);
    return grams.global().trace_inverse_times(ata) * inv_sum;
}

double re_finite(const BlockGrams& grams) {
    double inv_sum = 0.0;
    for (int i = 0; i < grams.k(); ++i) inv_sum += 1.0 / grams.block(i).trace_inverse();
    return grams.global().trace_inverse() * inv_sum;
}

double fe_finite(const BlockGrams& grams) {
    const double p = grams.p();
    double v = 0.0;
    for (int i = 0; i < grams.k(); ++i)
        v += p / grams.block(i).trace_inverse_times(grams.global_gram());
    return v;
}

double ie_finite(const BlockGrams& grams) {
    const double n = grams.n(), p = grams.p();
    double inv_sum = 0.0;
    for (int i = 0; i < grams.k(); ++i)
        inv_sum += 1.0 / grams.block(i).trace_inverse_times(grams.global_gram());
    return (n - p) / (n - 2.0 * p + 1.0 / inv_sum);
}

double oe_finite(const Eigen::VectorXd& x_t, const BlockGrams& grams) {
    const double qf_global = grams.global().quad_form_inverse(x_t);
    if (qf_global == 0.0) return 1.0;  // zero test point
    double inv_sum = 0.0;
    for (int i = 0; i < grams.k(); ++i)
        inv_sum += 1.0 / grams.block(i).quad_form_inverse(x_t);
    return (1.0 + qf_global) / (1.0 + 1.0 / inv_sum);
}

double ce_finite(int j, const BlockGrams& grams) {
    if (j < 0 || j >= grams.p()) throw ConfigError("ce: coordinate out of range");
    double inv_sum = 0.0;
    for (int i = 0; i < grams.k(); ++i) inv_sum += 1.0 / grams.block(i).inverse_entry(j);
    return grams.global().inverse_entry(j) * inv_sum;
}

double re_finite(const std::vector<Eigen::MatrixXd>& blocks) {
    return re_finite(BlockGrams(blocks));
}

double fe_finite(const std::vector<Eigen::MatrixXd>& blocks) {
    return fe_finite(BlockGrams(blocks));
}

double ie_finite(const std::vector<Eigen::MatrixXd>& blocks) {
    return ie_finite(BlockGrams(blocks));
}

double oe_finite(const Eigen::VectorXd& x_t, const std::vector<Eigen::MatrixXd>& blocks) {
    return oe_finite(x_t, BlockGrams(blocks));
}

double ce_finite(int j, const std::vector<Eigen::MatrixXd>& blocks) {
    return ce_finite(j, BlockGrams(blocks));
}

double dof_residual(const std::vector<Eigen::MatrixXd>& blocks) {
    double trace = 0.0;
    double n = 0.0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const GramFactor g(blocks[i], kDefaultCondBound, static_cast<int>(i));
        trace += g.hat_trace(blocks[i]);
        n += static_cast<double>(blocks[i].rows());
    }
    return n - trace;
}

double are_subopt_ratio(const std::vector<double>& gammas, double gamma) {
    if (gammas.empty()) throw ConfigError("subopt ratio: no machines");
    for (const double gi : gammas)
        if (!(gi > 0.0 && gi < 1.0)) throw ConfigError("subopt ratio: gamma_i must be in (0,1)");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("subopt ratio: gamma must be in (0,1)");
    const double k = static_cast<double>(gammas.size());
    double denom = 0.0;
    for (const double gi : gammas) denom += gi / (1.0 - gi);
    return k * k * gamma / (1.0 - gamma) / denom;
}

std::string EfficiencyReport::csv_header() { return "task,n,p,k,finite,asymptotic,seed"; }

std::string EfficiencyReport::csv_row() const {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%.17g,%.17g,%llu", task.c_str(), n, p, k,
                  finite, asymptotic, static_cast<unsigned long long>(seed));
    return buf;
}

}  // namespace distreg
