#include "distreg/multishot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "distreg/errors.hpp"
#include "distreg/linalg.hpp"

namespace distreg {

const char* method_name(Method m) {
    switch (m) {
        case Method::Dgd:
            return "dgd";
        case Method::Admm:
            return "admm";
        case Method::Dane:
            return "dane";
        case Method::IterAvg:
            return "iteravg";
        case Method::OneShot:
            return "oneshot";
    }
    return "";
}

void AlgorithmConfig::validate() const {
    if (method == Method::Dgd && !(alpha > 0.0)) throw ConfigError("dgd: alpha must be positive");
    if ((method == Method::Admm || method == Method::Dane) && rho < 0.0)
        throw ConfigError("rho must be nonnegative");
    if (method == Method::Dane && !(eta > 0.0)) throw ConfigError("dane: eta must be positive");
    if (method == Method::IterAvg) {
        if (rhos.empty()) throw ConfigError("iteravg: needs at least one rho");
        for (const double r : rhos)
            if (r < 0.0) throw ConfigError("iteravg: rho must be nonnegative");
    }
    if (max_rounds < 1) throw ConfigError("max_rounds must be at least 1");
    if (!(tol >= 0.0)) throw ConfigError("tol must be nonnegative");
}

std::string IterTrace::csv_header() { return "round,err_to_target,objective,cum_vectors"; }

std::string IterTrace::to_csv() const {
    std::string out = csv_header() + "\n";
    long cum = 0;
    char buf[128];
    for (const Round& r : rounds) {
        cum += r.vectors_up + r.vectors_down;
        std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%ld\n", r.round, r.err_to_target,
                      r.objective, cum);
        out += buf;
    }
    return out;
}

namespace {

struct Blocks {
    std::vector<Eigen::MatrixXd> x;
    std::vector<Eigen::VectorXd> y;
    std::vector<Eigen::MatrixXd> gram;   // X_i^T X_i
    std::vector<Eigen::VectorXd> xty;    // X_i^T Y_i
    int k = 0, p = 0, n = 0;
};

Blocks split(const Dataset& ds, const PartitionPlan& plan) {
    ds.validate();
    plan.validate();
    if (ds.n() != plan.n || ds.p() != plan.p)
        throw ConfigError("multishot: dataset and partition disagree");
    Blocks b;
    b.k = plan.k();
    b.p = plan.p;
    b.n = plan.n;
    for (int i = 0; i < b.k; ++i) {
        const auto [offset, rows] = plan.block_range(i);
        b.x.push_back(ds.X.block(offset, 0, rows, b.p));
        b.y.push_back(ds.Y.segment(offset, rows));
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(b.p, b.p);
        g.selfadjointView<Eigen::Lower>().rankUpdate(b.x.back().transpose());
        b.gram.push_back(g.selfadjointView<Eigen::Lower>());
        b.xty.push_back(b.x.back().transpose() * b.y.back());
    }
    return b;
}

double objective(const Blocks& b, const Eigen::VectorXd& beta) {
    double v = 0.0;
    for (int i = 0; i < b.k; ++i) v += (b.x[i] * beta - b.y[i]).squaredNorm();
    return v / b.k;
}

Eigen::VectorXd resolve_target(const AlgorithmConfig& config, const Dataset& ds,
                               const PartitionPlan& plan, TraceTarget target) {
    switch (target) {
        case TraceTarget::GlobalOls:
            return ols(ds.X, ds.Y);
        case TraceTarget::BetaStar: {
            if (config.method != Method::IterAvg)
                throw ConfigError("beta_star target is defined for iteravg only");
            return iteravg_fixed_point(ds, plan, config.rhos).beta_star;
        }
        case TraceTarget::TrueBeta:
            if (!ds.beta_true) throw ConfigError("dataset has no true beta");
            return *ds.beta_true;
    }
    throw ConfigError("unknown trace target");
}

std::vector<double> broadcast_rhos(const std::vector<double>& rhos, int k) {
    if (rhos.size() == 1) return std::vector<double>(static_cast<std::size_t>(k), rhos[0]);
    if (static_cast<int>(rhos.size()) != k)
        throw ConfigError("iteravg: rho count must be 1 or k");
    return rhos;
}

}  // namespace

IterTrace run(const AlgorithmConfig& config, const Dataset& ds, const PartitionPlan& plan,
              TraceTarget target) {
    config.validate();
    if (config.method == Method::OneShot)
        throw ConfigError("one_shot_trace builds one-shot traces; run() is for iterative methods");
    const Blocks b = split(ds, plan);
    const int k = b.k, p = b.p;
    const Eigen::VectorXd target_beta = resolve_target(config, ds, plan, target);

    // per-method message counts per round, in p-vectors
    long up = k, down = k;
    if (config.method == Method::Dane) {
        up = 2 * k;
        down = 2 * k;
    }

    // precompute the per-machine solvers reused across rounds
    std::vector<Eigen::LLT<Eigen::MatrixXd>> solvers;
    std::vector<double> rhos;
    if (config.method == Method::Admm || config.method == Method::Dane) {
        for (int i = 0; i < k; ++i) {
            Eigen::MatrixXd m = b.gram[i];
            m.diagonal().array() += config.rho;
            solvers.emplace_back(m);
            if (solvers.back().info() != Eigen::Success)
                throw SingularGramError("regularized Gram not positive definite on machine " +
                                            std::to_string(i),
                                        i);
        }
    } else if (config.method == Method::IterAvg) {
        rhos = broadcast_rhos(config.rhos, k);
        for (int i = 0; i < k; ++i) {
            Eigen::MatrixXd m = b.gram[i];
            m.diagonal().array() += rhos[i] * plan.sizes[i];
            solvers.emplace_back(m);
            if (solvers.back().info() != Eigen::Success)
                throw SingularGramError("ridge system not positive definite on machine " +
                                            std::to_string(i),
                                        i);
        }
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    std::vector<Eigen::VectorXd> us(static_cast<std::size_t>(k), Eigen::VectorXd::Zero(p));

    IterTrace trace;
    trace.method = config.method;
    trace.target = target;
    const auto record = [&](int round, const Eigen::VectorXd& iterate, long vu, long vd) {
        IterTrace::Round r;
        r.round = round;
        r.iterate = iterate;
        r.err_to_target = (iterate - target_beta).norm();
        r.objective = objective(b, iterate);
        r.vectors_up = vu;
        r.vectors_down = vd;
        trace.rounds.push_back(std::move(r));
    };
    record(0, beta, 0, 0);

    const double diverge_bound = 1e8;
    for (int round = 1; round <= config.max_rounds; ++round) {
        Eigen::VectorXd next = Eigen::VectorXd::Zero(p);
        switch (config.method) {
            case Method::Dgd: {
                Eigen::VectorXd grad = Eigen::VectorXd::Zero(p);
                for (int i = 0; i < k; ++i)
                    grad += 2.0 * (b.gram[i] * beta - b.xty[i]);
                next = beta - (config.alpha / k) * grad;
                break;
            }
            case Method::Admm: {
                std::vector<Eigen::VectorXd> locals(static_cast<std::size_t>(k));
                for (int i = 0; i < k; ++i)
                    locals[i] = solvers[i].solve(b.xty[i] + config.rho * (beta - us[i]));
                for (int i = 0; i < k; ++i) next += locals[i];
                next /= k;
                for (int i = 0; i < k; ++i) us[i] += locals[i] - next;
                break;
            }
            case Method::Dane: {
                Eigen::VectorXd grad = Eigen::VectorXd::Zero(p);
                for (int i = 0; i < k; ++i) grad += b.xty[i] - b.gram[i] * beta;
                for (int i = 0; i < k; ++i)
                    next += beta + (config.eta / k) * solvers[i].solve(grad);
                next /= k;
                break;
            }
            case Method::IterAvg: {
                for (int i = 0; i < k; ++i)
                    next += solvers[i].solve(b.xty[i] + rhos[i] * plan.sizes[i] * beta);
                next /= k;
                break;
            }
            case Method::OneShot:
                break;
        }
        record(round, next, up, down);
        if (next.norm() > diverge_bound)
            throw NumericalError(std::string(method_name(config.method)) +
                                 " diverged at round " + std::to_string(round));
        const double change = (next - beta).norm();
        beta = std::move(next);
        if (change <= config.tol * (1.0 + beta.norm())) break;
    }
    return trace;
}

IterTrace one_shot_trace(const Dataset& ds, const PartitionPlan& plan,
                         const Eigen::VectorXd& beta_hat, TraceTarget target) {
    const Blocks b = split(ds, plan);
    Eigen::VectorXd target_beta;
    switch (target) {
        case TraceTarget::GlobalOls:
            target_beta = ols(ds.X, ds.Y);
            break;
        case TraceTarget::TrueBeta:
            if (!ds.beta_true) throw ConfigError("dataset has no true beta");
            target_beta = *ds.beta_true;
            break;
        case TraceTarget::BetaStar:
            throw ConfigError("beta_star target is defined for iteravg only");
    }
    IterTrace trace;
    trace.method = Method::OneShot;
    trace.target = target;
    IterTrace::Round r0;
    r0.round = 0;
    r0.iterate = Eigen::VectorXd::Zero(ds.p());
    r0.err_to_target = target_beta.norm();
    r0.objective = objective(b, r0.iterate);
    trace.rounds.push_back(r0);
    IterTrace::Round r1;
    r1.round = 1;
    r1.iterate = beta_hat;
    r1.err_to_target = (beta_hat - target_beta).norm();
    r1.objective = objective(b, beta_hat);
    r1.vectors_up = plan.k();
    r1.vectors_down = 0;
    trace.rounds.push_back(std::move(r1));
    return trace;
}

IterAvgAnalysis iteravg_fixed_point(const Dataset& ds, const PartitionPlan& plan,
                                    const std::vector<double>& rhos_in) {
    const Blocks b = split(ds, plan);
    const int k = b.k, p = b.p;
    const std::vector<double> rhos = broadcast_rhos(rhos_in, k);

    // W_i = n_i rho_i (G_i + n_i rho_i I)^{-1}; Delta = sum_i (I - W_i)
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(p, p);
    Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(p);
    std::vector<Eigen::MatrixXd> m_solved(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const double lambda = rhos[i] * plan.sizes[i];
        Eigen::MatrixXd reg = b.gram[i];
        reg.diagonal().array() += lambda;
        Eigen::LLT<Eigen::MatrixXd> llt(reg);
        if (llt.info() != Eigen::Success)
            throw SingularGramError("ridge system not positive definite on machine " +
                                        std::to_string(i),
                                    i);
        const Eigen::MatrixXd minv_g = llt.solve(b.gram[i]);  // (G_i+l I)^{-1} G_i
        m_solved[i] = llt.solve(Eigen::MatrixXd::Identity(p, p));
        delta += minv_g;
        w += lambda * m_solved[i];
        rhs += llt.solve(b.xty[i]);
    }
    w /= k;

    Eigen::LLT<Eigen::MatrixXd> delta_llt(delta);
    if (delta_llt.info() != Eigen::Success)
        throw SingularGramError("all block Gram matrices are rank deficient");

    IterAvgAnalysis analysis;
    analysis.rhos = rhos;
    analysis.beta_star = delta_llt.solve(rhs);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w);
    analysis.contraction = es.eigenvalues().maxCoeff();

    // psi = sigma^2 sum_i tr[Delta^{-2} (G_i + n_i rho_i I)^{-2} G_i]
    const Eigen::MatrixXd delta_inv = delta_llt.solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd delta_inv2 = delta_inv * delta_inv;
    double psi = 0.0;
    for (int i = 0; i < k; ++i) {
        const Eigen::MatrixXd q = m_solved[i] * b.gram[i] * m_solved[i];
        psi += delta_inv2.cwiseProduct(q).sum();  // tr, both symmetric
    }
    analysis.psi = ds.sigma2 * psi;
    analysis.psi_prime = std::numeric_limits<double>::quiet_NaN();

    // derivative only under the equal-size, common-rho hypothesis
    const bool equal_sizes =
        std::all_of(plan.sizes.begin(), plan.sizes.end(),
                    [&](int s) { return s == plan.sizes.front(); });
    const bool common_rho =
        std::all_of(rhos.begin(), rhos.end(), [&](double r) { return r == rhos.front(); });
    if (equal_sizes && common_rho) {
        const double rho = rhos.front();
        const double ni = static_cast<double>(plan.sizes.front());
        Eigen::MatrixXd bsum = Eigen::MatrixXd::Zero(p, p);
        Eigen::MatrixXd csum = Eigen::MatrixXd::Zero(p, p);
        Eigen::MatrixXd dhat = Eigen::MatrixXd::Zero(p, p);
        for (int i = 0; i < k; ++i) {
            const Eigen::MatrixXd sig = b.gram[i] / ni;
            Eigen::MatrixXd reg = sig;
            reg.diagonal().array() += rho;
            Eigen::LLT<Eigen::MatrixXd> llt(reg);
            const Eigen::MatrixXd m1 = llt.solve(sig);          // (S+rho)^{-1} S
            const Eigen::MatrixXd m2 = llt.solve(m1);           // (S+rho)^{-2} S
            const Eigen::MatrixXd m3 = llt.solve(m2);           // (S+rho)^{-3} S
            dhat += m1;
            bsum += m2;
            csum += m3;
        }
        Eigen::LLT<Eigen::MatrixXd> dhat_llt(dhat);
        const Eigen::MatrixXd dinv = dhat_llt.solve(Eigen::MatrixXd::Identity(p, p));
        const Eigen::MatrixXd dinv2 = dinv * dinv;
        const double term =
            (dinv * bsum * dinv2 * bsum).trace() - (dinv2 * csum).trace();
        analysis.psi_prime = ds.sigma2 * 2.0 * k / b.n * term;
    }
    return analysis;
}

std::vector<PsiPoint> psi_curve(const Dataset& ds, const PartitionPlan& plan,
                                const std::vector<double>& rho_grid) {
    if (rho_grid.empty()) throw ConfigError("psi curve: empty grid");
    const bool equal_sizes =
        std::all_of(plan.sizes.begin(), plan.sizes.end(),
                    [&](int s) { return s == plan.sizes.front(); });
    if (!equal_sizes)
        throw ConfigError("psi curve: the derivative formula requires equal block sizes");
    std::vector<PsiPoint> out;
    out.reserve(rho_grid.size());
    for (const double rho : rho_grid) {
        const IterAvgAnalysis a = iteravg_fixed_point(ds, plan, {rho});
        out.push_back({rho, a.psi, a.psi_prime});
    }
    return out;
}

AdmmRecursion admm_recursion(const Dataset& ds, const PartitionPlan& plan, double rho) {
    const Blocks blk = split(ds, plan);
    const int k = blk.k, p = blk.p;
    const int dim = (2 * k + 1) * p;

    std::vector<Eigen::MatrixXd> m(static_cast<std::size_t>(k));  // (G_i + rho I)^{-1}
    std::vector<Eigen::VectorXd> c(static_cast<std::size_t>(k));  // M_i X_i^T Y_i
    for (int i = 0; i < k; ++i) {
        Eigen::MatrixXd reg = blk.gram[i];
        reg.diagonal().array() += rho;
        Eigen::LLT<Eigen::MatrixXd> llt(reg);
        if (llt.info() != Eigen::Success)
            throw SingularGramError("regularized Gram not positive definite on machine " +
                                        std::to_string(i),
                                    i);
        m[i] = llt.solve(Eigen::MatrixXd::Identity(p, p));
        c[i] = m[i] * blk.xty[i];
    }
    Eigen::MatrixXd m_mean = Eigen::MatrixXd::Zero(p, p);
    Eigen::VectorXd c_mean = Eigen::VectorXd::Zero(p);
    for (int i = 0; i < k; ++i) {
        m_mean += m[i];
        c_mean += c[i];
    }
    m_mean /= k;
    c_mean /= k;

    AdmmRecursion rec;
    rec.p = p;
    rec.k = k;
    rec.a = Eigen::MatrixXd::Zero(dim, dim);
    rec.b = Eigen::VectorXd::Zero(dim);
    const auto beta_i = [&](int i) { return i * p; };
    const auto u_i = [&](int i) { return (k + i) * p; };
    const int beta_g = 2 * k * p;

    for (int i = 0; i < k; ++i) {
        // beta_i' = rho M_i beta - rho M_i u_i + c_i
        rec.a.block(beta_i(i), beta_g, p, p) = rho * m[i];
        rec.a.block(beta_i(i), u_i(i), p, p) = -rho * m[i];
        rec.b.segment(beta_i(i), p) = c[i];
    }
    // beta' = mean of beta_i'
    rec.a.block(beta_g, beta_g, p, p) = rho * m_mean;
    for (int j = 0; j < k; ++j) rec.a.block(beta_g, u_i(j), p, p) = -(rho / k) * m[j];
    rec.b.segment(beta_g, p) = c_mean;
    // u_i' = u_i + beta_i' - beta'
    for (int i = 0; i < k; ++i) {
        rec.a.block(u_i(i), beta_g, p, p) = rho * (m[i] - m_mean);
        for (int j = 0; j < k; ++j) {
            Eigen::MatrixXd block = (rho / k) * m[j];
            if (j == i) block -= rho * m[i];
            if (j == i) block += Eigen::MatrixXd::Identity(p, p);
            rec.a.block(u_i(i), u_i(j), p, p) = block;
        }
        rec.b.segment(u_i(i), p) = c[i] - c_mean;
    }
    return rec;
}

Eigen::VectorXd admm_fixed_point(const AdmmRecursion& rec) {
    const int dim = static_cast<int>(rec.a.rows());
    const int p = rec.p, k = rec.k;
    Eigen::MatrixXd system(dim + p, dim);
    system.topRows(dim) = Eigen::MatrixXd::Identity(dim, dim) - rec.a;
    system.bottomRows(p).setZero();
    for (int i = 0; i < k; ++i)
        system.block(dim, (k + i) * p, p, p) = Eigen::MatrixXd::Identity(p, p);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim + p);
    rhs.head(dim) = rec.b;
    return system.colPivHouseholderQr().solve(rhs);
}

double admm_spectral_check(const Dataset& ds, const PartitionPlan& plan, double rho) {
    const AdmmRecursion rec = admm_recursion(ds, plan, rho);
    const Eigen::EigenSolver<Eigen::MatrixXd> es(rec.a, /*computeEigenvectors=*/false);
    const auto eigenvalues = es.eigenvalues();
    int unit_modes = 0;
    double radius = 0.0;
    for (int i = 0; i < eigenvalues.size(); ++i) {
        if (std::abs(eigenvalues[i] - std::complex<double>(1.0, 0.0)) <= 1e-9) {
            ++unit_modes;
            continue;
        }
        radius = std::max(radius, std::abs(eigenvalues[i]));
    }
    // conservation pins exactly p unit eigenvalues; anything else is real
    if (unit_modes != rec.p) return eigenvalues.cwiseAbs().maxCoeff();
    return radius;
}

CommunicationCost communication_cost(const IterTrace& trace) {
    CommunicationCost cost;
    for (const IterTrace::Round& r : trace.rounds) {
        cost.vectors_up += r.vectors_up;
        cost.vectors_down += r.vectors_down;
        if (r.round > 0) ++cost.rounds;
    }
    return cost;
}

}  // namespace distreg
