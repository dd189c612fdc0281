#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <string_view>

namespace distreg {

// Feature covariance. Diagonal only: identity, explicit diagonal entries, or
// entries drawn once from U[lo, hi] under a fixed seed. All entries must be
// strictly positive.
class CovarianceSpec {
public:
    enum class Kind { Identity, Diagonal, UniformDiagonal };

    static CovarianceSpec identity();
    static CovarianceSpec diagonal(Eigen::VectorXd entries);
    static CovarianceSpec uniform_diagonal(double lo, double hi, std::uint64_t seed);

    Kind kind() const { return kind_; }

    // Diagonal of Sigma for dimension p.
    Eigen::VectorXd materialize(int p) const;

    // "identity", "diag(1,2,...)", "diag_uniform(lo,hi,seed)"
    static CovarianceSpec parse(std::string_view text);
    std::string to_string() const;

private:
    CovarianceSpec() = default;

    Kind kind_ = Kind::Identity;
    Eigen::VectorXd entries_;
    double lo_ = 1.0, hi_ = 1.0;
    std::uint64_t seed_ = 0;
};

}  // namespace distreg
