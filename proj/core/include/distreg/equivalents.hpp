#pragma once

#include <cstdint>
#include <vector>

#include "distreg/covariance.hpp"
#include "distreg/scale_distribution.hpp"

namespace distreg {

// Empirical check that n (X^T X)^{-1} tracks e_p * Sigma^{-1}: for growing n
// it evaluates |tr[C_n (Sigma_hat^{-1} - e_p Sigma^{-1})]| for standard test
// sequences C_n of unit trace norm and reports how the error decays. e_p is
// solved per replicate from the realized scales, so the check covers both the
// identity-scale and elliptical models.
enum class TestMatrixFamily {
    ScaledIdentity,   // C = n^{-1} I
    CoordinateUnit,   // C = e_1 e_1^T
    RandomRankOne,    // C = u u^T, random unit u
    ProductRuleDiag,  // C = n^{-1} D, fixed diagonal D with entries in [1, 2]
};

const char* family_name(TestMatrixFamily family);

struct EquivalenceRow {
    int n = 0;
    int p = 0;
    TestMatrixFamily family{};
    double median_abs = 0.0;
    double mean_abs = 0.0;
};

std::vector<EquivalenceRow> equivalence_check(const std::vector<int>& n_grid, double gamma,
                                              const CovarianceSpec& cov,
                                              const ScaleDistribution& scales,
                                              const std::vector<TestMatrixFamily>& families,
                                              int replicates, std::uint64_t seed);

}  // namespace distreg
