#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace distreg {

// Long-format experiment output. One measurement per row; the seed that
// produced the row rides along, and the parameter columns are sufficient to
// recompute any theoretical value in the `value` column.
struct ResultRow {
    std::string experiment;
    std::string method;
    std::string metric;
    std::optional<long> n, p, k, round, replicate;
    std::optional<double> gamma, rho, alpha, c, g_t, tau;
    std::uint64_t seed = 0;
    double value = 0.0;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    static std::string csv_header();
    std::string to_csv() const;
    std::string to_json() const;
};

}  // namespace distreg
