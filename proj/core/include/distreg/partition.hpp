#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace distreg {

// How the n samples are split across the k machines. Blocks are consecutive
// row ranges: machine i holds rows [offset(i), offset(i) + sizes[i]).
// Invariants: sizes sum to n, every size is at least p, k >= 1.
struct PartitionPlan {
    int n = 0;
    int p = 0;
    std::vector<int> sizes;

    int k() const { return static_cast<int>(sizes.size()); }
    double gamma() const { return static_cast<double>(p) / n; }
    double gamma_i(int i) const { return static_cast<double>(p) / sizes[i]; }

    // (first row, row count) of block i
    std::pair<int, int> block_range(int i) const;

    void validate() const;
};

enum class PartitionMode {
    Equal,       // as even as possible, remainders to the lowest indices
    RandomMinP,  // p rows per machine, the rest assigned uniformly at random
};

// Rejects k*p > n (some machine would have fewer rows than columns, so its
// local least squares fit would be undefined).
PartitionPlan make_partition(int n, int p, int k, PartitionMode mode,
                             std::uint64_t seed = 0);

}  // namespace distreg
