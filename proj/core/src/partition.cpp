#include "distreg/partition.hpp"

#include <numeric>
#include <string>

#include "distreg/errors.hpp"
#include "distreg/rng.hpp"

namespace distreg {

std::pair<int, int> PartitionPlan::block_range(int i) const {
    int offset = 0;
    for (int j = 0; j < i; ++j) offset += sizes[j];
    return {offset, sizes[i]};
}

void PartitionPlan::validate() const {
    if (sizes.empty()) throw ConfigError("partition: k must be at least 1");
    if (n <= 0 || p <= 0) throw ConfigError("partition: n and p must be positive");
    int total = 0;
    for (const int s : sizes) {
        if (s < p)
            throw ConfigError("partition: block of size " + std::to_string(s) +
                              " is smaller than p = " + std::to_string(p));
        total += s;
    }
    if (total != n) throw ConfigError("partition: block sizes do not sum to n");
}

PartitionPlan make_partition(int n, int p, int k, PartitionMode mode, std::uint64_t seed) {
    if (k < 1) throw ConfigError("partition: k must be at least 1");
    if (static_cast<long long>(k) * p > n)
        throw ConfigError("local OLS undefined: k*p = " + std::to_string(k * p) +
                          " exceeds n = " + std::to_string(n));
    PartitionPlan plan;
    plan.n = n;
    plan.p = p;
    plan.sizes.assign(k, 0);
    switch (mode) {
        case PartitionMode::Equal: {
            const int base = n / k;
            const int rem = n % k;
            for (int i = 0; i < k; ++i) plan.sizes[i] = base + (i < rem ? 1 : 0);
            break;
        }
        case PartitionMode::RandomMinP: {
            Rng rng(seed, "partition");
            for (int i = 0; i < k; ++i) plan.sizes[i] = p;
            for (int r = 0; r < n - k * p; ++r)
                plan.sizes[rng.next_below(static_cast<std::uint64_t>(k))]++;
            break;
        }
    }
    plan.validate();
    return plan;
}

}  // namespace distreg
