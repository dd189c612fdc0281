#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "distreg/covariance.hpp"
#include "distreg/dataset.hpp"
#include "distreg/partition.hpp"
#include "distreg/scale_distribution.hpp"

namespace distreg {

// Flat sectioned key-value file: `[section]` headers, `key = value` lines,
// `#` comments. Keys are validated against a per-section schema; unknown
// keys are config errors.
class ConfigFile {
public:
    static ConfigFile parse(const std::string& text);
    static ConfigFile read_file(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    long require_long(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    std::vector<double> get_doubles(const std::string& section, const std::string& key) const;
    std::vector<long> get_longs(const std::string& section, const std::string& key) const;
    std::vector<std::string> get_strings(const std::string& section,
                                         const std::string& key) const;

    // Throws ConfigError when a present section holds a key outside `allowed`.
    void check_keys(const std::string& section,
                    const std::vector<std::string>& allowed) const;

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

enum class ExperimentKind {
    OneshotSweep,
    AsymptoticCurves,
    MultishotCompare,
    WorstcaseScan,
    Empirical,
};

const char* experiment_kind_name(ExperimentKind kind);

// Parsed experiment description. Only the fields relevant to `kind` are
// meaningful; validation happens per experiment.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::OneshotSweep;

    ProblemSpec problem;
    ScaleDistribution scale = ScaleDistribution::point_mass(1.0);
    CovarianceSpec cov = CovarianceSpec::identity();
    PartitionMode partition = PartitionMode::Equal;

    std::vector<int> k_grid;
    int k = 0;  // single machine count (multishot, gen)
    int replicates = 1;
    int test_points = 100;
    std::uint64_t base_seed = 0;

    // multishot
    int rounds = 60;
    std::vector<double> rho_grid;
    std::vector<double> alpha_fractions;  // of the stability bound k/lambda_max
    double dane_rho = 0.0;
    double dane_eta = 1.0;
    double admm_rho = 1.0;

    // asymptotic curves
    double as_gamma = 0.01;
    int as_kmax = 0;
    double as_gt = 1.0;

    // worst-case scan
    double wc_gamma = 0.01;
    double wc_c = 0.05;
    double wc_alpha = 1e8;
    std::vector<double> wc_tau_grid;
    std::vector<int> wc_k_grid;

    // empirical pipeline
    std::string input;
    std::string target;
    std::vector<std::string> one_hot;
    int n_train = 0;
    int k_max = 0;  // 0 = every feasible k
    double corr_threshold = 0.8;

    static ExperimentConfig from_config(const ConfigFile& file);
    static ExperimentConfig load_file(const std::string& path);
};

}  // namespace distreg
