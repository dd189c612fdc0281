#include "distreg/config.hpp"

#include <algorithm>
#include <sstream>

#include "distreg/csv.hpp"
#include "distreg/errors.hpp"

namespace distreg {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile file;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section");
            file.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = lower(trim(line.substr(0, eq)));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        if (section.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": key outside any section");
        file.sections_[section][key] = value;
    }
    return file;
}

ConfigFile ConfigFile::read_file(const std::string& path) {
    return parse(read_text_file(path));
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    return sec != sections_.end() && sec->second.contains(key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end() || !sec->second.contains(key))
        throw ConfigError("config: missing [" + section + "] " + key);
    return sec->second.at(key);
}

std::string ConfigFile::get_string(const std::string& section, const std::string& key,
                                   const std::string& fallback) const {
    return has(section, key) ? get_string(section, key) : fallback;
}

long ConfigFile::get_long(const std::string& section, const std::string& key,
                          long fallback) const {
    if (!has(section, key)) return fallback;
    return require_long(section, key);
}

long ConfigFile::require_long(const std::string& section, const std::string& key) const {
    const std::string v = get_string(section, key);
    try {
        std::size_t used = 0;
        const long out = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: [" + section + "] " + key + " must be an integer, got " + v);
    }
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get_string(section, key);
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config: [" + section + "] " + key + " must be a number, got " + v);
    }
}

namespace {

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

std::vector<double> ConfigFile::get_doubles(const std::string& section,
                                            const std::string& key) const {
    std::vector<double> out;
    for (const std::string& item : split_list(get_string(section, key))) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config: [" + section + "] " + key + ": bad number " + item);
        }
    }
    if (out.empty()) throw ConfigError("config: [" + section + "] " + key + ": empty list");
    return out;
}

std::vector<long> ConfigFile::get_longs(const std::string& section,
                                        const std::string& key) const {
    std::vector<long> out;
    for (const double v : get_doubles(section, key)) out.push_back(static_cast<long>(v));
    return out;
}

std::vector<std::string> ConfigFile::get_strings(const std::string& section,
                                                 const std::string& key) const {
    return split_list(get_string(section, key));
}

void ConfigFile::check_keys(const std::string& section,
                            const std::vector<std::string>& allowed) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return;
    for (const auto& [key, value] : sec->second) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError("config: unknown key [" + section + "] " + key);
    }
}

const char* experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::OneshotSweep:
            return "oneshot_sweep";
        case ExperimentKind::AsymptoticCurves:
            return "asymptotic_curves";
        case ExperimentKind::MultishotCompare:
            return "multishot_compare";
        case ExperimentKind::WorstcaseScan:
            return "worstcase_scan";
        case ExperimentKind::Empirical:
            return "empirical";
    }
    return "";
}

ExperimentConfig ExperimentConfig::from_config(const ConfigFile& file) {
    file.check_keys("experiment", {"kind"});
    file.check_keys("problem", {"n", "p", "sigma2", "beta"});
    file.check_keys("model", {"scale", "cov"});
    file.check_keys("run",
                    {"replicates", "partition", "k_grid", "k", "test_points", "seed"});
    file.check_keys("multishot",
                    {"rounds", "rho_grid", "alpha_fractions", "dane_rho", "dane_eta",
                     "admm_rho"});
    file.check_keys("asymptotic", {"gamma", "kmax", "g_t", "scale"});
    file.check_keys("worstcase", {"gamma", "c", "alpha", "tau_grid", "k_grid"});
    file.check_keys("empirical",
                    {"input", "target", "one_hot", "n_train", "k_max",
                     "correlation_threshold"});

    ExperimentConfig cfg;
    const std::string kind = file.get_string("experiment", "kind", "oneshot_sweep");
    if (kind == "oneshot_sweep")
        cfg.kind = ExperimentKind::OneshotSweep;
    else if (kind == "asymptotic_curves")
        cfg.kind = ExperimentKind::AsymptoticCurves;
    else if (kind == "multishot_compare")
        cfg.kind = ExperimentKind::MultishotCompare;
    else if (kind == "worstcase_scan")
        cfg.kind = ExperimentKind::WorstcaseScan;
    else if (kind == "empirical")
        cfg.kind = ExperimentKind::Empirical;
    else
        throw ConfigError("config: unknown experiment kind " + kind);

    cfg.problem.n = static_cast<int>(file.get_long("problem", "n", 0));
    cfg.problem.p = static_cast<int>(file.get_long("problem", "p", 0));
    cfg.problem.sigma2 = file.get_double("problem", "sigma2", 1.0);
    const std::string beta = file.get_string("problem", "beta", "gaussian");
    if (beta == "zero")
        cfg.problem.beta_kind = ProblemSpec::BetaKind::Zero;
    else if (beta == "ones")
        cfg.problem.beta_kind = ProblemSpec::BetaKind::Ones;
    else if (beta == "gaussian")
        cfg.problem.beta_kind = ProblemSpec::BetaKind::Gaussian;
    else
        throw ConfigError("config: beta must be zero, ones, or gaussian");

    if (file.has("model", "scale"))
        cfg.scale = ScaleDistribution::parse(file.get_string("model", "scale"));
    if (file.has("model", "cov"))
        cfg.cov = CovarianceSpec::parse(file.get_string("model", "cov"));

    const std::string part = file.get_string("run", "partition", "equal");
    if (part == "equal")
        cfg.partition = PartitionMode::Equal;
    else if (part == "random_min_p")
        cfg.partition = PartitionMode::RandomMinP;
    else
        throw ConfigError("config: partition must be equal or random_min_p");

    if (file.has("run", "k_grid"))
        for (const long k : file.get_longs("run", "k_grid")) cfg.k_grid.push_back(static_cast<int>(k));
    cfg.k = static_cast<int>(file.get_long("run", "k", 0));
    cfg.replicates = static_cast<int>(file.get_long("run", "replicates", 1));
    cfg.test_points = static_cast<int>(file.get_long("run", "test_points", 100));
    cfg.base_seed = static_cast<std::uint64_t>(file.get_long("run", "seed", 0));
    if (cfg.replicates < 1) throw ConfigError("config: replicates must be at least 1");

    cfg.rounds = static_cast<int>(file.get_long("multishot", "rounds", 60));
    if (file.has("multishot", "rho_grid")) cfg.rho_grid = file.get_doubles("multishot", "rho_grid");
    if (file.has("multishot", "alpha_fractions"))
        cfg.alpha_fractions = file.get_doubles("multishot", "alpha_fractions");
    cfg.dane_rho = file.get_double("multishot", "dane_rho", 0.0);
    cfg.dane_eta = file.get_double("multishot", "dane_eta", 1.0);
    cfg.admm_rho = file.get_double("multishot", "admm_rho", 1.0);

    cfg.as_gamma = file.get_double("asymptotic", "gamma", 0.01);
    cfg.as_kmax = static_cast<int>(file.get_long("asymptotic", "kmax", 0));
    cfg.as_gt = file.get_double("asymptotic", "g_t", 1.0);

    cfg.wc_gamma = file.get_double("worstcase", "gamma", 0.01);
    cfg.wc_c = file.get_double("worstcase", "c", 0.05);
    cfg.wc_alpha = file.get_double("worstcase", "alpha", 1e8);
    if (file.has("worstcase", "tau_grid"))
        cfg.wc_tau_grid = file.get_doubles("worstcase", "tau_grid");
    if (file.has("worstcase", "k_grid"))
        for (const long k : file.get_longs("worstcase", "k_grid"))
            cfg.wc_k_grid.push_back(static_cast<int>(k));

    cfg.input = file.get_string("empirical", "input", "");
    cfg.target = file.get_string("empirical", "target", "");
    if (file.has("empirical", "one_hot")) cfg.one_hot = file.get_strings("empirical", "one_hot");
    cfg.n_train = static_cast<int>(file.get_long("empirical", "n_train", 0));
    cfg.k_max = static_cast<int>(file.get_long("empirical", "k_max", 0));
    cfg.corr_threshold = file.get_double("empirical", "correlation_threshold", 0.8);

    return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    return from_config(ConfigFile::read_file(path));
}

}  // namespace distreg
