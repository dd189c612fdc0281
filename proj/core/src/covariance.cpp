#include "distreg/covariance.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "distreg/errors.hpp"
#include "distreg/rng.hpp"

namespace distreg {

CovarianceSpec CovarianceSpec::identity() { return CovarianceSpec{}; }

CovarianceSpec CovarianceSpec::diagonal(Eigen::VectorXd entries) {
    if (entries.size() == 0) throw ConfigError("covariance: empty diagonal");
    if ((entries.array() <= 0.0).any())
        throw ConfigError("covariance: diagonal entries must be positive");
    CovarianceSpec c;
    c.kind_ = Kind::Diagonal;
    c.entries_ = std::move(entries);
    return c;
}

CovarianceSpec CovarianceSpec::uniform_diagonal(double lo, double hi, std::uint64_t seed) {
    if (!(0.0 < lo && lo <= hi))
        throw ConfigError("covariance: uniform diagonal requires 0 < lo <= hi");
    CovarianceSpec c;
    c.kind_ = Kind::UniformDiagonal;
    c.lo_ = lo;
    c.hi_ = hi;
    c.seed_ = seed;
    return c;
}

Eigen::VectorXd CovarianceSpec::materialize(int p) const {
    switch (kind_) {
        case Kind::Identity:
            return Eigen::VectorXd::Ones(p);
        case Kind::Diagonal:
            if (entries_.size() != p)
                throw ConfigError("covariance: diagonal size does not match p");
            return entries_;
        case Kind::UniformDiagonal: {
            Rng rng(seed_, "cov");
            Eigen::VectorXd d(p);
            for (int j = 0; j < p; ++j) d[j] = rng.next_uniform(lo_, hi_);
            return d;
        }
    }
    return Eigen::VectorXd::Ones(p);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

CovarianceSpec CovarianceSpec::parse(std::string_view text) {
    std::string s(text);
    std::erase_if(s, [](char c) { return c == ' ' || c == '\t'; });
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "identity") return identity();
    const auto open = s.find('(');
    const auto close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ConfigError("malformed covariance spec: " + std::string(text));
    const std::string head = s.substr(0, open);
    std::vector<double> a;
    {
        std::stringstream ss(s.substr(open + 1, close - open - 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                a.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw ConfigError("bad numeric argument in covariance spec: " + item);
            }
        }
    }
    if (head == "diag") {
        Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(a.data(), static_cast<long>(a.size()));
        return diagonal(v);
    }
    if (head == "diag_uniform") {
        if (a.size() == 2) return uniform_diagonal(a[0], a[1], 0);
        if (a.size() == 3) return uniform_diagonal(a[0], a[1], static_cast<std::uint64_t>(a[2]));
        throw ConfigError("diag_uniform takes (lo,hi[,seed])");
    }
    throw ConfigError("unknown covariance spec: " + std::string(text));
}

std::string CovarianceSpec::to_string() const {
    switch (kind_) {
        case Kind::Identity:
            return "identity";
        case Kind::Diagonal: {
            std::string out = "diag(";
            for (int j = 0; j < entries_.size(); ++j) {
                if (j) out += ",";
                out += fmt(entries_[j]);
            }
            return out + ")";
        }
        case Kind::UniformDiagonal:
            return "diag_uniform(" + fmt(lo_) + "," + fmt(hi_) + "," +
                   std::to_string(seed_) + ")";
    }
    return {};
}

}  // namespace distreg
