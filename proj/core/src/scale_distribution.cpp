#include "distreg/scale_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "distreg/errors.hpp"

namespace distreg {

namespace {

constexpr double kWeightTol = 1e-12;

void check_atoms(const std::vector<std::pair<double, double>>& atoms) {
    if (atoms.empty()) throw ConfigError("scale distribution needs at least one atom");
    double total = 0.0;
    for (const auto& [w, s] : atoms) {
        if (w < 0.0) throw ConfigError("scale distribution: negative weight");
        if (!(s > 0.0)) throw ConfigError("scale distribution: atom scale must be positive");
        total += w;
    }
    if (std::abs(total - 1.0) > kWeightTol)
        throw ConfigError("scale distribution: weights must sum to 1");
}

}  // namespace

ScaleDistribution ScaleDistribution::point_mass(double scale) {
    ScaleDistribution g;
    g.kind_ = Kind::PointMass;
    g.atoms_ = {{1.0, scale}};
    check_atoms(g.atoms_);
    return g;
}

ScaleDistribution ScaleDistribution::two_point(double w1, double s1, double w2, double s2) {
    ScaleDistribution g;
    g.kind_ = Kind::TwoPoint;
    g.atoms_ = {{w1, s1}, {w2, s2}};
    check_atoms(g.atoms_);
    return g;
}

ScaleDistribution ScaleDistribution::uniform(double lo, double hi) {
    if (!(0.0 < lo && lo < hi))
        throw ConfigError("scale distribution: uniform requires 0 < lo < hi");
    ScaleDistribution g;
    g.kind_ = Kind::Uniform;
    g.lo_ = lo;
    g.hi_ = hi;
    return g;
}

ScaleDistribution ScaleDistribution::discrete(std::vector<std::pair<double, double>> atoms) {
    ScaleDistribution g;
    g.kind_ = Kind::Discrete;
    g.atoms_ = std::move(atoms);
    check_atoms(g.atoms_);
    return g;
}

double ScaleDistribution::mean() const {
    if (kind_ == Kind::Uniform) return 0.5 * (lo_ + hi_);
    double m = 0.0;
    for (const auto& [w, s] : atoms_) m += w * s;
    return m;
}

double ScaleDistribution::min_scale() const {
    if (kind_ == Kind::Uniform) return lo_;
    double m = std::numeric_limits<double>::infinity();
    for (const auto& [w, s] : atoms_)
        if (w > 0.0) m = std::min(m, s);
    return m;
}

double ScaleDistribution::max_scale() const {
    if (kind_ == Kind::Uniform) return hi_;
    double m = 0.0;
    for (const auto& [w, s] : atoms_)
        if (w > 0.0) m = std::max(m, s);
    return m;
}

double ScaleDistribution::eta(double x) const {
    if (x == 0.0) return 1.0;
    if (kind_ == Kind::Uniform) {
        // E[1/(1+xT)] over T ~ U[lo, hi]
        return std::log((1.0 + x * hi_) / (1.0 + x * lo_)) / (x * (hi_ - lo_));
    }
    double v = 0.0;
    for (const auto& [w, s] : atoms_) v += w / (1.0 + x * s);
    return v;
}

double ScaleDistribution::eta_derivative(double x) const {
    if (kind_ == Kind::Uniform) {
        // series around 0 avoids the 0/0 form of the closed expression
        if (x < 1e-7) {
            const double m1 = mean();
            const double m2 = (lo_ * lo_ + lo_ * hi_ + hi_ * hi_) / 3.0;
            return -m1 + 2.0 * m2 * x;
        }
        const double num = std::log((1.0 + x * hi_) / (1.0 + x * lo_));
        const double dnum = hi_ / (1.0 + x * hi_) - lo_ / (1.0 + x * lo_);
        return (dnum * x - num) / (x * x * (hi_ - lo_));
    }
    double v = 0.0;
    for (const auto& [w, s] : atoms_) {
        const double d = 1.0 + x * s;
        v -= w * s / (d * d);
    }
    return v;
}

double ScaleDistribution::fp_moment(double gamma, double e) const {
    if (e == 0.0) return 0.0;
    const double c = gamma * e;
    if (kind_ == Kind::Uniform) {
        // (1/(hi-lo)) * int_lo^hi t e/(1+c t) dt = (1/gamma)(1 - eta(c))
        return (1.0 - eta(c)) / gamma;
    }
    double v = 0.0;
    for (const auto& [w, s] : atoms_) v += w * s * e / (1.0 + c * s);
    return v;
}

double ScaleDistribution::fp_moment_derivative(double gamma, double e) const {
    const double c = gamma * e;
    if (kind_ == Kind::Uniform) {
        // d/de E[Te/(1+gamma Te)] = E[T/(1+gamma Te)^2] = -eta'(c)  (in closed form)
        return -eta_derivative(c);
    }
    double v = 0.0;
    for (const auto& [w, s] : atoms_) {
        const double d = 1.0 + c * s;
        v += w * s / (d * d);
    }
    return v;
}

double ScaleDistribution::sample(Rng& rng) const {
    if (kind_ == Kind::Uniform) return rng.next_uniform(lo_, hi_);
    if (atoms_.size() == 1) return atoms_.front().second;
    const double u = rng.next_unit();
    double acc = 0.0;
    for (const auto& [w, s] : atoms_) {
        acc += w;
        if (u < acc) return s;
    }
    return atoms_.back().second;
}

namespace {

std::vector<double> parse_args(std::string_view text, std::string_view name) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open)
        throw ConfigError("malformed scale distribution: " + std::string(text));
    std::string args(text.substr(open + 1, close - open - 1));
    std::vector<double> out;
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("bad numeric argument in " + std::string(name) + ": " + item);
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ScaleDistribution ScaleDistribution::parse(std::string_view text) {
    std::string head(text.substr(0, text.find('(')));
    std::erase_if(head, [](char c) { return c == ' ' || c == '\t'; });
    std::transform(head.begin(), head.end(), head.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const std::vector<double> a = parse_args(text, head);
    if (head == "pointmass") {
        if (a.size() != 1) throw ConfigError("pointmass takes one argument");
        return point_mass(a[0]);
    }
    if (head == "twopoint") {
        if (a.size() != 4) throw ConfigError("twopoint takes (w1,s1,w2,s2)");
        return two_point(a[0], a[1], a[2], a[3]);
    }
    if (head == "uniform") {
        if (a.size() != 2) throw ConfigError("uniform takes (lo,hi)");
        return uniform(a[0], a[1]);
    }
    if (head == "discrete") {
        if (a.size() < 2 || a.size() % 2 != 0)
            throw ConfigError("discrete takes (w1,s1,w2,s2,...)");
        std::vector<std::pair<double, double>> atoms;
        for (std::size_t i = 0; i < a.size(); i += 2) atoms.emplace_back(a[i], a[i + 1]);
        return discrete(std::move(atoms));
    }
    throw ConfigError("unknown scale distribution: " + std::string(text));
}

std::string ScaleDistribution::to_string() const {
    switch (kind_) {
        case Kind::PointMass:
            return "pointmass(" + fmt(atoms_[0].second) + ")";
        case Kind::TwoPoint:
            return "twopoint(" + fmt(atoms_[0].first) + "," + fmt(atoms_[0].second) + "," +
                   fmt(atoms_[1].first) + "," + fmt(atoms_[1].second) + ")";
        case Kind::Uniform:
            return "uniform(" + fmt(lo_) + "," + fmt(hi_) + ")";
        case Kind::Discrete: {
            std::string out = "discrete(";
            for (std::size_t i = 0; i < atoms_.size(); ++i) {
                if (i) out += ",";
                out += fmt(atoms_[i].first) + "," + fmt(atoms_[i].second);
            }
            return out + ")";
        }
    }
    return {};
}

double eta_transform(const ScaleDistribution& g, double x) {
    if (x < 0.0) throw ConfigError("eta transform requires x >= 0");
    return g.eta(x);
}

}  // namespace distreg
