#include "distreg/result_table.hpp"

#include <json.hpp>

#include "distreg/csv.hpp"

namespace distreg {

namespace {

std::string cell_long(const std::optional<long>& v) {
    return v ? std::to_string(*v) : std::string();
}

std::string cell_double(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

}  // namespace

std::string ResultTable::csv_header() {
    return "experiment,method,metric,n,p,k,gamma,rho,alpha,c,g_t,tau,round,replicate,seed,value";
}

std::string ResultTable::to_csv() const {
    std::string out = csv_header() + "\n";
    for (const ResultRow& r : rows) {
        out += csv_quote(r.experiment) + ',' + csv_quote(r.method) + ',' + csv_quote(r.metric) +
               ',' + cell_long(r.n) + ',' + cell_long(r.p) + ',' + cell_long(r.k) + ',' +
               cell_double(r.gamma) + ',' + cell_double(r.rho) + ',' + cell_double(r.alpha) +
               ',' + cell_double(r.c) + ',' + cell_double(r.g_t) + ',' + cell_double(r.tau) +
               ',' + cell_long(r.round) + ',' + cell_long(r.replicate) + ',' +
               std::to_string(r.seed) + ',' + format_double(r.value) + '\n';
    }
    return out;
}

std::string ResultTable::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json j;
        j["experiment"] = r.experiment;
        if (!r.method.empty()) j["method"] = r.method;
        j["metric"] = r.metric;
        if (r.n) j["n"] = *r.n;
        if (r.p) j["p"] = *r.p;
        if (r.k) j["k"] = *r.k;
        if (r.gamma) j["gamma"] = *r.gamma;
        if (r.rho) j["rho"] = *r.rho;
        if (r.alpha) j["alpha"] = *r.alpha;
        if (r.c) j["c"] = *r.c;
        if (r.g_t) j["g_t"] = *r.g_t;
        if (r.tau) j["tau"] = *r.tau;
        if (r.round) j["round"] = *r.round;
        if (r.replicate) j["replicate"] = *r.replicate;
        j["seed"] = r.seed;
        j["value"] = r.value;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

}  // namespace distreg
