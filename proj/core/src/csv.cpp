#include "distreg/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "distreg/errors.hpp"

namespace distreg {

namespace {

// splits one logical CSV record stream into fields, honoring quotes
class CsvLexer {
public:
    explicit CsvLexer(const std::string& text) : text_(text) {}

    bool done() const { return pos_ >= text_.size(); }

    std::vector<std::string> next_record() {
        std::vector<std::string> fields;
        std::string field;
        bool quoted = false;
        while (pos_ < text_.size()) {
            const char c = text_[pos_++];
            if (quoted) {
                if (c == '"') {
                    if (pos_ < text_.size() && text_[pos_] == '"') {
                        field += '"';
                        ++pos_;
                    } else {
                        quoted = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(std::move(field));
                field.clear();
            } else if (c == '\n') {
                break;
            } else if (c != '\r') {
                field += c;
            }
        }
        if (quoted) throw ConfigError("csv: unterminated quoted field");
        fields.push_back(std::move(field));
        return fields;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

CsvTable CsvTable::parse(const std::string& text) {
    if (text.empty()) throw ConfigError("csv: empty input");
    CsvTable table;
    CsvLexer lexer(text);
    table.names = lexer.next_record();
    if (table.names.empty()) throw ConfigError("csv: missing header");
    while (!lexer.done()) {
        std::vector<std::string> row = lexer.next_record();
        if (row.size() == 1 && row[0].empty()) continue;  // blank line
        if (row.size() != table.names.size())
            throw ConfigError("csv: row has " + std::to_string(row.size()) +
                              " fields, header has " + std::to_string(table.names.size()));
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable CsvTable::read_file(const std::string& path) {
    return parse(read_text_file(path));
}

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    return out + "\"";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_dataset_csv(const Dataset& ds, const std::string& path) {
    std::string out = "y";
    for (int j = 1; j <= ds.p(); ++j) out += ",x" + std::to_string(j);
    out += "\n";
    for (int i = 0; i < ds.n(); ++i) {
        out += format_double(ds.Y[i]);
        for (int j = 0; j < ds.p(); ++j) out += "," + format_double(ds.X(i, j));
        out += "\n";
    }
    write_text_file(path, out);
}

std::string dataset_metadata_json(const Dataset& ds, std::uint64_t seed,
                                  const std::string& scale, const std::string& cov) {
    nlohmann::json j;
    j["seed"] = seed;
    j["n"] = ds.n();
    j["p"] = ds.p();
    j["sigma2"] = ds.sigma2;
    j["scale"] = scale;
    j["cov"] = cov;
    j["partition_sizes"] = ds.partition.sizes;
    if (ds.beta_true)
        j["beta"] = std::vector<double>(ds.beta_true->data(),
                                        ds.beta_true->data() + ds.beta_true->size());
    return j.dump(2) + "\n";
}

Dataset read_dataset_csv(const std::string& path, const PartitionPlan& plan, double sigma2) {
    const CsvTable table = CsvTable::read_file(path);
    if (table.names.empty() || table.names[0] != "y")
        throw ConfigError("dataset csv: first column must be y");
    const int p = table.cols() - 1;
    const long n = table.n_rows();
    if (n != plan.n || p != plan.p)
        throw ConfigError("dataset csv: dimensions do not match the partition");
    Dataset ds;
    ds.X.resize(n, p);
    ds.Y.resize(n);
    for (long i = 0; i < n; ++i) {
        try {
            ds.Y[i] = std::stod(table.rows[i][0]);
            for (int j = 0; j < p; ++j) ds.X(i, j) = std::stod(table.rows[i][j + 1]);
        } catch (const std::exception&) {
            throw ConfigError("dataset csv: non-numeric value in row " + std::to_string(i + 2));
        }
    }
    ds.sigma2 = sigma2;
    ds.partition = plan;
    ds.validate();
    return ds;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << text;
    if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace distreg
