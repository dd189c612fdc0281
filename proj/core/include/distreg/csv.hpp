#pragma once

#include <string>
#include <vector>

#include "distreg/dataset.hpp"

namespace distreg {

// RFC-4180-style table: header row required, quoted fields may contain commas,
// doubled quotes escape a quote. Cells are kept as raw strings; numeric
// interpretation happens downstream.
struct CsvTable {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> rows;

    int cols() const { return static_cast<int>(names.size()); }
    long n_rows() const { return static_cast<long>(rows.size()); }

    static CsvTable parse(const std::string& text);
    static CsvTable read_file(const std::string& path);
};

std::string csv_quote(const std::string& field);
std::string format_double(double v);  // shortest round-trippable form

// Dataset export: columns y,x1..xp plus a sidecar JSON metadata file.
void write_dataset_csv(const Dataset& ds, const std::string& path);
std::string dataset_metadata_json(const Dataset& ds, std::uint64_t seed,
                                  const std::string& scale, const std::string& cov);
Dataset read_dataset_csv(const std::string& path, const PartitionPlan& plan, double sigma2);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace distreg
