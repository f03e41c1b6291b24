#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "stigmergy/experiment_config.hpp"
#include "stigmergy/matrix.hpp"

namespace stigmergy {

using Cell = std::variant<std::int64_t, std::uint64_t, double, std::string>;

/// Column-ordered table written as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// 17 significant digits, shortest of %e / %f style, '.' decimal point.
std::string format_double(double value);

/// Header row plus one line per row, LF line endings.
std::string to_csv(const Table& table);
std::string to_json_rows(const Table& table);

/// Writes `stem`.csv or `stem`.json depending on the format; returns the path.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& stem, TableFormat format);

/// Throws io_error on failure.
void write_text_file(const std::filesystem::path& path, const std::string& contents);

struct NumericTable {
    std::vector<std::string> columns;
    Matrix values;
};

/// Comma-separated numeric file with a header row.
NumericTable read_numeric_csv(const std::filesystem::path& path);

}  // namespace stigmergy
