#include "stigmergy/table_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stigmergy {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::invalid_argument("row width does not match the header");
    }
    rows.push_back(std::move(row));
}

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
    return std::string(buffer, result.ptr);
}

namespace {

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        cell);
}

}  // namespace

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out += (c == 0 ? "" : ",") + table.columns[c];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c != 0) {
                out += ',';
            }
            out += cell_text(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string to_json_rows(const Table& table) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json object;
        for (std::size_t c = 0; c < row.size(); ++c) {
            std::visit([&](const auto& v) { object[table.columns[c]] = v; }, row[c]);
        }
        rows.push_back(std::move(object));
    }
    return rows.dump(1) + "\n";
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& stem, TableFormat format) {
    std::filesystem::path path = stem;
    if (format == TableFormat::csv) {
        path += ".csv";
        write_text_file(path, to_csv(table));
    } else {
        path += ".json";
        write_text_file(path, to_json_rows(table));
    }
    return path;
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw io_error("cannot open " + path.string() + " for writing");
    }
    out << contents;
    if (!out.flush()) {
        throw io_error("failed writing " + path.string());
    }
}

NumericTable read_numeric_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot read " + path.string());
    }
    auto split = [](const std::string& line) {
        std::vector<std::string> fields;
        std::stringstream stream(line);
        std::string field;
        while (std::getline(stream, field, ',')) {
            if (!field.empty() && field.back() == '\r') {
                field.pop_back();
            }
            fields.push_back(field);
        }
        return fields;
    };

    std::string line;
    if (!std::getline(in, line)) {
        throw io_error(path.string() + " is empty");
    }
    NumericTable table;
    table.columns = split(line);
    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != table.columns.size()) {
            throw io_error(path.string() + ": row " + std::to_string(rows + 1) + " has the wrong number of fields");
        }
        for (const auto& field : fields) {
            double v = 0.0;
            const auto result = std::from_chars(field.data(), field.data() + field.size(), v);
            if (result.ec != std::errc() || result.ptr != field.data() + field.size()) {
                throw io_error(path.string() + ": non-numeric field '" + field + "'");
            }
            values.push_back(v);
        }
        ++rows;
    }
    table.values = Matrix(rows, table.columns.size(), std::move(values));
    return table;
}

}  // namespace stigmergy
