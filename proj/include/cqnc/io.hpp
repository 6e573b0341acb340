#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cqnc {

// Long-format numeric table with stable column names.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row) { rows.push_back(std::move(row)); }
};

void write_csv(const Table& table, std::ostream& out);
void write_jsonl(const Table& table, std::ostream& out);

// Minimal polyline chart for quick inspection (x = first column,
// y = chosen column, one polyline per value of the group column if any).
std::string render_svg(const Table& table, const std::string& x_col,
                       const std::string& y_col, const std::string& group_col,
                       bool log_y);

}  // namespace cqnc
