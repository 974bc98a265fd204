#include "trinorm/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

namespace trinorm {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (*first == '+') ++first; // from_chars rejects a leading plus
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && std::isfinite(out);
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) rows.push_back(split_line(line));
    if (rows.empty()) throw Error("'" + path + "': file is empty");

    const std::size_t ncols = rows.front().size();
    for (std::size_t r = 0; r < rows.size(); ++r)
        if (rows[r].size() != ncols)
            throw Error("'" + path + "': row " + std::to_string(r + 1) +
                        " has " + std::to_string(rows[r].size()) +
                        " columns, expected " + std::to_string(ncols));

    // A non-numeric first row is the header.
    CsvTable table;
    std::size_t first_data = 0;
    {
        double tmp;
        bool numeric = true;
        for (const auto& cell : rows[0])
            if (!parse_double(cell, tmp)) {
                numeric = false;
                break;
            }
        if (!numeric) {
            table.header = rows[0];
            first_data = 1;
        }
    }

    const std::size_t nrows = rows.size() - first_data;
    table.values.resize(static_cast<Index>(nrows), static_cast<Index>(ncols));
    for (std::size_t r = 0; r < nrows; ++r)
        for (std::size_t c = 0; c < ncols; ++c) {
            double v;
            if (!parse_double(rows[r + first_data][c], v))
                throw Error("'" + path + "': row " +
                            std::to_string(r + first_data + 1) + ", column " +
                            std::to_string(c + 1) + ": '" +
                            rows[r + first_data][c] + "' is not a number");
            table.values(static_cast<Index>(r), static_cast<Index>(c)) = v;
        }
    return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const DataMatrix& values) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c) out << ',';
        out << header[c];
    }
    out << '\n';
    for (Index r = 0; r < values.rows(); ++r) {
        for (Index c = 0; c < values.cols(); ++c) {
            if (c) out << ',';
            out << format_double(values(r, c));
        }
        out << '\n';
    }
    if (!out) throw Error("failed writing '" + path + "'");
}

} // namespace trinorm
