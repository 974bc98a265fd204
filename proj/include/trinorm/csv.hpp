#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trinorm/types.hpp"

namespace trinorm {

struct CsvTable {
    std::optional<std::vector<std::string>> header;
    DataMatrix values; // may have 0 rows (header-only file)
};

// Comma-separated, decimal point, no locale. A non-numeric first row is
// treated as the header. Parse failures throw Error naming the 1-based
// row and column.
CsvTable read_csv(const std::string& path);

// Writes with 17 significant digits so values round-trip bit-exactly.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const DataMatrix& values);

std::string format_double(double v);

} // namespace trinorm
