#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include "lawpca/data_table.hpp"

namespace lawpca {

// Tabular input format:
//   - first non-comment line: header of variable names
//   - optional "#scale: s1,s2,..." line (anywhere before the first data row)
//     with one positive unit scale per variable
//   - other lines starting with '#' and blank lines are ignored
//   - a first header cell named "label" marks a text column of case labels
// Errors are InputError with "line N:" prefixes.

DataTable read_tabular_csv(std::istream& in, const std::string& source_name = "<input>");
DataTable read_tabular_csv(const std::filesystem::path& path);

void write_tabular_csv(const DataTable& table, std::ostream& out);

}  // namespace lawpca
