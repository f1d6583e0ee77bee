#include "lawpca/tabular_csv.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "lawpca/error.hpp"
#include "lawpca/number_format.hpp"

namespace lawpca {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_number(const std::string& text, const std::string& where) {
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InputError(where + ": cannot parse '" + text + "' as a number");
  }
  return v;
}

std::string at_line(const std::string& source, std::size_t line_no) {
  return source + ": line " + std::to_string(line_no);
}

}  // namespace

DataTable read_tabular_csv(std::istream& in, const std::string& source_name) {
  std::vector<std::string> header;
  std::optional<std::vector<double>> scales;
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  bool has_label_column = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("#scale:", 0) == 0) {
      if (!rows.empty()) {
        throw InputError(at_line(source_name, line_no) + ": #scale line must precede the data rows");
      }
      std::vector<double> s;
      for (const auto& cell : split_cells(line.substr(7))) {
        s.push_back(parse_number(cell, at_line(source_name, line_no)));
      }
      scales = std::move(s);
      continue;
    }
    if (line[0] == '#') continue;

    auto cells = split_cells(line);
    if (header.empty()) {
      has_label_column = !cells.empty() && cells[0] == "label";
      header.assign(cells.begin() + (has_label_column ? 1 : 0), cells.end());
      if (header.empty()) throw InputError(at_line(source_name, line_no) + ": header names no variables");
      for (const auto& h : header) {
        if (h.empty()) throw InputError(at_line(source_name, line_no) + ": empty variable name");
      }
      continue;
    }
    const std::size_t expected = header.size() + (has_label_column ? 1 : 0);
    if (cells.size() != expected) {
      throw InputError(at_line(source_name, line_no) + ": expected " + std::to_string(expected) +
                       " fields, got " + std::to_string(cells.size()));
    }
    std::vector<double> row;
    for (std::size_t c = has_label_column ? 1 : 0; c < cells.size(); ++c) {
      const std::string& name = header[c - (has_label_column ? 1 : 0)];
      row.push_back(parse_number(cells[c], at_line(source_name, line_no) + ", column '" + name + "'"));
    }
    if (has_label_column) labels.push_back(cells[0]);
    rows.push_back(std::move(row));
  }

  if (header.empty()) throw InputError(source_name + ": empty input (no header row)");
  if (rows.empty()) throw InputError(source_name + ": no data rows");
  if (scales && scales->size() != header.size()) {
    throw InputError(source_name + ": #scale line has " + std::to_string(scales->size()) +
                     " entries for " + std::to_string(header.size()) + " variables");
  }
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(header.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  try {
    return DataTable(std::move(header), std::move(values), scales.value_or(std::vector<double>{}),
                     std::move(labels));
  } catch (const InputError& e) {
    throw InputError(source_name + ": " + e.what());
  }
}

DataTable read_tabular_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_tabular_csv(in, path.string());
}

void write_tabular_csv(const DataTable& table, std::ostream& out) {
  const bool labels = !table.case_labels().empty();
  std::string line = labels ? "label," : "";
  for (std::size_t j = 0; j < table.variable_names().size(); ++j) {
    if (j > 0) line += ',';
    line += table.variable_names()[j];
  }
  out << line << '\n';
  line = "#scale: ";
  for (std::size_t j = 0; j < table.unit_scale().size(); ++j) {
    if (j > 0) line += ',';
    append_shortest(line, table.unit_scale()[j]);
  }
  out << line << '\n';
  for (Eigen::Index i = 0; i < table.n_cases(); ++i) {
    line.clear();
    if (labels) line += table.case_labels()[static_cast<std::size_t>(i)] + ',';
    for (Eigen::Index j = 0; j < table.n_variables(); ++j) {
      if (j > 0) line += ',';
      append_shortest(line, table.values()(i, j));
    }
    out << line << '\n';
  }
}

}  // namespace lawpca
