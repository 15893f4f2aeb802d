#include "detvar/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace detvar {

namespace {

std::string position_message(const std::string& file, int line, int column,
                             const std::string& what) {
  std::ostringstream msg;
  msg << file << ":" << line << ":" << column << ": " << what;
  return msg.str();
}

bool is_csv(const std::filesystem::path& path) {
  return path.extension() == ".csv";
}

double parse_cell(const std::string& token, const std::string& file, int line,
                  int column) {
  std::size_t consumed = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &consumed);
  } catch (const std::exception&) {
    throw ParseError(file, line, column, "expected a number, got '" + token + "'");
  }
  if (consumed != token.size()) {
    throw ParseError(file, line, column,
                     "trailing characters after number: '" + token + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(file, line, column, "non-finite entry '" + token + "'");
  }
  return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  cells.push_back(current);
  for (auto& cell : cells) {
    const auto begin = cell.find_first_not_of(" \t\r");
    const auto end = cell.find_last_not_of(" \t\r");
    cell = begin == std::string::npos ? "" : cell.substr(begin, end - begin + 1);
  }
  return cells;
}

Matrix read_csv(std::istream& in, const std::string& file) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (cells[j].empty()) {
        throw ParseError(file, line_no, static_cast<int>(j + 1), "empty cell");
      }
      row.push_back(parse_cell(cells[j], file, line_no, static_cast<int>(j + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(file, line_no, 1,
                       "row has " + std::to_string(row.size()) +
                           " entries, expected " +
                           std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    throw ParseError(file, 1, 1, "empty matrix file");
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

Matrix read_whitespace(std::istream& in, const std::string& file) {
  std::string header;
  if (!std::getline(in, header)) {
    throw ParseError(file, 1, 1, "missing 'rows cols' header line");
  }
  std::istringstream header_stream(header);
  long long rows = 0;
  long long cols = 0;
  if (!(header_stream >> rows >> cols) || rows <= 0 || cols <= 0) {
    throw ParseError(file, 1, 1,
                     "header must be two positive integers 'rows cols'");
  }
  std::string trailing;
  if (header_stream >> trailing) {
    throw ParseError(file, 1, 1, "unexpected text after 'rows cols' header");
  }
  Matrix m(rows, cols);
  std::string line;
  int line_no = 1;
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw ParseError(file, line_no + 1, 1,
                       "unexpected end of file: expected " +
                           std::to_string(rows) + " rows");
    }
    ++line_no;
    std::istringstream row_stream(line);
    std::string token;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(row_stream >> token)) {
        throw ParseError(file, line_no, static_cast<int>(j + 1),
                         "row has fewer than " + std::to_string(cols) +
                             " entries");
      }
      m(i, j) = parse_cell(token, file, line_no, static_cast<int>(j + 1));
    }
    if (row_stream >> token) {
      throw ParseError(file, line_no, static_cast<int>(cols + 1),
                       "row has more than " + std::to_string(cols) +
                           " entries");
    }
  }
  return m;
}

}  // namespace

ParseError::ParseError(std::string file, int line, int column,
                       const std::string& what)
    : std::runtime_error(position_message(file, line, column, what)),
      file_(std::move(file)),
      line_(line),
      column_(column) {}

Matrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, 0, "cannot open file");
  }
  return is_csv(path) ? read_csv(in, path.string())
                      : read_whitespace(in, path.string());
}

std::string format_scalar(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void write_matrix(const std::filesystem::path& path, const Matrix& m) {
  check_finite(m, "write_matrix");
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("write_matrix: cannot open " + path.string());
  }
  const bool csv = is_csv(path);
  const char* sep = csv ? "," : " ";
  if (!csv) {
    out << m.rows() << " " << m.cols() << "\n";
  }
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << sep;
      out << format_scalar(m(i, j));
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("write_matrix: write failed for " + path.string());
  }
}

}  // namespace detvar
