#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "detvar/linalg.hpp"

namespace detvar {

/// Parse failure with file position, for CLI diagnostics.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string file, int line, int column, const std::string& what);

  const std::string& file() const noexcept { return file_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string file_;
  int line_;
  int column_;
};

/// Reads a matrix file. Files ending in `.csv` are comma-separated rows with
/// no header; anything else starts with a `rows cols` line followed by `rows`
/// lines of whitespace-separated entries. Non-finite entries are rejected.
Matrix read_matrix(const std::filesystem::path& path);

/// Writes in the format implied by the extension, 17 significant digits.
void write_matrix(const std::filesystem::path& path, const Matrix& m);

/// Formats one value the way the writers do (17 significant digits).
std::string format_scalar(double value);

}  // namespace detvar
