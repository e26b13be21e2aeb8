// QDM (density matrix) and QENS (ensemble) text formats.
//
//   qdm 1
//   dims <d_a> <d_b>
//   <(d_a d_b)^2 entries, row-major, each "re im">
//
//   qens 1
//   dims <d_a> <d_b>
//   states <k>
//   state <p> <d_a d_b amplitudes, each "re im">     (k times)
//
// Tokens are whitespace separated (newlines included); '#' starts a comment
// that runs to the end of the line.

#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eoa/quantum.hpp"

namespace eoa {

/// Malformed text. Carries the 1-based position of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Entry count disagrees with the declared dims.
class DimensionMismatchError : public ParseError {
 public:
  using ParseError::ParseError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses and validates (Hermiticity, trace, positivity -> ValidationError).
DensityMatrix parse_qdm(std::string_view text);
/// Uses 17 significant digits so parse_qdm(write_qdm(x)) reproduces x exactly.
std::string write_qdm(const DensityMatrix& rho);

Ensemble parse_qens(std::string_view text);
std::string write_qens(const Ensemble& e);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace eoa
