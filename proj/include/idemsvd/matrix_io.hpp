#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "idemsvd/matrix.hpp"

namespace idemsvd {

// Text interchange format:
//
//   # optional comment lines start with '#'
//   rows cols
//   re im  re im  ...        (rows*cols pairs, row-major, any whitespace)
//
// Numbers may be decimal or scientific. Writers emit 17 significant digits so
// that a write/read cycle is loss-free.

Matrix parse_matrix(std::string_view text);
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::filesystem::path& path);

std::string format_matrix(const Matrix& m, std::string_view comment = {});
void write_matrix(std::ostream& out, const Matrix& m, std::string_view comment = {});
void write_matrix_file(const std::filesystem::path& path, const Matrix& m, std::string_view comment = {});

}  // namespace idemsvd
