#pragma once

#include <filesystem>
#include <string>

#include "slope/types.hpp"

namespace slope {

// Shortest exact decimal form (17 significant digits); the serialization
// side of the byte-reproducibility contract.
std::string format_double(double x);

// Write-then-rename so readers never observe partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// Comma-separated rows, no header; rejects ragged or non-numeric input.
Matrix read_matrix_csv(const std::filesystem::path& path);
std::string matrix_to_csv(const Matrix& m);

// One value per line; blank lines ignored.
Vector read_vector_file(const std::filesystem::path& path);
std::string vector_to_lines(const Vector& v);

}  // namespace slope
