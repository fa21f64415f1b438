#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "eigenpower/linalg.hpp"

namespace eigenpower {

// Matrix file: {"n": int, "entries": [[re, im], ...]} row-major, n*n pairs.
// Numbers are written with 17 significant digits so files round-trip exactly.
std::string matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(std::string_view text);

// Throws FileNotFound / ParseError / IoError.
ComplexMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m);

// Writes `contents` to a sibling temporary file and renames it into place, so
// readers never observe a partially written file.
void write_file_atomically(const std::filesystem::path& path, const std::string& contents);

// %.17g rendering shared by every writer in the project.
std::string format_double(double value);

}  // namespace eigenpower
