#include "eigenpower/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "eigenpower/error.hpp"

namespace eigenpower {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  std::string out = "{\"n\": " + std::to_string(m.dim()) + ", \"entries\": [";
  bool first = true;
  for (const auto& e : m.entries()) {
    if (!first) out += ", ";
    first = false;
    out += "[" + format_double(e.real()) + ", " + format_double(e.imag()) + "]";
  }
  out += "]}\n";
  return out;
}

ComplexMatrix matrix_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("matrix file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("entries")) {
    throw Error(ErrorCode::kParseError, "matrix file needs \"n\" and \"entries\" fields");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw Error(ErrorCode::kParseError, "\"n\" must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const auto& entries = doc["entries"];
  if (!entries.is_array()) throw Error(ErrorCode::kParseError, "\"entries\" must be an array");
  if (entries.size() != n * n) {
    throw Error(ErrorCode::kNotSquare, "\"entries\" has " + std::to_string(entries.size()) +
                                           " elements, expected n*n = " + std::to_string(n * n));
  }
  std::vector<Complex> values;
  values.reserve(n * n);
  for (const auto& e : entries) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw Error(ErrorCode::kParseError, "each entry must be a [re, im] pair of numbers");
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return ComplexMatrix(n, std::move(values));
}

ComplexMatrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFileNotFound, "cannot open matrix file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return matrix_from_json(buffer.str());
}

void write_file_atomically(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    out << contents;
    if (!out) throw Error(ErrorCode::kIoError, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move output into place at " + path.string());
  }
}

void write_matrix_file(const std::filesystem::path& path, const ComplexMatrix& m) {
  write_file_atomically(path, matrix_to_json(m));
}

}  // namespace eigenpower
