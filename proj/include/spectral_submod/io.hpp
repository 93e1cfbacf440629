// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//
// Matrix files (JSON and CSV) and the JSON run report.
//
// JSON matrix:  {"dim": m, "field": "real"|"complex", "entries": [[re, im], ...]}
//               with m*m entries in row-major order.
// CSV matrix:   m lines of m comma-separated real numbers.
//

#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "spectral_submod/extended_real.hpp"
#include "spectral_submod/hermitian.hpp"
#include "spectral_submod/index_set.hpp"
#include "spectral_submod/matrix.hpp"
#include "spectral_submod/mmatrix.hpp"

namespace spectral_submod {

using Json = nlohmann::json;

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

enum class MatrixFormat { kJson, kCsv };
enum class ExpectedClass { kHermitian, kGeneral, kNonnegative, kMMatrix };

struct MatrixFile {
  MatrixFormat format = MatrixFormat::kJson;
  bool complex_field = false;
  ComplexMatrix values;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline std::string location(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col) + " (offset " +
         std::to_string(offset) + ")";
}

inline std::string entry_name(std::size_t i, std::size_t j) {
  return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline MatrixFile parse_matrix_json(std::string_view text, const std::string& origin = "<json>") {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(origin + ": " + detail::location(text, offset) + ": malformed JSON");
  }
  auto fail = [&](const std::string& what) { throw ParseError(origin + ": " + what); };
  if (!doc.is_object()) fail("expected a JSON object");
  for (const char* key : {"dim", "entries", "field"})
    if (!doc.contains(key)) fail(std::string("missing field \"") + key + "\"");
  if (!doc["dim"].is_number_unsigned()) fail("\"dim\" must be a nonnegative integer");
  const std::size_t m = doc["dim"].get<std::size_t>();
  const Json& field = doc["field"];
  if (!field.is_string() || (field != "real" && field != "complex"))
    fail("\"field\" must be \"real\" or \"complex\"");
  const Json& entries = doc["entries"];
  if (!entries.is_array()) fail("\"entries\" must be an array");
  if (entries.size() != m * m)
    fail("\"entries\" has " + std::to_string(entries.size()) + " items, expected dim^2 = " +
         std::to_string(m * m));
  MatrixFile out;
  out.format = MatrixFormat::kJson;
  out.complex_field = field == "complex";
  out.values = ComplexMatrix(m, m);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Json& e = entries[k];
    const std::string where = "entries[" + std::to_string(k) + "] (" +
                              detail::entry_name(k / std::max<std::size_t>(m, 1), k % std::max<std::size_t>(m, 1)) + ")";
    double re = 0.0;
    double im = 0.0;
    if (e.is_number()) {
      re = e.get<double>();
    } else if (e.is_array() && (e.size() == 2 || e.size() == 1) && e[0].is_number() &&
               (e.size() == 1 || e[1].is_number())) {
      re = e[0].get<double>();
      if (e.size() == 2) im = e[1].get<double>();
    } else {
      fail(where + ": expected [re, im]");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) fail(where + ": non-finite value");
    if (!out.complex_field && im != 0.0) fail(where + ": nonzero imaginary part in a real matrix");
    out.values(k / m, k % m) = cplx(re, im);
  }
  return out;
}

inline MatrixFile parse_matrix_csv(std::string_view text, const std::string& origin = "<csv>") {
  std::vector<std::vector<double>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const bool blank = line.find_first_not_of(" \t") == std::string_view::npos;
    if (!blank) {
      std::vector<double> row;
      std::size_t cell = 0;
      while (true) {
        std::size_t comma = line.find(',', cell);
        if (comma == std::string_view::npos) comma = line.size();
        std::size_t a = cell;
        std::size_t b = comma;
        while (a < b && std::isspace(static_cast<unsigned char>(line[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(line[b - 1]))) --b;
        double v = 0.0;
        const char* first = line.data() + a;
        const char* last = line.data() + b;
        if (!line.empty() && first != last && *first == '+') ++first;
        const auto res = std::from_chars(first, last, v);
        if (a == b || res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
          throw ParseError(origin + ": " + detail::location(text, pos + a) +
                           ": expected a real number");
        row.push_back(v);
        if (comma == line.size()) break;
        cell = comma + 1;
      }
      rows.push_back(std::move(row));
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  const std::size_t m = rows.size();
  for (std::size_t i = 0; i < m; ++i)
    if (rows[i].size() != m)
      throw ParseError(origin + ": row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " values, expected " + std::to_string(m));
  MatrixFile out;
  out.format = MatrixFormat::kCsv;
  out.values = ComplexMatrix(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.values(i, j) = rows[i][j];
  return out;
}

// Format from the extension, falling back to the first non-blank character.
inline MatrixFile read_matrix_file(const std::string& path) {
  const std::string text = detail::read_file(path);
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  if (ends_with(".json")) return parse_matrix_json(text, path);
  if (ends_with(".csv")) return parse_matrix_csv(text, path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_matrix_json(text, path);
  return parse_matrix_csv(text, path);
}

inline RealMatrix real_part_checked(const MatrixFile& f, const std::string& origin) {
  const std::size_t m = f.values.rows();
  RealMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (f.values(i, j).imag() != 0.0)
        throw ValidationError(origin + ": " + detail::entry_name(i, j) +
                              " is complex; a real matrix is required");
      out(i, j) = f.values(i, j).real();
    }
  return out;
}

// Validated matrix of the requested class.
struct LoadedMatrix {
  ExpectedClass expected = ExpectedClass::kGeneral;
  MatrixFile file;

  HermitianMatrix hermitian() const { return HermitianMatrix(file.values); }
  const ComplexMatrix& general() const { return file.values; }
  RealMatrix real() const { return real_part_checked(file, "matrix"); }
};

inline void validate_matrix(const MatrixFile& f, ExpectedClass expected,
                            const std::string& origin) {
  const ComplexMatrix& a = f.values;
  const std::size_t m = a.rows();
  switch (expected) {
    case ExpectedClass::kGeneral:
      return;
    case ExpectedClass::kHermitian: {
      const double tol = 1e-9 * std::max(1.0, entrywise_max_norm(a));
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
          if (std::abs(a(i, j) - std::conj(a(j, i))) > tol)
            throw ValidationError(origin + ": not hermitian at " + detail::entry_name(i, j) +
                                  ": " + detail::format_double(a(i, j).real()) + "," +
                                  detail::format_double(a(i, j).imag()) + " vs conj of " +
                                  detail::entry_name(j, i));
      return;
    }
    case ExpectedClass::kNonnegative: {
      const RealMatrix r = real_part_checked(f, origin);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (r(i, j) < 0.0)
            throw ValidationError(origin + ": negative " + detail::entry_name(i, j) + " = " +
                                  detail::format_double(r(i, j)));
      return;
    }
    case ExpectedClass::kMMatrix: {
      const RealMatrix r = real_part_checked(f, origin);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          if (i != j && r(i, j) > 0.0)
            throw ValidationError(origin + ": positive off-diagonal " + detail::entry_name(i, j) +
                                  " = " + detail::format_double(r(i, j)) + "; not an M-matrix");
      try {
        validate_and_split(r);
      } catch (const Error& e) {
        throw ValidationError(origin + ": " + e.what());
      }
      return;
    }
  }
}

inline LoadedMatrix parse_matrix(const std::string& path, ExpectedClass expected) {
  LoadedMatrix out;
  out.expected = expected;
  out.file = read_matrix_file(path);
  validate_matrix(out.file, expected, path);
  return out;
}

inline Json matrix_to_json(const ComplexMatrix& a, bool complex_field) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      entries.push_back(Json::array({a(i, j).real(), complex_field ? a(i, j).imag() : 0.0}));
  return Json{{"dim", a.rows()}, {"field", complex_field ? "complex" : "real"}, {"entries", entries}};
}

inline bool is_real(const ComplexMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j).imag() != 0.0) return false;
  return true;
}

inline std::string write_matrix_json(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionError("matrix files hold square matrices");
  return matrix_to_json(a, !is_real(a)).dump(2) + "\n";
}

inline std::string write_matrix_csv(const RealMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) out += ',';
      out += detail::format_double(a(i, j));
    }
    out += '\n';
  }
  return out;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(path + ": cannot write file");
  out << text;
  if (!out) throw Error(path + ": write failed");
}

// FNV-1a, 64 bit.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Digest of the canonical (key-sorted, compact) serialization.
inline std::string digest(const Json& inputs) { return hex64(fnv1a64(inputs.dump())); }

inline Json to_json(const ExtendedReal& x) {
  if (x.is_finite()) return x.value();
  if (std::isnan(x.value())) return "nan";
  return x.value() > 0 ? "+inf" : "-inf";
}

inline ExtendedReal extended_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j == "+inf") return ExtendedReal::pos_inf();
  if (j == "-inf") return ExtendedReal::neg_inf();
  throw ParseError("expected a number, \"+inf\" or \"-inf\"");
}

// One-based index list, as printed by IndexSet::to_string.
inline Json to_json(const IndexSet& s) {
  Json out = Json::array();
  for (std::size_t i : s.indices()) out.push_back(i + 1);
  return out;
}

inline IndexSet index_set_from_json(std::size_t dim, const Json& j) {
  std::vector<std::size_t> idx;
  for (const Json& v : j) {
    const auto k = v.get<std::size_t>();
    if (k < 1) throw ParseError("indices are one-based");
    idx.push_back(k - 1);
  }
  return IndexSet(dim, idx);
}

// Parses "1,3,4" (one-based) into an index set.
inline IndexSet parse_index_list(std::size_t dim, const std::string& text) {
  std::vector<std::size_t> idx;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos || v < 1)
      throw ParseError("bad index '" + item + "' (indices are one-based)");
    idx.push_back(static_cast<std::size_t>(v - 1));
  }
  return IndexSet(dim, idx);
}

struct Report {
  std::string schema_version = "1";
  std::string command;
  std::string inputs_digest;
  Json inputs = Json::object();
  Json results = Json::object();
  Json witnesses = Json::array();
  std::map<std::string, double> timings_ms;

  bool operator==(const Report&) const = default;
};

inline Json to_json(const Report& r) {
  Json timings = Json::object();
  for (const auto& [k, v] : r.timings_ms) timings[k] = v;
  return Json{{"schema_version", r.schema_version},
              {"command", r.command},
              {"inputs_digest", r.inputs_digest},
              {"inputs", r.inputs},
              {"results", r.results},
              {"witnesses", r.witnesses},
              {"timings_ms", timings}};
}

inline Report report_from_json(const Json& j) {
  Report r;
  try {
    r.schema_version = j.at("schema_version").get<std::string>();
    r.command = j.at("command").get<std::string>();
    r.inputs_digest = j.at("inputs_digest").get<std::string>();
    r.inputs = j.at("inputs");
    r.results = j.at("results");
    r.witnesses = j.at("witnesses");
    for (const auto& [k, v] : j.at("timings_ms").items()) r.timings_ms[k] = v.get<double>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

inline std::string serialize(const Report& r) { return to_json(r).dump(2) + "\n"; }

inline Report parse_report(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed report JSON: ") + e.what());
  }
  return report_from_json(j);
}

}  // namespace spectral_submod
