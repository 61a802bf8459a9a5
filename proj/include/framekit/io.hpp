#pragma once

// Frame and matrix files.
//
// Frame JSON:   {"dim": d, "field": "real"|"complex", "vectors": [[d scalars], ...],
//                "blocks": N (optional)}
// Matrix JSON:  {"rows": r, "cols": c, "field": ..., "entries": [[c scalars], ...]}
// Complex scalars are [re, im] pairs. CSV holds real values only: a frame CSV
// is d rows by m columns (column i = vector i), a matrix CSV is r rows by c
// columns. Doubles are written in shortest round-trip form, so values survive
// write/read bit-exactly.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "framekit/constructions.hpp"
#include "framekit/frame.hpp"

namespace framekit {

using json = nlohmann::json;

struct FrameFile {
  Frame frame;
  std::optional<Index> blocks;

  std::optional<BlockStructure> structure() const {
    if (!blocks) return std::nullopt;
    return BlockStructure(*blocks);
  }
};

namespace detail {

inline std::string line_context(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": JSON parse error at " + line_context(text, e.byte) + ": " +
                     e.what());
  }
}

inline Scalar scalar_from_json(const json& v, bool complex, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (complex && v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw InputError(where + ": expected " + (complex ? "a number or [re, im] pair" : "a number"));
}

inline json scalar_to_json(const Scalar& z, bool complex) {
  if (complex) return json::array({z.real(), z.imag()});
  return z.real();
}

inline bool parse_field(const json& doc, const std::string& source) {
  if (!doc.contains("field")) return false;
  const auto& f = doc.at("field");
  if (f == "real") return false;
  if (f == "complex") return true;
  throw InputError(source + ": \"field\" must be \"real\" or \"complex\"");
}

inline Index require_count(const json& doc, const char* key, const std::string& source) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<long long>() < 0) {
    throw InputError(source + ": missing or invalid non-negative integer \"" + key + "\"");
  }
  return static_cast<Index>(doc.at(key).get<long long>());
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline std::vector<std::vector<double>> parse_csv(const std::string& text,
                                                  const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    std::size_t col = 0;
    while (std::getline(cells, cell, ',')) {
      ++col;
      const auto first = cell.find_first_not_of(" \t");
      const auto last = cell.find_last_not_of(" \t");
      const std::string trimmed =
          first == std::string::npos ? std::string() : cell.substr(first, last - first + 1);
      char* end = nullptr;
      const double v = std::strtod(trimmed.c_str(), &end);
      if (trimmed.empty() || end != trimmed.c_str() + trimmed.size()) {
        throw InputError(source + ": line " + std::to_string(line_no) + ", field " +
                         std::to_string(col) + ": not a number: '" + trimmed + "'");
      }
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InputError(source + ": line " + std::to_string(line_no) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source + ": empty CSV");
  return rows;
}

inline Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

inline std::string format_double(double v) {
  // Shortest round-trip form, same as the JSON writer.
  return json(v).dump();
}

inline std::string csv_from_matrix(const Matrix& m) {
  if (!m.imag().isZero(0.0)) throw InputError("CSV output supports real values only");
  std::string out;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(m(i, j).real());
    }
    out += '\n';
  }
  return out;
}

inline bool looks_like_json(const std::string& path, const std::string& text) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return true;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return false;
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && (text[first] == '{' || text[first] == '[');
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Frames
// ---------------------------------------------------------------------------

inline json frame_to_json(const Frame& f, std::optional<Index> blocks = std::nullopt) {
  const bool complex = f.field() == FieldKind::complex;
  json vectors = json::array();
  for (Index i = 0; i < f.size(); ++i) {
    json v = json::array();
    for (Index k = 0; k < f.dim(); ++k) {
      v.push_back(detail::scalar_to_json(f.synthesis_matrix()(k, i), complex));
    }
    vectors.push_back(std::move(v));
  }
  json doc = {{"dim", f.dim()}, {"field", to_string(f.field())}, {"vectors", std::move(vectors)}};
  if (blocks) doc["blocks"] = *blocks;
  return doc;
}

inline FrameFile frame_from_json(const json& doc, const std::string& source = "frame") {
  if (!doc.is_object()) throw InputError(source + ": top level must be an object");
  const Index d = detail::require_count(doc, "dim", source);
  const bool complex = detail::parse_field(doc, source);
  if (!doc.contains("vectors") || !doc.at("vectors").is_array() || doc.at("vectors").empty()) {
    throw InputError(source + ": \"vectors\" must be a non-empty array");
  }
  const auto& vectors = doc.at("vectors");
  Matrix t(d, static_cast<Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    const std::string where = source + ": vectors[" + std::to_string(i) + "]";
    if (!v.is_array() || static_cast<Index>(v.size()) != d) {
      throw InputError(where + " must be an array of " + std::to_string(d) + " scalars");
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
      t(static_cast<Index>(k), static_cast<Index>(i)) =
          detail::scalar_from_json(v[k], complex, where + "[" + std::to_string(k) + "]");
    }
  }
  std::optional<Index> blocks;
  if (doc.contains("blocks")) blocks = detail::require_count(doc, "blocks", source);
  FrameFile out{Frame(std::move(t), complex ? FieldKind::complex : FieldKind::real), blocks};
  if (blocks) {
    const BlockStructure s(*blocks);
    if (s.total_dim() != out.frame.dim() || s.total_elements() != out.frame.size()) {
      throw InputError(source + ": \"blocks\" = " + std::to_string(*blocks) +
                       " does not match the frame shape");
    }
  }
  return out;
}

inline std::string frame_to_json_text(const Frame& f, std::optional<Index> blocks = std::nullopt) {
  return frame_to_json(f, blocks).dump(2) + "\n";
}

inline FrameFile frame_from_json_text(const std::string& text, const std::string& source = "frame") {
  return frame_from_json(detail::parse_json_text(text, source), source);
}

inline std::string frame_to_csv(const Frame& f) { return detail::csv_from_matrix(f.synthesis_matrix()); }

inline Frame frame_from_csv(const std::string& text, const std::string& source = "frame") {
  return Frame(detail::matrix_from_rows(detail::parse_csv(text, source)), FieldKind::real);
}

inline FrameFile load_frame(const std::string& path) {
  const std::string text = detail::read_text(path);
  if (detail::looks_like_json(path, text)) return frame_from_json_text(text, path);
  return {frame_from_csv(text, path), std::nullopt};
}

inline void save_frame(const std::string& path, const Frame& f,
                       std::optional<Index> blocks = std::nullopt) {
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  detail::write_text(path, csv ? frame_to_csv(f) : frame_to_json_text(f, blocks));
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
  const bool complex = !m.imag().isZero(0.0);
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(detail::scalar_to_json(m(i, j), complex));
    rows.push_back(std::move(row));
  }
  return {{"rows", m.rows()},
          {"cols", m.cols()},
          {"field", complex ? "complex" : "real"},
          {"entries", std::move(rows)}};
}

inline Matrix matrix_from_json(const json& doc, const std::string& source = "matrix") {
  if (!doc.is_object()) throw InputError(source + ": top level must be an object");
  const Index r = detail::require_count(doc, "rows", source);
  const Index c = detail::require_count(doc, "cols", source);
  const bool complex = detail::parse_field(doc, source);
  if (!doc.contains("entries") || !doc.at("entries").is_array() ||
      static_cast<Index>(doc.at("entries").size()) != r) {
    throw InputError(source + ": \"entries\" must be an array of " + std::to_string(r) + " rows");
  }
  Matrix m(r, c);
  for (Index i = 0; i < r; ++i) {
    const auto& row = doc.at("entries")[static_cast<std::size_t>(i)];
    const std::string where = source + ": entries[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != c) {
      throw InputError(where + " must hold " + std::to_string(c) + " scalars");
    }
    for (Index j = 0; j < c; ++j) {
      m(i, j) = detail::scalar_from_json(row[static_cast<std::size_t>(j)], complex,
                                         where + "[" + std::to_string(j) + "]");
    }
  }
  require_finite(m, "matrix");
  return m;
}

inline Matrix load_matrix(const std::string& path) {
  const std::string text = detail::read_text(path);
  if (detail::looks_like_json(path, text)) {
    return matrix_from_json(detail::parse_json_text(text, path), path);
  }
  Matrix m = detail::matrix_from_rows(detail::parse_csv(text, path));
  require_finite(m, "matrix");
  return m;
}

inline void save_matrix(const std::string& path, const Matrix& m) {
  const bool csv = path.size() >= 4 && path.substr(path.size() - 4) == ".csv";
  detail::write_text(path, csv ? detail::csv_from_matrix(m) : matrix_to_json(m).dump(2) + "\n");
}

}  // namespace framekit
