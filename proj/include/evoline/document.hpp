#pragma once

// JSON algebra documents:
//
//   {"field": "Q", "dim": 2, "matrix": [["0", "1"], ["0", "1"]]}
//
// Scalars are always strings so rationals survive unchanged.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "evoline/algebra.hpp"
#include "evoline/error.hpp"
#include "evoline/linalg.hpp"
#include "evoline/scalar.hpp"

namespace evoline {

struct AlgebraDocument {
  std::string field;
  std::size_t dim = 0;
  std::vector<std::vector<std::string>> matrix;
};

namespace detail {

inline nlohmann::json parse_json(std::string_view text, std::string_view what) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorCategory::ParseError, std::string(what) + ": " + e.what());
  }
}

inline Vector parse_row(const FieldSpec& spec, const nlohmann::json& row, std::size_t n, const std::string& where) {
  if (!row.is_array()) raise(ErrorCategory::ShapeError, where + " must be an array");
  if (row.size() != n) {
    raise(ErrorCategory::ShapeError,
          where + " has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
  }
  std::vector<Scalar> coords;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& cell = row[j];
    const std::string at = where + "[" + std::to_string(j) + "]";
    if (!cell.is_string()) raise(ErrorCategory::BadScalar, at + ": scalars must be JSON strings");
    try {
      coords.push_back(Scalar::parse(spec, cell.get<std::string>()));
    } catch (const Error& e) {
      raise(e.category(), at + ": " + e.what());
    }
  }
  return Vector(spec, std::move(coords));
}

}  // namespace detail

inline AlgebraDocument parse_document(std::string_view text) {
  const nlohmann::json j = detail::parse_json(text, "algebra document");
  if (!j.is_object()) raise(ErrorCategory::ParseError, "algebra document must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "field" && key != "dim" && key != "matrix") {
      raise(ErrorCategory::ParseError, "unknown key '" + key + "' in algebra document");
    }
  }
  if (!j.contains("field") || !j["field"].is_string()) raise(ErrorCategory::ParseError, "'field' must be a string");
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    raise(ErrorCategory::ShapeError, "'dim' must be a positive integer");
  }
  if (!j.contains("matrix") || !j["matrix"].is_array()) raise(ErrorCategory::ShapeError, "'matrix' must be an array");

  AlgebraDocument doc;
  doc.field = j["field"].get<std::string>();
  doc.dim = j["dim"].get<std::size_t>();
  const auto& m = j["matrix"];
  if (m.size() != doc.dim) {
    raise(ErrorCategory::ShapeError,
          "'matrix' has " + std::to_string(m.size()) + " rows, expected " + std::to_string(doc.dim));
  }
  for (std::size_t i = 0; i < doc.dim; ++i) {
    const std::string where = "matrix[" + std::to_string(i) + "]";
    if (!m[i].is_array()) raise(ErrorCategory::ShapeError, where + " must be an array");
    if (m[i].size() != doc.dim) {
      raise(ErrorCategory::ShapeError,
            where + " has " + std::to_string(m[i].size()) + " entries, expected " + std::to_string(doc.dim));
    }
    std::vector<std::string> row;
    for (std::size_t k = 0; k < doc.dim; ++k) {
      if (!m[i][k].is_string()) {
        raise(ErrorCategory::BadScalar, where + "[" + std::to_string(k) + "]: scalars must be JSON strings");
      }
      row.push_back(m[i][k].get<std::string>());
    }
    doc.matrix.push_back(std::move(row));
  }
  return doc;
}

inline Algebra to_algebra(const AlgebraDocument& doc) {
  const FieldSpec spec = FieldSpec::parse(doc.field);
  if (doc.matrix.size() != doc.dim) raise(ErrorCategory::ShapeError, "matrix row count differs from dim");
  Matrix a(spec, doc.dim, doc.dim);
  for (std::size_t i = 0; i < doc.dim; ++i) {
    if (doc.matrix[i].size() != doc.dim) raise(ErrorCategory::ShapeError, "matrix row length differs from dim");
    for (std::size_t j = 0; j < doc.dim; ++j) {
      try {
        a(i, j) = Scalar::parse(spec, doc.matrix[i][j]);
      } catch (const Error& e) {
        raise(e.category(), "matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]: " + e.what());
      }
    }
  }
  return Algebra(std::move(a));
}

inline Algebra parse_algebra(std::string_view text) { return to_algebra(parse_document(text)); }

inline AlgebraDocument to_document(const Algebra& alg) {
  AlgebraDocument doc;
  doc.field = alg.spec().tag();
  doc.dim = alg.dim();
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < alg.dim(); ++j) row.push_back(alg.constant(i, j).to_string());
    doc.matrix.push_back(std::move(row));
  }
  return doc;
}

/// Canonical text: one matrix row per line, two-space indent, trailing newline.
inline std::string serialize_document(const AlgebraDocument& doc) {
  auto quote = [](const std::string& s) { return nlohmann::json(s).dump(); };
  std::string out = "{\n";
  out += "  \"field\": " + quote(doc.field) + ",\n";
  out += "  \"dim\": " + std::to_string(doc.dim) + ",\n";
  out += "  \"matrix\": [\n";
  for (std::size_t i = 0; i < doc.matrix.size(); ++i) {
    out += "    [";
    for (std::size_t j = 0; j < doc.matrix[i].size(); ++j) {
      if (j) out += ", ";
      out += quote(doc.matrix[i][j]);
    }
    out += i + 1 < doc.matrix.size() ? "],\n" : "]\n";
  }
  out += "  ]\n}\n";
  return out;
}

inline std::string serialize_algebra(const Algebra& alg) { return serialize_document(to_document(alg)); }

/// An ideal given as a JSON array of coordinate rows, e.g. [["0", "0", "1"]].
inline Subspace parse_ideal(std::string_view text, const Algebra& alg) {
  const nlohmann::json j = detail::parse_json(text, "ideal spec");
  if (!j.is_array()) raise(ErrorCategory::ParseError, "ideal spec must be a JSON array of rows");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(detail::parse_row(alg.spec(), j[i], alg.dim(), "ideal[" + std::to_string(i) + "]"));
  }
  return Subspace::span(alg.spec(), rows, alg.dim());
}

}  // namespace evoline
