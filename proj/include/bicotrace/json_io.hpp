#pragma once

// Canonical JSON: keys sorted (nlohmann's std::map ordering), two-space
// indent, scalars as "num/den" strings, matrices as arrays of rows.

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bicotrace/exactla/matrix.hpp"

namespace bicotrace {

using Json = nlohmann::json;

inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::Parse, what + ": " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

template <class K>
K scalar_from_json(const Field& f, const Json& j) {
  if (j.is_number_integer()) return scalar<K>(f, j.get<std::int64_t>());
  if (j.is_string()) return ScalarTraits<K>::parse(f, j.get<std::string>());
  throw Error(ErrorKind::Parse, "scalar must be an integer or a \"num/den\" string, got " + j.dump());
}

template <class K>
Json scalar_to_json(const K& x) {
  return to_string(x);
}

template <class K>
Json matrix_to_json(const Mat<K>& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Reads an array of rows. An empty array needs cols_hint for its width.
template <class K>
Mat<K> matrix_from_json(const Field& f, const Json& j, std::size_t cols_hint = 0) {
  if (!j.is_array()) throw Error(ErrorKind::Parse, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? cols_hint : j[0].size();
  Mat<K> m(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols)
      throw Error(ErrorKind::Parse, "matrix row " + std::to_string(r) + " has the wrong length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json<K>(f, j[r][c]);
  }
  return m;
}

/// The result record shared by the computing subcommands.
template <class K>
Json result_json(const Mat<K>& value, const std::map<std::string, std::string>& provenance) {
  Json j;
  j["value"] = matrix_to_json(value);
  j["domain_dim"] = value.cols();
  j["codomain_dim"] = value.rows();
  j["provenance"] = Json(provenance);
  return j;
}

}  // namespace bicotrace
