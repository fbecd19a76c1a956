#pragma once

// JSON state files:
//   {"d_a": int, "d_b": int, "kind": "density"|"pure", "re": [[...]], "im": [[...]]}
// Real and imaginary parts are row-major; a pure state uses a single row.

#include <ptmono/linalg.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>

namespace ptmono {

using StateData = std::variant<DensityMatrix, PureState>;

namespace detail {

inline std::vector<std::vector<double>> read_table(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::ParseError, std::string("missing field \"") + key + "\"");
  const auto& rows = j.at(key);
  if (!rows.is_array() || rows.empty())
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be a non-empty array of rows");
  std::vector<std::vector<double>> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (!row.is_array())
      throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" row " + std::to_string(r) + " is not an array");
    std::vector<double> vals;
    for (const auto& x : row) {
      if (!x.is_number())
        throw Error(ErrorCode::ParseError,
                    std::string("\"") + key + "\" row " + std::to_string(r) + " has a non-numeric entry");
      vals.push_back(x.get<double>());
    }
    if (!out.empty() && vals.size() != out.front().size())
      throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" is not rectangular (row " +
                                             std::to_string(r) + " has " + std::to_string(vals.size()) +
                                             " entries, expected " + std::to_string(out.front().size()) + ")");
    out.push_back(std::move(vals));
  }
  return out;
}

inline Index read_dim(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be an integer");
  const auto v = j.at(key).get<long long>();
  if (v < 1) throw Error(ErrorCode::ParseError, std::string("\"") + key + "\" must be positive");
  return static_cast<Index>(v);
}

}  // namespace detail

inline StateData parse_state(const nlohmann::json& j, const Tolerances& tol = {}) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "state file must hold a JSON object");
  const BipartiteDims dims{detail::read_dim(j, "d_a"), detail::read_dim(j, "d_b")};
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw Error(ErrorCode::ParseError, "\"kind\" must be \"density\" or \"pure\"");
  const std::string kind = j.at("kind").get<std::string>();
  const auto re = detail::read_table(j, "re");
  const auto im = detail::read_table(j, "im");
  if (re.size() != im.size() || re.front().size() != im.front().size())
    throw Error(ErrorCode::ParseError, "\"re\" and \"im\" have different shapes");
  const auto rows = static_cast<Index>(re.size());
  const auto cols = static_cast<Index>(re.front().size());

  if (kind == "pure") {
    if (rows != 1) throw Error(ErrorCode::ParseError, "pure state must be given as a single row");
    if (cols != dims.total())
      throw Error(ErrorCode::DimensionMismatch,
                  "pure state has " + std::to_string(cols) + " amplitudes, d_a*d_b = " + std::to_string(dims.total()));
    ComplexVector v(cols);
    for (Index k = 0; k < cols; ++k) v(k) = Complex(re[0][k], im[0][k]);
    return PureState(std::move(v), dims, tol.norm);
  }
  if (kind == "density") {
    if (rows != cols || rows != dims.total())
      throw Error(ErrorCode::DimensionMismatch, "density matrix is " + std::to_string(rows) + "x" +
                                                    std::to_string(cols) + ", d_a*d_b = " +
                                                    std::to_string(dims.total()));
    ComplexMatrix m(rows, cols);
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c) m(r, c) = Complex(re[r][c], im[r][c]);
    return DensityMatrix(m, dims, tol);
  }
  throw Error(ErrorCode::ParseError, "unknown kind \"" + kind + "\"");
}

/// Parses a state from JSON text; syntax errors report the byte offset.
inline StateData parse_state(const std::string& text, const Tolerances& tol = {}) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_state(j, tol);
}

inline StateData load_state(const std::string& path, const Tolerances& tol = {}) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_state(buf.str(), tol);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

inline DensityMatrix as_density(const StateData& s) {
  if (const auto* psi = std::get_if<PureState>(&s)) return DensityMatrix::from_pure(*psi);
  return std::get<DensityMatrix>(s);
}

inline nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Index r = 0; r < rho.dim(); ++r) {
    nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
    for (Index c = 0; c < rho.dim(); ++c) {
      rr.push_back(rho.matrix()(r, c).real());
      ir.push_back(rho.matrix()(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  return {{"d_a", rho.dims().d_a}, {"d_b", rho.dims().d_b}, {"kind", "density"}, {"re", re}, {"im", im}};
}

inline nlohmann::json to_json(const PureState& psi) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Index k = 0; k < psi.dim(); ++k) {
    re.push_back(psi.amplitudes()(k).real());
    im.push_back(psi.amplitudes()(k).imag());
  }
  return {{"d_a", psi.dims().d_a}, {"d_b", psi.dims().d_b}, {"kind", "pure"},
          {"re", nlohmann::json::array({re})}, {"im", nlohmann::json::array({im})}};
}

/// %.17g rendering used for CSV and JSON fields.
inline std::string format_number(double x, int digits = 17) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

/// Significant digits for single-value outputs, enough to absorb eigensolver rounding.
inline constexpr int kScalarDigits = 15;

}  // namespace ptmono
