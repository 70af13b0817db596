#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "polymat.hpp"

namespace minbasis {

using Json = nlohmann::ordered_json;

/// A polynomial matrix read from a file, whose field is known only at run time.
using AnyPolyMat = std::variant<PolyMat<double>, PolyMat<Complex>>;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline Index read_count(const Json& j, const char* key, long min) {
  if (!j.contains(key)) parse_fail(key, "missing field");
  const Json& v = j.at(key);
  if (!v.is_number_integer()) parse_fail(key, "expected an integer");
  const long x = v.get<long>();
  if (x < min) parse_fail(key, "must be >= " + std::to_string(min) + ", got " + std::to_string(x));
  return static_cast<Index>(x);
}

template <FieldScalar T>
T read_entry(const Json& v, const std::string& where) {
  if constexpr (std::same_as<T, double>) {
    if (!v.is_number()) parse_fail(where, "expected a real number");
    return v.get<double>();
  } else {
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      parse_fail(where, "expected a number or an [re, im] pair");
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
}

template <FieldScalar T>
PolyMat<T> read_coefficients(const Json& coeffs, Index rows, Index cols, int d) {
  std::vector<Mat<T>> c;
  for (int i = 0; i <= d; ++i) {
    const std::string ci = "coefficients[" + std::to_string(i) + "]";
    const Json& a = coeffs[static_cast<std::size_t>(i)];
    if (!a.is_array() || static_cast<Index>(a.size()) != rows)
      parse_fail(ci, "expected an array of " + std::to_string(rows) + " rows");
    Mat<T> m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      const std::string cr = ci + "[" + std::to_string(r) + "]";
      const Json& row = a[static_cast<std::size_t>(r)];
      if (!row.is_array() || static_cast<Index>(row.size()) != cols)
        parse_fail(cr, "expected an array of " + std::to_string(cols) + " entries (ragged row)");
      for (Index k = 0; k < cols; ++k)
        m(r, k) = read_entry<T>(row[static_cast<std::size_t>(k)], cr + "[" + std::to_string(k) + "]");
    }
    c.push_back(std::move(m));
  }
  return PolyMat<T>(std::move(c));
}

}  // namespace detail

/// {"field", "rows", "cols", "degree_bound", "coefficients": [C_0..C_d]},
/// each C_i a list of rows; complex entries are [re, im].
inline AnyPolyMat polymat_from_json(const Json& j) {
  if (!j.is_object()) detail::parse_fail("document", "expected a JSON object");
  if (!j.contains("field") || !j.at("field").is_string()) detail::parse_fail("field", "expected \"real\" or \"complex\"");
  const std::string field = j.at("field").get<std::string>();
  if (field != "real" && field != "complex")
    detail::parse_fail("field", "expected \"real\" or \"complex\", got \"" + field + "\"");
  const Index rows = detail::read_count(j, "rows", 1);
  const Index cols = detail::read_count(j, "cols", 1);
  const int d = static_cast<int>(detail::read_count(j, "degree_bound", 0));
  if (!j.contains("coefficients") || !j.at("coefficients").is_array())
    detail::parse_fail("coefficients", "expected an array");
  const Json& coeffs = j.at("coefficients");
  if (static_cast<long>(coeffs.size()) != d + 1)
    detail::parse_fail("coefficients", "expected degree_bound + 1 = " + std::to_string(d + 1) +
                                           " coefficient matrices, got " + std::to_string(coeffs.size()));
  try {
    if (field == "real") return detail::read_coefficients<double>(coeffs, rows, cols, d);
    return detail::read_coefficients<Complex>(coeffs, rows, cols, d);
  } catch (const DimensionError& e) {
    detail::parse_fail("coefficients", e.what());
  }
}

inline AnyPolyMat polymat_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return polymat_from_json(j);
}

inline AnyPolyMat read_polymat_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return polymat_from_string(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

/// Real matrix viewed over the complex field.
inline PolyMat<Complex> to_complex(const PolyMat<double>& p) {
  std::vector<Mat<Complex>> c;
  for (const auto& ci : p.coeffs()) c.push_back(ci.cast<Complex>());
  return PolyMat<Complex>(std::move(c));
}

/// Reads a file that must hold a matrix of field T (real files are accepted
/// as complex).
template <FieldScalar T>
PolyMat<T> read_polymat_file_as(const std::string& path) {
  AnyPolyMat any = read_polymat_file(path);
  if (auto* p = std::get_if<PolyMat<T>>(&any)) return std::move(*p);
  if constexpr (std::same_as<T, Complex>) {
    return to_complex(std::get<PolyMat<double>>(any));
  } else {
    throw ParseError(path + ": expected a real matrix, got a complex one");
  }
}

template <FieldScalar T>
Json polymat_to_json(const PolyMat<T>& p) {
  Json j;
  j["field"] = to_string(PolyMat<T>::field());
  j["rows"] = p.rows();
  j["cols"] = p.cols();
  j["degree_bound"] = p.degree_bound();
  Json coeffs = Json::array();
  for (const auto& c : p.coeffs()) {
    Json a = Json::array();
    for (Index r = 0; r < c.rows(); ++r) {
      Json row = Json::array();
      for (Index k = 0; k < c.cols(); ++k) {
        if constexpr (std::same_as<T, double>)
          row.push_back(c(r, k));
        else
          row.push_back(Json::array({c(r, k).real(), c(r, k).imag()}));
      }
      a.push_back(std::move(row));
    }
    coeffs.push_back(std::move(a));
  }
  j["coefficients"] = std::move(coeffs);
  return j;
}

inline Json polymat_to_json(const AnyPolyMat& p) {
  return std::visit([](const auto& m) { return polymat_to_json(m); }, p);
}

template <FieldScalar T>
void write_polymat_file(const PolyMat<T>& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open file for writing");
  out << polymat_to_json(p).dump(2) << '\n';
}

}  // namespace minbasis
