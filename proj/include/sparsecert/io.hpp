#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sparsecert/types.hpp"

namespace sparsecert {

enum class MatrixFormat {
  MatrixMarketArray,  ///< "%%MatrixMarket matrix array real general", column-major
  Csv,                ///< '.' decimal, ',' separator, '\n' rows
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

template <typename Scalar>
Scalar parse_scalar(std::string_view token, const char* context) {
  token = trim(token);
  if (token.empty())
    throw ParseError(std::string(context) + ": empty numeric field");
  double value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError(std::string(context) + ": bad numeric token '" +
                     std::string(token) + "'");
  if (!std::isfinite(value))
    throw NumericError(std::string(context) + ": non-finite value '" +
                       std::string(token) + "'");
  return static_cast<Scalar>(value);
}

inline Index parse_index(std::string_view token, const char* context) {
  token = trim(token);
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 1)
    throw ParseError(std::string(context) + ": bad dimension '" +
                     std::string(token) + "'");
  return static_cast<Index>(value);
}

inline std::string next_line(std::istream& in) {
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace detail

template <typename Scalar = double>
Matrix<Scalar> load_matrix_csv(std::istream& in) {
  std::vector<std::vector<Scalar>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    std::vector<Scalar> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string_view field =
          std::string_view(line).substr(start, comma == std::string::npos
                                                   ? std::string::npos
                                                   : comma - start);
      row.push_back(detail::parse_scalar<Scalar>(field, "csv"));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("csv: row " + std::to_string(rows.size() + 1) + " has " +
                       std::to_string(row.size()) + " fields, expected " +
                       std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv: no rows");

  Matrix<Scalar> A(static_cast<Index>(rows.size()),
                   static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < A.rows(); ++i)
    for (Index j = 0; j < A.cols(); ++j)
      A(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return A;
}

template <typename Scalar = double>
Matrix<Scalar> load_matrix_market(std::istream& in) {
  const std::string banner = detail::next_line(in);
  std::istringstream header(detail::lower(banner));
  std::string tag, object, fmt, field, symmetry;
  header >> tag >> object >> fmt >> field >> symmetry;
  if (tag != "%%matrixmarket")
    throw ParseError("matrix-market: missing %%MatrixMarket banner");
  if (object != "matrix" || fmt != "array" || field != "real" ||
      symmetry != "general")
    throw ParseError("matrix-market: only 'matrix array real general' is supported");

  std::string line;
  do {
    line = detail::next_line(in);
    if (!in && line.empty())
      throw ParseError("matrix-market: missing size line");
  } while (!line.empty() && line.front() == '%');

  std::istringstream size_line{line};
  std::string ntok, mtok, extra;
  size_line >> ntok >> mtok;
  if (size_line >> extra)
    throw ParseError("matrix-market: malformed size line");
  const Index n = detail::parse_index(ntok, "matrix-market");
  const Index m = detail::parse_index(mtok, "matrix-market");

  Matrix<Scalar> A(n, m);
  std::string token;
  // Array format stores values column by column.
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (!(in >> token))
        throw ParseError("matrix-market: expected " + std::to_string(n * m) +
                         " values, stream ended early");
      A(i, j) = detail::parse_scalar<Scalar>(token, "matrix-market");
    }
  }
  if (in >> token) throw ParseError("matrix-market: trailing data after values");
  return A;
}

template <typename Scalar = double>
Matrix<Scalar> load_matrix(std::istream& in, MatrixFormat format) {
  switch (format) {
    case MatrixFormat::MatrixMarketArray:
      return load_matrix_market<Scalar>(in);
    case MatrixFormat::Csv:
      return load_matrix_csv<Scalar>(in);
  }
  throw ParseError("load_matrix: unknown format");
}

/// Writes with max_digits10 significant digits so load(save(A)) == A exactly.
template <typename Derived>
void save_matrix(std::ostream& out, const Eigen::MatrixBase<Derived>& a,
                 MatrixFormat format) {
  using Scalar = typename Derived::Scalar;
  const auto& A = a.derived();
  out << std::setprecision(std::numeric_limits<Scalar>::max_digits10);
  switch (format) {
    case MatrixFormat::MatrixMarketArray:
      out << "%%MatrixMarket matrix array real general\n";
      out << A.rows() << " " << A.cols() << "\n";
      for (Index j = 0; j < A.cols(); ++j)
        for (Index i = 0; i < A.rows(); ++i) out << A(i, j) << "\n";
      break;
    case MatrixFormat::Csv:
      for (Index i = 0; i < A.rows(); ++i) {
        for (Index j = 0; j < A.cols(); ++j) {
          if (j) out << ",";
          out << A(i, j);
        }
        out << "\n";
      }
      break;
  }
}

inline std::optional<MatrixFormat> format_from_path(std::string_view path) {
  const auto dot = path.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  const std::string ext = detail::lower(path.substr(dot + 1));
  if (ext == "mtx" || ext == "mm") return MatrixFormat::MatrixMarketArray;
  if (ext == "csv") return MatrixFormat::Csv;
  return std::nullopt;
}

/// Loads a matrix file, detecting the format from the leading banner.
template <typename Scalar = double>
Matrix<Scalar> load_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  if (in.peek() == '%') return load_matrix_market<Scalar>(in);
  return load_matrix_csv<Scalar>(in);
}

template <typename Derived>
void save_matrix_file(const std::string& path, const Eigen::MatrixBase<Derived>& a,
                      std::optional<MatrixFormat> format = std::nullopt) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  const MatrixFormat fmt =
      format ? *format : format_from_path(path).value_or(MatrixFormat::Csv);
  save_matrix(out, a, fmt);
}

}  // namespace sparsecert
