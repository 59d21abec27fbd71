#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>

#include "fmc/error.hpp"
#include "fmc/graph.hpp"
#include "fmc/transform.hpp"

namespace fmc {

/// Reads a square MatrixMarket file in "coordinate real general" form and
/// returns it as an exact-rational weight matrix. Decimal values are taken
/// exactly (0.1 becomes 1/10). Repeated coordinates are summed.
inline WeightMatrix<Rational> parse_matrix_market(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;

  if (!std::getline(in, raw)) throw Error(ErrorCode::BadHeader, "empty input");
  ++line_no;
  {
    std::string header(detail::trim(raw));
    std::transform(header.begin(), header.end(), header.begin(), [](unsigned char ch) { return std::tolower(ch); });
    const auto tokens = detail::split_ws(header);
    if (tokens.size() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" || tokens[2] != "coordinate" ||
        tokens[3] != "real" || tokens[4] != "general") {
      throw Error(ErrorCode::BadHeader, "expected '%%MatrixMarket matrix coordinate real general'");
    }
  }

  auto next_content_line = [&](std::string_view& out) {
    while (std::getline(in, raw)) {
      ++line_no;
      out = detail::trim(raw);
      if (out.empty() || out.front() == '%') continue;
      return true;
    }
    return false;
  };

  std::string_view line;
  if (!next_content_line(line)) throw Error(ErrorCode::BadHeader, "missing dimensions line");
  const auto dims = detail::split_ws(line);
  if (dims.size() != 3) throw Error(ErrorCode::BadHeader, detail::line_ref(line_no) + ": expected 'rows cols nnz'");
  const auto rows = detail::parse_int<std::size_t>(dims[0]);
  const auto cols = detail::parse_int<std::size_t>(dims[1]);
  const auto nnz = detail::parse_int<std::size_t>(dims[2]);
  if (!rows || !cols || !nnz) throw Error(ErrorCode::BadHeader, detail::line_ref(line_no) + ": bad dimensions");
  if (*rows != *cols) {
    throw Error(ErrorCode::NotSquare, std::to_string(*rows) + " x " + std::to_string(*cols) + " is not square");
  }
  if (*rows == 0) throw Error(ErrorCode::EmptyInput, "0 x 0 matrix");
  const std::size_t k = *rows;

  Matrix<Rational> q(k);
  for (std::size_t n = 0; n < *nnz; ++n) {
    if (!next_content_line(line)) {
      throw Error(ErrorCode::MalformedLine, "expected " + std::to_string(*nnz) + " entries, got " + std::to_string(n));
    }
    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 3) throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": expected 'i j value'");
    const auto i = detail::parse_int<std::size_t>(tokens[0]);
    const auto j = detail::parse_int<std::size_t>(tokens[1]);
    Rational value;
    if (!i || !j || !parse_decimal_exact(tokens[2], value)) {
      throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": bad entry");
    }
    if (*i < 1 || *i > k || *j < 1 || *j > k) {
      throw Error(ErrorCode::EndpointOutOfRange, detail::line_ref(line_no) + ": index outside 1.." + std::to_string(k));
    }
    if (sgn(value) < 0) throw Error(ErrorCode::NegativeEntry, detail::line_ref(line_no) + ": negative value");
    q(*i - 1, *j - 1) += value;
  }
  if (next_content_line(line)) {
    throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": more entries than declared");
  }

  for (std::size_t r = 0; r < k; ++r) {
    if (row_sum(q, r) >= 1) {
      throw Error(ErrorCode::RowSumNotSubstochastic, "row " + std::to_string(r + 1) + " sums to " +
                                                         row_sum(q, r).get_str() + " (must be < 1)");
    }
  }
  return {std::move(q), WeightOrigin::external};
}

inline WeightMatrix<Rational> parse_matrix_market(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_matrix_market(in);
}

/// Writes q in the subset accepted by parse_matrix_market, 17 significant digits.
inline std::string serialize_matrix_market(const Matrix<double>& q) {
  std::ostringstream out;
  out.precision(17);
  std::size_t nnz = 0;
  for (double x : q.data()) nnz += x != 0.0 ? 1 : 0;
  out << "%%MatrixMarket matrix coordinate real general\n" << q.size() << ' ' << q.size() << ' ' << nnz << '\n';
  for (std::size_t i = 0; i < q.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (q(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << q(i, j) << '\n';
    }
  }
  return out.str();
}

}  // namespace fmc
