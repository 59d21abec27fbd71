#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/error.hpp"
#include "fmc/graph.hpp"
#include "fmc/matrix.hpp"

namespace fmc {

enum class Variant { paper_transform, uniform_scaling };

constexpr std::string_view to_string(Variant v) {
  return v == Variant::paper_transform ? "paper_transform" : "uniform_scaling";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  if (s == "paper_transform") return Variant::paper_transform;
  if (s == "uniform_scaling") return Variant::uniform_scaling;
  return std::nullopt;
}

/// Where a weight matrix came from. `external` marks a Markov transient
/// block supplied by the caller rather than produced from an adjacency matrix.
enum class WeightOrigin { paper_transform, uniform_scaling, external };

constexpr WeightOrigin origin_of(Variant v) {
  return v == Variant::paper_transform ? WeightOrigin::paper_transform : WeightOrigin::uniform_scaling;
}

/// Nonnegative k x k matrix; substochastic (row sums < 1) when produced by
/// substochastic_transform.
template <Field T>
struct WeightMatrix {
  Matrix<T> entries;
  WeightOrigin origin = WeightOrigin::external;

  std::size_t size() const noexcept { return entries.size(); }
};

template <Field T>
T row_sum(const Matrix<T>& m, std::size_t i) {
  T sum = scalar_traits<T>::zero();
  for (const auto& x : m.row(i)) sum += x;
  return sum;
}

/// Largest k for which the float backend may run paper_transform. The
/// smallest product along any simple path, 17^(-16*15) ~ 5e-296, is still
/// above the smallest normal double; at k = 17 it is 18^(-17*16) ~ 1e-341.
inline constexpr std::size_t kFloatPaperTransformMaxK = 16;

namespace detail {

/// 1 / (r+2)^(c+1): the divisor (i+1)^j with 1-based i = r+1 and j = c+1.
inline Rational paper_weight_exact(std::size_t r, std::size_t c) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), r + 2, c + 1);
  return Rational(mpz_class(1), den);
}

}  // namespace detail

/// Rescales a binary adjacency matrix so every row sums to < 1 while keeping
/// its nonzero pattern.
///
/// paper_transform divides entry (r, c) by (r+2)^(c+1), i.e. (i+1)^j with
/// 1-based i and j, so the first row is scaled by 1/2, 1/4, 1/8, ...
/// uniform_scaling divides every entry by k+1.
///
/// With doubles, paper_transform throws UnderflowSuspected if any weight
/// falls below the smallest normal number.
template <Field T>
WeightMatrix<T> substochastic_transform(const AdjacencyMatrix& s, Variant variant) {
  const std::size_t k = s.size();
  Matrix<T> w(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      if (!s(r, c)) continue;
      if (variant == Variant::uniform_scaling) {
        if constexpr (std::is_same_v<T, Rational>) {
          w(r, c) = Rational(1, static_cast<unsigned long>(k + 1));
        } else {
          w(r, c) = 1.0 / static_cast<double>(k + 1);
        }
      } else {
        if constexpr (std::is_same_v<T, Rational>) {
          w(r, c) = detail::paper_weight_exact(r, c);
        } else {
          const double x = std::pow(static_cast<double>(r + 2), -static_cast<double>(c + 1));
          if (!(x >= std::numeric_limits<double>::min())) {
            throw Error(ErrorCode::UnderflowSuspected, "weight of entry (" + std::to_string(r) + ", " +
                                                           std::to_string(c) + ") underflows a double");
          }
          w(r, c) = x;
        }
      }
    }
  }
  return {std::move(w), origin_of(variant)};
}

template <Field T>
struct RowSumReport {
  T sum;
  T bound;
  bool ok = false;
};

/// Closed-form maximum row sum for 1-based row i under paper_transform:
/// sum_{j=1..k} (i+1)^-j = (1 - (i+1)^-k) / i.
inline Rational paper_row_bound(std::size_t i, std::size_t k) {
  mpz_class pow;
  mpz_ui_pow_ui(pow.get_mpz_t(), i + 1, k);
  Rational tail(mpz_class(1), pow);
  Rational bound = (Rational(1) - tail) / Rational(static_cast<unsigned long>(i));
  bound.canonicalize();
  return bound;
}

/// k -> infinity limit of paper_row_bound: the geometric series with first
/// term and ratio 1/(i+1) sums to first / (1 - ratio) = 1/i. Row 1 gives
/// (1/2) * [1 / (1 - 1/2)] = 1.
inline Rational paper_row_bound_limit(std::size_t i) {
  const Rational first(1, static_cast<unsigned long>(i + 1));
  const Rational ratio = first;
  Rational limit = first * (Rational(1) / (Rational(1) - ratio));
  limit.canonicalize();
  return limit;
}

/// Per-row sums against their analytic bound. paper_transform rows use
/// (1 - (i+1)^-k) / i; uniform-scaling rows use (k-1)/(k+1), the sum of a
/// node joined to every other node. Throws BoundViolated if any sum reaches 1.
template <Field T>
std::vector<RowSumReport<T>> row_sum_bounds(const WeightMatrix<T>& w) {
  if (w.origin == WeightOrigin::external) {
    throw Error(ErrorCode::InvalidArgument, "row_sum_bounds needs a transformed adjacency matrix");
  }
  const std::size_t k = w.size();
  std::vector<RowSumReport<T>> out;
  out.reserve(k);
  for (std::size_t r = 0; r < k; ++r) {
    Rational exact_bound = w.origin == WeightOrigin::paper_transform
                               ? paper_row_bound(r + 1, k)
                               : Rational(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(k + 1));
    RowSumReport<T> rep{row_sum(w.entries, r), scalar_traits<T>::zero(), false};
    if constexpr (std::is_same_v<T, Rational>) {
      rep.bound = exact_bound;
      rep.ok = rep.sum <= rep.bound && rep.sum < 1;
    } else {
      rep.bound = exact_bound.get_d();
      // Float sums may exceed the rounded bound by a few ulps.
      const double slack = 4.0 * static_cast<double>(k) * std::numeric_limits<double>::epsilon();
      rep.ok = rep.sum <= rep.bound * (1.0 + slack) && rep.sum < 1.0;
    }
    if (!(rep.sum < scalar_traits<T>::one())) {
      throw Error(ErrorCode::BoundViolated, "row " + std::to_string(r) + " sums to at least 1");
    }
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace fmc
