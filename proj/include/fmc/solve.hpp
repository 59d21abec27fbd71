#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fmc/error.hpp"
#include "fmc/matrix.hpp"

namespace fmc {

/// Truncation rule for the Neumann series: stop once the sup-norm of the
/// newest term drops below `tolerance`, or fail after `max_terms` terms.
struct ConvergenceConfig {
  double tolerance = 1e-12;
  std::size_t max_terms = 0;  // 0 selects the default of 10 * k

  static ConvergenceConfig defaults_for(std::size_t k) { return {1e-12, 10 * k}; }
};

/// Largest |entry|, as a double.
template <Field T>
double sup_norm(const Matrix<T>& m) {
  double best = 0.0;
  for (const auto& x : m.data()) {
    if constexpr (std::is_same_v<T, Rational>) {
      best = std::max(best, std::fabs(x.get_d()));
    } else {
      best = std::max(best, std::fabs(x));
    }
  }
  return best;
}

/// I - s.
template <Field T>
Matrix<T> identity_minus(const Matrix<T>& s) {
  Matrix<T> m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = -s(i, j);
    m(i, i) += scalar_traits<T>::one();
  }
  return m;
}

namespace detail {

constexpr double kRelativePivotFloor = 1e-12;

inline Matrix<double> invert_lu(const Matrix<double>& m) {
  const std::size_t k = m.size();
  Matrix<double> lu = m;
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});

  double max_entry = 0.0;
  for (double x : m.data()) max_entry = std::max(max_entry, std::fabs(x));
  const double floor = kRelativePivotFloor * max_entry;
  if (max_entry == 0.0) throw Error(ErrorCode::Singular, "zero matrix");

  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    double best = std::fabs(lu(c, c));
    for (std::size_t r = c + 1; r < k; ++r) {
      const double v = std::fabs(lu(r, c));
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best < floor) {
      throw Error(ErrorCode::Singular, "pivot " + std::to_string(best) + " in column " + std::to_string(c) +
                                           " is below the relative threshold");
    }
    if (pivot != c) {
      std::swap_ranges(lu.row(c).begin(), lu.row(c).end(), lu.row(pivot).begin());
      std::swap(perm[c], perm[pivot]);
    }
    const auto prow = lu.row(c);
    const double inv_pivot = 1.0 / prow[c];
    for (std::size_t r = c + 1; r < k; ++r) {
      auto row = lu.row(r);
      if (row[c] == 0.0) continue;
      const double factor = row[c] * inv_pivot;
      row[c] = factor;
      for (std::size_t j = c + 1; j < k; ++j) row[j] -= factor * prow[j];
    }
  }

  // Solve L U X = P I row by row so the inner loops stay contiguous.
  Matrix<double> x(k);
  for (std::size_t i = 0; i < k; ++i) x(i, perm[i]) = 1.0;
  for (std::size_t i = 1; i < k; ++i) {
    auto xi = x.row(i);
    const auto li = lu.row(i);
    for (std::size_t j = 0; j < i; ++j) {
      const double l = li[j];
      if (l == 0.0) continue;
      const auto xj = x.row(j);
      for (std::size_t c = 0; c < k; ++c) xi[c] -= l * xj[c];
    }
  }
  for (std::size_t ii = k; ii-- > 0;) {
    auto xi = x.row(ii);
    const auto ui = lu.row(ii);
    for (std::size_t j = ii + 1; j < k; ++j) {
      const double u = ui[j];
      if (u == 0.0) continue;
      const auto xj = x.row(j);
      for (std::size_t c = 0; c < k; ++c) xi[c] -= u * xj[c];
    }
    const double inv = 1.0 / ui[ii];
    for (std::size_t c = 0; c < k; ++c) xi[c] *= inv;
  }
  return x;
}

/// Fraction-free (Bareiss) Gauss-Jordan elimination over the integers.
///
/// Each row of m is scaled by the lcm of its denominators, giving D m = A
/// with A integral and D diagonal. Eliminating [A | D] leaves [det I | det X]
/// with X = A^-1 D = m^-1, and every intermediate division is exact.
inline Matrix<Rational> invert_bareiss(const Matrix<Rational>& m) {
  const std::size_t k = m.size();
  const std::size_t w = 2 * k;
  std::vector<mpz_class> a(k * w);
  for (std::size_t i = 0; i < k; ++i) {
    mpz_class scale = 1;
    for (const auto& q : m.row(i)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
    for (std::size_t j = 0; j < k; ++j) {
      const Rational& q = m(i, j);
      mpz_class t = scale / q.get_den();
      a[i * w + j] = q.get_num() * t;
    }
    a[i * w + k + i] = scale;
  }

  mpz_class prev = 1;
  mpz_class tmp;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t pivot = c;
    while (pivot < k && a[pivot * w + c] == 0) ++pivot;
    if (pivot == k) throw Error(ErrorCode::Singular, "zero pivot in column " + std::to_string(c));
    if (pivot != c) {
      for (std::size_t j = 0; j < w; ++j) std::swap(a[c * w + j], a[pivot * w + j]);
    }
    const mpz_class p = a[c * w + c];
    for (std::size_t r = 0; r < k; ++r) {
      if (r == c) continue;
      const mpz_class f = a[r * w + c];
      // Columns left of c are zero except the diagonal of earlier pivot rows.
      if (r < c) {
        mpz_class& d = a[r * w + r];
        tmp = p * d;
        mpz_divexact(d.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      for (std::size_t j = c + 1; j < w; ++j) {
        mpz_class& x = a[r * w + j];
        tmp = p * x;
        mpz_submul(tmp.get_mpz_t(), f.get_mpz_t(), a[c * w + j].get_mpz_t());
        mpz_divexact(x.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[r * w + c] = 0;
    }
    prev = p;
  }

  // Every diagonal entry now equals the last pivot, i.e. +-det(A).
  Matrix<Rational> inv(k);
  for (std::size_t i = 0; i < k; ++i) {
    const mpz_class& diag = a[i * w + i];
    for (std::size_t j = 0; j < k; ++j) {
      Rational q(a[i * w + k + j], diag);
      q.canonicalize();
      inv(i, j) = std::move(q);
    }
  }
  return inv;
}

}  // namespace detail

/// Inverse of m: LU with partial pivoting for doubles, fraction-free
/// elimination for rationals (exact).
template <Field T>
Matrix<T> solve_inverse(const Matrix<T>& m) {
  if (m.size() == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  if constexpr (std::is_same_v<T, double>) {
    return detail::invert_lu(m);
  } else {
    return detail::invert_bareiss(m);
  }
}

template <Field T>
struct NeumannResult {
  Matrix<T> sum;
  std::size_t terms_used = 0;
};

/// Partial sum s^0 + ... + s^T of the Neumann series, where T is the first
/// power whose sup-norm falls below cfg.tolerance.
template <Field T>
NeumannResult<T> neumann_sum(const Matrix<T>& s, ConvergenceConfig cfg) {
  const std::size_t k = s.size();
  if (cfg.max_terms == 0) cfg.max_terms = ConvergenceConfig::defaults_for(k).max_terms;
  if (cfg.tolerance < 0.0) throw Error(ErrorCode::InvalidArgument, "tolerance must be nonnegative");

  Matrix<T> sum = identity<T>(k);
  Matrix<T> term = identity<T>(k);
  for (std::size_t t = 1; t <= cfg.max_terms; ++t) {
    term = mat_mul(term, s);
    sum = mat_add(sum, term);
    if (sup_norm(term) < cfg.tolerance) return {std::move(sum), t};
  }
  throw Error(ErrorCode::NoConvergence, "increment still above " + std::to_string(cfg.tolerance) + " after " +
                                            std::to_string(cfg.max_terms) + " terms");
}

/// sup-norm of f (I - s) - I.
template <Field T>
double residual_norm(const Matrix<T>& f, const Matrix<T>& s) {
  if (f.size() != s.size()) throw Error(ErrorCode::DimensionMismatch, "residual operands differ in size");
  Matrix<T> r = mat_mul(f, identity_minus(s));
  for (std::size_t i = 0; i < r.size(); ++i) r(i, i) -= scalar_traits<T>::one();
  return sup_norm(r);
}

}  // namespace fmc
