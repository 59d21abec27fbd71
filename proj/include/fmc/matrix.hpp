#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fmc/error.hpp"
#include "fmc/scalar.hpp"

namespace fmc {

/// Dense square k x k matrix in row-major order.
template <Semiring T>
class Matrix {
 public:
  using value_type = T;
  using traits = scalar_traits<T>;

  Matrix() = default;

  explicit Matrix(std::size_t k) : k_(k), data_(k * k, traits::zero()) {}

  Matrix(std::size_t k, std::vector<T> data) : k_(k), data_(std::move(data)) {
    if (data_.size() != k_ * k_) {
      throw Error(ErrorCode::DimensionMismatch, "matrix data does not have k*k entries");
    }
  }

  Matrix(std::initializer_list<std::initializer_list<T>> rows) : k_(rows.size()) {
    data_.reserve(k_ * k_);
    for (const auto& row : rows) {
      if (row.size() != k_) throw Error(ErrorCode::NotSquare, "initializer rows must form a square");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t size() const noexcept { return k_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * k_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * k_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * k_, k_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * k_, k_}; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.k_ == b.k_ && a.data_ == b.data_;
  }

 private:
  std::size_t k_ = 0;
  std::vector<T> data_;
};

template <Semiring T>
Matrix<T> identity(std::size_t k) {
  Matrix<T> m(k);
  for (std::size_t i = 0; i < k; ++i) m(i, i) = scalar_traits<T>::one();
  return m;
}

template <Semiring T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  const std::size_t k = a.size();
  if (b.size() != k) throw Error(ErrorCode::DimensionMismatch, "mat_mul operands differ in size");
  Matrix<T> c(k);
  // i-l-j order: the inner loop walks contiguous rows of b and c.
  for (std::size_t i = 0; i < k; ++i) {
    auto out = c.row(i);
    for (std::size_t l = 0; l < k; ++l) {
      const T& ail = a(i, l);
      if (!scalar_traits<T>::nonzero(ail)) continue;
      auto brow = b.row(l);
      for (std::size_t j = 0; j < k; ++j) {
        if constexpr (std::is_same_v<T, Rational>) {
          if (sgn(brow[j]) != 0) out[j] += ail * brow[j];
        } else {
          out[j] += ail * brow[j];
        }
      }
    }
  }
  return c;
}

template <Semiring T>
Matrix<T> mat_add(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "mat_add operands differ in size");
  Matrix<T> c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    auto out = c.row(i);
    auto in = b.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) out[j] = out[j] + in[j];
  }
  return c;
}

/// s^n by repeated squaring; s^0 is the identity.
template <Semiring T>
Matrix<T> mat_power(const Matrix<T>& s, std::size_t n) {
  Matrix<T> result = identity<T>(s.size());
  Matrix<T> base = s;
  while (n > 0) {
    if (n & 1U) result = mat_mul(result, base);
    n >>= 1U;
    if (n > 0) base = mat_mul(base, base);
  }
  return result;
}

/// X = s^0 + s^1 + ... + s^n.
///
/// With idempotent addition (boolean) X equals (I + s)^n, which needs only
/// O(log n) products. Other semirings use Horner's scheme X = I + s(I + s(...)).
template <Semiring T>
Matrix<T> power_sum(const Matrix<T>& s, std::size_t n) {
  const std::size_t k = s.size();
  if constexpr (scalar_traits<T>::idempotent_add) {
    return mat_power(mat_add(identity<T>(k), s), n);
  } else {
    Matrix<T> x = identity<T>(k);
    for (std::size_t m = 0; m < n; ++m) {
      x = mat_add(identity<T>(k), mat_mul(s, x));
    }
    return x;
  }
}

/// Number of nonzero entries in row i.
template <Semiring T>
std::size_t row_nonzeros(const Matrix<T>& m, std::size_t i) {
  std::size_t count = 0;
  for (const auto& x : m.row(i)) count += scalar_traits<T>::nonzero(x) ? 1 : 0;
  return count;
}

template <Semiring T>
Matrix<Boolean> nonzero_pattern(const Matrix<T>& m) {
  Matrix<Boolean> p(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) p(i, j) = scalar_traits<T>::nonzero(m(i, j));
  }
  return p;
}

template <Semiring To, Semiring From>
Matrix<To> convert(const Matrix<From>& m) {
  std::vector<To> out;
  out.reserve(m.data().size());
  for (const auto& x : m.data()) {
    if constexpr (std::is_same_v<To, double>) {
      out.push_back(scalar_traits<From>::to_double(x));
    } else if constexpr (std::is_same_v<To, Boolean>) {
      out.push_back(Boolean{scalar_traits<From>::nonzero(x)});
    } else {
      out.push_back(To(scalar_traits<From>::to_double(x)));
    }
  }
  return Matrix<To>(m.size(), std::move(out));
}

/// Matrix whose scalar domain is chosen at runtime.
using DynMatrix = std::variant<Matrix<Boolean>, Matrix<Rational>, Matrix<double>>;

inline ScalarDomain domain_of(const DynMatrix& m) {
  return std::visit([](const auto& x) { return scalar_traits<typename std::decay_t<decltype(x)>::value_type>::domain; }, m);
}

inline DynMatrix mat_mul(const DynMatrix& a, const DynMatrix& b) {
  if (a.index() != b.index()) {
    throw Error(ErrorCode::DomainMismatch, std::string("cannot multiply ") + std::string(to_string(domain_of(a))) +
                                               " by " + std::string(to_string(domain_of(b))) + " matrix");
  }
  return std::visit(
      [&b](const auto& lhs) -> DynMatrix {
        using M = std::decay_t<decltype(lhs)>;
        return mat_mul(lhs, std::get<M>(b));
      },
      a);
}

}  // namespace fmc
