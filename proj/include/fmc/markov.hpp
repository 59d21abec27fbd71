#pragma once

#include <algorithm>
#include <vector>

#include "fmc/error.hpp"
#include "fmc/solve.hpp"
#include "fmc/transform.hpp"

namespace fmc {

/// Expected number of steps before absorption from each transient state:
/// t = (I - Q)^-1 1, the row sums of the fundamental matrix.
///
/// Q must have spectral radius < 1. That holds immediately when every row
/// sums to < 1; otherwise it is confirmed by running the Neumann series in
/// doubles and failing with NotSubstochastic if it does not converge.
template <Field T>
std::vector<T> expected_absorption_steps(const WeightMatrix<T>& q) {
  const std::size_t k = q.size();
  if (k == 0) throw Error(ErrorCode::DimensionMismatch, "empty transient block");
  bool strictly_substochastic = true;
  for (std::size_t i = 0; i < k; ++i) {
    for (const auto& x : q.entries.row(i)) {
      if (x < 0) throw Error(ErrorCode::NegativeEntry, "transient block has a negative entry");
    }
    if (!(row_sum(q.entries, i) < 1)) strictly_substochastic = false;
  }
  if (!strictly_substochastic) {
    const auto qd = convert<double>(q.entries);
    try {
      neumann_sum(qd, ConvergenceConfig{1e-12, std::max<std::size_t>(1000, 10 * k)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NoConvergence) throw;
      throw Error(ErrorCode::NotSubstochastic, "Neumann series of Q diverges; spectral radius is not below 1");
    }
  }

  const Matrix<T> f = solve_inverse(identity_minus(q.entries));
  std::vector<T> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = row_sum(f, i);
  return t;
}

}  // namespace fmc
