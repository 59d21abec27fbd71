#pragma once

#include <cstddef>
#include <deque>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/error.hpp"
#include "fmc/graph.hpp"
#include "fmc/matrix.hpp"
#include "fmc/solve.hpp"
#include "fmc/transform.hpp"

namespace fmc {

enum class Engine { fundamental, power_sum, oracle };
enum class Backend { exact, floating, boolean };

constexpr std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::fundamental: return "fundamental";
    case Engine::power_sum: return "power_sum";
    case Engine::oracle: return "oracle";
  }
  return "unknown";
}

constexpr std::string_view to_string(Backend b) {
  switch (b) {
    case Backend::exact: return "exact";
    case Backend::floating: return "float";
    case Backend::boolean: return "boolean";
  }
  return "unknown";
}

inline std::optional<Engine> parse_engine(std::string_view s) {
  if (s == "fundamental") return Engine::fundamental;
  if (s == "power_sum") return Engine::power_sum;
  if (s == "oracle") return Engine::oracle;
  return std::nullopt;
}

inline std::optional<Backend> parse_backend(std::string_view s) {
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::floating;
  if (s == "boolean") return Backend::boolean;
  return std::nullopt;
}

/// Default cutoff for "nonzero" in the float backend, just above the
/// underflow boundary.
inline constexpr double kDefaultNonzeroThreshold = 1e-300;

struct ClusterReport {
  std::vector<std::size_t> sizes;
  Engine engine = Engine::oracle;
  Backend backend = Backend::exact;
  std::optional<Variant> variant;
  std::optional<std::size_t> n_limit;
  std::optional<double> nonzero_threshold;
};

/// F = (I - W)^-1 for a substochastic W.
template <Field T>
struct FundamentalMatrix {
  Matrix<T> entries;
  WeightMatrix<T> weights;

  std::size_t size() const noexcept { return entries.size(); }
};

template <Field T>
FundamentalMatrix<T> fundamental_matrix(const AdjacencyMatrix& s, Variant variant) {
  if constexpr (std::is_same_v<T, double>) {
    if (variant == Variant::paper_transform && s.size() > kFloatPaperTransformMaxK) {
      throw Error(ErrorCode::UnderflowSuspected,
                  "float paper_transform is limited to k <= " + std::to_string(kFloatPaperTransformMaxK) + " (got k = " +
                      std::to_string(s.size()) + "); use the exact backend or uniform_scaling");
    }
  }
  auto w = substochastic_transform<T>(s, variant);
  auto f = solve_inverse(identity_minus(w.entries));
  return {std::move(f), std::move(w)};
}

/// Entries counted as nonzero: exact positivity for rationals, > threshold for doubles.
template <Field T>
Matrix<Boolean> fundamental_pattern(const FundamentalMatrix<T>& f, double threshold = kDefaultNonzeroThreshold) {
  Matrix<Boolean> p(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < f.size(); ++j) {
      if constexpr (std::is_same_v<T, Rational>) {
        p(i, j) = sgn(f.entries(i, j)) > 0;
      } else {
        p(i, j) = f.entries(i, j) > threshold;
      }
    }
  }
  return p;
}

inline std::vector<std::size_t> row_counts(const Matrix<Boolean>& pattern) {
  std::vector<std::size_t> sizes(pattern.size());
  for (std::size_t i = 0; i < pattern.size(); ++i) sizes[i] = row_nonzeros(pattern, i);
  return sizes;
}

/// Cluster sizes as the per-row nonzero counts of F = (I - W)^-1.
inline ClusterReport cluster_sizes_fundamental(const AdjacencyMatrix& s, Variant variant = Variant::paper_transform,
                                               Backend backend = Backend::exact,
                                               double nonzero_threshold = kDefaultNonzeroThreshold) {
  if (nonzero_threshold < 0.0) throw Error(ErrorCode::InvalidArgument, "nonzero_threshold must be >= 0");
  ClusterReport report;
  report.engine = Engine::fundamental;
  report.backend = backend;
  report.variant = variant;
  switch (backend) {
    case Backend::exact:
      report.sizes = row_counts(fundamental_pattern(fundamental_matrix<Rational>(s, variant)));
      break;
    case Backend::floating:
      report.sizes = row_counts(fundamental_pattern(fundamental_matrix<double>(s, variant), nonzero_threshold));
      report.nonzero_threshold = nonzero_threshold;
      break;
    case Backend::boolean:
      throw Error(ErrorCode::InvalidArgument, "the fundamental engine needs the exact or float backend");
  }
  return report;
}

/// Nonzero count of row `node` of the boolean power sum I + S + ... + S^n,
/// i.e. the number of nodes within n hops of `node` (itself included).
inline std::size_t cluster_size_within_n(const AdjacencyMatrix& s, std::size_t node, std::size_t n) {
  if (node >= s.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "node " + std::to_string(node) + " outside [0, " + std::to_string(s.size()) + ")");
  }
  return row_nonzeros(power_sum(s.entries(), n), node);
}

/// cluster_size_within_n for every node at once (one power sum).
inline ClusterReport cluster_sizes_within_n(const AdjacencyMatrix& s, std::size_t n) {
  ClusterReport report;
  report.engine = Engine::power_sum;
  report.backend = Backend::boolean;
  report.n_limit = n;
  report.sizes = row_counts(power_sum(s.entries(), n));
  return report;
}

/// Full closure through the power sum: paths never need more than k-1 hops.
inline ClusterReport cluster_sizes_power_sum(const AdjacencyMatrix& s) {
  ClusterReport report = cluster_sizes_within_n(s, s.size() - 1);
  report.n_limit.reset();
  return report;
}

/// Disjoint-set forest with union by size and path halving.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

  std::size_t component_size(std::size_t x) { return size_[find(x)]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Brute-force baseline. Symmetric input: union-find component sizes.
/// Otherwise one BFS per node, counting the reachable set including the node.
inline ClusterReport cluster_sizes_oracle(const AdjacencyMatrix& s) {
  const std::size_t k = s.size();
  ClusterReport report;
  report.engine = Engine::oracle;
  report.backend = Backend::exact;
  report.sizes.resize(k);

  if (s.is_symmetric()) {
    UnionFind uf(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto row = s.entries().row(i);
      for (std::size_t j = i + 1; j < k; ++j) {
        if (row[j].value) uf.unite(i, j);
      }
    }
    for (std::size_t i = 0; i < k; ++i) report.sizes[i] = uf.component_size(i);
    return report;
  }

  std::vector<std::vector<std::size_t>> adj(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (s(i, j)) adj[i].push_back(j);
    }
  }
  std::vector<std::size_t> seen(k, k);
  std::vector<std::size_t> queue;
  queue.reserve(k);
  for (std::size_t src = 0; src < k; ++src) {
    queue.clear();
    queue.push_back(src);
    seen[src] = src;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t v : adj[queue[head]]) {
        if (seen[v] != src) {
          seen[v] = src;
          queue.push_back(v);
        }
      }
    }
    report.sizes[src] = queue.size();
  }
  return report;
}

/// Warshall's algorithm over the boolean semiring, seeded with I OR S.
inline Matrix<Boolean> reflexive_transitive_closure(const AdjacencyMatrix& s) {
  const std::size_t k = s.size();
  Matrix<Boolean> r = mat_add(identity<Boolean>(k), s.entries());
  for (std::size_t m = 0; m < k; ++m) {
    const auto via = r.row(m);
    for (std::size_t i = 0; i < k; ++i) {
      if (!r(i, m).value) continue;
      auto row = r.row(i);
      for (std::size_t j = 0; j < k; ++j) row[j] += via[j];
    }
  }
  return r;
}

}  // namespace fmc
