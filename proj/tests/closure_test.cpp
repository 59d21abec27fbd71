#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fmc/clusters.hpp"
#include "fmc/markov.hpp"
#include "fmc/transform.hpp"
#include "oracles.hpp"

namespace fmc {
namespace {

using testing::adjacency;
using Sizes = std::vector<std::size_t>;

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

TEST(SubstochasticTransform, PaperTransformTwoNodes) {
  const auto s = adjacency(2, {{0, 1}});
  const auto w = substochastic_transform<Rational>(s, Variant::paper_transform);
  EXPECT_EQ(w.entries, (Matrix<Rational>{{0, q(1, 4)}, {q(1, 3), 0}}));
  EXPECT_EQ(w.origin, WeightOrigin::paper_transform);

  const auto wd = substochastic_transform<double>(s, Variant::paper_transform);
  EXPECT_EQ(wd.entries(0, 1), 0.25);
  EXPECT_DOUBLE_EQ(wd.entries(1, 0), 1.0 / 3.0);
}

TEST(SubstochasticTransform, UniformScalingTwoNodes) {
  const auto w = substochastic_transform<Rational>(adjacency(2, {{0, 1}}), Variant::uniform_scaling);
  EXPECT_EQ(w.entries, (Matrix<Rational>{{0, q(1, 3)}, {q(1, 3), 0}}));
}

TEST(SubstochasticTransform, ZeroStaysZero) {
  const auto s = adjacency(4, {});
  for (auto v : {Variant::paper_transform, Variant::uniform_scaling}) {
    EXPECT_EQ(substochastic_transform<Rational>(s, v).entries, Matrix<Rational>(4));
    EXPECT_EQ(substochastic_transform<double>(s, v).entries, Matrix<double>(4));
  }
}

TEST(SubstochasticTransform, FloatUnderflowIsReported) {
  // (k+1)^-k leaves the normal range of doubles long before k = 400.
  const auto s = graph_to_adjacency(gen_structured_graph(StructureKind::ring, 400));
  try {
    substochastic_transform<double>(s, Variant::paper_transform);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderflowSuspected);
  }
}

TEST(SubstochasticTransform, PatternAndRowSumsProperty) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng() % 40;
    const auto s = testing::random_adjacency(rng, k, 0.5, trial % 2 == 0);
    for (auto v : {Variant::paper_transform, Variant::uniform_scaling}) {
      const auto w = substochastic_transform<Rational>(s, v);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(sgn(w.entries(i, j)) > 0, s(i, j));
        EXPECT_LT(row_sum(w.entries, i), 1);
      }
      for (const auto& rep : row_sum_bounds(w)) EXPECT_TRUE(rep.ok);
    }
  }
}

TEST(RowSumBounds, TwoNodeExample) {
  const auto w = substochastic_transform<Rational>(adjacency(2, {{0, 1}}), Variant::paper_transform);
  const auto reps = row_sum_bounds(w);
  ASSERT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps[0].sum, q(1, 4));
  EXPECT_EQ(reps[0].bound, q(3, 4));
  EXPECT_TRUE(reps[0].ok);
  // row 2: (1 - 3^-2) / 2 = 4/9
  EXPECT_EQ(reps[1].sum, q(1, 3));
  EXPECT_EQ(reps[1].bound, q(4, 9));
}

TEST(RowSumBounds, StarCenterRow) {
  const auto s = graph_to_adjacency(gen_structured_graph(StructureKind::star, 10));
  const auto reps = row_sum_bounds(substochastic_transform<Rational>(s, Variant::paper_transform));
  EXPECT_EQ(reps[0].sum, q(511, 1024));
  EXPECT_TRUE(reps[0].ok);

  const auto dreps = row_sum_bounds(substochastic_transform<double>(s, Variant::paper_transform));
  EXPECT_DOUBLE_EQ(dreps[0].sum, 511.0 / 1024.0);
  EXPECT_TRUE(dreps[0].ok);
}

TEST(RowSumBounds, FirstRowLimitIsOne) {
  // (1/2) * [1 / (1 - 1/2)] = 1
  EXPECT_EQ(paper_row_bound_limit(1), 1);
  EXPECT_EQ(paper_row_bound_limit(3), q(1, 3));
  for (std::size_t k = 1; k <= 64; ++k) {
    const auto b = paper_row_bound(1, k);
    EXPECT_LT(b, 1);
    mpz_class two_k;
    mpz_ui_pow_ui(two_k.get_mpz_t(), 2, k);
    EXPECT_EQ(Rational(1) - b, Rational(mpz_class(1), two_k));
  }
}

TEST(RowSumBounds, ViolationThrows) {
  WeightMatrix<Rational> bad{Matrix<Rational>{{0, 1}, {0, 0}}, WeightOrigin::paper_transform};
  try {
    row_sum_bounds(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundViolated);
  }
}

TEST(ClusterSizesFundamental, SingleEdge) {
  const auto s = adjacency(2, {{0, 1}});
  const auto f = fundamental_matrix<Rational>(s, Variant::paper_transform);
  EXPECT_EQ(f.entries, (Matrix<Rational>{{q(12, 11), q(3, 11)}, {q(4, 11), q(12, 11)}}));
  const auto rep = cluster_sizes_fundamental(s);
  EXPECT_EQ(rep.sizes, (Sizes{2, 2}));
  EXPECT_EQ(rep.engine, Engine::fundamental);
  EXPECT_EQ(rep.backend, Backend::exact);
  EXPECT_EQ(rep.variant, Variant::paper_transform);
  EXPECT_FALSE(rep.nonzero_threshold);
}

TEST(ClusterSizesFundamental, Edgeless) {
  const auto s = adjacency(3, {});
  EXPECT_EQ(fundamental_matrix<Rational>(s, Variant::paper_transform).entries, identity<Rational>(3));
  EXPECT_EQ(cluster_sizes_fundamental(s).sizes, (Sizes{1, 1, 1}));
}

TEST(ClusterSizesFundamental, TwoTriangles) {
  const auto s = graph_to_adjacency(gen_structured_graph(StructureKind::cliques, 6, 2));
  const Sizes expected = testing::flood_fill_sizes(s);
  ASSERT_EQ(expected, Sizes(6, 3));
  for (auto v : {Variant::paper_transform, Variant::uniform_scaling}) {
    for (auto b : {Backend::exact, Backend::floating}) {
      EXPECT_EQ(cluster_sizes_fundamental(s, v, b).sizes, expected);
    }
  }
}

TEST(ClusterSizesFundamental, FloatReportsThreshold) {
  const auto rep = cluster_sizes_fundamental(adjacency(2, {{0, 1}}), Variant::uniform_scaling, Backend::floating, 1e-9);
  EXPECT_EQ(rep.nonzero_threshold, 1e-9);
  EXPECT_EQ(rep.sizes, (Sizes{2, 2}));
}

TEST(ClusterSizesFundamental, UnderflowGuard) {
  const auto s = graph_to_adjacency(gen_structured_graph(StructureKind::path, 17));
  try {
    cluster_sizes_fundamental(s, Variant::paper_transform, Backend::floating);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnderflowSuspected);
  }
  const auto ok = graph_to_adjacency(gen_structured_graph(StructureKind::path, 16));
  EXPECT_EQ(cluster_sizes_fundamental(ok, Variant::paper_transform, Backend::floating).sizes, Sizes(16, 16));
  EXPECT_EQ(cluster_sizes_fundamental(s, Variant::paper_transform, Backend::exact).sizes, Sizes(17, 17));
}

TEST(ClusterSizesFundamental, BooleanBackendRejected) {
  EXPECT_THROW(cluster_sizes_fundamental(adjacency(2, {}), Variant::paper_transform, Backend::boolean), Error);
  EXPECT_THROW(cluster_sizes_fundamental(adjacency(2, {}), Variant::paper_transform, Backend::exact, -1.0), Error);
}

TEST(FundamentalMatrix, InvariantsProperty) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng() % 12;
    const bool directed = trial % 2 == 0;
    const auto s = testing::random_adjacency(rng, k, 0.2, directed);
    for (auto v : {Variant::paper_transform, Variant::uniform_scaling}) {
      const auto f = fundamental_matrix<Rational>(s, v);
      for (std::size_t i = 0; i < k; ++i) {
        EXPECT_GE(f.entries(i, i), 1);
        for (std::size_t j = 0; j < k; ++j) EXPECT_GE(f.entries(i, j), 0);
      }
      // F (I - W) = I exactly
      EXPECT_EQ(residual_norm(f.entries, f.weights.entries), 0.0);
      const auto pattern = fundamental_pattern(f);
      EXPECT_EQ(pattern, testing::bfs_reachability(s));
      if (!directed) {
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t j = 0; j < k; ++j) EXPECT_EQ(pattern(i, j), pattern(j, i));
        }
      }
    }
  }
}

TEST(ClusterSizesFundamental, PermutationEquivarianceProperty) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t k = 2 + rng() % 12;
    const bool directed = trial % 2 == 1;
    const Graph g = directed ? gen_random_digraph(k, 0.15, rng()) : gen_random_graph(k, 0.2, rng());
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> relabeled;
    for (const auto& e : g.edges()) relabeled.push_back({perm[e.u], perm[e.v]});
    const Graph h(k, relabeled, directed);

    const auto before = cluster_sizes_fundamental(graph_to_adjacency(g)).sizes;
    const auto after = cluster_sizes_fundamental(graph_to_adjacency(h)).sizes;
    for (std::size_t i = 0; i < k; ++i) EXPECT_EQ(after[perm[i]], before[i]);
  }
}

TEST(ClusterSizeWithinN, Examples) {
  const auto star = graph_to_adjacency(gen_structured_graph(StructureKind::star, 5));
  EXPECT_EQ(cluster_size_within_n(star, 0, 0), 1u);
  EXPECT_EQ(cluster_size_within_n(star, 3, 0), 1u);
  EXPECT_EQ(cluster_size_within_n(star, 0, 1), 5u);
  EXPECT_EQ(cluster_size_within_n(star, 1, 1), 2u);
  EXPECT_EQ(cluster_size_within_n(star, 1, 2), 5u);
  for (std::size_t node = 0; node < 5; ++node) {
    for (std::size_t n = 0; n < 4; ++n) EXPECT_EQ(cluster_size_within_n(star, node, n), testing::bfs_count_within(star, node, n));
  }
  const auto all = cluster_sizes_within_n(star, 1);
  EXPECT_EQ(all.sizes, (Sizes{5, 2, 2, 2, 2}));
  EXPECT_EQ(all.n_limit, 1u);
}

TEST(ClusterSizeWithinN, IndexOutOfRange) {
  try {
    cluster_size_within_n(adjacency(3, {}), 3, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IndexOutOfRange);
  }
}

TEST(ClusterSizesOracle, Examples) {
  EXPECT_EQ(cluster_sizes_oracle(adjacency(4, {})).sizes, (Sizes{1, 1, 1, 1}));
  EXPECT_EQ(cluster_sizes_oracle(adjacency(4, {{0, 1}, {1, 2}, {2, 0}})).sizes, (Sizes{3, 3, 3, 1}));
  EXPECT_EQ(cluster_sizes_oracle(adjacency(3, {{0, 1}, {1, 2}}, true)).sizes, (Sizes{3, 2, 1}));
}

TEST(ClusterSizesOracle, UndirectedComponentsShareSizeProperty) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t k = 1 + rng() % 30;
    const auto s = graph_to_adjacency(gen_random_graph(k, 0.08, rng()));
    const auto sizes = cluster_sizes_oracle(s).sizes;
    EXPECT_EQ(sizes, testing::flood_fill_sizes(s));
    const auto r = reflexive_transitive_closure(s);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (r(i, j).value) {
          EXPECT_EQ(sizes[i], sizes[j]);
        }
      }
    }
  }
}

TEST(ReflexiveTransitiveClosure, Examples) {
  EXPECT_EQ(reflexive_transitive_closure(adjacency(4, {})), identity<Boolean>(4));
  Matrix<Boolean> all(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) all(i, j) = true;
  }
  EXPECT_EQ(reflexive_transitive_closure(adjacency(3, {{0, 1}, {1, 2}})), all);
  EXPECT_EQ(reflexive_transitive_closure(adjacency(2, {{0, 1}}, true)), (Matrix<Boolean>{{true, true}, {false, true}}));
}

TEST(ReflexiveTransitiveClosure, MatchesBfsProperty) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t k = 1 + rng() % 20;
    const auto s = testing::random_adjacency(rng, k, 0.1, trial % 2 == 0);
    EXPECT_EQ(reflexive_transitive_closure(s), testing::bfs_reachability(s));
  }
}

TEST(ExpectedAbsorptionSteps, Examples) {
  EXPECT_EQ(expected_absorption_steps(WeightMatrix<Rational>{Matrix<Rational>{{0}}}), std::vector<Rational>{1});
  EXPECT_EQ(expected_absorption_steps(WeightMatrix<Rational>{Matrix<Rational>{{q(1, 2)}}}), std::vector<Rational>{2});
  const auto t = expected_absorption_steps(WeightMatrix<Rational>{Matrix<Rational>{{0, q(1, 2)}, {0, 0}}});
  EXPECT_EQ(t, (std::vector<Rational>{q(3, 2), 1}));

  const auto td = expected_absorption_steps(WeightMatrix<double>{Matrix<double>{{0.5}}});
  EXPECT_DOUBLE_EQ(td[0], 2.0);
}

TEST(ExpectedAbsorptionSteps, RowSumOneButConvergentPower) {
  // Row 0 sums to 1, yet Q^2 has row sums < 1 so the chain is still absorbing.
  const Matrix<Rational> m{{0, 1}, {0, q(1, 2)}};
  const auto t = expected_absorption_steps(WeightMatrix<Rational>{m});
  // t1 = 1 / (1 - 1/2) = 2, t0 = 1 + t1 = 3
  EXPECT_EQ(t, (std::vector<Rational>{3, 2}));
}

TEST(ExpectedAbsorptionSteps, NotSubstochastic) {
  for (const auto& m : {Matrix<Rational>{{1}}, Matrix<Rational>{{0, 1}, {1, 0}}}) {
    try {
      expected_absorption_steps(WeightMatrix<Rational>{m});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotSubstochastic);
    }
  }
}

TEST(ExpectedAbsorptionSteps, FixedPointIdentityProperty) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + rng() % 8;
    Matrix<Rational> m(k);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(i, j) = rng() % 3 == 0 ? q(1, static_cast<long>(k + 1)) : Rational(0);
    }
    const auto t = expected_absorption_steps(WeightMatrix<Rational>{m});
    // t = 1 + Q t
    for (std::size_t i = 0; i < k; ++i) {
      Rational rhs = 1;
      for (std::size_t j = 0; j < k; ++j) rhs += m(i, j) * t[j];
      EXPECT_EQ(t[i], rhs);
    }
  }
}

}  // namespace
}  // namespace fmc
