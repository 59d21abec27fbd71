#include <gtest/gtest.h>

#include <sstream>

#include "fmc/bench.hpp"

namespace fmc {
namespace {

TEST(RunBenchmark, EnginesAgreeOnChecksum) {
  BenchSpec spec{{8}, {0.3}, {1}, {BenchEngine::oracle, BenchEngine::fundamental_exact}, 1};
  const auto records = run_benchmark(spec);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].sizes_checksum, records[1].sizes_checksum);
  EXPECT_EQ(records[0].engine, "oracle");
  EXPECT_EQ(records[1].engine, "fundamental_exact");
  for (const auto& r : records) EXPECT_GT(r.wall_time_ns, 0u);
}

TEST(RunBenchmark, AllEnginesAndDeterminism) {
  BenchSpec spec{{6, 12},
                 {0.1, 0.5},
                 {3, 4},
                 {BenchEngine::fundamental_exact, BenchEngine::fundamental_float_uniform, BenchEngine::oracle,
                  BenchEngine::power_sum_boolean},
                 2};
  const auto a = run_benchmark(spec);
  const auto b = run_benchmark(spec);
  ASSERT_EQ(a.size(), 2u * 2u * 2u * 4u);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].sizes_checksum, b[i].sizes_checksum);
    EXPECT_EQ(a[i].sizes_checksum, a[i - i % 4].sizes_checksum);
  }
}

TEST(RunBenchmark, Validation) {
  BenchSpec empty_engines{{8}, {0.1}, {1}, {}, 1};
  EXPECT_THROW(run_benchmark(empty_engines), Error);
  BenchSpec zero_reps{{8}, {0.1}, {1}, {BenchEngine::oracle}, 0};
  EXPECT_THROW(run_benchmark(zero_reps), Error);
  BenchSpec bad_p{{8}, {1.5}, {1}, {BenchEngine::oracle}, 1};
  EXPECT_THROW(run_benchmark(bad_p), Error);

  BenchSpec too_big{{300}, {0.1}, {1}, {BenchEngine::fundamental_exact}, 1};
  try {
    run_benchmark(too_big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EngineUnavailable);
  }
}

TEST(SizesChecksum, DependsOnOrderAndValues) {
  EXPECT_EQ(sizes_checksum({1, 2, 3}), sizes_checksum({1, 2, 3}));
  EXPECT_NE(sizes_checksum({1, 2, 3}), sizes_checksum({3, 2, 1}));
  EXPECT_NE(sizes_checksum({}), sizes_checksum({0}));
  // FNV-1a offset basis for empty input
  EXPECT_EQ(sizes_checksum({}), 0xcbf29ce484222325ULL);
}

TEST(EmitReport, SingleRecordCsv) {
  const auto csv = emit_report({{"oracle", 8, 0.1, 42, 1234, 99}}, ReportFormat::csv);
  EXPECT_EQ(csv, "engine,k,p,seed,wall_time_ns,sizes_checksum\noracle,8,0.1,42,1234,99\n");
}

TEST(EmitReport, SortsByKPSeedEngine) {
  std::vector<BenchRecord> records{
      {"oracle", 16, 0.1, 1, 5, 7},
      {"fundamental_float_uniform", 8, 0.5, 1, 5, 7},
      {"oracle", 8, 0.1, 2, 5, 7},
      {"fundamental_exact", 8, 0.1, 2, 5, 7},
  };
  const auto csv = emit_report(records, ReportFormat::csv);
  EXPECT_EQ(csv,
            "engine,k,p,seed,wall_time_ns,sizes_checksum\n"
            "fundamental_exact,8,0.1,2,5,7\n"
            "oracle,8,0.1,2,5,7\n"
            "fundamental_float_uniform,8,0.5,1,5,7\n"
            "oracle,16,0.1,1,5,7\n");
}

TEST(EmitReport, JsonRoundTrip) {
  std::vector<BenchRecord> records{{"oracle", 64, 0.01, 18446744073709551615ULL, 10, 0xdeadbeefcafef00dULL},
                                   {"fundamental_float_uniform", 64, 0.01, 18446744073709551615ULL, 20, 1}};
  const auto json = emit_report(records, ReportFormat::json);
  EXPECT_EQ(parse_report_json(json), sorted_records(records));
  EXPECT_NE(json.find("\"wall_time_ns\""), std::string::npos);
}

TEST(EmitReport, EmptyIsError) { EXPECT_THROW(emit_report({}, ReportFormat::csv), Error); }

}  // namespace
}  // namespace fmc
