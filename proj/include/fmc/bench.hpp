#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "fmc/clusters.hpp"
#include "fmc/error.hpp"
#include "fmc/graph.hpp"

namespace fmc {

enum class BenchEngine { fundamental_exact, fundamental_float_uniform, oracle, power_sum_boolean };

constexpr std::string_view to_string(BenchEngine e) {
  switch (e) {
    case BenchEngine::fundamental_exact: return "fundamental_exact";
    case BenchEngine::fundamental_float_uniform: return "fundamental_float_uniform";
    case BenchEngine::oracle: return "oracle";
    case BenchEngine::power_sum_boolean: return "power_sum_boolean";
  }
  return "unknown";
}

inline std::optional<BenchEngine> parse_bench_engine(std::string_view s) {
  for (auto e : {BenchEngine::fundamental_exact, BenchEngine::fundamental_float_uniform, BenchEngine::oracle,
                 BenchEngine::power_sum_boolean}) {
    if (s == to_string(e)) return e;
  }
  return std::nullopt;
}

struct BenchSpec {
  std::vector<std::size_t> sizes;
  std::vector<double> densities;
  std::vector<std::uint64_t> seeds;
  std::vector<BenchEngine> engines;
  std::size_t repetitions = 1;
  // Rational entries grow quickly with k; the exact engine refuses larger graphs.
  std::size_t exact_max_k = 256;
};

struct BenchRecord {
  std::string engine;
  std::size_t k = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t wall_time_ns = 0;
  std::uint64_t sizes_checksum = 0;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

/// FNV-1a over the sizes, each fed as 8 little-endian bytes.
inline std::uint64_t sizes_checksum(const std::vector<std::size_t>& sizes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t s : sizes) {
    auto v = static_cast<std::uint64_t>(s);
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xFFU;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

inline void validate(const BenchSpec& spec) {
  if (spec.sizes.empty() || spec.densities.empty() || spec.seeds.empty() || spec.engines.empty()) {
    throw Error(ErrorCode::InvalidArgument, "benchmark needs nonempty sizes, densities, seeds and engines");
  }
  if (spec.repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  for (auto k : spec.sizes) {
    if (k == 0) throw Error(ErrorCode::InvalidArgument, "graph sizes must be positive");
  }
  for (auto p : spec.densities) {
    if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadProbability, "densities must lie in [0, 1]");
  }
}

inline std::vector<std::size_t> run_bench_engine(BenchEngine engine, const AdjacencyMatrix& s) {
  switch (engine) {
    case BenchEngine::fundamental_exact:
      return cluster_sizes_fundamental(s, Variant::paper_transform, Backend::exact).sizes;
    case BenchEngine::fundamental_float_uniform:
      return cluster_sizes_fundamental(s, Variant::uniform_scaling, Backend::floating).sizes;
    case BenchEngine::oracle:
      return cluster_sizes_oracle(s).sizes;
    case BenchEngine::power_sum_boolean:
      return cluster_sizes_power_sum(s).sizes;
  }
  return {};
}

/// Times every engine on every (k, p, seed) graph, sequentially and
/// single-threaded, keeping the fastest of `repetitions` runs. Throws
/// ResultMismatch if engines disagree on a graph.
inline std::vector<BenchRecord> run_benchmark(const BenchSpec& spec) {
  validate(spec);
  for (auto e : spec.engines) {
    if (e != BenchEngine::fundamental_exact) continue;
    for (auto k : spec.sizes) {
      if (k > spec.exact_max_k) {
        throw Error(ErrorCode::EngineUnavailable, "fundamental_exact is limited to k <= " +
                                                      std::to_string(spec.exact_max_k) + " (got " + std::to_string(k) + ")");
      }
    }
  }

  using clock = std::chrono::steady_clock;
  std::vector<BenchRecord> records;
  for (auto k : spec.sizes) {
    for (auto p : spec.densities) {
      for (auto seed : spec.seeds) {
        const auto s = graph_to_adjacency(gen_random_graph(k, p, seed));
        std::optional<std::uint64_t> reference;
        std::string reference_engine;
        for (auto engine : spec.engines) {
          std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
          std::uint64_t checksum = 0;
          for (std::size_t rep = 0; rep < spec.repetitions; ++rep) {
            const auto start = clock::now();
            const auto sizes = run_bench_engine(engine, s);
            const auto stop = clock::now();
            const auto ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
            best = std::min<std::uint64_t>(best, std::max<std::int64_t>(ns, 1));
            checksum = sizes_checksum(sizes);
          }
          if (!reference) {
            reference = checksum;
            reference_engine = to_string(engine);
          } else if (*reference != checksum) {
            throw Error(ErrorCode::ResultMismatch, "engine " + std::string(to_string(engine)) + " disagrees with " +
                                                       reference_engine + " on k=" + std::to_string(k) +
                                                       " p=" + std::to_string(p) + " seed=" + std::to_string(seed));
          }
          records.push_back({std::string(to_string(engine)), k, p, seed, best, checksum});
        }
      }
    }
  }
  return records;
}

enum class ReportFormat { csv, json };

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

inline std::vector<BenchRecord> sorted_records(std::vector<BenchRecord> records) {
  std::stable_sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.k, a.p, a.seed, a.engine) < std::tie(b.k, b.p, b.seed, b.engine);
  });
  return records;
}

/// CSV columns: engine,k,p,seed,wall_time_ns,sizes_checksum. JSON: array of
/// objects with the same keys. Rows are sorted by (k, p, seed, engine).
inline std::string emit_report(std::vector<BenchRecord> records, ReportFormat format) {
  if (records.empty()) throw Error(ErrorCode::InvalidArgument, "no records to report");
  records = sorted_records(std::move(records));
  if (format == ReportFormat::csv) {
    std::string out = "engine,k,p,seed,wall_time_ns,sizes_checksum\n";
    for (const auto& r : records) {
      out += r.engine + ',' + std::to_string(r.k) + ',' + format_double(r.p) + ',' + std::to_string(r.seed) + ',' +
             std::to_string(r.wall_time_ns) + ',' + std::to_string(r.sizes_checksum) + '\n';
    }
    return out;
  }
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json o;
    o["engine"] = r.engine;
    o["k"] = r.k;
    o["p"] = r.p;
    o["seed"] = r.seed;
    o["wall_time_ns"] = r.wall_time_ns;
    o["sizes_checksum"] = r.sizes_checksum;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

inline std::vector<BenchRecord> parse_report_json(std::string_view text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<BenchRecord> out;
  for (const auto& o : arr) {
    out.push_back({o.at("engine").get<std::string>(), o.at("k").get<std::size_t>(), o.at("p").get<double>(),
                   o.at("seed").get<std::uint64_t>(), o.at("wall_time_ns").get<std::uint64_t>(),
                   o.at("sizes_checksum").get<std::uint64_t>()});
  }
  return out;
}

}  // namespace fmc
