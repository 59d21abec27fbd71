#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fmc/bench.hpp"
#include "fmc/clusters.hpp"
#include "fmc/error.hpp"
#include "fmc/graph.hpp"
#include "fmc/markov.hpp"
#include "fmc/matrix_market.hpp"

namespace fmc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

enum class OutputFormat { json, table };

namespace detail {

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return in;
}

inline AdjacencyMatrix load_graph(const std::string& path) {
  auto in = open_input(path);
  return graph_to_adjacency(parse_edge_list(in));
}

inline void write_sizes_table(std::ostream& out, const std::vector<std::size_t>& sizes) {
  const std::size_t width = std::max<std::size_t>(4, std::to_string(sizes.size()).size());
  out << std::left << std::setw(static_cast<int>(width)) << "node" << "  size\n";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(width)) << i << "  " << sizes[i] << '\n';
  }
}

inline nlohmann::ordered_json report_json(const ClusterReport& r) {
  nlohmann::ordered_json j;
  j["engine"] = std::string(to_string(r.engine));
  j["backend"] = std::string(to_string(r.backend));
  j["variant"] = r.variant ? nlohmann::ordered_json(std::string(to_string(*r.variant))) : nlohmann::ordered_json();
  if (r.nonzero_threshold) j["nonzero_threshold"] = *r.nonzero_threshold;
  j["sizes"] = r.sizes;
  return j;
}

}  // namespace detail

/// Runs one command line (args[0] is the program name). Results go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 for input errors and 2 for
/// numerical failures.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cluster sizes through the fundamental matrix (I - S)^-1", "fmcluster"};
  app.require_subcommand(1);

  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json}, {"table", OutputFormat::table}};

  // components
  auto* components = app.add_subcommand("components", "Cluster size of every node");
  std::string input;
  std::string engine_name = "fundamental";
  std::string backend_name = "exact";
  std::string variant_name = "paper_transform";
  double threshold = kDefaultNonzeroThreshold;
  OutputFormat format = OutputFormat::json;
  components->add_option("--input", input, "Edge-list file")->required();
  components->add_option("--engine", engine_name, "fundamental | power_sum | oracle")
      ->check(CLI::IsMember({"fundamental", "power_sum", "oracle"}));
  components->add_option("--backend", backend_name, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  components->add_option("--variant", variant_name, "paper_transform | uniform_scaling")
      ->check(CLI::IsMember({"paper_transform", "uniform_scaling"}));
  components->add_option("--threshold", threshold, "Nonzero cutoff for the float backend")->check(CLI::NonNegativeNumber);
  components->add_option("--format", format, "json | table")->transform(CLI::CheckedTransformer(formats));

  // within-n
  auto* within = app.add_subcommand("within-n", "Nodes within n degrees of separation");
  std::size_t n_limit = 0;
  std::optional<std::size_t> node;
  within->add_option("--input", input, "Edge-list file")->required();
  within->add_option("--n", n_limit, "Degrees of separation")->required();
  within->add_option("--node", node, "Single node (default: all nodes)");
  within->add_option("--format", format, "json | table")->transform(CLI::CheckedTransformer(formats));

  // markov
  auto* markov = app.add_subcommand("markov", "Expected steps to absorption from each transient state");
  std::string matrix_path;
  markov->add_option("--matrix", matrix_path, "MatrixMarket file with the transient block Q")->required();
  markov->add_option("--backend", backend_name, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  markov->add_option("--format", format, "json | table")->transform(CLI::CheckedTransformer(formats));

  // bench
  auto* bench = app.add_subcommand("bench", "Time engines on random graphs and print a CSV table");
  BenchSpec spec;
  std::vector<std::string> engine_names{"oracle", "fundamental_float_uniform"};
  std::string report_name = "csv";
  bench->add_option("--sizes", spec.sizes, "Comma-separated node counts")->required()->delimiter(',');
  bench->add_option("--densities", spec.densities, "Comma-separated edge probabilities")->required()->delimiter(',');
  bench->add_option("--seed", spec.seeds, "Comma-separated seeds")->required()->delimiter(',');
  bench->add_option("--engines", engine_names, "Comma-separated engine names")
      ->delimiter(',')
      ->check(CLI::IsMember({"fundamental_exact", "fundamental_float_uniform", "oracle", "power_sum_boolean"}));
  bench->add_option("--repetitions", spec.repetitions, "Runs per engine; the minimum time is kept")
      ->check(CLI::PositiveNumber);
  bench->add_option("--exact-max-k", spec.exact_max_k, "Largest k accepted by fundamental_exact");
  bench->add_option("--report", report_name, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  // closure
  auto* closure = app.add_subcommand("closure", "Reachability pattern as 0/1 rows");
  closure->add_option("--input", input, "Edge-list file")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (components->parsed()) {
      const auto s = detail::load_graph(input);
      ClusterReport report;
      switch (*parse_engine(engine_name)) {
        case Engine::fundamental:
          report = cluster_sizes_fundamental(s, *parse_variant(variant_name), *parse_backend(backend_name), threshold);
          break;
        case Engine::power_sum:
          report = cluster_sizes_power_sum(s);
          break;
        case Engine::oracle:
          report = cluster_sizes_oracle(s);
          break;
      }
      if (format == OutputFormat::json) {
        out << detail::report_json(report).dump() << '\n';
      } else {
        out << "engine: " << to_string(report.engine) << "  backend: " << to_string(report.backend);
        if (report.variant) out << "  variant: " << to_string(*report.variant);
        out << '\n';
        detail::write_sizes_table(out, report.sizes);
      }
    } else if (within->parsed()) {
      const auto s = detail::load_graph(input);
      if (node) {
        const auto size = cluster_size_within_n(s, *node, n_limit);
        if (format == OutputFormat::json) {
          nlohmann::ordered_json j{{"engine", "power_sum"}, {"backend", "boolean"}, {"n", n_limit}, {"node", *node},
                                   {"size", size}};
          out << j.dump() << '\n';
        } else {
          out << size << '\n';
        }
      } else {
        const auto report = cluster_sizes_within_n(s, n_limit);
        if (format == OutputFormat::json) {
          nlohmann::ordered_json j{{"engine", "power_sum"}, {"backend", "boolean"}, {"n", n_limit}, {"sizes", report.sizes}};
          out << j.dump() << '\n';
        } else {
          detail::write_sizes_table(out, report.sizes);
        }
      }
    } else if (markov->parsed()) {
      auto in = detail::open_input(matrix_path);
      const auto q = parse_matrix_market(in);
      nlohmann::ordered_json j;
      std::vector<std::string> shown;
      if (backend_name == "exact") {
        const auto t = expected_absorption_steps(q);
        std::vector<double> approx;
        for (const auto& x : t) {
          approx.push_back(x.get_d());
          shown.push_back(x.get_str());
        }
        j = {{"backend", "exact"}, {"steps", approx}, {"steps_exact", shown}};
      } else {
        const auto t = expected_absorption_steps(WeightMatrix<double>{convert<double>(q.entries), q.origin});
        for (double x : t) shown.push_back(format_double(x));
        j = {{"backend", "float"}, {"steps", t}};
      }
      if (format == OutputFormat::json) {
        out << j.dump() << '\n';
      } else {
        out << "state  steps\n";
        for (std::size_t i = 0; i < shown.size(); ++i) out << std::left << std::setw(5) << i << "  " << shown[i] << '\n';
      }
    } else if (bench->parsed()) {
      spec.engines.clear();
      for (const auto& name : engine_names) spec.engines.push_back(*parse_bench_engine(name));
      const auto records = run_benchmark(spec);
      out << emit_report(records, report_name == "json" ? ReportFormat::json : ReportFormat::csv);
    } else if (closure->parsed()) {
      const auto r = reflexive_transitive_closure(detail::load_graph(input));
      for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) out << (j ? " " : "") << (r(i, j).value ? 1 : 0);
        out << '\n';
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumerical : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace fmc::cli
