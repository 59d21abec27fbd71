#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fmc/error.hpp"
#include "fmc/matrix.hpp"

namespace fmc {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Validated graph on nodes [0, node_count). Undirected graphs store both
/// orientations of every edge; `edges` is sorted and free of duplicates.
class Graph {
 public:
  Graph(std::size_t node_count, std::vector<Edge> edges, bool directed)
      : node_count_(node_count), edges_(std::move(edges)), directed_(directed) {
    if (node_count_ == 0) throw Error(ErrorCode::EmptyInput, "graph needs at least one node");
    for (const auto& e : edges_) {
      if (e.u >= node_count_ || e.v >= node_count_) {
        throw Error(ErrorCode::EndpointOutOfRange, "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                                       ") outside [0, " + std::to_string(node_count_) + ")");
      }
      if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.u));
    }
    if (!directed_) {
      const std::size_t n = edges_.size();
      for (std::size_t i = 0; i < n; ++i) edges_.push_back({edges_[i].v, edges_[i].u});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  std::size_t node_count() const noexcept { return node_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  bool directed() const noexcept { return directed_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  bool directed_;
};

/// Binary k x k matrix with zero diagonal.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(Matrix<Boolean> entries) : entries_(std::move(entries)) {
    if (entries_.size() == 0) throw Error(ErrorCode::EmptyInput, "adjacency matrix needs k >= 1");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_(i, i).value) throw Error(ErrorCode::SelfLoop, "nonzero diagonal at " + std::to_string(i));
    }
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool operator()(std::size_t i, std::size_t j) const { return entries_(i, j).value; }
  const Matrix<Boolean>& entries() const noexcept { return entries_; }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) {
        if (entries_(i, j) != entries_(j, i)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  Matrix<Boolean> entries_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view token) {
  Int value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return value;
}

inline std::string line_ref(std::size_t line_no) { return "line " + std::to_string(line_no); }

}  // namespace detail

/// Reads the edge-list format: "u v" pairs, '#' comments, and the optional
/// directives "nodes=<k>" and "directed=true|false".
inline Graph parse_edge_list(std::istream& in) {
  std::optional<std::size_t> declared_nodes;
  std::optional<bool> directed;
  std::vector<Edge> edges;
  std::size_t max_endpoint = 0;
  bool any_edge = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    if (const auto eq = line.find('='); eq != std::string_view::npos) {
      const auto key = detail::trim(line.substr(0, eq));
      const auto value = detail::trim(line.substr(eq + 1));
      if (key == "nodes") {
        const auto k = detail::parse_int<std::size_t>(value);
        if (!k || declared_nodes) throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": bad nodes directive");
        if (*k == 0) throw Error(ErrorCode::EmptyInput, "nodes=0 declares an empty graph");
        declared_nodes = *k;
      } else if (key == "directed") {
        if (directed || (value != "true" && value != "false")) {
          throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": bad directed directive");
        }
        directed = value == "true";
      } else {
        throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": unknown directive '" + std::string(key) + "'");
      }
      continue;
    }

    const auto tokens = detail::split_ws(line);
    if (tokens.size() != 2) {
      throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": expected two endpoints");
    }
    const auto u = detail::parse_int<long long>(tokens[0]);
    const auto v = detail::parse_int<long long>(tokens[1]);
    if (!u || !v) throw Error(ErrorCode::MalformedLine, detail::line_ref(line_no) + ": endpoints must be integers");
    if (*u < 0 || *v < 0) throw Error(ErrorCode::EndpointOutOfRange, detail::line_ref(line_no) + ": negative endpoint");
    if (*u == *v) throw Error(ErrorCode::SelfLoop, detail::line_ref(line_no) + ": self-loop at node " + std::to_string(*u));
    Edge e{static_cast<std::size_t>(*u), static_cast<std::size_t>(*v)};
    max_endpoint = std::max({max_endpoint, e.u, e.v});
    any_edge = true;
    edges.push_back(e);
  }

  std::size_t k = 0;
  if (declared_nodes) {
    k = *declared_nodes;
    if (any_edge && max_endpoint >= k) {
      throw Error(ErrorCode::EndpointOutOfRange,
                  "endpoint " + std::to_string(max_endpoint) + " not below nodes=" + std::to_string(k));
    }
  } else if (any_edge) {
    k = max_endpoint + 1;
  } else {
    throw Error(ErrorCode::EmptyInput, "no edges and no nodes directive");
  }
  return Graph(k, std::move(edges), directed.value_or(false));
}

inline Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

/// Inverse of parse_edge_list; undirected edges are written once as u < v.
inline std::string serialize_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "nodes=" << g.node_count() << '\n' << "directed=" << (g.directed() ? "true" : "false") << '\n';
  for (const auto& e : g.edges()) {
    if (!g.directed() && e.u > e.v) continue;
    out << e.u << ' ' << e.v << '\n';
  }
  return out.str();
}

inline AdjacencyMatrix graph_to_adjacency(const Graph& g) {
  Matrix<Boolean> m(g.node_count());
  for (const auto& e : g.edges()) m(e.u, e.v) = true;
  return AdjacencyMatrix(std::move(m));
}

/// Undirected Erdos-Renyi G(k, p). Each pair i < j (in lexicographic order)
/// consumes one draw of a mt19937_64 seeded with `seed`; the top 53 bits form
/// a uniform in [0, 1) so the result does not depend on the standard
/// library's distribution implementations.
inline Graph gen_random_graph(std::size_t k, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadProbability, "p must lie in [0, 1]");
  if (k == 0) throw Error(ErrorCode::EmptyInput, "k must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double draw = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
      if (draw < p) edges.push_back({i, j});
    }
  }
  return Graph(k, std::move(edges), false);
}

/// Directed variant of gen_random_graph: each ordered pair (i, j), i != j,
/// is present with probability p.
inline Graph gen_random_digraph(std::size_t k, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::BadProbability, "p must lie in [0, 1]");
  if (k == 0) throw Error(ErrorCode::EmptyInput, "k must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      const double draw = static_cast<double>(rng() >> 11U) * 0x1.0p-53;
      if (draw < p) edges.push_back({i, j});
    }
  }
  return Graph(k, std::move(edges), true);
}

enum class StructureKind { path, ring, star, cliques };

inline std::optional<StructureKind> parse_structure_kind(std::string_view s) {
  if (s == "path") return StructureKind::path;
  if (s == "ring") return StructureKind::ring;
  if (s == "star") return StructureKind::star;
  if (s == "cliques") return StructureKind::cliques;
  return std::nullopt;
}

/// Known-answer fixtures. `parts` is only read for cliques.
inline Graph gen_structured_graph(StructureKind kind, std::size_t k, std::size_t parts = 1) {
  if (k == 0) throw Error(ErrorCode::EmptyInput, "k must be positive");
  std::vector<Edge> edges;
  switch (kind) {
    case StructureKind::path:
      for (std::size_t i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
      break;
    case StructureKind::ring:
      for (std::size_t i = 0; i + 1 < k; ++i) edges.push_back({i, i + 1});
      if (k > 2) edges.push_back({k - 1, 0});
      break;
    case StructureKind::star:
      for (std::size_t i = 1; i < k; ++i) edges.push_back({0, i});
      break;
    case StructureKind::cliques: {
      if (parts == 0 || k % parts != 0) {
        throw Error(ErrorCode::BadPartition, std::to_string(parts) + " parts do not divide " + std::to_string(k));
      }
      const std::size_t block = k / parts;
      for (std::size_t b = 0; b < parts; ++b) {
        for (std::size_t i = b * block; i < (b + 1) * block; ++i) {
          for (std::size_t j = i + 1; j < (b + 1) * block; ++j) edges.push_back({i, j});
        }
      }
      break;
    }
  }
  return Graph(k, std::move(edges), false);
}

}  // namespace fmc
