#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "txnet/graph.hpp"

namespace txnet::metrics {

using graph::NodeId;
using graph::TxGraph;

enum class DegreeMode { in, out, total };
enum class DistanceMode { directed, undirected };

struct DyadCensus {
    std::uint64_t mutual = 0;
    std::uint64_t asymmetric = 0;
    std::uint64_t null = 0;

    std::uint64_t connected() const { return mutual + asymmetric; }
    friend bool operator==(const DyadCensus&, const DyadCensus&) = default;
};

// One snapshot column of the metric tables. Distances are absent when no
// ordered pair is reachable.
struct MetricsReport {
    std::uint64_t nodes = 0;
    std::uint64_t edges = 0;  // arcs of the multigraph
    std::optional<std::uint64_t> diameter;
    std::uint64_t max_clique_size = 0;
    std::uint64_t dyads_connected = 0;
    std::uint64_t triangles = 0;
    double reciprocity = 0;  // rounded to 4 decimals
    double transitivity_global = 0;
    double transitivity_avg_local = 0;
    double mean_degree = 0;
    std::optional<double> mean_distance;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

inline constexpr std::uint64_t default_clique_budget = 10'000'000;

// Raw multigraph degrees, one entry per node in id order.
std::vector<std::uint64_t> degree_sequence(const TxGraph& g, DegreeMode mode);

// 2|E|/|V| on the multigraph. Throws Error(empty_graph) when |V| = 0.
double mean_degree(const TxGraph& g);
double mean_degree(std::uint64_t nodes, std::uint64_t edges);

// The functions below project internally, so the raw multigraph may be
// passed directly.

// Directed simple projection; mutual + asymmetric + null = C(|V|, 2).
DyadCensus dyad_census(const TxGraph& g);

// Closed triangles of the undirected simple projection.
std::uint64_t triangle_count(const TxGraph& g);

// 3 x triangles / connected triples; 0 when there are no connected triples.
double transitivity_global(const TxGraph& g);
// Mean local clustering over nodes with degree >= 2; 0 when there are none.
double transitivity_avg_local(const TxGraph& g);

// Fraction of simple directed arcs whose reverse arc exists.
double reciprocity(const TxGraph& g);

struct DistanceStats {
    std::uint64_t reachable_pairs = 0;
    std::uint64_t path_length_sum = 0;
    std::uint64_t diameter = 0;
};

// All-pairs BFS over ordered reachable pairs u != v.
DistanceStats distance_stats(const TxGraph& g, DistanceMode mode = DistanceMode::directed);
// Throw Error(no_reachable_pairs) when no ordered pair is reachable.
double mean_distance(const TxGraph& g, DistanceMode mode = DistanceMode::directed);
std::uint64_t diameter(const TxGraph& g, DistanceMode mode = DistanceMode::directed);

// Maximal cliques of size >= 2 of the undirected simple projection, each
// sorted, in lexicographic order. Throws Error(clique_budget_exceeded) once
// more than `budget` cliques have been enumerated.
std::vector<std::vector<NodeId>> maximal_cliques(const TxGraph& g, std::uint64_t budget = default_clique_budget);
// 0 for an empty graph, 1 for an edgeless one.
std::uint64_t max_clique_size(const TxGraph& g, std::uint64_t budget = default_clique_budget);

MetricsReport snapshot_report(const TxGraph& g, DistanceMode mode = DistanceMode::directed,
                              std::uint64_t clique_budget = default_clique_budget);

}  // namespace txnet::metrics
