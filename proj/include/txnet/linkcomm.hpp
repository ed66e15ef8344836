#pragma once

#include <cstdint>
#include <vector>

#include "txnet/graph.hpp"

namespace txnet::linkcomm {

using graph::NodeId;
using graph::TxGraph;

// Undirected edge with a < b; ordering is the lexicographic edge id.
struct LinkEdge {
    NodeId a = 0;
    NodeId b = 0;

    LinkEdge() = default;
    LinkEdge(NodeId u, NodeId v) : a(u < v ? u : v), b(u < v ? v : u) {}

    friend auto operator<=>(const LinkEdge&, const LinkEdge&) = default;
};

struct CommunityPartition {
    // Each community's edges in ascending order; communities ordered by edge
    // count (descending), then by first edge.
    std::vector<std::vector<LinkEdge>> communities;
    // node id -> ascending community indices with an incident edge
    std::vector<std::vector<std::size_t>> node_membership;
    double partition_density = 0;
};

struct NodeDegrees {
    NodeId node = 0;
    std::uint64_t in_degree = 0;
    std::uint64_t out_degree = 0;
};

struct CommunityProfile {
    std::size_t index = 0;
    std::size_t edge_count = 0;
    std::size_t node_count = 0;
    std::vector<NodeDegrees> nodes;  // ascending node id
};

// Jaccard similarity of the inclusive neighborhoods of the two non-shared
// endpoints, on the undirected simple projection of g. Throws
// Error(not_adjacent) unless the edges share exactly one endpoint.
double edge_similarity(const TxGraph& g, LinkEdge e1, LinkEdge e2);

// D = (2/M) sum_c m_c (m_c - (n_c - 1)) / ((n_c - 2)(n_c - 1)), communities with
// n_c <= 2 contributing 0. Throws Error(invalid_partition) unless the
// communities cover the edges of the undirected simple projection exactly once.
double partition_density(const TxGraph& g, const std::vector<std::vector<LinkEdge>>& communities);

// Single-linkage clustering of edges by similarity, cut where the partition
// density peaks. All merges at one similarity value happen together; on a
// density tie the coarser cut wins. Throws Error(empty_graph).
CommunityPartition detect_link_communities(const TxGraph& g);

// Per community, in/out degrees of each node counted over the arcs of the
// original directed multigraph that lie on community edges.
std::vector<CommunityProfile> community_profiles(const TxGraph& g, const CommunityPartition& partition);

}  // namespace txnet::linkcomm
