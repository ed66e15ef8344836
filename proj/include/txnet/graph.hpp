#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "txnet/amount.hpp"
#include "txnet/ledger.hpp"

namespace txnet::graph {

using NodeId = std::uint32_t;

struct Arc {
    NodeId source = 0;
    NodeId target = 0;
    Btc amount;
    std::int64_t timestamp_ms = 0;

    friend bool operator==(const Arc&, const Arc&) = default;
};

enum class Projection { directed, undirected };

// Multigraph over interned addresses. Ids are dense and assigned in order of
// first appearance. Self-loops are rejected.
class TxGraph {
public:
    explicit TxGraph(bool directed = true) : directed_(directed) {}

    NodeId intern(std::string_view address);
    std::optional<NodeId> find(std::string_view address) const;

    // Throws Error(self_loop_present) when source == target.
    void add_arc(NodeId source, NodeId target, Btc amount, std::int64_t timestamp_ms);

    bool directed() const { return directed_; }
    std::size_t node_count() const { return addresses_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    bool empty() const { return addresses_.empty(); }

    const std::string& address(NodeId id) const { return addresses_.at(id); }
    std::span<const Arc> arcs() const { return arcs_; }

private:
    bool directed_;
    std::vector<std::string> addresses_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<Arc> arcs_;
};

TxGraph build_graph(const ledger::EdgeList& edges);

// Collapses parallel arcs (amounts summed, earliest timestamp kept). The
// undirected mode also merges antiparallel pairs; the surviving arc keeps the
// orientation of its first occurrence. Node set and ids are unchanged.
TxGraph simple_projection(const TxGraph& g, Projection mode);

// Weakly connected node sets, each sorted, ordered by smallest member.
std::vector<std::vector<NodeId>> weak_components(const TxGraph& g);

// Induced subgraph on the largest weak component (ties go to the component
// holding the smallest node id). Nodes are re-interned in original id order.
// Throws Error(empty_graph).
TxGraph giant_component(const TxGraph& g);

// Induced subgraph on `nodes` (sorted ascending), all arcs among them kept.
TxGraph induced_subgraph(const TxGraph& g, std::span<const NodeId> nodes);

void export_graphml(const TxGraph& g, std::ostream& out);
void export_graphml(const TxGraph& g, const std::filesystem::path& path);

// Reads the GraphML dialect written by export_graphml.
TxGraph import_graphml(std::istream& in);
TxGraph import_graphml(const std::filesystem::path& path);

}  // namespace txnet::graph
