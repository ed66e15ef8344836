#include "txnet/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>

#include "txnet/error.hpp"

namespace txnet::graph {

NodeId TxGraph::intern(std::string_view address) {
    std::string key(address);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    const auto id = static_cast<NodeId>(addresses_.size());
    addresses_.push_back(key);
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<NodeId> TxGraph::find(std::string_view address) const {
    if (auto it = index_.find(std::string(address)); it != index_.end()) return it->second;
    return std::nullopt;
}

void TxGraph::add_arc(NodeId source, NodeId target, Btc amount, std::int64_t timestamp_ms) {
    if (source >= node_count() || target >= node_count()) throw Error(Errc::invalid_argument, "arc endpoint out of range");
    if (source == target) throw Error(Errc::self_loop_present, "self-loop on " + addresses_[source]);
    arcs_.push_back(Arc{source, target, amount, timestamp_ms});
}

TxGraph build_graph(const ledger::EdgeList& edges) {
    TxGraph g(true);
    for (const auto& e : edges.edges) {
        const NodeId s = g.intern(e.source);
        const NodeId t = g.intern(e.target);
        g.add_arc(s, t, e.amount, e.timestamp_ms);
    }
    return g;
}

TxGraph simple_projection(const TxGraph& g, Projection mode) {
    const bool undirected = mode == Projection::undirected || !g.directed();
    TxGraph out(!undirected);
    for (NodeId v = 0; v < g.node_count(); ++v) out.intern(g.address(v));

    std::map<std::pair<NodeId, NodeId>, std::size_t> slot;
    std::vector<Arc> merged;
    for (const auto& a : g.arcs()) {
        auto key = std::make_pair(a.source, a.target);
        if (undirected && key.first > key.second) std::swap(key.first, key.second);
        auto [it, fresh] = slot.emplace(key, merged.size());
        if (fresh) {
            merged.push_back(a);
        } else {
            auto& m = merged[it->second];
            m.amount += a.amount;
            m.timestamp_ms = std::min(m.timestamp_ms, a.timestamp_ms);
        }
    }
    for (const auto& a : merged) out.add_arc(a.source, a.target, a.amount, a.timestamp_ms);
    return out;
}

namespace {

struct DisjointSets {
    std::vector<NodeId> parent;

    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), NodeId{0}); }

    NodeId find(NodeId v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    }

    void unite(NodeId a, NodeId b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

std::vector<std::vector<NodeId>> weak_components(const TxGraph& g) {
    DisjointSets sets(g.node_count());
    for (const auto& a : g.arcs()) sets.unite(a.source, a.target);

    // Roots are the smallest member, so visiting ids in order yields the
    // components ordered by smallest member.
    std::vector<std::size_t> slot(g.node_count(), SIZE_MAX);
    std::vector<std::vector<NodeId>> components;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        const NodeId root = sets.find(v);
        if (slot[root] == SIZE_MAX) {
            slot[root] = components.size();
            components.emplace_back();
        }
        components[slot[root]].push_back(v);
    }
    return components;
}

TxGraph induced_subgraph(const TxGraph& g, std::span<const NodeId> nodes) {
    TxGraph out(g.directed());
    std::vector<NodeId> remap(g.node_count(), UINT32_MAX);
    for (NodeId v : nodes) remap[v] = out.intern(g.address(v));
    for (const auto& a : g.arcs())
        if (remap[a.source] != UINT32_MAX && remap[a.target] != UINT32_MAX)
            out.add_arc(remap[a.source], remap[a.target], a.amount, a.timestamp_ms);
    return out;
}

TxGraph giant_component(const TxGraph& g) {
    if (g.empty()) throw Error(Errc::empty_graph, "giant component of an empty graph");
    const auto components = weak_components(g);
    const auto* best = &components.front();
    for (const auto& c : components)
        if (c.size() > best->size()) best = &c;
    return induced_subgraph(g, *best);
}

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

void export_graphml(const TxGraph& g, std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\"\n"
           "         xmlns:xsi=\"http://www.w3.org/2001/XMLSchema-instance\"\n"
           "         xsi:schemaLocation=\"http://graphml.graphdrawing.org/xmlns "
           "http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd\">\n"
           "  <key id=\"address\" for=\"node\" attr.name=\"address\" attr.type=\"string\"/>\n"
           "  <key id=\"amount_btc\" for=\"edge\" attr.name=\"amount_btc\" attr.type=\"double\"/>\n"
           "  <key id=\"timestamp_ms\" for=\"edge\" attr.name=\"timestamp_ms\" attr.type=\"long\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\"" << (g.directed() ? "directed" : "undirected") << "\">\n";
    for (NodeId v = 0; v < g.node_count(); ++v)
        out << "    <node id=\"n" << v << "\"><data key=\"address\">" << xml_escape(g.address(v)) << "</data></node>\n";
    std::size_t id = 0;
    for (const auto& a : g.arcs()) {
        out << "    <edge id=\"e" << id++ << "\" source=\"n" << a.source << "\" target=\"n" << a.target << "\">"
            << "<data key=\"amount_btc\">" << a.amount.to_string() << "</data>"
            << "<data key=\"timestamp_ms\">" << a.timestamp_ms << "</data></edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    if (!out) throw Error(Errc::io_error, "writing graphml");
}

void export_graphml(const TxGraph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
    export_graphml(g, out);
    out.flush();
    if (!out) throw Error(Errc::io_error, "writing " + path.string());
}

}  // namespace txnet::graph
