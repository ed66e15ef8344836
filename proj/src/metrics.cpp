#include "txnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "txnet/error.hpp"

namespace txnet::metrics {

namespace {

using Neighbors = std::vector<std::vector<NodeId>>;

void sort_unique(Neighbors& lists) {
    for (auto& l : lists) {
        std::sort(l.begin(), l.end());
        l.erase(std::unique(l.begin(), l.end()), l.end());
    }
}

// Simple-projection adjacency; parallel arcs collapse on construction.
struct Adjacency {
    Neighbors out;
    Neighbors in;
    Neighbors und;

    explicit Adjacency(const TxGraph& g) : out(g.node_count()), in(g.node_count()), und(g.node_count()) {
        for (const auto& a : g.arcs()) {
            out[a.source].push_back(a.target);
            in[a.target].push_back(a.source);
            und[a.source].push_back(a.target);
            und[a.target].push_back(a.source);
            if (!g.directed()) {
                out[a.target].push_back(a.source);
                in[a.source].push_back(a.target);
            }
        }
        sort_unique(out);
        sort_unique(in);
        sort_unique(und);
    }

    std::size_t size() const { return und.size(); }
};

bool has(const std::vector<NodeId>& sorted, NodeId v) { return std::binary_search(sorted.begin(), sorted.end(), v); }

DyadCensus census(const TxGraph& g, const Adjacency& adj) {
    DyadCensus c;
    for (NodeId u = 0; u < adj.size(); ++u) {
        for (NodeId v : adj.und[u]) {
            if (v <= u) continue;
            const bool forward = has(adj.out[u], v);
            const bool backward = has(adj.out[v], u);
            if (forward && backward) ++c.mutual;
            else ++c.asymmetric;
        }
    }
    const std::uint64_t n = g.node_count();
    c.null = n * (n == 0 ? 0 : n - 1) / 2 - c.mutual - c.asymmetric;
    return c;
}

// Triangles through each node, plus the total.
struct TriangleCounts {
    std::vector<std::uint64_t> at_node;
    std::uint64_t total = 0;
};

TriangleCounts triangles(const Adjacency& adj) {
    TriangleCounts t;
    t.at_node.assign(adj.size(), 0);
    std::vector<NodeId> common;
    for (NodeId u = 0; u < adj.size(); ++u) {
        const auto& nu = adj.und[u];
        for (auto it = std::upper_bound(nu.begin(), nu.end(), u); it != nu.end(); ++it) {
            const NodeId v = *it;
            const auto& nv = adj.und[v];
            common.clear();
            std::set_intersection(std::upper_bound(nu.begin(), nu.end(), v), nu.end(),
                                  std::upper_bound(nv.begin(), nv.end(), v), nv.end(), std::back_inserter(common));
            for (NodeId w : common) {
                ++t.at_node[u];
                ++t.at_node[v];
                ++t.at_node[w];
                ++t.total;
            }
        }
    }
    return t;
}

std::uint64_t pairs(std::uint64_t d) { return d < 2 ? 0 : d * (d - 1) / 2; }

double global_transitivity(const Adjacency& adj, const TriangleCounts& t) {
    std::uint64_t triples = 0;
    for (const auto& n : adj.und) triples += pairs(n.size());
    return triples == 0 ? 0.0 : 3.0 * static_cast<double>(t.total) / static_cast<double>(triples);
}

double avg_local_transitivity(const Adjacency& adj, const TriangleCounts& t) {
    double sum = 0;
    std::uint64_t eligible = 0;
    for (NodeId v = 0; v < adj.size(); ++v) {
        const auto d = adj.und[v].size();
        if (d < 2) continue;
        sum += static_cast<double>(t.at_node[v]) / static_cast<double>(pairs(d));
        ++eligible;
    }
    return eligible == 0 ? 0.0 : sum / static_cast<double>(eligible);
}

double reciprocity_of(const Adjacency& adj) {
    std::uint64_t arcs = 0;
    std::uint64_t reciprocated = 0;
    for (NodeId u = 0; u < adj.size(); ++u) {
        for (NodeId v : adj.out[u]) {
            ++arcs;
            if (has(adj.out[v], u)) ++reciprocated;
        }
    }
    return arcs == 0 ? 0.0 : static_cast<double>(reciprocated) / static_cast<double>(arcs);
}

DistanceStats distances(const Adjacency& adj, DistanceMode mode) {
    const Neighbors& next = mode == DistanceMode::directed ? adj.out : adj.und;
    DistanceStats s;
    std::vector<std::uint32_t> dist(adj.size(), UINT32_MAX);
    std::vector<NodeId> queue;
    queue.reserve(adj.size());
    for (NodeId source = 0; source < adj.size(); ++source) {
        if (next[source].empty()) continue;
        queue.clear();
        queue.push_back(source);
        dist[source] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const NodeId u = queue[head];
            for (NodeId v : next[u]) {
                if (dist[v] != UINT32_MAX) continue;
                dist[v] = dist[u] + 1;
                queue.push_back(v);
                ++s.reachable_pairs;
                s.path_length_sum += dist[v];
                s.diameter = std::max<std::uint64_t>(s.diameter, dist[v]);
            }
        }
        for (NodeId v : queue) dist[v] = UINT32_MAX;
    }
    return s;
}

// Bron-Kerbosch with Tomita pivoting over sorted candidate vectors.
class CliqueEnumerator {
public:
    CliqueEnumerator(const Adjacency& adj, std::uint64_t budget) : adj_(adj), budget_(budget) {}

    std::vector<std::vector<NodeId>> run() {
        std::vector<NodeId> candidates;
        for (NodeId v = 0; v < adj_.size(); ++v)
            if (!adj_.und[v].empty()) candidates.push_back(v);
        std::vector<NodeId> clique;
        expand(clique, std::move(candidates), {});
        std::sort(found_.begin(), found_.end());
        return std::move(found_);
    }

private:
    static std::vector<NodeId> intersect(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
        std::vector<NodeId> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    void expand(std::vector<NodeId>& clique, std::vector<NodeId> candidates, std::vector<NodeId> excluded) {
        if (candidates.empty()) {
            if (excluded.empty() && clique.size() >= 2) {
                if (found_.size() >= budget_)
                    throw Error(Errc::clique_budget_exceeded, "more than " + std::to_string(budget_) + " maximal cliques");
                auto sorted = clique;
                std::sort(sorted.begin(), sorted.end());
                found_.push_back(std::move(sorted));
            }
            return;
        }

        NodeId pivot = candidates.front();
        std::size_t best = 0;
        for (const auto* pool : {&candidates, &excluded}) {
            for (NodeId u : *pool) {
                const auto n = intersect(candidates, adj_.und[u]).size();
                if (n > best || (n == best && u < pivot)) {
                    best = n;
                    pivot = u;
                }
            }
        }

        std::vector<NodeId> branch;
        std::set_difference(candidates.begin(), candidates.end(), adj_.und[pivot].begin(), adj_.und[pivot].end(),
                            std::back_inserter(branch));
        for (NodeId v : branch) {
            clique.push_back(v);
            expand(clique, intersect(candidates, adj_.und[v]), intersect(excluded, adj_.und[v]));
            clique.pop_back();
            candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
            excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
        }
    }

    const Adjacency& adj_;
    std::uint64_t budget_;
    std::vector<std::vector<NodeId>> found_;
};

std::uint64_t largest_clique(const TxGraph& g, const Adjacency& adj, std::uint64_t budget) {
    if (g.node_count() == 0) return 0;
    std::uint64_t best = 1;
    for (const auto& c : CliqueEnumerator(adj, budget).run()) best = std::max<std::uint64_t>(best, c.size());
    return best;
}

}  // namespace

std::vector<std::uint64_t> degree_sequence(const TxGraph& g, DegreeMode mode) {
    std::vector<std::uint64_t> degree(g.node_count(), 0);
    for (const auto& a : g.arcs()) {
        if (mode != DegreeMode::in) ++degree[a.source];
        if (mode != DegreeMode::out) ++degree[a.target];
    }
    return degree;
}

double mean_degree(std::uint64_t nodes, std::uint64_t edges) {
    if (nodes == 0) throw Error(Errc::empty_graph, "mean degree of an empty graph");
    return static_cast<double>(2 * edges) / static_cast<double>(nodes);
}

double mean_degree(const TxGraph& g) { return mean_degree(g.node_count(), g.arc_count()); }

DyadCensus dyad_census(const TxGraph& g) { return census(g, Adjacency(g)); }

std::uint64_t triangle_count(const TxGraph& g) { return triangles(Adjacency(g)).total; }

double transitivity_global(const TxGraph& g) {
    const Adjacency adj(g);
    return global_transitivity(adj, triangles(adj));
}

double transitivity_avg_local(const TxGraph& g) {
    const Adjacency adj(g);
    return avg_local_transitivity(adj, triangles(adj));
}

double reciprocity(const TxGraph& g) { return reciprocity_of(Adjacency(g)); }

DistanceStats distance_stats(const TxGraph& g, DistanceMode mode) { return distances(Adjacency(g), mode); }

double mean_distance(const TxGraph& g, DistanceMode mode) {
    const auto s = distance_stats(g, mode);
    if (s.reachable_pairs == 0) throw Error(Errc::no_reachable_pairs, "mean distance undefined");
    return static_cast<double>(s.path_length_sum) / static_cast<double>(s.reachable_pairs);
}

std::uint64_t diameter(const TxGraph& g, DistanceMode mode) {
    const auto s = distance_stats(g, mode);
    if (s.reachable_pairs == 0) throw Error(Errc::no_reachable_pairs, "diameter undefined");
    return s.diameter;
}

std::vector<std::vector<NodeId>> maximal_cliques(const TxGraph& g, std::uint64_t budget) {
    return CliqueEnumerator(Adjacency(g), budget).run();
}

std::uint64_t max_clique_size(const TxGraph& g, std::uint64_t budget) {
    return largest_clique(g, Adjacency(g), budget);
}

MetricsReport snapshot_report(const TxGraph& g, DistanceMode mode, std::uint64_t clique_budget) {
    const Adjacency adj(g);
    const auto tri = triangles(adj);
    const auto dist = distances(adj, mode);

    MetricsReport r;
    r.nodes = g.node_count();
    r.edges = g.arc_count();
    r.mean_degree = r.nodes == 0 ? 0.0 : mean_degree(r.nodes, r.edges);
    r.dyads_connected = census(g, adj).connected();
    r.triangles = tri.total;
    r.transitivity_global = global_transitivity(adj, tri);
    r.transitivity_avg_local = avg_local_transitivity(adj, tri);
    r.reciprocity = std::round(reciprocity_of(adj) * 1e4) / 1e4;
    r.max_clique_size = largest_clique(g, adj, clique_budget);
    if (dist.reachable_pairs > 0) {
        r.diameter = dist.diameter;
        r.mean_distance = static_cast<double>(dist.path_length_sum) / static_cast<double>(dist.reachable_pairs);
    }
    return r;
}

}  // namespace txnet::metrics
