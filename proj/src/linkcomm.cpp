#include "txnet/linkcomm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>
#include <unordered_set>

#include "txnet/error.hpp"

namespace txnet::linkcomm {

namespace {

struct SimpleGraph {
    std::vector<std::vector<NodeId>> neighbors;  // sorted
    std::vector<LinkEdge> edges;                 // sorted

    explicit SimpleGraph(const TxGraph& g) : neighbors(g.node_count()) {
        for (const auto& a : g.arcs()) edges.emplace_back(a.source, a.target);
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (const auto& e : edges) {
            neighbors[e.a].push_back(e.b);
            neighbors[e.b].push_back(e.a);
        }
        for (auto& n : neighbors) std::sort(n.begin(), n.end());
    }

    bool adjacent(NodeId u, NodeId v) const {
        return std::binary_search(neighbors[u].begin(), neighbors[u].end(), v);
    }

    std::size_t index_of(LinkEdge e) const {
        const auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) return SIZE_MAX;
        return static_cast<std::size_t>(it - edges.begin());
    }
};

// |n+(i) ∩ n+(j)| and |n+(i) ∪ n+(j)| for distinct i, j.
struct Ratio {
    std::uint64_t num = 0;
    std::uint64_t den = 1;
};

Ratio inclusive_jaccard(const SimpleGraph& sg, NodeId i, NodeId j) {
    const auto& ni = sg.neighbors[i];
    const auto& nj = sg.neighbors[j];
    std::uint64_t common = 0;
    for (auto p = ni.begin(), q = nj.begin(); p != ni.end() && q != nj.end();) {
        if (*p < *q) ++p;
        else if (*q < *p) ++q;
        else {
            ++common;
            ++p;
            ++q;
        }
    }
    // i ∈ n+(j) and j ∈ n+(i) exactly when i and j are adjacent
    if (sg.adjacent(i, j)) common += 2;
    const std::uint64_t uni = (ni.size() + 1) + (nj.size() + 1) - common;
    return Ratio{common, uni};
}

struct EdgePair {
    Ratio sim;
    std::uint32_t first = 0;   // edge indices, first < second
    std::uint32_t second = 0;
};

bool more_similar(const Ratio& x, const Ratio& y) { return x.num * y.den > y.num * x.den; }
bool same_similarity(const Ratio& x, const Ratio& y) { return x.num * y.den == y.num * x.den; }

std::vector<EdgePair> adjacent_pairs(const SimpleGraph& sg) {
    std::vector<EdgePair> pairs;
    for (NodeId k = 0; k < sg.neighbors.size(); ++k) {
        const auto& nk = sg.neighbors[k];
        for (std::size_t x = 0; x < nk.size(); ++x) {
            for (std::size_t y = x + 1; y < nk.size(); ++y) {
                auto e1 = static_cast<std::uint32_t>(sg.index_of(LinkEdge(k, nk[x])));
                auto e2 = static_cast<std::uint32_t>(sg.index_of(LinkEdge(k, nk[y])));
                if (e1 > e2) std::swap(e1, e2);
                pairs.push_back(EdgePair{inclusive_jaccard(sg, nk[x], nk[y]), e1, e2});
            }
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const EdgePair& p, const EdgePair& q) {
        if (more_similar(p.sim, q.sim)) return true;
        if (more_similar(q.sim, p.sim)) return false;
        return std::tie(p.first, p.second) < std::tie(q.first, q.second);
    });
    return pairs;
}

long double density_term(std::uint64_t m, std::uint64_t n) {
    if (n <= 2) return 0.0L;
    const auto md = static_cast<long double>(m);
    const auto nd = static_cast<long double>(n);
    return md * (md - (nd - 1)) / ((nd - 2) * (nd - 1));
}

// Union-find over edges tracking each cluster's edge count and node set.
class EdgeClusters {
public:
    explicit EdgeClusters(const SimpleGraph& sg)
        : parent_(sg.edges.size()), edges_(sg.edges.size(), 1), nodes_(sg.edges.size()) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
        for (std::size_t i = 0; i < sg.edges.size(); ++i) nodes_[i] = {sg.edges[i].a, sg.edges[i].b};
    }

    std::size_t find(std::size_t e) {
        while (parent_[e] != e) {
            parent_[e] = parent_[parent_[e]];
            e = parent_[e];
        }
        return e;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        density_sum_ -= density_term(edges_[x], nodes_[x].size()) + density_term(edges_[y], nodes_[y].size());
        if (nodes_[x].size() < nodes_[y].size()) std::swap(x, y);
        nodes_[x].insert(nodes_[y].begin(), nodes_[y].end());
        nodes_[y] = {};
        edges_[x] += edges_[y];
        parent_[y] = x;
        density_sum_ += density_term(edges_[x], nodes_[x].size());
    }

    long double density_sum() const { return density_sum_; }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::uint64_t> edges_;
    std::vector<std::unordered_set<NodeId>> nodes_;
    long double density_sum_ = 0.0L;
};

std::vector<std::size_t> community_of_edges(const SimpleGraph& sg, const std::vector<std::vector<LinkEdge>>& communities) {
    std::vector<std::size_t> owner(sg.edges.size(), SIZE_MAX);
    for (std::size_t c = 0; c < communities.size(); ++c) {
        for (const auto& e : communities[c]) {
            const auto i = sg.index_of(e);
            if (i == SIZE_MAX) throw Error(Errc::invalid_partition, "edge not in graph");
            if (owner[i] != SIZE_MAX) throw Error(Errc::invalid_partition, "edge assigned twice");
            owner[i] = c;
        }
    }
    if (std::find(owner.begin(), owner.end(), SIZE_MAX) != owner.end())
        throw Error(Errc::invalid_partition, "edge missing from partition");
    return owner;
}

}  // namespace

double edge_similarity(const TxGraph& g, LinkEdge e1, LinkEdge e2) {
    const SimpleGraph sg(g);
    if (sg.index_of(e1) == SIZE_MAX || sg.index_of(e2) == SIZE_MAX)
        throw Error(Errc::invalid_argument, "edge not in graph");
    if (e1 == e2) throw Error(Errc::not_adjacent, "edges share both endpoints");
    // non-shared endpoints of the two edges
    NodeId i = 0;
    NodeId j = 0;
    if (e1.a == e2.a) {
        i = e1.b;
        j = e2.b;
    } else if (e1.a == e2.b) {
        i = e1.b;
        j = e2.a;
    } else if (e1.b == e2.a) {
        i = e1.a;
        j = e2.b;
    } else if (e1.b == e2.b) {
        i = e1.a;
        j = e2.a;
    } else {
        throw Error(Errc::not_adjacent, "edges share no endpoint");
    }
    const auto r = inclusive_jaccard(sg, i, j);
    return static_cast<double>(r.num) / static_cast<double>(r.den);
}

double partition_density(const TxGraph& g, const std::vector<std::vector<LinkEdge>>& communities) {
    const SimpleGraph sg(g);
    community_of_edges(sg, communities);
    if (sg.edges.empty()) return 0.0;
    long double sum = 0;
    for (const auto& c : communities) {
        std::unordered_set<NodeId> nodes;
        for (const auto& e : c) {
            nodes.insert(e.a);
            nodes.insert(e.b);
        }
        sum += density_term(c.size(), nodes.size());
    }
    return static_cast<double>(2.0L * sum / static_cast<long double>(sg.edges.size()));
}

CommunityPartition detect_link_communities(const TxGraph& g) {
    if (g.empty()) throw Error(Errc::empty_graph, "link communities of an empty graph");
    const SimpleGraph sg(g);
    const auto pairs = adjacent_pairs(sg);
    const auto total = static_cast<long double>(sg.edges.size());

    // Sweep the dendrogram level by level; `cut` is the number of pairs
    // applied in the best cut so far.
    constexpr long double tie = 1e-12L;
    std::size_t cut = 0;
    long double best = 0.0L;
    {
        EdgeClusters clusters(sg);
        std::size_t i = 0;
        while (i < pairs.size()) {
            std::size_t j = i;
            while (j < pairs.size() && same_similarity(pairs[j].sim, pairs[i].sim)) {
                clusters.unite(pairs[j].first, pairs[j].second);
                ++j;
            }
            const long double density = 2.0L * clusters.density_sum() / total;
            if (density >= best - tie) {
                best = std::max(best, density);
                cut = j;
            }
            i = j;
        }
    }

    EdgeClusters clusters(sg);
    for (std::size_t k = 0; k < cut; ++k) clusters.unite(pairs[k].first, pairs[k].second);

    std::map<std::size_t, std::vector<LinkEdge>> grouped;
    for (std::size_t e = 0; e < sg.edges.size(); ++e) grouped[clusters.find(e)].push_back(sg.edges[e]);

    CommunityPartition out;
    for (auto& [root, edges] : grouped) out.communities.push_back(std::move(edges));
    std::sort(out.communities.begin(), out.communities.end(), [](const auto& x, const auto& y) {
        if (x.size() != y.size()) return x.size() > y.size();
        return x.front() < y.front();
    });

    out.node_membership.assign(g.node_count(), {});
    for (std::size_t c = 0; c < out.communities.size(); ++c) {
        for (const auto& e : out.communities[c]) {
            for (NodeId v : {e.a, e.b}) {
                auto& m = out.node_membership[v];
                if (m.empty() || m.back() != c) m.push_back(c);
            }
        }
    }
    out.partition_density = partition_density(g, out.communities);
    return out;
}

std::vector<CommunityProfile> community_profiles(const TxGraph& g, const CommunityPartition& partition) {
    const SimpleGraph sg(g);
    const auto owner = community_of_edges(sg, partition.communities);

    std::vector<std::map<NodeId, NodeDegrees>> per(partition.communities.size());
    for (std::size_t c = 0; c < partition.communities.size(); ++c) {
        for (const auto& e : partition.communities[c]) {
            per[c].try_emplace(e.a, NodeDegrees{e.a, 0, 0});
            per[c].try_emplace(e.b, NodeDegrees{e.b, 0, 0});
        }
    }
    for (const auto& a : g.arcs()) {
        const auto c = owner[sg.index_of(LinkEdge(a.source, a.target))];
        ++per[c][a.source].out_degree;
        ++per[c][a.target].in_degree;
    }

    std::vector<CommunityProfile> profiles;
    for (std::size_t c = 0; c < per.size(); ++c) {
        CommunityProfile p;
        p.index = c;
        p.edge_count = partition.communities[c].size();
        p.node_count = per[c].size();
        for (const auto& [node, degrees] : per[c]) p.nodes.push_back(degrees);
        profiles.push_back(std::move(p));
    }
    return profiles;
}

}  // namespace txnet::linkcomm
