#include <doctest.h>

#include <set>

#include "../support/graphs.hpp"
#include "../support/oracles.hpp"
#include "txnet/error.hpp"
#include "txnet/linkcomm.hpp"

using namespace txnet;
using namespace txnet::linkcomm;
using support::arcs;

namespace {

LinkEdge edge(const TxGraph& g, const char* u, const char* v) { return LinkEdge(*g.find(u), *g.find(v)); }

std::set<std::set<LinkEdge>> as_sets(const CommunityPartition& p) {
    std::set<std::set<LinkEdge>> out;
    for (const auto& c : p.communities) out.emplace(c.begin(), c.end());
    return out;
}

TxGraph two_triangles() { return arcs({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"c", "d"}, {"d", "e"}, {"e", "c"}}); }

}  // namespace

TEST_SUITE("linkcomm") {

TEST_CASE("edge similarity") {
    const auto path = arcs({{"i", "k"}, {"k", "j"}});
    CHECK(edge_similarity(path, edge(path, "i", "k"), edge(path, "k", "j")) == doctest::Approx(1.0 / 3.0));
    const auto tri = arcs({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    CHECK(edge_similarity(tri, edge(tri, "a", "b"), edge(tri, "a", "c")) == 1.0);
    const auto apart = arcs({{"a", "b"}, {"c", "d"}});
    try {
        edge_similarity(apart, edge(apart, "a", "b"), edge(apart, "c", "d"));
        FAIL("expected NotAdjacent");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::not_adjacent);
    }
}

TEST_CASE("partition density") {
    const auto tri = arcs({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    CHECK(partition_density(tri, {{edge(tri, "a", "b"), edge(tri, "b", "c"), edge(tri, "a", "c")}}) == 1.0);

    const auto tree = arcs({{"a", "b"}, {"b", "c"}, {"b", "d"}});
    CHECK(partition_density(tree, {{edge(tree, "a", "b"), edge(tree, "b", "c"), edge(tree, "b", "d")}}) == 0.0);

    auto two = arcs({{"a", "b"}, {"b", "c"}, {"c", "a"}, {"x", "y"}, {"y", "z"}, {"z", "x"}});
    CHECK(partition_density(two, {{edge(two, "a", "b"), edge(two, "b", "c"), edge(two, "a", "c")},
                                  {edge(two, "x", "y"), edge(two, "y", "z"), edge(two, "x", "z")}}) == 1.0);

    CHECK_THROWS_AS(partition_density(tri, {{edge(tri, "a", "b")}}), Error);
    CHECK_THROWS_AS(partition_density(tri, {{edge(tri, "a", "b"), edge(tri, "b", "c"), edge(tri, "a", "c")},
                                            {edge(tri, "a", "b")}}),
                    Error);
}

TEST_CASE("two triangles sharing a node") {
    const auto g = two_triangles();
    const auto p = detect_link_communities(g);
    REQUIRE(p.communities.size() == 2);
    CHECK(p.communities[0].size() == 3);
    CHECK(p.communities[1].size() == 3);
    CHECK(p.partition_density == 1.0);
    CHECK(p.node_membership[*g.find("c")].size() == 2);
    CHECK(p.node_membership[*g.find("a")].size() == 1);
}

TEST_CASE("single triangle and star") {
    const auto tri = arcs({{"a", "b"}, {"b", "c"}, {"c", "a"}});
    const auto p = detect_link_communities(tri);
    CHECK(p.communities.size() == 1);
    CHECK(p.partition_density == 1.0);

    const auto star = arcs({{"h", "1"}, {"h", "2"}, {"h", "3"}, {"h", "4"}, {"h", "5"}});
    const auto s = detect_link_communities(star);
    CHECK(s.communities.size() == 1);
    CHECK(s.partition_density == 0.0);

    CHECK_THROWS_AS(detect_link_communities(TxGraph{}), Error);
}

TEST_CASE("disjoint cliques are recovered exactly") {
    for (int k : {2, 3, 5}) {
        TxGraph g;
        for (int c = 0; c < k; ++c) support::add_clique(g, "c" + std::to_string(c) + "_", 3 + c % 4);
        const auto p = detect_link_communities(g);
        CHECK(p.communities.size() == static_cast<std::size_t>(k));
        CHECK(p.partition_density == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("community profiles") {
    const auto star = arcs({{"A", "B"}, {"A", "C"}, {"A", "D"}});
    const auto sp = community_profiles(star, detect_link_communities(star));
    REQUIRE(sp.size() == 1);
    for (const auto& n : sp[0].nodes) {
        if (star.address(n.node) == "A") {
            CHECK(n.out_degree == 3);
            CHECK(n.in_degree == 0);
        } else {
            CHECK(n.out_degree == 0);
            CHECK(n.in_degree == 1);
        }
    }

    const auto cycle = arcs({{"A", "B"}, {"B", "C"}, {"C", "A"}});
    const auto cp = community_profiles(cycle, detect_link_communities(cycle));
    REQUIRE(cp.size() == 1);
    for (const auto& n : cp[0].nodes) {
        CHECK(n.in_degree == 1);
        CHECK(n.out_degree == 1);
    }
}

TEST_CASE("partition invariants and oracle agreement on random graphs") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
        CAPTURE(seed);
        const auto g = oracle::random_graph(seed, 10, 24);
        if (g.arc_count() == 0) continue;
        const auto p = detect_link_communities(g);
        const auto expected = oracle::link_communities(g);
        CHECK(as_sets(p) == expected.communities);
        CHECK(p.partition_density == doctest::Approx(expected.density).epsilon(1e-12));

        std::size_t edges = 0;
        for (const auto& c : p.communities) edges += c.size();
        const auto profiles = community_profiles(g, p);
        std::size_t profiled = 0;
        for (const auto& pr : profiles) profiled += pr.edge_count;
        CHECK(profiled == edges);

        for (graph::NodeId v = 0; v < g.node_count(); ++v) {
            std::vector<std::size_t> expected_membership;
            for (std::size_t c = 0; c < p.communities.size(); ++c)
                for (const auto& e : p.communities[c])
                    if (e.a == v || e.b == v) {
                        expected_membership.push_back(c);
                        break;
                    }
            CHECK(p.node_membership[v] == expected_membership);
        }
    }
}

}
