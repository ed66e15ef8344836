#include "txnet/json_io.hpp"

#include <algorithm>
#include <map>

#include "txnet/error.hpp"

namespace txnet::json_io {

Json to_json(const ingest::CaptureSummary& s) {
    Json j;
    j["transactions"] = s.transactions;
    j["edges"] = s.edges;
    j["ignored"] = s.ignored;
    j["malformed"] = s.malformed;
    j["zero_input"] = s.zero_input;
    j["duplicate_tx_ids"] = s.duplicate_tx_ids;
    j["truncated"] = s.truncated;
    return j;
}

Json to_json(const metrics::MetricsReport& r, const std::string& label, std::int64_t generated_at_ms) {
    Json j;
    j["snapshot_label"] = label;
    j["generated_at_ms"] = generated_at_ms;
    j["nodes"] = r.nodes;
    j["edges"] = r.edges;
    j["diameter"] = r.diameter ? Json(*r.diameter) : Json(nullptr);
    j["max_clique_size"] = r.max_clique_size;
    j["dyads_connected"] = r.dyads_connected;
    j["triangles"] = r.triangles;
    j["reciprocity"] = r.reciprocity;
    j["transitivity_global"] = r.transitivity_global;
    j["transitivity_avg_local"] = r.transitivity_avg_local;
    j["mean_degree"] = r.mean_degree;
    j["mean_distance"] = r.mean_distance ? Json(*r.mean_distance) : Json(nullptr);
    return j;
}

Json to_json(const distfit::ModelFit& fit) {
    Json params = std::visit(
        [](const auto& p) -> Json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, distfit::PowerLaw>) return {{"alpha", p.alpha}};
            else if constexpr (std::is_same_v<T, distfit::LogNormal>) return {{"mu", p.mu}, {"sigma", p.sigma}};
            else return {{"lambda", p.lambda}};
        },
        fit.params);
    Json j;
    j["family"] = distfit::family_name(fit.family());
    j["params"] = std::move(params);
    j["xmin"] = fit.xmin;
    j["xmin_scanned"] = fit.xmin_scanned;
    j["n_tail"] = fit.n_tail;
    j["ks_stat"] = fit.ks_stat;
    j["log_likelihood"] = fit.log_likelihood;
    return j;
}

Json to_json(const distfit::GofResult& gof) {
    return Json{{"p_value", gof.p_value}, {"replicates", gof.replicates}, {"seed", gof.seed}};
}

Json to_json(const distfit::GrowthFit& fit) {
    return Json{{"intercept", fit.intercept}, {"slope", fit.slope}, {"r_squared", fit.r_squared}};
}

Json to_json(const graph::TxGraph& g, const linkcomm::CommunityPartition& partition,
             const std::vector<linkcomm::CommunityProfile>& profiles) {
    std::map<linkcomm::LinkEdge, std::pair<graph::NodeId, graph::NodeId>> orientation;
    for (const auto& a : g.arcs()) orientation.try_emplace(linkcomm::LinkEdge(a.source, a.target), a.source, a.target);

    Json communities = Json::array();
    for (const auto& c : partition.communities) {
        Json edges = Json::array();
        for (const auto& e : c) {
            const auto [s, t] = orientation.at(e);
            edges.push_back(Json::array({g.address(s), g.address(t)}));
        }
        communities.push_back(std::move(edges));
    }

    Json prof = Json::array();
    for (const auto& p : profiles) {
        Json nodes = Json::array();
        for (const auto& n : p.nodes)
            nodes.push_back({{"address", g.address(n.node)}, {"in_degree", n.in_degree}, {"out_degree", n.out_degree}});
        prof.push_back({{"index", p.index}, {"edge_count", p.edge_count}, {"node_count", p.node_count}, {"nodes", std::move(nodes)}});
    }

    Json j;
    j["partition_density"] = partition.partition_density;
    j["community_count"] = partition.communities.size();
    j["communities"] = std::move(communities);
    j["profiles"] = std::move(prof);
    return j;
}

Json summarize_partition(const Json& document, std::size_t top) {
    auto bad = [](const std::string& why) { return Error(Errc::invalid_partition, why); };
    if (!document.is_object() || !document.contains("communities") || !document["communities"].is_array() ||
        !document.contains("profiles") || !document["profiles"].is_array() ||
        !document.contains("partition_density") || !document["partition_density"].is_number())
        throw bad("partition document needs communities, profiles and partition_density");

    const auto& profiles = document["profiles"];
    if (profiles.size() != document["communities"].size()) throw bad("one profile per community expected");

    std::uint64_t edges = 0;
    Json largest = Json::array();
    for (const auto& p : profiles) {
        if (!p.is_object() || !p.contains("edge_count") || !p.contains("nodes") || !p["nodes"].is_array())
            throw bad("malformed profile");
        edges += p["edge_count"].get<std::uint64_t>();
        if (largest.size() >= top) continue;
        std::uint64_t max_in = 0;
        std::uint64_t max_out = 0;
        for (const auto& n : p["nodes"]) {
            max_in = std::max(max_in, n.at("in_degree").get<std::uint64_t>());
            max_out = std::max(max_out, n.at("out_degree").get<std::uint64_t>());
        }
        largest.push_back({{"index", p.at("index")},
                           {"edge_count", p.at("edge_count")},
                           {"node_count", p.at("node_count")},
                           {"max_in_degree", max_in},
                           {"max_out_degree", max_out}});
    }
    return Json{{"community_count", profiles.size()},
                {"edges", edges},
                {"partition_density", document["partition_density"]},
                {"largest", std::move(largest)}};
}

}  // namespace txnet::json_io
