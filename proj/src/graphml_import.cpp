#include <charconv>
#include <fstream>
#include <map>
#include <string>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "txnet/error.hpp"
#include "txnet/graph.hpp"

namespace txnet::graph {

namespace pt = boost::property_tree;

namespace {

[[noreturn]] void bad(const std::string& why) { throw Error(Errc::graphml_format_error, why); }

std::string attr(const pt::ptree& node, const char* name) {
    auto value = node.get_optional<std::string>(std::string("<xmlattr>.") + name);
    if (!value) bad(std::string("missing attribute ") + name);
    return *value;
}

// data key id -> attr.name, for one domain ("node" or "edge")
using KeyNames = std::map<std::string, std::string>;

std::map<std::string, std::string> data_values(const pt::ptree& element, const KeyNames& keys) {
    std::map<std::string, std::string> values;
    for (const auto& [tag, child] : element) {
        if (tag != "data") continue;
        const auto key = attr(child, "key");
        const auto it = keys.find(key);
        values[it == keys.end() ? key : it->second] = child.get_value<std::string>();
    }
    return values;
}

}  // namespace

TxGraph import_graphml(std::istream& in) {
    pt::ptree doc;
    try {
        pt::read_xml(in, doc);
    } catch (const pt::xml_parser_error& e) {
        bad(e.what());
    }
    const auto root = doc.get_child_optional("graphml");
    if (!root) bad("no <graphml> root");

    KeyNames node_keys;
    KeyNames edge_keys;
    for (const auto& [tag, child] : *root) {
        if (tag != "key") continue;
        const auto domain = child.get<std::string>("<xmlattr>.for", "all");
        // "attr.name" contains the default path separator
        const auto name = child.get<std::string>(pt::ptree::path_type("<xmlattr>/attr.name", '/'), attr(child, "id"));
        if (domain == "node" || domain == "all") node_keys[attr(child, "id")] = name;
        if (domain == "edge" || domain == "all") edge_keys[attr(child, "id")] = name;
    }

    const auto graph = root->get_child_optional("graph");
    if (!graph) bad("no <graph> element");
    TxGraph g(graph->get<std::string>("<xmlattr>.edgedefault", "directed") == "directed");

    std::map<std::string, NodeId> ids;
    for (const auto& [tag, child] : *graph) {
        if (tag != "node") continue;
        const auto id = attr(child, "id");
        const auto values = data_values(child, node_keys);
        const auto address = values.find("address");
        ids[id] = g.intern(address == values.end() ? id : address->second);
    }
    for (const auto& [tag, child] : *graph) {
        if (tag != "edge") continue;
        const auto source = ids.find(attr(child, "source"));
        const auto target = ids.find(attr(child, "target"));
        if (source == ids.end() || target == ids.end()) bad("edge references an unknown node");
        const auto values = data_values(child, edge_keys);

        Btc amount;
        if (auto it = values.find("amount_btc"); it != values.end() && !Btc::parse(it->second, amount))
            bad("bad amount_btc '" + it->second + "'");
        std::int64_t timestamp = 0;
        if (auto it = values.find("timestamp_ms"); it != values.end()) {
            const auto& text = it->second;
            auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), timestamp);
            if (ec != std::errc{} || p != text.data() + text.size()) bad("bad timestamp_ms '" + text + "'");
        }
        g.add_arc(source->second, target->second, amount, timestamp);
    }
    return g;
}

TxGraph import_graphml(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    return import_graphml(in);
}

}  // namespace txnet::graph
