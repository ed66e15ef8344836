#include "txnet/ledger.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "txnet/error.hpp"

namespace txnet::ledger {

EdgeList make_edge_list(std::vector<Edge> edges) {
    EdgeList list;
    if (!edges.empty()) {
        list.t0 = edges.front().timestamp_ms;
        list.duration_ms = edges.back().timestamp_ms - list.t0 + 1;
    }
    list.edges = std::move(edges);
    return list;
}

EdgeList window(const EdgeList& edges, std::int64_t t0, std::int64_t duration_ms) {
    if (duration_ms <= 0) throw Error(Errc::invalid_argument, "window duration must be positive");
    EdgeList out;
    out.t0 = t0;
    out.duration_ms = duration_ms;
    for (const auto& e : edges.edges)
        if (e.timestamp_ms >= t0 && e.timestamp_ms - t0 < duration_ms) out.edges.push_back(e);
    return out;
}

std::size_t write_csv(const EdgeList& edges, std::ostream& out) {
    out << csv_header << '\n';
    for (const auto& e : edges.edges)
        out << e.source << ',' << e.target << ',' << e.amount.to_string() << ',' << e.timestamp_ms << '\n';
    if (!out) throw Error(Errc::io_error, "writing edge csv");
    return edges.edges.size();
}

std::size_t write_csv(const EdgeList& edges, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot open " + path.string() + " for writing");
    const auto n = write_csv(edges, out);
    out.flush();
    if (!out) throw Error(Errc::io_error, "writing " + path.string());
    return n;
}

namespace {

[[noreturn]] void bad_line(std::size_t line, const std::string& why) {
    throw Error(Errc::csv_format_error, why, line);
}

}  // namespace

EdgeList read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != csv_header) bad_line(1, std::string("expected header '") + csv_header + "'");

    std::vector<Edge> edges;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view fields[4];
        std::size_t count = 0;
        std::string_view rest(line);
        while (count < 4) {
            const auto comma = rest.find(',');
            fields[count++] = rest.substr(0, comma);
            if (comma == std::string_view::npos) {
                rest = {};
                break;
            }
            rest.remove_prefix(comma + 1);
            if (count == 4) bad_line(line_no, "too many fields");
        }
        if (count != 4) bad_line(line_no, "expected 4 fields");

        Edge e;
        e.source = std::string(fields[0]);
        e.target = std::string(fields[1]);
        if (e.source.empty() || e.target.empty()) bad_line(line_no, "empty address");
        if (!Btc::parse(fields[2], e.amount)) bad_line(line_no, "bad amount '" + std::string(fields[2]) + "'");
        const auto ts = fields[3];
        auto [p, ec] = std::from_chars(ts.data(), ts.data() + ts.size(), e.timestamp_ms);
        if (ec != std::errc{} || p != ts.data() + ts.size() || ts.empty()) bad_line(line_no, "bad timestamp");
        if (!edges.empty() && e.timestamp_ms < edges.back().timestamp_ms) bad_line(line_no, "timestamps decrease");
        edges.push_back(std::move(e));
    }
    if (in.bad()) throw Error(Errc::io_error, "reading edge csv");
    return make_edge_list(std::move(edges));
}

EdgeList read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    return read_csv(in);
}

EdgeList load_edges(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
    std::string first;
    std::getline(in, first);
    in.clear();
    in.seekg(0);
    if (first.starts_with("source,")) return read_csv(in);

    std::vector<Edge> edges;
    ingest::replay(in, [&](const Edge& e) { edges.push_back(e); });
    return make_edge_list(std::move(edges));
}

}  // namespace txnet::ledger
