#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "txnet/ingest.hpp"

namespace txnet::ledger {

using ingest::Edge;

// A snapshot window: edges with timestamps in [t0, t0 + duration_ms), in
// non-decreasing timestamp order.
struct EdgeList {
    std::vector<Edge> edges;
    std::int64_t t0 = 0;
    std::int64_t duration_ms = 0;

    friend bool operator==(const EdgeList&, const EdgeList&) = default;
};

inline constexpr const char* csv_header = "source,target,amount_btc,timestamp_ms";

// Wraps an arrival-ordered edge sequence; t0 is the first timestamp and the
// window just covers the last one.
EdgeList make_edge_list(std::vector<Edge> edges);

// Half-open [t0, t0 + duration_ms); order preserved. duration_ms must be > 0.
EdgeList window(const EdgeList& edges, std::int64_t t0, std::int64_t duration_ms);

std::size_t write_csv(const EdgeList& edges, std::ostream& out);
std::size_t write_csv(const EdgeList& edges, const std::filesystem::path& path);

// Throws Error(csv_format_error) with the offending 1-based line number, or
// Error(io_error). The header counts as line 1.
EdgeList read_csv(std::istream& in);
EdgeList read_csv(const std::filesystem::path& path);

// Reads either an edge CSV or a capture log, sniffing the first line.
EdgeList load_edges(const std::filesystem::path& path);

}  // namespace txnet::ledger
