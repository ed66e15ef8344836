#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "txnet/amount.hpp"

namespace txnet::ingest {

struct TxEntry {
    std::string address;
    std::uint64_t value_satoshi = 0;

    friend bool operator==(const TxEntry&, const TxEntry&) = default;
};

// One parsed "utx" feed message. inputs and outputs are never empty.
struct Transaction {
    std::string tx_id;
    std::int64_t received_at = 0;  // ms since epoch, local receipt clock
    std::vector<TxEntry> inputs;
    std::vector<TxEntry> outputs;

    friend bool operator==(const Transaction&, const Transaction&) = default;
};

// A directed value transfer between two addresses.
struct Edge {
    std::string source;
    std::string target;
    Btc amount;
    std::int64_t timestamp_ms = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

// Any well-formed frame whose "op" is not "utx".
struct Ignored {
    std::string op;
};

using FeedMessage = std::variant<Transaction, Ignored>;

inline constexpr std::string_view subscribe_message = R"({"op":"unconfirmed_sub"})";
inline constexpr std::string_view default_endpoint = "wss://ws.blockchain.info/inv";

// Throws Error(malformed_message) for invalid JSON, a missing "op", or a utx
// payload without inputs, outputs or addresses.
FeedMessage parse_feed_message(std::string_view raw, std::int64_t received_at_ms = 0);

Btc satoshi_to_btc(std::uint64_t value_satoshi);

// Input x output cartesian product. Each output value is split across inputs
// in proportion to input value, in integer satoshi with largest-remainder
// rounding; pairs with the same address on both sides are dropped.
// Throws Error(zero_input_value) when the inputs sum to zero.
std::vector<Edge> extract_edges(const Transaction& tx);

using EdgeSink = std::function<void(const Edge&)>;

struct CaptureSummary {
    std::uint64_t transactions = 0;
    std::uint64_t edges = 0;
    std::uint64_t ignored = 0;
    std::uint64_t malformed = 0;
    std::uint64_t zero_input = 0;       // utx frames skipped for zero input value
    std::uint64_t duplicate_tx_ids = 0;  // counted, not suppressed
    bool truncated = false;             // peer closed before the duration elapsed

    friend bool operator==(const CaptureSummary&, const CaptureSummary&) = default;
};

// Frame-level bookkeeping shared by live capture and replay.
class FeedProcessor {
public:
    FeedProcessor(EdgeSink sink, std::ostream* log);

    // Classifies one text frame; utx frames are appended to the capture log
    // and their edges forwarded to the sink.
    void on_frame(std::string_view raw, std::int64_t received_at_ms);

    // Counts the transaction and forwards its edges; used directly by replay.
    void on_transaction(const Transaction& tx);

    const CaptureSummary& summary() const { return summary_; }
    CaptureSummary& summary() { return summary_; }

private:
    EdgeSink sink_;
    std::ostream* log_;
    CaptureSummary summary_;
    std::unordered_set<std::string> seen_ids_;
};

struct Endpoint {
    bool tls = false;
    std::string host;
    std::string port;
    std::string target;
};

// ws://host[:port][/path] or wss://...; throws Error(invalid_argument).
Endpoint parse_endpoint(std::string_view url);

struct CaptureOptions {
    std::string endpoint{default_endpoint};
    std::chrono::milliseconds duration{0};
    std::ostream* log = nullptr;  // receives the JSON-lines capture log
};

// Subscribes to the live feed and records it for `duration`. Throws
// Error(connect_failed) when the endpoint cannot be reached. A peer that
// closes early yields a summary with truncated = true.
CaptureSummary capture(const CaptureOptions& options, const EdgeSink& sink);

// Re-emits the edge sequence of a recorded capture log. Throws
// Error(corrupt_log) with the line number of the first bad record.
CaptureSummary replay(std::istream& log, const EdgeSink& sink);
CaptureSummary replay(const std::filesystem::path& log, const EdgeSink& sink);

}  // namespace txnet::ingest
