#include "txnet/ingest.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "txnet/error.hpp"

namespace txnet::ingest {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(Errc::malformed_message, why); }

TxEntry parse_entry(const json& entry, const char* what) {
    if (!entry.is_object()) malformed(std::string(what) + " entry is not an object");
    const auto addr = entry.find("addr");
    const auto value = entry.find("value");
    if (addr == entry.end() || !addr->is_string() || addr->get_ref<const std::string&>().empty())
        malformed(std::string(what) + " entry without address");
    if (value == entry.end() || !value->is_number_integer() ||
        (!value->is_number_unsigned() && value->get<std::int64_t>() < 0))
        malformed(std::string(what) + " entry without a non-negative integer value");
    return TxEntry{addr->get<std::string>(), value->get<std::uint64_t>()};
}

Transaction parse_utx(const json& frame, std::int64_t received_at_ms) {
    const auto x = frame.find("x");
    if (x == frame.end() || !x->is_object()) malformed("utx frame without payload");

    Transaction tx;
    tx.received_at = received_at_ms;
    if (auto hash = x->find("hash"); hash != x->end() && hash->is_string()) tx.tx_id = hash->get<std::string>();

    const auto inputs = x->find("inputs");
    if (inputs == x->end() || !inputs->is_array() || inputs->empty()) malformed("utx payload without inputs");
    for (const auto& input : *inputs) {
        if (!input.is_object()) malformed("input is not an object");
        const auto prev = input.find("prev_out");
        if (prev == input.end()) malformed("input without prev_out");
        tx.inputs.push_back(parse_entry(*prev, "input"));
    }

    const auto outputs = x->find("out");
    if (outputs == x->end() || !outputs->is_array() || outputs->empty()) malformed("utx payload without outputs");
    for (const auto& output : *outputs) tx.outputs.push_back(parse_entry(output, "output"));
    return tx;
}

FeedMessage classify(const json& frame, std::int64_t received_at_ms) {
    if (!frame.is_object()) malformed("frame is not a JSON object");
    const auto op = frame.find("op");
    if (op == frame.end() || !op->is_string()) malformed("frame without op");
    const auto& kind = op->get_ref<const std::string&>();
    if (kind != "utx") return Ignored{kind};
    return parse_utx(frame, received_at_ms);
}

}  // namespace

FeedMessage parse_feed_message(std::string_view raw, std::int64_t received_at_ms) {
    const json frame = json::parse(raw, nullptr, /*allow_exceptions=*/false);
    if (frame.is_discarded()) malformed("frame is not valid JSON");
    return classify(frame, received_at_ms);
}

Btc satoshi_to_btc(std::uint64_t value_satoshi) {
    return Btc::from_satoshi(static_cast<std::int64_t>(value_satoshi));
}

std::vector<Edge> extract_edges(const Transaction& tx) {
    unsigned __int128 total_in = 0;
    for (const auto& in : tx.inputs) total_in += in.value_satoshi;
    if (total_in == 0) throw Error(Errc::zero_input_value, "transaction " + tx.tx_id);

    const std::size_t n_in = tx.inputs.size();
    std::vector<std::uint64_t> share(n_in);
    std::vector<unsigned __int128> remainder(n_in);
    std::vector<std::size_t> order(n_in);

    // shares[o][i]: satoshi of output o attributed to input i
    std::vector<std::vector<std::uint64_t>> shares(tx.outputs.size());
    for (std::size_t o = 0; o < tx.outputs.size(); ++o) {
        const std::uint64_t value = tx.outputs[o].value_satoshi;
        std::uint64_t assigned = 0;
        for (std::size_t i = 0; i < n_in; ++i) {
            const unsigned __int128 product = static_cast<unsigned __int128>(value) * tx.inputs[i].value_satoshi;
            share[i] = static_cast<std::uint64_t>(product / total_in);
            remainder[i] = product % total_in;
            assigned += share[i];
        }
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
        for (std::uint64_t k = 0; assigned + k < value; ++k) ++share[order[k]];
        shares[o] = share;
    }

    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n_in; ++i) {
        for (std::size_t o = 0; o < tx.outputs.size(); ++o) {
            if (tx.inputs[i].address == tx.outputs[o].address) continue;
            edges.push_back(Edge{tx.inputs[i].address, tx.outputs[o].address, satoshi_to_btc(shares[o][i]),
                                 tx.received_at});
        }
    }
    return edges;
}

FeedProcessor::FeedProcessor(EdgeSink sink, std::ostream* log) : sink_(std::move(sink)), log_(log) {}

void FeedProcessor::on_frame(std::string_view raw, std::int64_t received_at_ms) {
    const json frame = json::parse(raw, nullptr, false);
    FeedMessage message;
    try {
        if (frame.is_discarded()) malformed("frame is not valid JSON");
        message = classify(frame, received_at_ms);
    } catch (const Error&) {
        ++summary_.malformed;
        return;
    }
    if (std::holds_alternative<Ignored>(message)) {
        ++summary_.ignored;
        return;
    }
    if (log_ != nullptr) {
        json record;
        record["received_at_ms"] = received_at_ms;
        record["raw"] = frame;
        *log_ << record.dump() << '\n';
    }
    on_transaction(std::get<Transaction>(message));
}

void FeedProcessor::on_transaction(const Transaction& tx) {
    ++summary_.transactions;
    if (!tx.tx_id.empty() && !seen_ids_.insert(tx.tx_id).second) ++summary_.duplicate_tx_ids;
    std::vector<Edge> edges;
    try {
        edges = extract_edges(tx);
    } catch (const Error& e) {
        if (e.code() != Errc::zero_input_value) throw;
        ++summary_.zero_input;
        return;
    }
    for (const auto& edge : edges) {
        ++summary_.edges;
        if (sink_) sink_(edge);
    }
}

CaptureSummary replay(std::istream& log, const EdgeSink& sink) {
    FeedProcessor processor(sink, nullptr);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(log, line)) {
        ++line_no;
        const json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object()) throw Error(Errc::corrupt_log, "not a JSON object", line_no);
        const auto at = record.find("received_at_ms");
        const auto raw = record.find("raw");
        if (at == record.end() || !at->is_number_integer() || raw == record.end())
            throw Error(Errc::corrupt_log, "record needs received_at_ms and raw", line_no);

        FeedMessage message;
        try {
            message = classify(*raw, at->get<std::int64_t>());
        } catch (const Error& e) {
            throw Error(Errc::corrupt_log, e.what(), line_no);
        }
        if (!std::holds_alternative<Transaction>(message))
            throw Error(Errc::corrupt_log, "record is not a utx frame", line_no);
        processor.on_transaction(std::get<Transaction>(message));
    }
    if (log.bad()) throw Error(Errc::io_error, "reading capture log");
    return processor.summary();
}

CaptureSummary replay(const std::filesystem::path& log, const EdgeSink& sink) {
    std::ifstream in(log, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot open " + log.string());
    return replay(in, sink);
}

}  // namespace txnet::ingest
