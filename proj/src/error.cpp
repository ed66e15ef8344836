#include "txnet/error.hpp"

namespace txnet {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
        case Errc::malformed_message: return "MalformedMessage";
        case Errc::zero_input_value: return "ZeroInputValue";
        case Errc::connect_failed: return "ConnectFailed";
        case Errc::feed_closed: return "FeedClosed";
        case Errc::corrupt_log: return "CorruptLog";
        case Errc::io_error: return "IoError";
        case Errc::csv_format_error: return "CsvFormatError";
        case Errc::graphml_format_error: return "GraphmlFormatError";
        case Errc::self_loop_present: return "SelfLoopPresent";
        case Errc::empty_graph: return "EmptyGraph";
        case Errc::no_reachable_pairs: return "NoReachablePairs";
        case Errc::clique_budget_exceeded: return "CliqueBudgetExceeded";
        case Errc::insufficient_tail: return "InsufficientTail";
        case Errc::degenerate_data: return "DegenerateData";
        case Errc::invalid_observation: return "InvalidObservation";
        case Errc::insufficient_points: return "InsufficientPoints";
        case Errc::degenerate_abscissa: return "DegenerateAbscissa";
        case Errc::empty_input: return "EmptyInput";
        case Errc::not_adjacent: return "NotAdjacent";
        case Errc::invalid_partition: return "InvalidPartition";
        case Errc::invalid_spec: return "InvalidSpec";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_io_error(Errc code) noexcept {
    return code == Errc::io_error || code == Errc::connect_failed;
}

namespace {

std::string decorate(Errc code, const std::string& what, std::optional<std::size_t> line) {
    std::string out(errc_name(code));
    if (line) out += " (line " + std::to_string(*line) + ")";
    if (!what.empty()) out += ": " + what;
    return out;
}

}  // namespace

Error::Error(Errc code, const std::string& what, std::optional<std::size_t> line)
    : std::runtime_error(decorate(code, what, line)), code_(code), line_(line) {}

}  // namespace txnet
