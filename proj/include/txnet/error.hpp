#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace txnet {

enum class Errc {
    malformed_message,
    zero_input_value,
    connect_failed,
    feed_closed,
    corrupt_log,
    io_error,
    csv_format_error,
    graphml_format_error,
    self_loop_present,
    empty_graph,
    no_reachable_pairs,
    clique_budget_exceeded,
    insufficient_tail,
    degenerate_data,
    invalid_observation,
    insufficient_points,
    degenerate_abscissa,
    empty_input,
    not_adjacent,
    invalid_partition,
    invalid_spec,
    invalid_argument,
};

std::string_view errc_name(Errc code) noexcept;

// I/O-class errors map to a different CLI exit code than data errors.
bool is_io_error(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt);

    Errc code() const noexcept { return code_; }
    // 1-based line number for file-format errors.
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    Errc code_;
    std::optional<std::size_t> line_;
};

}  // namespace txnet
