#include "txnet/amount.hpp"

#include <charconv>
#include <limits>

namespace txnet {

std::string Btc::to_string() const {
    std::int64_t value = satoshi_;
    const bool negative = value < 0;
    // Only reachable through arithmetic on invalid data; kept printable anyway.
    std::uint64_t magnitude = negative ? 0 - static_cast<std::uint64_t>(value) : static_cast<std::uint64_t>(value);
    std::string whole = std::to_string(magnitude / satoshi_per_btc);
    std::string frac = std::to_string(magnitude % satoshi_per_btc);
    frac.insert(0, 8 - frac.size(), '0');
    return (negative ? "-" : "") + whole + "." + frac;
}

bool Btc::parse(std::string_view text, Btc& out) {
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole.empty() || frac.size() > 8) return false;
    if (dot != std::string_view::npos && frac.empty()) return false;
    for (char c : whole)
        if (c < '0' || c > '9') return false;
    for (char c : frac)
        if (c < '0' || c > '9') return false;

    std::int64_t whole_value = 0;
    auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), whole_value);
    if (ec != std::errc{} || p != whole.data() + whole.size()) return false;
    if (whole_value > std::numeric_limits<std::int64_t>::max() / satoshi_per_btc) return false;

    std::int64_t frac_value = 0;
    for (std::size_t i = 0; i < 8; ++i) frac_value = frac_value * 10 + (i < frac.size() ? frac[i] - '0' : 0);

    out = Btc(whole_value * satoshi_per_btc + frac_value);
    return true;
}

}  // namespace txnet
