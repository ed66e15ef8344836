#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace txnet {

inline constexpr std::int64_t satoshi_per_btc = 100'000'000;

// Fixed-point BTC quantity stored as an integer count of satoshi, so every
// value is exactly representable with 8 fractional digits.
class Btc {
public:
    constexpr Btc() = default;

    static constexpr Btc from_satoshi(std::int64_t satoshi) { return Btc(satoshi); }

    constexpr std::int64_t satoshi() const { return satoshi_; }
    double to_double() const { return static_cast<double>(satoshi_) / satoshi_per_btc; }

    // "1.00000000"; always exactly 8 fractional digits.
    std::string to_string() const;

    // Accepts "12", "12.5", "0.30000000" (at most 8 fractional digits,
    // no sign, no exponent). Returns false on anything else.
    static bool parse(std::string_view text, Btc& out);

    constexpr Btc& operator+=(Btc other) {
        satoshi_ += other.satoshi_;
        return *this;
    }
    friend constexpr Btc operator+(Btc a, Btc b) { return Btc(a.satoshi_ + b.satoshi_); }
    friend constexpr auto operator<=>(Btc, Btc) = default;

private:
    explicit constexpr Btc(std::int64_t satoshi) : satoshi_(satoshi) {}

    std::int64_t satoshi_ = 0;
};

}  // namespace txnet
