#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace txnet::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;
inline constexpr int exit_io = 3;

// "90" is seconds; suffixes ms, s, m and h are accepted. Throws
// Error(invalid_argument).
std::int64_t parse_duration_ms(std::string_view text);

// Lowercase hex SHA-256 of a file's contents. Throws Error(io_error).
std::string sha256_file(const std::filesystem::path& path);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace txnet::cli
