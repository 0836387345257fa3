#pragma once

#include <cstdint>
#include <string>

namespace qnet {

// Shortest decimal string that round-trips the exact double value.
std::string format_double(double v);

// Strict full-string parses; return false on trailing garbage or range
// errors instead of throwing.
bool parse_double(const std::string& s, double& out);
bool parse_u64(const std::string& s, std::uint64_t& out);
bool parse_i64(const std::string& s, long long& out);

} // namespace qnet
