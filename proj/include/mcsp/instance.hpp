#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace mcsp {

/// A pair of related strings: equal length, identical letter multisets.
/// Immutable after construction; safe to share across concurrent solves.
struct Instance {
    std::string s1;
    std::string s2;
    int n = 0;          // common length, >= 1
    std::string sigma;  // distinct letters actually occurring, sorted ascending
};

/// Validates lengths and relatedness; throws Error otherwise.
Instance make_instance(std::string s1, std::string s2);

/// Parses the two-line instance format (line 1 = s1, line 2 = s2).
/// Accepts LF or CRLF endings and an optional trailing newline.
Instance parse_instance(std::string_view text);

Instance load_instance(const std::filesystem::path& file);

/// Two-line document with a trailing newline; parse_instance round-trips it.
std::string format_instance(const Instance& inst);

void save_instance(const Instance& inst, const std::filesystem::path& file);

/// Draws s1 uniformly i.i.d. over the first alphabet_size uppercase letters,
/// then derives s2 as a Fisher-Yates shuffle of s1 from the same generator
/// (mt19937_64 seeded with `seed`, rejection-sampled bounded draws).
/// Deterministic: equal arguments give bit-identical instances.
Instance generate_instance(int n, int alphabet_size, std::uint64_t seed);

} // namespace mcsp
