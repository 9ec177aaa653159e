#include "mcsp/instance.hpp"

#include "mcsp/error.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace mcsp {

namespace {

std::array<long long, 256> letter_counts(const std::string& s) {
    std::array<long long, 256> counts{};
    for (unsigned char c : s) counts[c]++;
    return counts;
}

// Uniform draw from [0, bound) by rejection; unbiased and reproducible
// independently of the standard library's distribution implementations.
std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
        r = gen();
    } while (r >= limit);
    return r % bound;
}

} // namespace

Instance make_instance(std::string s1, std::string s2) {
    if (s1.empty() || s2.empty()) throw Error(ErrorKind::empty_input, "empty input string");
    if (s1.size() != s2.size())
        throw Error(ErrorKind::length_mismatch,
                    "length mismatch: |s1| = " + std::to_string(s1.size()) +
                        ", |s2| = " + std::to_string(s2.size()));

    const auto c1 = letter_counts(s1);
    const auto c2 = letter_counts(s2);
    for (int c = 0; c < 256; ++c) {
        if (c1[c] != c2[c])
            throw Error(ErrorKind::not_related,
                        std::string("strings are not related: letter '") + char(c) +
                            "' occurs " + std::to_string(c1[c]) + " time(s) in s1 but " +
                            std::to_string(c2[c]) + " time(s) in s2");
    }

    Instance inst;
    inst.n = static_cast<int>(s1.size());
    inst.s1 = std::move(s1);
    inst.s2 = std::move(s2);
    for (int c = 0; c < 256; ++c)
        if (c1[c] > 0) inst.sigma.push_back(char(c));
    return inst;
}

Instance parse_instance(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string line(text.substr(start, end - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(std::move(line));
        start = end + 1;
    }
    if (lines.size() < 2)
        throw Error(ErrorKind::empty_input,
                    "expected two non-empty lines, got " + std::to_string(lines.size()));
    if (lines.size() > 2)
        throw Error(ErrorKind::parse_error,
                    "expected two non-empty lines, got " + std::to_string(lines.size()));
    for (const auto& line : lines)
        for (unsigned char c : line)
            if (std::isspace(c) || !std::isprint(c))
                throw Error(ErrorKind::parse_error, "non-printable or whitespace character in input");
    return make_instance(std::move(lines[0]), std::move(lines[1]));
}

Instance load_instance(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error(ErrorKind::io_error, "cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string format_instance(const Instance& inst) {
    return inst.s1 + "\n" + inst.s2 + "\n";
}

void save_instance(const Instance& inst, const std::filesystem::path& file) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(ErrorKind::io_error, "cannot open " + file.string() + " for writing");
    out << format_instance(inst);
    if (!out) throw Error(ErrorKind::io_error, "write failed: " + file.string());
}

Instance generate_instance(int n, int alphabet_size, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::invalid_parameter, "n must be >= 1, got " + std::to_string(n));
    if (alphabet_size < 1 || alphabet_size > 26)
        throw Error(ErrorKind::invalid_parameter,
                    "alphabet_size must be in [1, 26], got " + std::to_string(alphabet_size));

    std::mt19937_64 gen(seed);
    std::string s1(static_cast<std::size_t>(n), '\0');
    for (auto& c : s1) c = char('A' + bounded_draw(gen, static_cast<std::uint64_t>(alphabet_size)));

    std::string s2 = s1;
    for (int i = n - 1; i > 0; --i) {
        const auto j = bounded_draw(gen, static_cast<std::uint64_t>(i) + 1);
        std::swap(s2[static_cast<std::size_t>(i)], s2[j]);
    }
    return make_instance(std::move(s1), std::move(s2));
}

} // namespace mcsp
