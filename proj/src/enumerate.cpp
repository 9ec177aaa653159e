#include "mcsp/enumerate.hpp"

#include "mcsp/error.hpp"

#include <algorithm>
#include <string_view>
#include <unordered_map>

namespace mcsp {

SubstringCatalog build_catalog(const Instance& inst) {
    const int n = inst.n;
    const std::string_view s1(inst.s1);
    const std::string_view s2(inst.s2);

    SubstringCatalog catalog;
    catalog.n = n;

    // Group substrings of s1 by content, probe with substrings of s2,
    // one length at a time. If no common string of length L exists, none
    // of length L+1 can exist either (its prefix would be common).
    for (int len = 1; len <= n; ++len) {
        std::unordered_map<std::string_view, std::vector<int>> subs1;
        subs1.reserve(static_cast<std::size_t>(n - len + 1) * 2);
        for (int i = 0; i + len <= n; ++i) subs1[s1.substr(i, len)].push_back(i + 1);

        std::unordered_map<std::string_view, std::vector<int>> hits;
        for (int i = 0; i + len <= n; ++i) {
            const auto key = s2.substr(i, len);
            if (subs1.contains(key)) hits[key].push_back(i + 1);
        }
        if (hits.empty()) break;

        for (auto& [t, q2] : hits) {
            CatalogEntry entry;
            entry.t = std::string(t);
            entry.q1 = subs1[t];
            entry.q2 = std::move(q2);
            catalog.entries.push_back(std::move(entry));
        }
    }

    std::sort(catalog.entries.begin(), catalog.entries.end(),
              [](const CatalogEntry& a, const CatalogEntry& b) {
                  if (a.t.size() != b.t.size()) return a.t.size() > b.t.size();
                  return a.t < b.t;
              });
    return catalog;
}

BlockSet build_blocks(const SubstringCatalog& catalog) {
    BlockSet set;
    set.n = catalog.n;
    long long m = 0;
    for (const auto& e : catalog.entries)
        m += static_cast<long long>(e.q1.size()) * static_cast<long long>(e.q2.size());
    set.blocks.reserve(static_cast<std::size_t>(m));
    for (const auto& e : catalog.entries)
        for (int k1 : e.q1)
            for (int k2 : e.q2) set.blocks.push_back(CommonBlock{e.t, k1, k2});
    return set;
}

VariableCounts count_variables(const SubstringCatalog& catalog) {
    VariableCounts counts;
    for (const auto& e : catalog.entries) {
        counts.cb += static_cast<long long>(e.q1.size()) * static_cast<long long>(e.q2.size());
        counts.cs += static_cast<long long>(e.q1.size() + e.q2.size());
    }
    return counts;
}

CatalogIndex::CatalogIndex(const SubstringCatalog& catalog) {
    const auto count = catalog.entries.size();
    blk_off_.resize(count + 1, 0);
    y1_off_.resize(count + 1, 0);
    y2_off_.resize(count + 1, 0);
    q2_sizes_.resize(count, 0);
    for (std::size_t e = 0; e < count; ++e) {
        const auto& entry = catalog.entries[e];
        blk_off_[e + 1] = blk_off_[e] +
                          static_cast<long long>(entry.q1.size()) * static_cast<long long>(entry.q2.size());
        y1_off_[e + 1] = y1_off_[e] + static_cast<int>(entry.q1.size());
        y2_off_[e + 1] = y2_off_[e] + static_cast<int>(entry.q2.size());
        q2_sizes_[e] = static_cast<int>(entry.q2.size());
    }
}

long long CatalogIndex::block_index(int entry, int i1, int i2) const {
    return blk_off_[entry] + static_cast<long long>(i1) * q2_sizes_[entry] + i2;
}

} // namespace mcsp
