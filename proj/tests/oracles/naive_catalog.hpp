#pragma once

// Brute-force catalog reference: double loop over all substring pairs with
// plain string comparison. Deliberately independent of build_catalog.

#include "mcsp/enumerate.hpp"
#include "mcsp/instance.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace oracles {

inline mcsp::SubstringCatalog naive_catalog(const mcsp::Instance& inst) {
    const int n = inst.n;
    std::map<std::string, mcsp::CatalogEntry> found;

    for (int i = 0; i < n; ++i) {
        for (int len = 1; i + len <= n; ++len) {
            const std::string t = inst.s1.substr(static_cast<std::size_t>(i),
                                                 static_cast<std::size_t>(len));
            if (found.contains(t)) continue;
            bool in_s2 = false;
            for (int p = 0; p + len <= n && !in_s2; ++p)
                in_s2 = inst.s2.compare(static_cast<std::size_t>(p),
                                        static_cast<std::size_t>(len), t) == 0;
            if (!in_s2) continue;

            mcsp::CatalogEntry entry;
            entry.t = t;
            for (int p = 0; p + len <= n; ++p)
                if (inst.s1.compare(static_cast<std::size_t>(p), static_cast<std::size_t>(len),
                                    t) == 0)
                    entry.q1.push_back(p + 1);
            for (int p = 0; p + len <= n; ++p)
                if (inst.s2.compare(static_cast<std::size_t>(p), static_cast<std::size_t>(len),
                                    t) == 0)
                    entry.q2.push_back(p + 1);
            found.emplace(t, std::move(entry));
        }
    }

    mcsp::SubstringCatalog catalog;
    catalog.n = n;
    for (auto& [t, entry] : found) catalog.entries.push_back(std::move(entry));
    std::sort(catalog.entries.begin(), catalog.entries.end(),
              [](const mcsp::CatalogEntry& a, const mcsp::CatalogEntry& b) {
                  if (a.t.size() != b.t.size()) return a.t.size() > b.t.size();
                  return a.t < b.t;
              });
    return catalog;
}

} // namespace oracles
