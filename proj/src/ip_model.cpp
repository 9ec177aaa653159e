#include "mcsp/ip_model.hpp"

#include "mcsp/error.hpp"

#include <unordered_set>

namespace mcsp {

namespace {

void check_unique_names(const IpModel& model) {
    std::unordered_set<std::string> seen;
    seen.reserve(model.variables.size());
    for (const auto& v : model.variables)
        if (!seen.insert(v.name).second)
            throw Error(ErrorKind::name_collision, "duplicate variable name: " + v.name);
}

} // namespace

CbModel build_cb(const BlockSet& blocks, int n) {
    if (n != blocks.n) throw Error(ErrorKind::invalid_parameter, "block set length mismatch");

    CbModel model;
    model.n = n;
    model.blocks = blocks;
    auto& ip = model.ip;

    const auto m = blocks.blocks.size();
    ip.variables.reserve(m);
    ip.meta.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        IpVariable v;
        v.name = "x_" + std::to_string(i + 1);
        v.objective = 1.0;
        ip.variables.push_back(std::move(v));
        ip.meta.push_back(VarMeta{VarKind::block, static_cast<long long>(i), -1, 0});
    }

    ip.constraints.resize(static_cast<std::size_t>(2 * n));
    for (int j = 1; j <= n; ++j) {
        ip.constraints[static_cast<std::size_t>(j - 1)].name = "c1_" + std::to_string(j);
        ip.constraints[static_cast<std::size_t>(j - 1)].rhs = 1.0;
        ip.constraints[static_cast<std::size_t>(n + j - 1)].name = "c2_" + std::to_string(j);
        ip.constraints[static_cast<std::size_t>(n + j - 1)].rhs = 1.0;
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto& b = blocks.blocks[i];
        for (int j = b.k1; j < b.k1 + b.length(); ++j)
            ip.constraints[static_cast<std::size_t>(j - 1)].terms.push_back(
                {static_cast<int>(i), 1.0});
        for (int j = b.k2; j < b.k2 + b.length(); ++j)
            ip.constraints[static_cast<std::size_t>(n + j - 1)].terms.push_back(
                {static_cast<int>(i), 1.0});
    }

    check_unique_names(ip);
    return model;
}

CsModel build_cs(const SubstringCatalog& catalog, int n) {
    if (n != catalog.n) throw Error(ErrorKind::invalid_parameter, "catalog length mismatch");

    CsModel model;
    model.n = n;
    model.catalog = catalog;
    auto& ip = model.ip;

    const CatalogIndex index(catalog);
    ip.variables.resize(static_cast<std::size_t>(index.cs_total()));
    ip.meta.resize(static_cast<std::size_t>(index.cs_total()));

    // 2n cover rows followed by one linking row per entry.
    const auto entries = catalog.entries.size();
    ip.constraints.resize(static_cast<std::size_t>(2 * n) + entries);
    for (int j = 1; j <= n; ++j) {
        ip.constraints[static_cast<std::size_t>(j - 1)].name = "c1_" + std::to_string(j);
        ip.constraints[static_cast<std::size_t>(j - 1)].rhs = 1.0;
        ip.constraints[static_cast<std::size_t>(n + j - 1)].name = "c2_" + std::to_string(j);
        ip.constraints[static_cast<std::size_t>(n + j - 1)].rhs = 1.0;
    }

    for (std::size_t e = 0; e < entries; ++e) {
        const auto& entry = catalog.entries[e];
        auto& link = ip.constraints[static_cast<std::size_t>(2 * n) + e];
        link.name = "link_" + entry.t;
        link.rhs = 0.0;

        const int len = static_cast<int>(entry.t.size());
        for (std::size_t i = 0; i < entry.q1.size(); ++i) {
            const int k = entry.q1[i];
            const int var = index.y1_offset(static_cast<int>(e)) + static_cast<int>(i);
            IpVariable v;
            v.name = "y1_" + entry.t + "_" + std::to_string(k);
            v.objective = 1.0;
            ip.variables[static_cast<std::size_t>(var)] = std::move(v);
            ip.meta[static_cast<std::size_t>(var)] = VarMeta{VarKind::sub1, -1, static_cast<int>(e), k};
            for (int j = k; j < k + len; ++j)
                ip.constraints[static_cast<std::size_t>(j - 1)].terms.push_back({var, 1.0});
            link.terms.push_back({var, 1.0});
        }
        for (std::size_t i = 0; i < entry.q2.size(); ++i) {
            const int k = entry.q2[i];
            const int var = index.y2_offset(static_cast<int>(e)) + static_cast<int>(i);
            IpVariable v;
            v.name = "y2_" + entry.t + "_" + std::to_string(k);
            ip.variables[static_cast<std::size_t>(var)] = std::move(v);
            ip.meta[static_cast<std::size_t>(var)] = VarMeta{VarKind::sub2, -1, static_cast<int>(e), k};
            for (int j = k; j < k + len; ++j)
                ip.constraints[static_cast<std::size_t>(n + j - 1)].terms.push_back({var, 1.0});
            link.terms.push_back({var, -1.0});
        }
    }

    check_unique_names(ip);
    return model;
}

} // namespace mcsp
