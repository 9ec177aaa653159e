#include "mcsp/projection.hpp"

#include "mcsp/error.hpp"

#include <algorithm>
#include <cmath>

namespace mcsp {

namespace {

double cover_violation(const std::vector<double>& sums) {
    double worst = 0.0;
    for (double s : sums) worst = std::max(worst, std::abs(s - 1.0));
    return worst;
}

double bound_violation(const std::vector<double>& v) {
    double worst = 0.0;
    for (double x : v) {
        worst = std::max(worst, -x);
        worst = std::max(worst, x - 1.0);
    }
    return worst;
}

} // namespace

double max_cb_violation(const std::vector<double>& x, const BlockSet& blocks, int n) {
    if (x.size() != blocks.blocks.size())
        throw Error(ErrorKind::invalid_parameter, "CB vector length mismatch");
    std::vector<double> cover1(static_cast<std::size_t>(n), 0.0);
    std::vector<double> cover2(static_cast<std::size_t>(n), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        const auto& b = blocks.blocks[i];
        for (int j = b.k1; j < b.k1 + b.length(); ++j) cover1[static_cast<std::size_t>(j - 1)] += x[i];
        for (int j = b.k2; j < b.k2 + b.length(); ++j) cover2[static_cast<std::size_t>(j - 1)] += x[i];
    }
    return std::max({cover_violation(cover1), cover_violation(cover2), bound_violation(x)});
}

double max_cs_violation(const std::vector<double>& y, const SubstringCatalog& catalog, int n) {
    const CatalogIndex index(catalog);
    if (y.size() != static_cast<std::size_t>(index.cs_total()))
        throw Error(ErrorKind::invalid_parameter, "CS vector length mismatch");
    std::vector<double> cover1(static_cast<std::size_t>(n), 0.0);
    std::vector<double> cover2(static_cast<std::size_t>(n), 0.0);
    double link_worst = 0.0;
    for (std::size_t e = 0; e < catalog.entries.size(); ++e) {
        const auto& entry = catalog.entries[e];
        const int len = static_cast<int>(entry.t.size());
        double mass1 = 0.0, mass2 = 0.0;
        for (std::size_t i = 0; i < entry.q1.size(); ++i) {
            const double v = y[static_cast<std::size_t>(index.y1_offset(static_cast<int>(e))) + i];
            mass1 += v;
            for (int j = entry.q1[i]; j < entry.q1[i] + len; ++j)
                cover1[static_cast<std::size_t>(j - 1)] += v;
        }
        for (std::size_t i = 0; i < entry.q2.size(); ++i) {
            const double v = y[static_cast<std::size_t>(index.y2_offset(static_cast<int>(e))) + i];
            mass2 += v;
            for (int j = entry.q2[i]; j < entry.q2[i] + len; ++j)
                cover2[static_cast<std::size_t>(j - 1)] += v;
        }
        link_worst = std::max(link_worst, std::abs(mass1 - mass2));
    }
    return std::max({cover_violation(cover1), cover_violation(cover2), link_worst, bound_violation(y)});
}

std::vector<double> project_cb_to_cs(const std::vector<double>& x, const BlockSet& blocks,
                                     const SubstringCatalog& catalog, double tol_feas) {
    const double viol = max_cb_violation(x, blocks, catalog.n);
    if (viol > tol_feas)
        throw Error(ErrorKind::infeasible_input,
                    "input violates the CB constraints by " + std::to_string(viol));

    const CatalogIndex index(catalog);
    std::vector<double> y(static_cast<std::size_t>(index.cs_total()), 0.0);
    long long g = 0;
    for (std::size_t e = 0; e < catalog.entries.size(); ++e) {
        const auto& entry = catalog.entries[e];
        for (std::size_t i1 = 0; i1 < entry.q1.size(); ++i1)
            for (std::size_t i2 = 0; i2 < entry.q2.size(); ++i2) {
                const double v = x[static_cast<std::size_t>(g++)];
                y[static_cast<std::size_t>(index.y1_offset(static_cast<int>(e))) + i1] += v;
                y[static_cast<std::size_t>(index.y2_offset(static_cast<int>(e))) + i2] += v;
            }
    }
    return y;
}

std::vector<double> lift_cs_to_cb(const std::vector<double>& y, const SubstringCatalog& catalog,
                                  const BlockSet& blocks, double tol_feas) {
    const double viol = max_cs_violation(y, catalog, catalog.n);
    if (viol > tol_feas)
        throw Error(ErrorKind::infeasible_input,
                    "input violates the CS constraints by " + std::to_string(viol));

    const CatalogIndex index(catalog);
    std::vector<double> x(blocks.blocks.size(), 0.0);

    for (std::size_t e = 0; e < catalog.entries.size(); ++e) {
        const auto& entry = catalog.entries[e];
        const auto n1 = entry.q1.size();
        const auto n2 = entry.q2.size();
        const auto y1_at = [&](std::size_t i) {
            return y[static_cast<std::size_t>(index.y1_offset(static_cast<int>(e))) + i];
        };
        const auto y2_at = [&](std::size_t i) {
            return y[static_cast<std::size_t>(index.y2_offset(static_cast<int>(e))) + i];
        };

        double mass1 = 0.0, mass2 = 0.0;
        for (std::size_t i = 0; i < n1; ++i) mass1 += y1_at(i);
        for (std::size_t i = 0; i < n2; ++i) mass2 += y2_at(i);
        if (std::abs(mass1 - mass2) > tol_feas)
            throw Error(ErrorKind::mass_imbalance,
                        "entry " + entry.t + ": sum(y1) and sum(y2) differ by " +
                            std::to_string(std::abs(mass1 - mass2)));

        auto cell = [&](std::size_t i1, std::size_t i2) -> double& {
            return x[static_cast<std::size_t>(
                index.block_index(static_cast<int>(e), static_cast<int>(i1), static_cast<int>(i2)))];
        };

        std::size_t i1 = 0, i2 = 0;
        double rem1 = n1 ? y1_at(0) : 0.0;
        double rem2 = n2 ? y2_at(0) : 0.0;
        while (i1 < n1 && i2 < n2) {
            const double take = std::min(rem1, rem2);
            if (take > 0.0) cell(i1, i2) += take;
            if (rem1 <= rem2) {
                rem2 -= take;
                if (++i1 < n1) rem1 = y1_at(i1);
            } else {
                rem1 -= take;
                if (++i2 < n2) rem2 = y2_at(i2);
            }
        }
        // Any residue within tolerance lands on the last row/column so the
        // dominant marginal is reproduced.
        if (i1 < n1 && n2 > 0) {
            cell(i1, n2 - 1) += rem1;
            for (std::size_t i = i1 + 1; i < n1; ++i) cell(i, n2 - 1) += y1_at(i);
        } else if (i2 < n2 && n1 > 0) {
            cell(n1 - 1, i2) += rem2;
            for (std::size_t i = i2 + 1; i < n2; ++i) cell(n1 - 1, i) += y2_at(i);
        }
    }
    return x;
}

} // namespace mcsp
