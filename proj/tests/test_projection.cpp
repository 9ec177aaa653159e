#include "mcsp/enumerate.hpp"
#include "mcsp/error.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/projection.hpp"
#include "mcsp/simplex.hpp"
#include "mcsp/solve.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mcsp;

namespace {

struct Space {
    Instance inst;
    SubstringCatalog catalog;
    BlockSet blocks;
    CatalogIndex index;

    explicit Space(Instance instance)
        : inst(std::move(instance)), catalog(build_catalog(inst)), blocks(build_blocks(catalog)),
          index(catalog) {}

    long long block_id(const std::string& t, int k1, int k2) const {
        for (std::size_t i = 0; i < blocks.blocks.size(); ++i)
            if (blocks.blocks[i].t == t && blocks.blocks[i].k1 == k1 && blocks.blocks[i].k2 == k2)
                return static_cast<long long>(i);
        FAIL("block not found");
        return -1;
    }

    int y1_id(const std::string& t, int k) const {
        for (int e = 0; e < index.entries(); ++e) {
            const auto& entry = catalog.entries[static_cast<std::size_t>(e)];
            if (entry.t != t) continue;
            for (std::size_t i = 0; i < entry.q1.size(); ++i)
                if (entry.q1[i] == k) return index.y1_offset(e) + static_cast<int>(i);
        }
        FAIL("y1 variable not found");
        return -1;
    }

    int y2_id(const std::string& t, int k) const {
        for (int e = 0; e < index.entries(); ++e) {
            const auto& entry = catalog.entries[static_cast<std::size_t>(e)];
            if (entry.t != t) continue;
            for (std::size_t i = 0; i < entry.q2.size(); ++i)
                if (entry.q2[i] == k) return index.y2_offset(e) + static_cast<int>(i);
        }
        FAIL("y2 variable not found");
        return -1;
    }

    std::vector<double> x_for(const std::vector<std::tuple<std::string, int, int>>& picks) const {
        std::vector<double> x(blocks.blocks.size(), 0.0);
        for (const auto& [t, k1, k2] : picks)
            x[static_cast<std::size_t>(block_id(t, k1, k2))] = 1.0;
        return x;
    }
};

double objective_x(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

double objective_y(const std::vector<double>& y, const CatalogIndex& index) {
    double s = 0.0;
    for (int i = 0; i < index.y1_total(); ++i) s += y[static_cast<std::size_t>(i)];
    return s;
}

} // namespace

TEST_CASE("projection of an integral AA/AA point") {
    const Space space(make_instance("AA", "AA"));
    const auto x = space.x_for({{"AA", 1, 1}});
    const auto y = project_cb_to_cs(x, space.blocks, space.catalog);
    CHECK(y[static_cast<std::size_t>(space.y1_id("AA", 1))] == 1.0);
    CHECK(y[static_cast<std::size_t>(space.y2_id("AA", 1))] == 1.0);
    double total = 0.0;
    for (double v : y) total += v;
    CHECK(total == 2.0);
}

TEST_CASE("projection of the fractional AA/AA point") {
    const Space space(make_instance("AA", "AA"));
    std::vector<double> x(space.blocks.blocks.size(), 0.5);
    x[static_cast<std::size_t>(space.block_id("AA", 1, 1))] = 0.0;
    const auto y = project_cb_to_cs(x, space.blocks, space.catalog);
    for (const char* t : {"A"}) {
        CHECK(y[static_cast<std::size_t>(space.y1_id(t, 1))] == doctest::Approx(1.0));
        CHECK(y[static_cast<std::size_t>(space.y1_id(t, 2))] == doctest::Approx(1.0));
        CHECK(y[static_cast<std::size_t>(space.y2_id(t, 1))] == doctest::Approx(1.0));
        CHECK(y[static_cast<std::size_t>(space.y2_id(t, 2))] == doctest::Approx(1.0));
    }
    CHECK(objective_x(x) == doctest::Approx(objective_y(y, space.index)));
    CHECK(max_cs_violation(y, space.catalog, space.inst.n) <= 1e-12);
}

TEST_CASE("lifting the integral worked-example point in northwest order") {
    const Space space(make_instance("AGACTG", "ACTAGG"));
    std::vector<double> y(static_cast<std::size_t>(space.index.cs_total()), 0.0);
    y[static_cast<std::size_t>(space.y1_id("ACT", 3))] = 1.0;
    y[static_cast<std::size_t>(space.y2_id("ACT", 1))] = 1.0;
    y[static_cast<std::size_t>(space.y1_id("AG", 1))] = 1.0;
    y[static_cast<std::size_t>(space.y2_id("AG", 4))] = 1.0;
    y[static_cast<std::size_t>(space.y1_id("G", 6))] = 1.0;
    y[static_cast<std::size_t>(space.y2_id("G", 6))] = 1.0;

    const auto x = lift_cs_to_cb(y, space.catalog, space.blocks);
    CHECK(x[static_cast<std::size_t>(space.block_id("ACT", 3, 1))] == 1.0);
    CHECK(x[static_cast<std::size_t>(space.block_id("AG", 1, 4))] == 1.0);
    CHECK(x[static_cast<std::size_t>(space.block_id("G", 6, 6))] == 1.0);
    CHECK(objective_x(x) == 3.0);
    CHECK(max_cb_violation(x, space.blocks, space.inst.n) <= 1e-12);

    const auto back = project_cb_to_cs(x, space.blocks, space.catalog);
    for (std::size_t i = 0; i < y.size(); ++i) CHECK(back[i] == y[i]);
}

TEST_CASE("northwest-corner lift of the doubled singleton masses") {
    const Space space(make_instance("AA", "AA"));
    std::vector<double> y(static_cast<std::size_t>(space.index.cs_total()), 0.0);
    for (int k : {1, 2}) {
        y[static_cast<std::size_t>(space.y1_id("A", k))] = 1.0;
        y[static_cast<std::size_t>(space.y2_id("A", k))] = 1.0;
    }
    const auto x = lift_cs_to_cb(y, space.catalog, space.blocks);
    CHECK(x[static_cast<std::size_t>(space.block_id("A", 1, 1))] == 1.0);
    CHECK(x[static_cast<std::size_t>(space.block_id("A", 2, 2))] == 1.0);
    CHECK(x[static_cast<std::size_t>(space.block_id("A", 1, 2))] == 0.0);
    CHECK(x[static_cast<std::size_t>(space.block_id("A", 2, 1))] == 0.0);
}

TEST_CASE("infeasible inputs are rejected with the right error kinds") {
    const Space space(make_instance("AA", "AA"));
    std::vector<double> bad_x(space.blocks.blocks.size(), 0.9);
    CHECK_THROWS_AS((void)project_cb_to_cs(bad_x, space.blocks, space.catalog), Error);

    // cover rows fine, linking broken: y1 mass 2 on A, y2 mass 1 on A + 1 on AA
    std::vector<double> bad_y(static_cast<std::size_t>(space.index.cs_total()), 0.0);
    bad_y[static_cast<std::size_t>(space.y1_id("A", 1))] = 1.0;
    bad_y[static_cast<std::size_t>(space.y1_id("A", 2))] = 1.0;
    bad_y[static_cast<std::size_t>(space.y2_id("AA", 1))] = 1.0;
    try {
        (void)lift_cs_to_cb(bad_y, space.catalog, space.blocks);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::infeasible_input || e.kind() == ErrorKind::mass_imbalance));
    }
}

TEST_CASE("lemma properties on random feasible points") {
    std::mt19937_64 rng(20240517);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 6 + static_cast<int>(rng() % 9);
        const int sigma = 2 + static_cast<int>(rng() % 3);
        const Space space(generate_instance(n, sigma, rng()));

        const auto cb_model = build_cb(space.blocks, space.inst.n);
        const auto lp = solve_lp(cb_model.ip);
        REQUIRE(lp.status == LpStatus::optimal);

        // vertices and deeper interior points: LP optimum mixed with the
        // exact integral optimum
        const auto exact = brute_force(space.inst);
        std::vector<double> integral(space.blocks.blocks.size(), 0.0);
        for (const auto& b : exact.blocks)
            integral[static_cast<std::size_t>(space.block_id(b.t, b.k1, b.k2))] = 1.0;

        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double w = unit(rng);
        std::vector<double> x(space.blocks.blocks.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            x[i] = w * lp.values[i] + (1.0 - w) * integral[i];

        const auto y = project_cb_to_cs(x, space.blocks, space.catalog);
        CHECK(max_cs_violation(y, space.catalog, space.inst.n) <= 1e-9);
        CHECK(std::abs(objective_x(x) - objective_y(y, space.index)) <= 1e-10);

        const auto lifted = lift_cs_to_cb(y, space.catalog, space.blocks);
        CHECK(max_cb_violation(lifted, space.blocks, space.inst.n) <= 1e-9);
        CHECK(std::abs(objective_x(lifted) - objective_y(y, space.index)) <= 1e-10);

        const auto back = project_cb_to_cs(lifted, space.blocks, space.catalog);
        for (std::size_t i = 0; i < y.size(); ++i) CHECK(back[i] == doctest::Approx(y[i]).epsilon(1e-12));
    }
}
