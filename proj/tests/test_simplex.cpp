#include "mcsp/enumerate.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/projection.hpp"
#include "mcsp/simplex.hpp"
#include "mcsp/solve.hpp"

#include "oracles/lp_oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace mcsp;

namespace {

struct Pair {
    IpModel cb;
    IpModel cs;
    BlockSet blocks;
    SubstringCatalog catalog;
    int n = 0;
};

Pair models_for(const Instance& inst) {
    Pair p;
    p.catalog = build_catalog(inst);
    p.blocks = build_blocks(p.catalog);
    p.cb = build_cb(p.blocks, inst.n).ip;
    p.cs = build_cs(p.catalog, inst.n).ip;
    p.n = inst.n;
    return p;
}

} // namespace

TEST_CASE("identical strings relax to exactly 1") {
    for (const char* s : {"A", "ABCAB", "AAAAAAAA"}) {
        const auto p = models_for(make_instance(s, s));
        CHECK(solve_lp(p.cb).objective == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(solve_lp(p.cs).objective == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("single-letter-only instances relax to n") {
    const auto p = models_for(make_instance("AB", "BA"));
    CHECK(solve_lp(p.cb).objective == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(solve_lp(p.cs).objective == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("worked example relaxes to 3 in both models") {
    const auto p = models_for(make_instance("AGACTG", "ACTAGG"));
    const auto cb = solve_lp(p.cb);
    const auto cs = solve_lp(p.cs);
    CHECK(cb.status == LpStatus::optimal);
    CHECK(cs.status == LpStatus::optimal);
    CHECK(cb.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(cs.objective == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(oracles::lp_value(p.cb) == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(oracles::lp_value(p.cs) == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("fractional relaxations frozen from the tableau oracle") {
    // expected values computed with oracles::lp_value ahead of the build
    const auto check_value = [](const char* s1, const char* s2, double expect) {
        const auto p = models_for(make_instance(s1, s2));
        CHECK(solve_lp(p.cb).objective == doctest::Approx(expect).epsilon(1e-8));
        CHECK(solve_lp(p.cs).objective == doctest::Approx(expect).epsilon(1e-8));
        CHECK(oracles::lp_value(p.cb) == doctest::Approx(expect).epsilon(1e-8));
    };
    check_value("ABBAAAAC", "BACAABAA", 4.5);
    check_value("BAABABBBABABBA", "AAABAABBBABBBB", 16.0 / 3.0);
    check_value("BAAAAABAABBBABA", "BBBAAAABABABAAA", 4.75);
}

TEST_CASE("random instances: equal relaxations, oracle agreement, feasible points") {
    int checked = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 6 + (trial * 5) % 9;
        const int sigma = std::array{2, 3, 4}[static_cast<std::size_t>(trial % 3)];
        const auto inst = generate_instance(n, sigma, 4242 + static_cast<std::uint64_t>(trial));
        const auto p = models_for(inst);

        const auto cb = solve_lp(p.cb);
        const auto cs = solve_lp(p.cs);
        REQUIRE(cb.status == LpStatus::optimal);
        REQUIRE(cs.status == LpStatus::optimal);

        const double tol = 1e-6 * std::max(1.0, std::abs(cb.objective));
        CHECK(std::abs(cb.objective - cs.objective) <= tol);

        const double reference = oracles::lp_value(p.cb);
        CHECK(std::abs(cb.objective - reference) <= tol);

        CHECK(max_cb_violation(cb.values, p.blocks, p.n) <= 1e-7);
        CHECK(max_cs_violation(cs.values, p.catalog, p.n) <= 1e-7);

        // termination discipline: bounded iterations unless Bland kicked in
        const long cb_budget = 10L * (p.cb.num_constraints() + p.cb.num_vars());
        CHECK((cb.iterations < cb_budget || cb.bland_engaged));

        // sandwich against the exact optimum
        const auto exact = brute_force(inst);
        CHECK(cb.objective <= exact.value + 1e-7);
        CHECK(exact.value <= inst.n);
        ++checked;
    }
    CHECK(checked == 30);
}

TEST_CASE("iteration limit reports honestly") {
    const auto p = models_for(generate_instance(30, 2, 9));
    LpOptions options;
    options.max_iters = 3;
    const auto sol = solve_lp(p.cb, options);
    CHECK(sol.status == LpStatus::iteration_limit);
    CHECK(sol.values.empty());
}

TEST_CASE("degenerate equality rows do not cycle") {
    // heavy degeneracy: every cover row of an all-equal instance
    const auto p = models_for(make_instance("AAAAAAAAAAAA", "AAAAAAAAAAAA"));
    const auto sol = solve_lp(p.cb);
    CHECK(sol.status == LpStatus::optimal);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-9));
}
