#include "mcsp/enumerate.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/ip_model.hpp"

#include <doctest.h>

#include <set>

using namespace mcsp;

namespace {

struct Built {
    SubstringCatalog catalog;
    BlockSet blocks;
    CbModel cb;
    CsModel cs;
};

Built build_both(const char* s1, const char* s2) {
    const auto inst = make_instance(s1, s2);
    Built b;
    b.catalog = build_catalog(inst);
    b.blocks = build_blocks(b.catalog);
    b.cb = build_cb(b.blocks, inst.n);
    b.cs = build_cs(b.catalog, inst.n);
    return b;
}

void check_structure(const IpModel& ip) {
    // every variable used, no duplicated (row, var) terms, coefficients +-1
    std::vector<int> uses(static_cast<std::size_t>(ip.num_vars()), 0);
    for (const auto& con : ip.constraints) {
        std::set<int> seen;
        for (const auto& term : con.terms) {
            CHECK(seen.insert(term.var).second);
            CHECK((term.coeff == 1.0 || term.coeff == -1.0));
            uses[static_cast<std::size_t>(term.var)]++;
        }
        CHECK((con.rhs == 0.0 || con.rhs == 1.0));
    }
    for (int u : uses) CHECK(u >= 1);
    for (const auto& v : ip.variables) {
        CHECK(v.lower == 0.0);
        CHECK(v.upper == 1.0);
        CHECK(v.is_integer);
    }
}

} // namespace

TEST_CASE("worked-example models have the expected shape") {
    const auto b = build_both("AGACTG", "ACTAGG");
    CHECK(b.cb.ip.num_vars() == 14);
    CHECK(b.cb.ip.num_constraints() == 12);
    CHECK(b.cs.ip.num_vars() == 20);
    CHECK(b.cs.ip.num_constraints() == 20);
    check_structure(b.cb.ip);
    check_structure(b.cs.ip);

    for (const auto& v : b.cb.ip.variables) CHECK(v.objective == 1.0);
    // only the s1-side y variables carry objective weight
    double cs_obj_sum = 0.0;
    for (const auto& v : b.cs.ip.variables) cs_obj_sum += v.objective;
    CHECK(cs_obj_sum == 10.0);
}

TEST_CASE("singleton model is forced") {
    const auto b = build_both("A", "A");
    REQUIRE(b.cb.ip.num_vars() == 1);
    REQUIRE(b.cb.ip.num_constraints() == 2);
    for (const auto& con : b.cb.ip.constraints) {
        REQUIRE(con.terms.size() == 1);
        CHECK(con.terms[0].var == 0);
        CHECK(con.rhs == 1.0);
    }
    CHECK(b.cs.ip.num_vars() == 2);
    CHECK(b.cs.ip.num_constraints() == 3);
}

TEST_CASE("AA/AA cover row membership") {
    const auto b = build_both("AA", "AA");
    REQUIRE(b.cb.ip.num_vars() == 5);
    REQUIRE(b.cb.ip.num_constraints() == 4);

    // canonical block order: AA(1,1), A(1,1), A(1,2), A(2,1), A(2,2)
    CHECK(b.blocks.blocks[0].t == "AA");
    CHECK(b.blocks.blocks[1].t == "A");

    // s1 position 1 is covered by AA(1,1), A(1,1), A(1,2)
    const auto& row = b.cb.ip.constraints[0];
    std::set<int> vars;
    for (const auto& term : row.terms) vars.insert(term.var);
    CHECK(vars == std::set<int>{0, 1, 2});

    CHECK(b.cs.ip.num_vars() == 6);
    CHECK(b.cs.ip.num_constraints() == 6);

    // linking row of entry A: y1_A_1 + y1_A_2 - y2_A_1 - y2_A_2 = 0
    const auto& link_a = b.cs.ip.constraints[5];
    CHECK(link_a.name == "link_A");
    CHECK(link_a.rhs == 0.0);
    REQUIRE(link_a.terms.size() == 4);
    double plus = 0, minus = 0;
    for (const auto& term : link_a.terms) (term.coeff > 0 ? plus : minus) += 1;
    CHECK(plus == 2);
    CHECK(minus == 2);
}

TEST_CASE("constraint counts scale as 2n and 2n + |T|") {
    const auto inst = generate_instance(24, 3, 5);
    const auto catalog = build_catalog(inst);
    const auto blocks = build_blocks(catalog);
    const auto cb = build_cb(blocks, inst.n);
    const auto cs = build_cs(catalog, inst.n);
    CHECK(cb.ip.num_constraints() == 2 * inst.n);
    CHECK(cs.ip.num_constraints() == 2 * inst.n + static_cast<int>(catalog.entries.size()));
    CHECK(cb.ip.num_vars() == count_variables(catalog).cb);
    CHECK(cs.ip.num_vars() == count_variables(catalog).cs);
    check_structure(cb.ip);
    check_structure(cs.ip);

    // variable names stay unique and provenance covers every column
    CHECK(cb.ip.meta.size() == cb.ip.variables.size());
    CHECK(cs.ip.meta.size() == cs.ip.variables.size());
}
