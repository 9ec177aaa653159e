#include "mcsp/enumerate.hpp"
#include "mcsp/instance.hpp"
#include "mcsp/model_io.hpp"
#include "mcsp/simplex.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace mcsp;

namespace {

IpModel model_of(const Instance& inst, ModelKind kind) {
    const auto catalog = build_catalog(inst);
    if (kind == ModelKind::cb) return build_cb(build_blocks(catalog), inst.n).ip;
    return build_cs(catalog, inst.n).ip;
}

std::string lp_text(const IpModel& model) {
    std::ostringstream out;
    export_model(model, ModelFormat::lp, out);
    return out.str();
}

} // namespace

TEST_CASE("singleton LP document has the forced structure") {
    const auto text = lp_text(model_of(make_instance("A", "A"), ModelKind::cb));
    CHECK(text.find("Minimize") != std::string::npos);
    CHECK(text.find("Subject To") != std::string::npos);
    CHECK(text.find("c1_1: x_1 = 1") != std::string::npos);
    CHECK(text.find("c2_1: x_1 = 1") != std::string::npos);
    CHECK(text.find("Binaries") != std::string::npos);
    CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("CS export carries the mixed-sign linking row") {
    const auto text = lp_text(model_of(make_instance("AA", "AA"), ModelKind::cs));
    CHECK(text.find("link_A: y1_A_1 + y1_A_2 - y2_A_1 - y2_A_2 = 0") != std::string::npos);
}

TEST_CASE("LP round-trip preserves the worked-example shape") {
    const auto model = model_of(make_instance("AGACTG", "ACTAGG"), ModelKind::cb);
    std::istringstream in(lp_text(model));
    const auto back = import_lp(in);
    CHECK(back.num_vars() == 14);
    CHECK(back.num_constraints() == 12);
    CHECK(std::abs(solve_lp(back).objective - solve_lp(model).objective) <= 1e-9);
}

TEST_CASE("LP round-trip on random models preserves counts and LP value") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto inst = generate_instance(8 + trial, 2 + trial % 3,
                                            900 + static_cast<std::uint64_t>(trial));
        const auto kind = trial % 2 == 0 ? ModelKind::cb : ModelKind::cs;
        const auto model = model_of(inst, kind);
        std::istringstream in(lp_text(model));
        const auto back = import_lp(in);
        CHECK(back.num_vars() == model.num_vars());
        CHECK(back.num_constraints() == model.num_constraints());
        const double a = solve_lp(model).objective;
        const double b = solve_lp(back).objective;
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("MPS export has the classic fixed sections") {
    const auto model = model_of(make_instance("AGACTG", "ACTAGG"), ModelKind::cs);
    std::ostringstream out;
    export_model(model, ModelFormat::mps, out);
    const auto text = out.str();
    CHECK(text.rfind("NAME", 0) == 0);
    for (const char* section : {"ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"})
        CHECK(text.find(section) != std::string::npos);
    // one BV bound per binary variable
    std::size_t count = 0, at = 0;
    while ((at = text.find(" BV ", at)) != std::string::npos) {
        ++count;
        ++at;
    }
    CHECK(count == static_cast<std::size_t>(model.num_vars()));
    // 8-character synthetic names
    CHECK(text.find("V0000001") != std::string::npos);
    CHECK(text.find("R0000001") != std::string::npos);
}

TEST_CASE("LP parser rejects malformed documents") {
    const auto expect_reject = [](const char* doc) {
        std::istringstream in(doc);
        CHECK_THROWS(import_lp(in));
    };
    expect_reject("Maximize\n obj: x\nEnd\n");
    expect_reject("Minimize\n obj: x\nSubject To\n c: x <= 1\nEnd\n");
    expect_reject("Minimize\n obj: x\nSubject To\n c: x = \nEnd\n");
    expect_reject("");
}
