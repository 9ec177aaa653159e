#include "mcsp/error.hpp"
#include "mcsp/instance.hpp"

#include <doctest.h>

#include <array>

using namespace mcsp;

TEST_CASE("parse accepts the worked example") {
    const auto inst = parse_instance("AGACTG\nACTAGG");
    CHECK(inst.n == 6);
    CHECK(inst.s1 == "AGACTG");
    CHECK(inst.s2 == "ACTAGG");
    CHECK(inst.sigma == "ACGT");
}

TEST_CASE("parse handles singleton and line-ending variants") {
    CHECK(parse_instance("A\nA").n == 1);
    CHECK(parse_instance("A\nA").sigma == "A");
    CHECK(parse_instance("AB\nBA\n").n == 2);
    CHECK(parse_instance("AB\r\nBA\r\n").s2 == "BA");
    CHECK(parse_instance("AB\nBA").n == 2);
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_instance("AB\nAC"), doctest::Contains("'B'"), Error);
    try {
        parse_instance("AB\nAC");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::not_related);
    }
    try {
        parse_instance("ABC\nAB");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::length_mismatch);
    }
    try {
        parse_instance("");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::empty_input);
    }
    try {
        parse_instance("ABC\n");
        FAIL("expected error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::empty_input);
    }
    CHECK_THROWS_AS(parse_instance("AB\nBA\nAB"), Error);
    CHECK_THROWS_AS(parse_instance("A B\nB A"), Error);
}

TEST_CASE("format and parse round-trip") {
    const auto inst = generate_instance(40, 4, 99);
    const auto back = parse_instance(format_instance(inst));
    CHECK(back.s1 == inst.s1);
    CHECK(back.s2 == inst.s2);
}

TEST_CASE("generation is deterministic and related") {
    const auto a = generate_instance(10, 26, 42);
    const auto b = generate_instance(10, 26, 42);
    CHECK(a.s1 == b.s1);
    CHECK(a.s2 == b.s2);

    const auto single = generate_instance(1, 1, 7);
    CHECK(single.s1 == "A");
    CHECK(single.s2 == "A");

    // relatedness is re-validated by construction
    const auto inst = generate_instance(100, 4, 7);
    CHECK(inst.n == 100);
    std::array<int, 26> c1{}, c2{};
    for (char c : inst.s1) c1[static_cast<std::size_t>(c - 'A')]++;
    for (char c : inst.s2) c2[static_cast<std::size_t>(c - 'A')]++;
    CHECK(c1 == c2);
}

TEST_CASE("generation rejects bad parameters") {
    CHECK_THROWS_AS(generate_instance(0, 4, 1), Error);
    CHECK_THROWS_AS(generate_instance(-3, 4, 1), Error);
    CHECK_THROWS_AS(generate_instance(5, 0, 1), Error);
    CHECK_THROWS_AS(generate_instance(5, 27, 1), Error);
}

TEST_CASE("letter frequency of generated strings is near uniform") {
    std::array<long long, 4> counts{};
    long long total = 0;
    for (int seed = 0; seed < 1000; ++seed) {
        const auto inst = generate_instance(100, 4, static_cast<std::uint64_t>(seed));
        for (char c : inst.s1) counts[static_cast<std::size_t>(c - 'A')]++;
        total += inst.n;
    }
    for (long long c : counts) {
        const double freq = static_cast<double>(c) / static_cast<double>(total);
        CHECK(freq > 0.23);
        CHECK(freq < 0.27);
    }
}
