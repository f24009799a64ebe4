#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/errors.hpp"
#include "arbor/tree.hpp"

using namespace arbor;

TEST_CASE("spherical index entries and widths") {
    SphericalIndex bin = SphericalIndex::constant(2);
    CHECK(bin.is_constant());
    CHECK(bin.constant_arity() == 2);
    for (int n = 1; n <= 10; ++n) CHECK(bin.entry(n) == 2);
    CHECK(bin.level_width(0) == 1);
    CHECK(bin.level_width(10) == 1024);

    SphericalIndex mixed({2, 3}, {4});
    CHECK(!mixed.is_constant());
    CHECK(mixed.entry(1) == 2);
    CHECK(mixed.entry(2) == 3);
    CHECK(mixed.entry(3) == 4);
    CHECK(mixed.entry(7) == 4);
    CHECK(mixed.level_width(3) == 2 * 3 * 4);

    Limits tight;
    tight.max_points = 100;
    CHECK_THROWS_AS(bin.level_width(20, tight), CapacityError);
}

TEST_CASE("index spec round trip") {
    for (const char* spec : {"2", "3", "2 | 3 4", "2 3 | 4"}) {
        SphericalIndex idx = parse_index_spec(spec);
        CHECK(parse_index_spec(render_index_spec(idx)) == idx);
    }
    CHECK(parse_index_spec("3").constant_arity() == 3);
    CHECK_THROWS_AS(parse_index_spec(""), ParseError);
    CHECK_THROWS_AS(parse_index_spec("1"), ParseError); // branching must be >= 2
}

TEST_CASE("vertex render and parse") {
    SphericalIndex bin = SphericalIndex::constant(2);
    CHECK(render_vertex(bin, {}) == "");
    CHECK(render_vertex(bin, {0, 1, 1}) == "011");
    CHECK(parse_vertex(bin, "011") == VertexWord{0, 1, 1});
    CHECK(parse_vertex(bin, "-") == VertexWord{});
    CHECK(parse_vertex(bin, "") == VertexWord{});
    CHECK_THROWS_AS(parse_vertex(bin, "02"), ParseError);

    SphericalIndex wide = SphericalIndex::constant(12);
    VertexWord v{0, 11, 3};
    CHECK(parse_vertex(wide, render_vertex(wide, v)) == v);
}

TEST_CASE("vertex validation") {
    SphericalIndex mixed({2}, {3});
    validate_vertex(mixed, {1, 2, 0});
    CHECK_THROWS_AS(validate_vertex(mixed, {2}), ParseError);
    CHECK_THROWS_AS(validate_vertex(mixed, {0, 3}), ParseError);
}

TEST_CASE("eventually periodic paths") {
    SphericalIndex bin = SphericalIndex::constant(2);
    EventuallyPeriodicPath zero{{}, {0}};
    CHECK(zero.truncate(4) == VertexWord{0, 0, 0, 0});
    EventuallyPeriodicPath p{{0, 1, 1}, {1, 0}};
    CHECK(p.truncate(6) == VertexWord{0, 1, 1, 1, 0, 1});
    CHECK(render_path(bin, zero) == "0*");
    CHECK(render_path(bin, p) == "011(10)*");
    CHECK(parse_path(bin, "0*") == zero);
    CHECK(parse_path(bin, "011(10)*") == p);
    CHECK(parse_path(bin, "(01)*") == EventuallyPeriodicPath{{}, {0, 1}});
    CHECK_THROWS_AS(parse_path(bin, "011"), ParseError); // no period
}

TEST_CASE("cylinder containment is prefix order") {
    Cylinder root{{}};
    Cylinder c0{{0}};
    Cylinder c01{{0, 1}};
    CHECK(c01.contained_in(c0));
    CHECK(c0.contained_in(root));
    CHECK(!c0.contained_in(c01));
    CHECK(c0.contained_in(c0));
    CHECK(!Cylinder{{1}}.contained_in(c0));
}

TEST_CASE("path distance") {
    PathDistance d = path_distance({0, 1, 0}, {0, 1, 1}, 2);
    CHECK(d.num == 1);
    CHECK(d.den == 4); // common prefix length 2
    d = path_distance({1}, {0}, 2);
    CHECK(d.den == 1);
    d = path_distance({0, 1}, {0, 1}, 2);
    CHECK(d.den == 4); // equal words of length L give 1/d^L
}

TEST_CASE("ordinal numbering is lexicographic and involutive") {
    SphericalIndex mixed({2}, {3});
    int level = 3; // widths 2*3*3 = 18
    for (std::uint64_t k = 0; k < 18; ++k) {
        VertexWord v = ordinal_to_vertex(mixed, level, k);
        CHECK(vertex_to_ordinal(mixed, v) == k);
        if (k > 0) CHECK(ordinal_to_vertex(mixed, level, k - 1) < v);
    }
}
