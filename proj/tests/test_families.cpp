#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "arbor/errors.hpp"
#include "arbor/families.hpp"

using namespace arbor;

namespace {

// g equals h as tree automorphisms down to `depth`
bool agree(const std::shared_ptr<const RecursionSystem>& sys, const Word& g, const Word& h,
           int depth) {
    return sys->trivial_to_depth(word_concat(g, word_inverse(h)), depth);
}

} // namespace

TEST_CASE("odometer powers realize addition") {
    for (int d : {2, 3, 5}) {
        auto sys = odometer_family(d).system;
        // a^(d^n) stabilizes level n and acts as the adding machine below
        Word a{1};
        CHECK(sys->trivial_to_depth(word_pow(a, d * d), 2));
        CHECK(!sys->trivial_to_depth(word_pow(a, d * d), 3));
        // a has full orbit on level 2: repeated application cycles d^2 vertices
        VertexWord v(2, 0);
        VertexWord cur = v;
        int steps = 0;
        do {
            cur = sys->apply(a, cur);
            ++steps;
        } while (cur != v);
        CHECK(steps == d * d);
    }
}

TEST_CASE("chebyshev generators are involutions with infinite-order product") {
    for (int d : {2, 3, 4, 5}) {
        auto fam = chebyshev_family(d);
        auto sys = fam.system;
        CHECK(sys->trivial_to_depth(Word{1, 1}, 8));
        CHECK(sys->trivial_to_depth(Word{2, 2}, 8));
        Word alpha = fam.named_word("alpha");
        // alpha^(d^n) fixes level n pointwise (it generates an odometer-like
        // cycle structure); alpha itself moves level 1
        CHECK(!sys->trivial_to_depth(alpha, 1));
        long long dn = 1;
        for (int n = 1; n <= 3; ++n) {
            dn *= d;
            CHECK(sys->trivial_to_depth(word_pow(alpha, dn), n));
        }
    }
}

TEST_CASE("periodic family section pattern") {
    for (int r : {2, 3, 4}) {
        auto fam = periodic_family(r);
        auto sys = fam.system;
        // a1 swaps the top level; a1|_1 = ar; ai|_0 = a(i-1)
        CHECK(sys->apply({1}, {0}) == VertexWord{1});
        CHECK(sys->section({1}, 1) == Word{r});
        for (int i = 2; i <= r; ++i) {
            CHECK(sys->section({i}, 0) == Word{i - 1});
            CHECK(sys->section({i}, 1) == Word{});
        }
        // lambda = a1...ar acts transitively on early levels
        Word lambda = fam.named_word("lambda");
        VertexWord v(3, 0);
        VertexWord cur = v;
        int steps = 0;
        do {
            cur = sys->apply(lambda, cur);
            ++steps;
        } while (cur != v);
        CHECK(steps == 8);
    }
}

TEST_CASE("basilica pair is periodic r=2") {
    auto sys = periodic_family(2).system;
    // a1 = (a2, 1) sigma, a2 = (a1, 1)
    CHECK(sys->section({1}, 1) == Word{2});
    CHECK(sys->section({1}, 0) == Word{});
    CHECK(sys->section({2}, 0) == Word{1});
    CHECK(!sys->trivial_to_depth(Word{1, 1, 1, 1}, 6)); // a1 has infinite order
}

TEST_CASE("preperiodic family section pattern and basepoint") {
    auto fam = preperiodic_family(4, 2);
    auto sys = fam.system;
    CHECK(sys->apply({1}, {0}) == VertexWord{1});
    CHECK(sys->section({2}, 0) == Word{1});
    CHECK(sys->section({3}, 0) == Word{2}); // b3 = b_{s+1} splits
    CHECK(sys->section({3}, 1) == Word{4});
    CHECK(sys->section({4}, 0) == Word{3});
    CHECK(sys->section({4}, 1) == Word{});
    CHECK(render_path(sys->index(), sys->basepoint()) == "(01)*");
    CHECK(render_path(fam.system->index(),
                      preperiodic_family(3, 2).system->basepoint()) == "1*");
    CHECK_THROWS_AS(preperiodic_family(2, 2), ParseError);
}

TEST_CASE("dihedral family is preperiodic(2,1)") {
    auto sys = dihedral_family().system;
    CHECK(sys->num_generators() == 2);
    CHECK(sys->trivial_to_depth(Word{1, 1}, 10));
    CHECK(sys->trivial_to_depth(Word{2, 2}, 10));
    CHECK(!sys->trivial_to_depth(word_pow({1, 2}, 8), 8)); // product of infinite order
}

TEST_CASE("arithmetic periodic relations") {
    auto sys = arith_periodic_family().system;
    Word a{1}, b{2}, c{3};
    auto conj = [&](const Word& g, const Word& h) {
        return word_concat(g, word_concat(h, word_inverse(g)));
    };
    CHECK(agree(sys, Word{2, 2}, Word{}, 10));                 // b^2 = 1
    CHECK(agree(sys, conj(b, a), word_pow(a, -1), 10));        // b a b^-1 = a^-1
    CHECK(agree(sys, conj(c, a), word_pow(a, 5), 10));         // c a c^-1 = a^5
    CHECK(agree(sys, word_concat(b, c), word_concat(c, b), 10)); // [b, c] = 1
}

TEST_CASE("arithmetic periodic generators act as dyadic multiplication") {
    // with a = +1, b must be x -> -x and c must be x -> 5x on Z/2^n
    auto sys = arith_periodic_family().system;
    for (int n : {4, 6}) {
        long long mod = 1LL << n;
        for (long long x : {1LL, 3LL, 7LL, mod - 1}) {
            Word ax = word_pow({1}, x);
            VertexWord v = sys->apply(ax, VertexWord(static_cast<std::size_t>(n), 0));
            CHECK(sys->apply({2}, v) ==
                  sys->apply(word_pow({1}, ((-x) % mod + mod) % mod),
                             VertexWord(static_cast<std::size_t>(n), 0)));
            CHECK(sys->apply({3}, v) ==
                  sys->apply(word_pow({1}, (5 * x) % mod),
                             VertexWord(static_cast<std::size_t>(n), 0)));
        }
    }
}

TEST_CASE("arithmetic preperiodic relations") {
    auto fam = arith_preperiodic_family(1);
    auto sys = fam.system;
    Word a = fam.named_word("a");
    Word b = fam.named_word("b");
    Word z = fam.named_word("z");
    auto conj = [&](const Word& g, const Word& h) {
        return word_concat(g, word_concat(h, word_inverse(g)));
    };
    CHECK(agree(sys, word_concat(b, b), Word{}, 12));     // b^2 = 1
    CHECK(agree(sys, conj(b, a), word_pow(a, -1), 10));   // b a b^-1 = a^-1
    CHECK(agree(sys, conj(z, a), word_pow(a, 25), 10));   // z a z^-1 = a^(5^(2^r))
    CHECK(agree(sys, word_concat(b, z), word_concat(z, b), 10)); // [b, z] = 1
}

TEST_CASE("analysis generators override") {
    auto fam = arith_preperiodic_family(1);
    auto gens = fam.group_generators();
    REQUIRE(gens.size() == 3);
    CHECK(gens[0] == fam.named_word("a"));
    CHECK(gens[1] == Word{1}); // b1: generates the same group as named b = b1 a
    CHECK(gens[2] == fam.named_word("z"));
    // families without an override expose single-letter generator words
    auto plain = chebyshev_family(2).group_generators();
    REQUIRE(plain.size() == 2);
    CHECK(plain[0] == Word{1});
    CHECK(plain[1] == Word{2});
}

TEST_CASE("family dispatch") {
    CHECK(make_family("odometer", {3}).system->arity() == 3);
    CHECK(make_family("chebyshev", {4}).system->num_generators() == 2);
    CHECK(make_family("periodic", {2}).system->num_generators() == 2);
    CHECK(make_family("preperiodic", {3, 1}).system->num_generators() == 3);
    CHECK(make_family("dihedral", {}).system->num_generators() == 2);
    CHECK(make_family("arith-periodic", {}).system->num_generators() == 3);
    CHECK(make_family("arith-preperiodic", {2}).named.size() == 3);
    CHECK_THROWS_AS(make_family("nope", {}), ParseError);
    CHECK_THROWS_AS(make_family("odometer", {}), ParseError);
    CHECK_THROWS_AS(make_family("odometer", {1}), ParseError);
}
