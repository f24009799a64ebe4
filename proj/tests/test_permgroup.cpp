#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "arbor/errors.hpp"
#include "arbor/perm.hpp"
#include "arbor/permgroup.hpp"

using namespace arbor;

namespace {

Perm cyc(const std::string& s, std::size_t n) { return perm_from_cycles(s, n); }

unsigned long long chain_order(std::size_t degree, const std::vector<Perm>& gens) {
    StabilizerChain c(degree);
    for (const Perm& g : gens) c.extend(g);
    Limits lim;
    lim.max_order = ~0ULL;
    return c.order(lim);
}

} // namespace

TEST_CASE("perm basics") {
    CHECK(perm_is_identity(perm_identity(4)));
    Perm p = cyc("(0 1 2)", 4);
    CHECK(perm_order(p) == 3);
    CHECK(perm_compose(p, perm_inverse(p)) == perm_identity(4));
    CHECK(perm_to_cycles(p) == "(0 1 2)");
    CHECK(perm_to_cycles(perm_identity(3)) == "e");
    CHECK(perm_from_cycles("e", 3) == perm_identity(3));
    CHECK_THROWS_AS(perm_from_cycles("(0 0)", 3), ParseError);
    CHECK_THROWS_AS(perm_from_cycles("(0 5)", 3), ParseError);
    // compose(a, b) applies b first
    Perm a = cyc("(0 1)", 3), b = cyc("(1 2)", 3);
    CHECK(perm_compose(a, b)[1] == 2); // b: 1->2, a fixes 2
}

TEST_CASE("stabilizer chain orders on known groups") {
    CHECK(chain_order(4, {cyc("(0 1 2 3)", 4)}) == 4);
    CHECK(chain_order(4, {cyc("(0 1 2 3)", 4), cyc("(0 1)", 4)}) == 24); // S4
    CHECK(chain_order(4, {cyc("(0 1 2)", 4), cyc("(1 2 3)", 4)}) == 12); // A4
    CHECK(chain_order(4, {cyc("(0 2)(1 3)", 4), cyc("(2 3)", 4)}) == 8); // D4
    CHECK(chain_order(5, {cyc("(0 1 2 3 4)", 5), cyc("(1 2 4 3)", 5)}) == 20); // F20
    CHECK(chain_order(7, {cyc("(0 1 2 3 4 5 6)", 7), cyc("(0 1)", 7)}) == 5040);
}

TEST_CASE("chain vs BFS on random groups") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t deg = 3 + rng() % 5;
        std::vector<Perm> gens;
        for (std::size_t i = 0; i < 1 + rng() % 2; ++i) {
            Perm p = perm_identity(deg);
            std::shuffle(p.begin(), p.end(), rng);
            gens.push_back(p);
        }
        auto all = bfs_enumerate(deg, gens, 1 << 20);
        CHECK(chain_order(deg, gens) == all.size());
        StabilizerChain c(deg);
        for (const Perm& g : gens) c.extend(g);
        for (const Perm& g : all) CHECK(c.contains(g));
        // an odd-degree extension cannot be in an even-degree group etc.;
        // cheaper: a random non-member check via cardinality
        if (all.size() < 100) {
            Perm probe = perm_identity(deg);
            std::shuffle(probe.begin(), probe.end(), rng);
            bool in = std::find(all.begin(), all.end(), probe) != all.end();
            CHECK(c.contains(probe) == in);
        }
    }
}

TEST_CASE("order capacity") {
    StabilizerChain c(7);
    c.extend(cyc("(0 1 2 3 4 5 6)", 7));
    c.extend(cyc("(0 1)", 7));
    Limits tight;
    tight.max_order = 100;
    CHECK_THROWS_AS(c.order(tight), CapacityError);
    CHECK(c.order_exceeds(100));
    CHECK(!c.order_exceeds(6000));
}

TEST_CASE("derived subgroup") {
    // S4' = A4, A4' = V4, D4' = <(0 2)(1 3)> of order 2
    auto der_order = [&](std::size_t deg, const std::vector<Perm>& gens) {
        return chain_order(deg, derived_subgroup(deg, gens, {}));
    };
    CHECK(der_order(4, {cyc("(0 1 2 3)", 4), cyc("(0 1)", 4)}) == 12);
    CHECK(der_order(4, {cyc("(0 1 2)", 4), cyc("(1 2 3)", 4)}) == 4);
    CHECK(der_order(4, {cyc("(0 2)(1 3)", 4), cyc("(2 3)", 4)}) == 2);
    CHECK(der_order(4, {cyc("(0 1 2 3)", 4)}) == 1); // abelian
}

TEST_CASE("fingerprint of cyclic and product groups") {
    // C2
    Fingerprint f = fingerprint(2, {cyc("(0 1)", 2)}, {});
    CHECK(f.order == 2);
    CHECK(f.abelian);
    CHECK(f.exponent == 2);
    CHECK(f.invariant_factors == std::vector<unsigned long long>{2});
    CHECK(f.derived_order == 1);

    // C2 x C8 on 10 points
    f = fingerprint(10, {cyc("(0 1)", 10), cyc("(2 3 4 5 6 7 8 9)", 10)}, {});
    CHECK(f.order == 16);
    CHECK(f.abelian);
    CHECK(f.exponent == 8);
    CHECK(f.invariant_factors == std::vector<unsigned long long>{2, 8});

    // C6 = C2 x C3 has a single invariant factor 6
    f = fingerprint(5, {cyc("(0 1)", 5), cyc("(2 3 4)", 5)}, {});
    CHECK(f.order == 6);
    CHECK(f.invariant_factors == std::vector<unsigned long long>{6});

    // C2 x C2 x C4
    f = fingerprint(8, {cyc("(0 1)", 8), cyc("(2 3)", 8), cyc("(4 5 6 7)", 8)}, {});
    CHECK(f.order == 16);
    CHECK(f.invariant_factors == std::vector<unsigned long long>{2, 2, 4});
}

TEST_CASE("fingerprint of nonabelian groups") {
    // D8 of order 16 on 8 points: rotation + reflection
    Fingerprint f =
        fingerprint(8, {cyc("(0 1 2 3 4 5 6 7)", 8), cyc("(1 7)(2 6)(3 5)", 8)}, {});
    CHECK(f.order == 16);
    CHECK(!f.abelian);
    CHECK(f.exponent_known);
    CHECK(f.exponent == 8);
    CHECK(f.derived_order == 4);
    CHECK(f.invariant_factors.empty());

    f = fingerprint(3, {cyc("(0 1 2)", 3), cyc("(0 1)", 3)}, {});
    CHECK(f.order == 6);
    CHECK(!f.abelian);
    CHECK(f.exponent == 6);
    CHECK(f.derived_order == 3);
    CHECK(f.render() == "order=6 abelian=no exponent=6 derived_order=3");
}

TEST_CASE("trivial group fingerprint") {
    Fingerprint f = fingerprint(4, {}, {});
    CHECK(f.order == 1);
    CHECK(f.abelian);
    CHECK(f.exponent == 1);
    CHECK(f.invariant_factors.empty());
    CHECK(f.derived_order == 1);
}

TEST_CASE("bfs enumeration determinism and cap") {
    std::vector<Perm> gens{cyc("(0 1 2 3)", 4), cyc("(0 1)", 4)};
    auto a = bfs_enumerate(4, gens, 100);
    auto b = bfs_enumerate(4, gens, 100);
    CHECK(a == b);
    CHECK(a.size() == 24);
    CHECK(a[0] == perm_identity(4));
    CHECK_THROWS_AS(bfs_enumerate(4, gens, 10), CapacityError);
}

TEST_CASE("core bruteforce") {
    // core of <(0 1)> in S3 is trivial; core of A4 in S4 is A4 itself
    auto core1 = core_bruteforce(3, {cyc("(0 1 2)", 3), cyc("(0 1)", 3)},
                                 {cyc("(0 1)", 3)}, 1000);
    CHECK(core1.empty());
    auto core2 = core_bruteforce(4, {cyc("(0 1 2 3)", 4), cyc("(0 1)", 4)},
                                 {cyc("(0 1 2)", 4), cyc("(1 2 3)", 4)}, 1000);
    CHECK(core2.size() == 11); // |A4| - 1, identity excluded
    // core of <(0 1)(2 3)> (central in D4) is the subgroup itself
    auto core3 = core_bruteforce(4, {cyc("(0 1 2 3)", 4), cyc("(1 3)", 4)},
                                 {cyc("(0 2)(1 3)", 4)}, 1000);
    CHECK(core3.size() == 1);
}
