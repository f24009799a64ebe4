#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "arbor/errors.hpp"
#include "arbor/families.hpp"
#include "arbor/wildness.hpp"

using namespace arbor;

namespace {

Word random_word(std::mt19937& rng, int num_gens, int len) {
    Word w;
    for (int i = 0; i < len; ++i) {
        int g = 1 + static_cast<int>(rng() % static_cast<unsigned>(num_gens));
        w.push_back(rng() % 2 ? g : -g);
    }
    return word_reduce(w);
}

} // namespace

TEST_CASE("a1 power pattern") {
    for (int r : {2, 3}) {
        for (int n = 1; n <= 3; ++n) {
            int depth = n * r + 2 * r;
            CHECK(a1_power_pattern_check(r, n, depth));
        }
        // a1^(2^n - 1) does not have the pattern of a1^(2^n)
        CHECK(!periodic_family(r).system->trivial_to_depth(word_pow({1}, 3), r));
    }
}

TEST_CASE("periodic witnesses replay") {
    for (int r : {2, 3}) {
        for (int n : {1, 2}) {
            LqaWitness w = periodic_witness(r, n);
            CHECK(check_lqa_witness(w));
            CHECK(static_cast<int>(w.W.base.size()) == n * r - 1);
            CHECK(static_cast<int>(w.O_trivial.base.size()) == n * r);
            CHECK(w.O_trivial.contained_in(w.W));
        }
    }
}

TEST_CASE("witness claims are falsifiable") {
    LqaWitness w = periodic_witness(2, 1);
    // swapping W and O makes the sets malformed
    LqaWitness bad = w;
    std::swap(bad.W, bad.O_trivial);
    CHECK_THROWS_AS(check_lqa_witness(bad), ParseError);
    // an identity element fails the nontriviality claim
    LqaWitness idw = w;
    idw.element = Element::from_word(w.element.system(), {});
    CHECK(!check_lqa_witness(idw));
}

TEST_CASE("witness transport under random conjugation") {
    // cylinders transform along the conjugator: h g h^-1 is trivial on h(O)
    // and nontrivial on h(W)
    std::mt19937 rng(41);
    for (int r : {2, 3}) {
        LqaWitness w = periodic_witness(r, 1);
        auto sys = w.element.system();
        for (int trial = 0; trial < 10; ++trial) {
            Word h = random_word(rng, r, 8);
            LqaWitness moved = w;
            moved.element = Element::from_word(
                sys, word_concat(h, word_concat(w.element.word(), word_inverse(h))));
            moved.W.base = sys->apply(h, w.W.base);
            moved.O_trivial.base = sys->apply(h, w.O_trivial.base);
            CHECK(check_lqa_witness(moved));
        }
    }
}

TEST_CASE("preperiodic certificates for b_r") {
    struct Case {
        int r, s;
        const char* path;
    };
    for (Case c : {Case{3, 2, "1*"}, Case{3, 1, "(01)*"}, Case{4, 2, "(01)*"},
                   Case{4, 3, "1*"}}) {
        auto fam = preperiodic_family(c.r, c.s);
        NonHausdorffCertificate cert = nonhausdorff_certificate(fam, c.r, c.s, c.r, 12);
        CHECK(check_nonhausdorff(cert));
        CHECK(render_path(fam.system->index(), cert.fixed_path) == c.path);
        CHECK(!cert.stages.empty());
        for (std::size_t i = 0; i < cert.stages.size(); ++i) {
            // O_n = W_n base extended by 0-block then 1 (fixed point case) or
            // by 1 (orbit case); in both, strictly inside W_n
            CHECK(cert.stages[i].O.contained_in(cert.stages[i].W));
            if (i > 0) CHECK(cert.stages[i].W.contained_in(cert.stages[i - 1].W));
        }
    }
}

TEST_CASE("fixed point case set family is exact") {
    // (r, s) = (3, 2): W_n = U_n(1^n), O_n = U_{n+2}(1^n 0 1)
    auto fam = preperiodic_family(3, 2);
    NonHausdorffCertificate cert = nonhausdorff_certificate(fam, 3, 2, 3, 10);
    for (std::size_t i = 0; i < cert.stages.size(); ++i) {
        std::size_t n = i + 1;
        CHECK(cert.stages[i].W.base == VertexWord(n, 1));
        VertexWord o(n, 1);
        o.push_back(0);
        o.push_back(1);
        CHECK(cert.stages[i].O.base == o);
    }
}

TEST_CASE("orbit case set family is exact") {
    // (r, s) = (4, 2), generator b4: W_n = U((01)^n), O_n = U((01)^n 1)
    auto fam = preperiodic_family(4, 2);
    NonHausdorffCertificate cert = nonhausdorff_certificate(fam, 4, 2, 4, 12);
    for (std::size_t i = 0; i < cert.stages.size(); ++i) {
        VertexWord w;
        for (std::size_t k = 0; k <= i; ++k) {
            w.push_back(0);
            w.push_back(1);
        }
        CHECK(cert.stages[i].W.base == w);
        w.push_back(1);
        CHECK(cert.stages[i].O.base == w);
    }
    // intermediate generators b_i act as b_{s+1} deeper along the 0-branch
    NonHausdorffCertificate mid = nonhausdorff_certificate(fam, 4, 2, 3, 12);
    CHECK(check_nonhausdorff(mid));
    CHECK(mid.fixed_path.prefix == VertexWord{1});
}

TEST_CASE("certificate guards") {
    auto fam = preperiodic_family(3, 1);
    CHECK_THROWS_AS(nonhausdorff_certificate(fam, 3, 1, 1, 12), ParseError);
    CHECK_THROWS_AS(nonhausdorff_certificate(preperiodic_family(3, 2), 3, 2, 2, 12),
                    ParseError); // fixed-point case carries only b_r
    Limits tight;
    tight.max_depth = 10;
    CHECK_THROWS_AS(nonhausdorff_certificate(fam, 3, 1, 3, 12, tight), CapacityError);
}

TEST_CASE("portrait builder certificates") {
    BuiltNonHausdorff b3 = build_portrait_nonhausdorff(SphericalIndex::constant(3), "(0 1 2)", 9);
    CHECK(check_nonhausdorff(b3.certificate));
    BuiltNonHausdorff b2 = build_portrait_nonhausdorff(SphericalIndex::constant(2), "(0 1)", 9);
    CHECK(check_nonhausdorff(b2.certificate));
    // structure: node at 0^(2k-1) 1 is the given permutation
    const Portrait& p = b2.element.portrait();
    CHECK(p.nodes.size() == 4);
    for (int k = 1; k <= 4; ++k) {
        VertexWord v(static_cast<std::size_t>(2 * k - 1), 0);
        v.push_back(1);
        CHECK(p.node(v) != nullptr);
    }
    CHECK_THROWS_AS(build_portrait_nonhausdorff(SphericalIndex::constant(2), "(0 1)", 8), ParseError);
    CHECK_THROWS_AS(build_portrait_nonhausdorff(SphericalIndex::constant(2), "e", 9), ParseError);
}

TEST_CASE("witness serialization round trip") {
    LqaWitness w = periodic_witness(2, 2);
    std::string text = serialize_witness(w);
    ParsedCertificate parsed = parse_certificate(text);
    REQUIRE(parsed.kind == ParsedCertificate::lqa);
    REQUIRE(parsed.witness.has_value());
    CHECK(parsed.witness->W == w.W);
    CHECK(parsed.witness->O_trivial == w.O_trivial);
    CHECK(parsed.witness->check_depth == w.check_depth);
    CHECK(check_lqa_witness(*parsed.witness));
    // byte determinism
    CHECK(serialize_witness(*parsed.witness) == text);
}

TEST_CASE("certificate serialization round trip") {
    auto fam = preperiodic_family(3, 1);
    NonHausdorffCertificate c = nonhausdorff_certificate(fam, 3, 1, 3, 12);
    std::string text = serialize_certificate(c);
    ParsedCertificate parsed = parse_certificate(text);
    REQUIRE(parsed.kind == ParsedCertificate::nonhausdorff);
    REQUIRE(parsed.certificate.has_value());
    CHECK(parsed.certificate->stages.size() == c.stages.size());
    CHECK(parsed.certificate->fixed_path == c.fixed_path);
    CHECK(check_nonhausdorff(*parsed.certificate));
    CHECK(serialize_certificate(*parsed.certificate) == text);

    // portrait-element certificates survive the round trip too
    BuiltNonHausdorff built = build_portrait_nonhausdorff(SphericalIndex::constant(2), "(0 1)", 9);
    std::string ptext = serialize_certificate(built.certificate);
    ParsedCertificate pparsed = parse_certificate(ptext);
    REQUIRE(pparsed.certificate.has_value());
    CHECK(check_nonhausdorff(*pparsed.certificate));
    CHECK(serialize_certificate(*pparsed.certificate) == ptext);
}

TEST_CASE("parse rejects malformed certificates") {
    CHECK_THROWS_AS(parse_certificate(""), ParseError);
    CHECK_THROWS_AS(parse_certificate("kind = waffles\n"), ParseError);
}

TEST_CASE("self-section search") {
    // the adding machine equals its own section at 1 and moves that vertex
    auto odo = odometer_family(2).system;
    SelfSectionReport rep = n0_n1_bounded_search(odo, 2, 6, false);
    bool found_a = false;
    for (const auto& hit : rep.n0)
        if (hit.word == Word{1} && hit.vertex == VertexWord{1}) found_a = true;
    CHECK(found_a);
    for (const auto& hit : rep.n1) CHECK(hit.word != Word{1});

    // chebyshev b equals its section at 0 and fixes 0: an n1 element
    auto cheb = chebyshev_family(2).system;
    rep = n0_n1_bounded_search(cheb, 1, 6, false);
    bool found_b = false;
    for (const auto& hit : rep.n1)
        if (hit.word == Word{2} && hit.vertex == VertexWord{0}) found_b = true;
    CHECK(found_b);

    // semantic mode subsumes the syntactic hits
    SelfSectionReport sem = n0_n1_bounded_search(cheb, 1, 6, true);
    CHECK(sem.n0.size() >= rep.n0.size());
    CHECK(sem.n1.size() >= rep.n1.size());
}
