#include "arbor/families.hpp"

#include "arbor/errors.hpp"

namespace arbor {

std::vector<Word> Family::group_generators() const {
    if (!analysis_gens.empty()) return analysis_gens;
    std::vector<Word> out;
    for (std::size_t i = 0; i < system->num_generators(); ++i)
        out.push_back({static_cast<std::int32_t>(i + 1)});
    return out;
}

Word Family::named_word(const std::string& name) const {
    for (const auto& [n, w] : named)
        if (n == name) return w;
    throw ParseError("family has no named word '" + name + "'");
}

namespace {

Perm full_cycle(int d) {
    Perm p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) p[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>((i + 1) % d);
    return p;
}

// (first first+1)(first+2 first+3)... while pairs fit below `end`
Perm paired_swaps(int d, int first, int end) {
    Perm p = perm_identity(static_cast<std::size_t>(d));
    for (int i = first; i + 1 < end; i += 2) {
        p[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i + 1);
        p[static_cast<std::size_t>(i + 1)] = static_cast<std::uint32_t>(i);
    }
    return p;
}

EventuallyPeriodicPath zero_path() { return {{}, {0}}; }

} // namespace

Family odometer_family(int d) {
    if (d < 2) throw ParseError("odometer needs arity >= 2");
    RecursionSystem::Builder b(d);
    int a = b.add_generator("a");
    b.set_root(a, full_cycle(d));
    b.set_section(a, d - 1, {a + 1});
    b.set_basepoint(zero_path());
    Family f;
    f.description = "odometer arity " + std::to_string(d);
    f.system = b.build();
    return f;
}

Family chebyshev_family(int d) {
    if (d < 2) throw ParseError("chebyshev family needs arity >= 2");
    RecursionSystem::Builder bl(d);
    int a = bl.add_generator("a");
    int b = bl.add_generator("b");
    if (d % 2 == 0) {
        // a pure, b defers to itself at 0 and to a at d-1
        bl.set_root(a, paired_swaps(d, 0, d));
        bl.set_root(b, paired_swaps(d, 1, d - 1));
        bl.set_section(b, 0, {b + 1});
        bl.set_section(b, d - 1, {a + 1});
    } else {
        bl.set_root(a, paired_swaps(d, 0, d - 1));
        bl.set_section(a, d - 1, {a + 1});
        bl.set_root(b, paired_swaps(d, 1, d));
        bl.set_section(b, 0, {b + 1});
    }
    bl.set_basepoint(zero_path());
    Family f;
    f.description = "chebyshev arity " + std::to_string(d);
    f.system = bl.build();
    f.named.emplace_back("alpha", Word{b + 1, a + 1});
    return f;
}

Family periodic_family(int r) {
    if (r < 1) throw ParseError("periodic family needs r >= 1");
    RecursionSystem::Builder b(2);
    std::vector<int> ids;
    for (int i = 1; i <= r; ++i) ids.push_back(b.add_generator("a" + std::to_string(i)));
    Perm swap = full_cycle(2);
    b.set_root(ids[0], swap);
    b.set_section(ids[0], 1, {ids[static_cast<std::size_t>(r - 1)] + 1});
    for (int i = 1; i < r; ++i)
        b.set_section(ids[static_cast<std::size_t>(i)], 0, {ids[static_cast<std::size_t>(i - 1)] + 1});
    b.set_basepoint(zero_path());
    Family f;
    f.description = "periodic r=" + std::to_string(r);
    f.system = b.build();
    Word lambda;
    for (int id : ids) lambda.push_back(id + 1);
    f.named.emplace_back("lambda", lambda);
    return f;
}

Family preperiodic_family(int r, int s) {
    if (s < 1 || s >= r) throw ParseError("preperiodic family needs 1 <= s < r");
    RecursionSystem::Builder b(2);
    std::vector<int> ids;
    for (int i = 1; i <= r; ++i) ids.push_back(b.add_generator("b" + std::to_string(i)));
    b.set_root(ids[0], full_cycle(2));
    for (int i = 2; i <= r; ++i) {
        b.set_section(ids[static_cast<std::size_t>(i - 1)], 0,
                      {ids[static_cast<std::size_t>(i - 2)] + 1});
        if (i == s + 1)
            b.set_section(ids[static_cast<std::size_t>(i - 1)], 1,
                          {ids[static_cast<std::size_t>(r - 1)] + 1});
    }
    // fixed path of the section pattern: 1* when s+1 = r, else (0^{r-s-1}1)*
    EventuallyPeriodicPath base;
    if (s + 1 == r) {
        base.period = {1};
    } else {
        base.period.assign(static_cast<std::size_t>(r - s - 1), 0);
        base.period.push_back(1);
    }
    b.set_basepoint(base);
    Family f;
    f.description = "preperiodic r=" + std::to_string(r) + " s=" + std::to_string(s);
    f.system = b.build();
    return f;
}

Family dihedral_family() {
    Family f = preperiodic_family(2, 1);
    f.description = "dihedral";
    return f;
}

Family arith_periodic_family() {
    RecursionSystem::Builder bl(2);
    int a = bl.add_generator("a");
    int b = bl.add_generator("b");
    int c = bl.add_generator("c");
    bl.set_root(a, full_cycle(2));
    bl.set_section(a, 1, {a + 1});
    // b: multiplication by -1 on 2-adic integers
    bl.set_section(b, 0, {b + 1});
    bl.set_section(b, 1, {-(a + 1), b + 1});
    // c: multiplication by 5
    bl.set_section(c, 0, {c + 1});
    bl.set_section(c, 1, {a + 1, a + 1, c + 1});
    bl.set_basepoint(zero_path());
    Family f;
    f.description = "arith-periodic";
    f.system = bl.build();
    return f;
}

Family arith_preperiodic_family(int r) {
    if (r < 1) throw ParseError("arith-preperiodic family needs r >= 1");
    RecursionSystem::Builder bl(2);
    int b1 = bl.add_generator("b1");
    int b2 = bl.add_generator("b2");
    int c = bl.add_generator("c");
    bl.set_root(b1, full_cycle(2));
    bl.set_section(b2, 0, {b1 + 1});
    bl.set_section(b2, 1, {b2 + 1});
    // c conjugates b1 b2 to its fifth power; below letter 0 the correction
    // a^-2 appears, below letter 1 the recursion closes on c itself.
    Word a{b1 + 1, b2 + 1};
    bl.set_section(c, 0, word_concat(word_pow(a, -2), {c + 1}));
    bl.set_section(c, 1, {c + 1});
    bl.set_basepoint(zero_path());
    Family f;
    f.description = "arith-preperiodic r=" + std::to_string(r);
    f.system = bl.build();
    f.named.emplace_back("a", a);
    // the involution inverting a AND commuting with z is the reflection
    // b1 a, not b1 itself (b1 inverts a but conjugates z nontrivially)
    f.named.emplace_back("b", word_concat({b1 + 1}, a));
    f.named.emplace_back("z", word_pow({c + 1}, 1LL << r));
    // the group under study is <a, b, z>; the raw generators b1, b2, c only
    // present the sections and generate a strictly larger group
    f.analysis_gens = {a, Word{b1 + 1}, f.named_word("z")};
    return f;
}

Family make_family(const std::string& name, const std::vector<int>& params) {
    auto want = [&](std::size_t n) {
        if (params.size() != n)
            throw ParseError("family '" + name + "' takes " + std::to_string(n) +
                             " parameter(s), got " + std::to_string(params.size()));
    };
    if (name == "odometer") {
        want(1);
        return odometer_family(params[0]);
    }
    if (name == "chebyshev") {
        want(1);
        return chebyshev_family(params[0]);
    }
    if (name == "periodic") {
        want(1);
        return periodic_family(params[0]);
    }
    if (name == "preperiodic") {
        want(2);
        return preperiodic_family(params[0], params[1]);
    }
    if (name == "dihedral") {
        want(0);
        return dihedral_family();
    }
    if (name == "arith-periodic") {
        want(0);
        return arith_periodic_family();
    }
    if (name == "arith-preperiodic") {
        want(1);
        return arith_preperiodic_family(params[0]);
    }
    throw ParseError("unknown family '" + name + "'");
}

} // namespace arbor
