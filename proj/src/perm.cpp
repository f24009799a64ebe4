#include "arbor/perm.hpp"

#include <numeric>
#include <sstream>

#include "arbor/errors.hpp"

namespace arbor {

Perm perm_identity(std::size_t n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0u);
    return p;
}

bool perm_is_identity(const Perm& p) {
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] != i) return false;
    return true;
}

Perm perm_compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint32_t>(i);
    return r;
}

unsigned long long perm_order(const Perm& p) {
    // lcm of cycle lengths
    std::vector<bool> seen(p.size(), false);
    unsigned long long ord = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        unsigned long long len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

std::string perm_to_cycles(const Perm& p) {
    if (perm_is_identity(p)) return "e";
    std::ostringstream out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == i) continue;
        out << '(' << i;
        seen[i] = true;
        for (std::size_t j = p[i]; j != i; j = p[j]) {
            out << ' ' << j;
            seen[j] = true;
        }
        out << ')';
    }
    return out.str();
}

Perm perm_from_cycles(const std::string& text, std::size_t n) {
    Perm p = perm_identity(n);
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    skip_ws();
    if (i < text.size() && text[i] == 'e') {
        ++i;
        skip_ws();
        if (i != text.size()) throw ParseError("trailing characters after 'e' in permutation");
        return p;
    }
    std::vector<bool> used(n, false);
    bool any_cycle = false;
    while (i < text.size()) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] != '(') throw ParseError("expected '(' in cycle notation: " + text);
        ++i;
        std::vector<std::uint32_t> cyc;
        while (true) {
            skip_ws();
            if (i < text.size() && text[i] == ')') { ++i; break; }
            std::size_t j = i;
            while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])))) ++j;
            if (j == i) throw ParseError("expected point in cycle notation: " + text);
            unsigned long v = std::stoul(text.substr(i, j - i));
            if (v >= n) throw ParseError("cycle point out of range: " + std::to_string(v));
            if (used[v]) throw ParseError("repeated point in cycles: " + std::to_string(v));
            used[v] = true;
            cyc.push_back(static_cast<std::uint32_t>(v));
            i = j;
            skip_ws();
            if (i < text.size() && text[i] == ',') ++i; // commas between points allowed
        }
        if (cyc.size() < 2) throw ParseError("cycle of length < 2 in: " + text);
        for (std::size_t k = 0; k < cyc.size(); ++k)
            p[cyc[k]] = cyc[(k + 1) % cyc.size()];
        any_cycle = true;
    }
    if (!any_cycle) throw ParseError("empty permutation text (use 'e' for identity)");
    return p;
}

} // namespace arbor
