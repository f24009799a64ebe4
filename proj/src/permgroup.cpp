#include "arbor/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "arbor/errors.hpp"

namespace arbor {

namespace {

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t v : p) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

StabilizerChain::StabilizerChain(std::size_t degree) : degree_(degree) {}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm g, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
        std::uint32_t x = g[levels_[i].base];
        auto it = levels_[i].transversal.find(x);
        if (it == levels_[i].transversal.end()) return {std::move(g), i};
        g = perm_compose(perm_inverse(it->second), g);
    }
    return {std::move(g), levels_.size()};
}

void StabilizerChain::recompute_orbit(std::size_t i) {
    Level& lvl = levels_[i];
    lvl.transversal.clear();
    lvl.orbit.clear();
    lvl.transversal.emplace(lvl.base, perm_identity(degree_));
    lvl.orbit.push_back(lvl.base);
    for (std::size_t head = 0; head < lvl.orbit.size(); ++head) {
        std::uint32_t p = lvl.orbit[head];
        const Perm& up = lvl.transversal.at(p);
        for (const Perm& s : lvl.gens) {
            std::uint32_t q = s[p];
            if (!lvl.transversal.count(q)) {
                lvl.transversal.emplace(q, perm_compose(s, up));
                lvl.orbit.push_back(q);
            }
        }
    }
}

void StabilizerChain::insert_strong(Perm h, std::size_t lo, std::size_t hi) {
    // h fixes the bases above level `lo`, so it is a legitimate generator of
    // every stabilizer from `lo` down to `hi`; registering it only at the
    // bottom would leave the shallower orbits too small.
    if (hi == levels_.size()) {
        std::uint32_t base = 0;
        while (base < degree_ && h[base] == base) ++base;
        levels_.push_back(Level{base, {}, {}, {}});
    }
    for (std::size_t l = lo; l <= hi; ++l) levels_[l].gens.push_back(h);
}

void StabilizerChain::close_level(std::size_t i) {
    recompute_orbit(i);
    // The orbit and generator list at this level are fixed for the duration:
    // every residue found here is inserted strictly deeper.  Index access
    // throughout: recursion may grow levels_ and invalidate references.
    for (std::size_t head = 0; head < levels_[i].orbit.size(); ++head) {
        std::uint32_t p = levels_[i].orbit[head];
        for (std::size_t si = 0; si < levels_[i].gens.size(); ++si) {
            Perm s = levels_[i].gens[si];
            Perm sg = perm_compose(perm_inverse(levels_[i].transversal.at(s[p])),
                                   perm_compose(s, levels_[i].transversal.at(p)));
            auto [h, j] = strip(std::move(sg), i + 1);
            if (!perm_is_identity(h)) {
                insert_strong(std::move(h), i + 1, j);
                for (std::size_t l = j + 1; l-- > i + 1;) close_level(l);
            }
        }
    }
}

void StabilizerChain::extend(const Perm& g) {
    if (g.size() != degree_) throw InternalError("generator degree mismatch");
    auto [h, i] = strip(g, 0);
    if (perm_is_identity(h)) return;
    insert_strong(std::move(h), 0, i);
    for (std::size_t l = i + 1; l-- > 0;) close_level(l);
}

bool StabilizerChain::contains(const Perm& g) const {
    if (g.size() != degree_) throw InternalError("membership test degree mismatch");
    return perm_is_identity(strip(g, 0).first);
}

__int128 StabilizerChain::order_raw() const {
    // saturates instead of overflowing; the cap is far above every usable limit
    const __int128 cap = static_cast<__int128>(1000000000000000000LL) *
                         static_cast<__int128>(1000000000000000000LL);
    __int128 ord = 1;
    for (const Level& lvl : levels_) {
        __int128 sz = static_cast<__int128>(lvl.transversal.size());
        if (ord > cap / sz) return cap;
        ord *= sz;
    }
    return ord;
}

unsigned long long StabilizerChain::order(const Limits& lim) const {
    __int128 ord = order_raw();
    if (ord > static_cast<__int128>(lim.max_order))
        throw CapacityError("group order exceeds " + std::to_string(lim.max_order));
    return static_cast<unsigned long long>(ord);
}

bool StabilizerChain::order_exceeds(unsigned long long bound) const {
    return order_raw() > static_cast<__int128>(bound);
}

std::vector<Perm> bfs_enumerate(std::size_t degree, const std::vector<Perm>& gens,
                                std::size_t cap) {
    std::vector<Perm> out;
    std::unordered_set<Perm, PermHash> seen;
    out.push_back(perm_identity(degree));
    seen.insert(out.back());
    for (std::size_t head = 0; head < out.size(); ++head) {
        Perm cur = out[head]; // copy: out may reallocate below
        for (const Perm& s : gens) {
            Perm next = perm_compose(s, cur);
            if (seen.insert(next).second) {
                out.push_back(std::move(next));
                if (out.size() > cap)
                    throw CapacityError("enumeration exceeds " + std::to_string(cap) +
                                        " elements");
            }
        }
    }
    return out;
}

std::vector<Perm> derived_subgroup(std::size_t degree, const std::vector<Perm>& gens,
                                   const Limits& lim) {
    StabilizerChain chain(degree);
    std::vector<Perm> out;
    auto add = [&](Perm g) {
        if (chain.contains(g)) return;
        chain.extend(g);
        if (chain.order_exceeds(lim.max_order))
            throw CapacityError("derived subgroup order exceeds " +
                                std::to_string(lim.max_order));
        out.push_back(std::move(g));
    };
    for (const Perm& a : gens)
        for (const Perm& b : gens)
            add(perm_compose(perm_inverse(a),
                             perm_compose(perm_inverse(b), perm_compose(a, b))));
    // normal closure under conjugation by the group generators
    for (std::size_t head = 0; head < out.size(); ++head) {
        Perm w = out[head];
        for (const Perm& s : gens)
            add(perm_compose(perm_inverse(s), perm_compose(w, s)));
    }
    return out;
}

namespace {

std::vector<unsigned long long> abelian_invariant_factors(
    unsigned long long order, const std::vector<unsigned long long>& element_orders) {
    if (order == 1) return {};
    // primes dividing the group order
    std::vector<unsigned long long> primes;
    unsigned long long rest = order;
    for (unsigned long long p = 2; p * p <= rest; ++p)
        if (rest % p == 0) {
            primes.push_back(p);
            while (rest % p == 0) rest /= p;
        }
    if (rest > 1) primes.push_back(rest);

    // per prime: multiset of cyclic p-power factors, largest first
    std::vector<std::vector<unsigned long long>> per_prime;
    for (unsigned long long p : primes) {
        // n_k = #elements whose order divides p^k
        std::vector<unsigned long long> counts{1};
        for (unsigned long long bound = p;; bound *= p) {
            unsigned long long n = 0;
            for (unsigned long long o : element_orders)
                if (bound % o == 0) ++n;
            counts.push_back(n);
            if (n == counts[counts.size() - 2]) break; // p-part exhausted
        }
        // t_k = #factors of order >= p^k; exact-p^k multiplicity = t_k - t_{k+1}
        std::vector<int> t;
        for (std::size_t k = 1; k < counts.size(); ++k) {
            unsigned long long ratio = counts[k] / counts[k - 1];
            int tk = 0;
            while (ratio > 1) {
                ratio /= p;
                ++tk;
            }
            t.push_back(tk);
        }
        std::vector<unsigned long long> factors;
        unsigned long long pk = 1;
        for (std::size_t k = 0; k < t.size(); ++k) {
            pk *= p;
            int mult = t[k] - (k + 1 < t.size() ? t[k + 1] : 0);
            for (int m = 0; m < mult; ++m) factors.push_back(pk);
        }
        std::sort(factors.rbegin(), factors.rend());
        per_prime.push_back(std::move(factors));
    }
    std::size_t width = 0;
    for (const auto& f : per_prime) width = std::max(width, f.size());
    std::vector<unsigned long long> result;
    for (std::size_t i = 0; i < width; ++i) {
        unsigned long long d = 1;
        for (const auto& f : per_prime)
            if (i < f.size()) d *= f[i];
        result.push_back(d);
    }
    std::reverse(result.begin(), result.end()); // ascending, each divides the next
    return result;
}

} // namespace

Fingerprint fingerprint(std::size_t degree, const std::vector<Perm>& gens,
                        const Limits& lim) {
    Fingerprint f;
    StabilizerChain chain(degree);
    for (const Perm& g : gens) chain.extend(g);
    f.order = chain.order(lim);

    f.abelian = true;
    for (std::size_t i = 0; i < gens.size() && f.abelian; ++i)
        for (std::size_t j = i + 1; j < gens.size() && f.abelian; ++j)
            if (perm_compose(gens[i], gens[j]) != perm_compose(gens[j], gens[i]))
                f.abelian = false;

    {
        StabilizerChain d(degree);
        for (const Perm& g : derived_subgroup(degree, gens, lim)) d.extend(g);
        f.derived_order = d.order(lim);
    }

    if (f.abelian) {
        f.exponent = 1;
        for (const Perm& g : gens) f.exponent = std::lcm(f.exponent, perm_order(g));
        f.exponent_known = true;
        if (f.order <= lim.max_bfs) {
            std::vector<unsigned long long> orders;
            for (const Perm& g : bfs_enumerate(degree, gens, lim.max_bfs))
                orders.push_back(perm_order(g));
            f.invariant_factors = abelian_invariant_factors(f.order, orders);
        }
    } else if (f.order <= lim.max_bfs) {
        f.exponent = 1;
        for (const Perm& g : bfs_enumerate(degree, gens, lim.max_bfs))
            f.exponent = std::lcm(f.exponent, perm_order(g));
        f.exponent_known = true;
    } else {
        f.exponent = 0;
        f.exponent_known = false;
    }
    return f;
}

std::string Fingerprint::render() const {
    std::ostringstream out;
    out << "order=" << order << " abelian=" << (abelian ? "yes" : "no");
    if (exponent_known)
        out << " exponent=" << exponent;
    else
        out << " exponent=unknown";
    if (abelian) {
        out << " factors=[";
        for (std::size_t i = 0; i < invariant_factors.size(); ++i)
            out << (i ? " " : "") << invariant_factors[i];
        out << "]";
    }
    out << " derived_order=" << derived_order;
    return out.str();
}

std::vector<Perm> core_bruteforce(std::size_t degree, const std::vector<Perm>& ambient,
                                  const std::vector<Perm>& sub, std::size_t cap) {
    std::vector<Perm> big = bfs_enumerate(degree, ambient, cap);
    std::vector<Perm> small = bfs_enumerate(degree, sub, cap);
    std::unordered_set<Perm, PermHash> in_sub(small.begin(), small.end());
    std::vector<Perm> core;
    for (const Perm& h : small) {
        bool ok = true;
        for (const Perm& g : big) {
            if (!in_sub.count(perm_compose(g, perm_compose(h, perm_inverse(g))))) {
                ok = false;
                break;
            }
        }
        if (ok && !perm_is_identity(h)) core.push_back(h);
    }
    return core;
}

} // namespace arbor
