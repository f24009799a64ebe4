#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/limits.hpp"
#include "arbor/perm.hpp"

namespace arbor {

// Deterministic incremental stabilizer chain (Schreier-Sims).  Base points are
// chosen as the first moved point of each new strong generator, so identical
// generator sequences always produce identical chains.
class StabilizerChain {
public:
    explicit StabilizerChain(std::size_t degree);

    void extend(const Perm& g);
    bool contains(const Perm& g) const;

    // Product of the transversal sizes; throws CapacityError past max_order.
    unsigned long long order(const Limits& lim = {}) const;
    bool order_exceeds(unsigned long long bound) const;

    std::size_t degree() const { return degree_; }
    bool is_trivial() const { return levels_.empty(); }

private:
    struct Level {
        std::uint32_t base;
        std::vector<Perm> gens;
        std::unordered_map<std::uint32_t, Perm> transversal; // point -> u, u(base) = point
        std::vector<std::uint32_t> orbit;                    // BFS discovery order
    };

    std::size_t degree_;
    std::vector<Level> levels_;

    std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;
    void recompute_orbit(std::size_t i);
    void insert_strong(Perm h, std::size_t lo, std::size_t hi); // h stabilizes bases < lo
    void close_level(std::size_t i);
    __int128 order_raw() const;
};

// Every element of <gens> by breadth-first multiplication; CapacityError past
// the cap.  Order of the result is deterministic (BFS layers, generator order).
std::vector<Perm> bfs_enumerate(std::size_t degree, const std::vector<Perm>& gens,
                                std::size_t cap);

// Isomorphism-invariant summary of a permutation group, used to compare groups
// that live on different point sets.
struct Fingerprint {
    unsigned long long order = 1;
    bool abelian = true;
    unsigned long long exponent = 1;
    bool exponent_known = true;
    std::vector<unsigned long long> invariant_factors; // abelian groups only, ascending
    unsigned long long derived_order = 1;

    bool operator==(const Fingerprint&) const = default;
    std::string render() const;
};

Fingerprint fingerprint(std::size_t degree, const std::vector<Perm>& gens,
                        const Limits& lim = {});

// Generators of the derived subgroup: commutators of the generators closed
// under conjugation by the generators.
std::vector<Perm> derived_subgroup(std::size_t degree, const std::vector<Perm>& gens,
                                   const Limits& lim = {});

// Brute-force normal core of <sub> inside <ambient> by full enumeration of
// both groups: every element of the subgroup whose whole conjugacy sweep stays
// inside the subgroup.  Intended as an independent cross-check, capped hard.
std::vector<Perm> core_bruteforce(std::size_t degree, const std::vector<Perm>& ambient,
                                  const std::vector<Perm>& sub, std::size_t cap);

} // namespace arbor
