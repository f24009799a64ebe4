#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "arbor/permgroup.hpp"
#include "arbor/recursion.hpp"

namespace arbor {

// A permutation carrying the word that produced it, so the same group element
// can be re-evaluated at other levels or on other orbits.
struct LabeledPerm {
    Word word;
    Perm perm;
};

// Image of the generated group in the symmetric group on level-n vertices.
struct FiniteQuotient {
    std::shared_ptr<const RecursionSystem> sys;
    int level = 0;
    std::uint64_t points = 0;
    std::vector<LabeledPerm> gens;

    unsigned long long order(const Limits& lim = {}) const;
    bool transitive() const;
};

FiniteQuotient level_quotient(const std::shared_ptr<const RecursionSystem>& sys,
                              const std::vector<Word>& gen_words, int n,
                              const Limits& lim = {});

// Convenience: one single-letter word per system generator.
std::vector<Word> generator_words(const RecursionSystem& sys);

// Vertex stabilizer inside the abstract group, via orbit/transversal words and
// Schreier's lemma.  Everything is a word, exact at every level.
struct StabilizerWords {
    VertexWord vertex;
    std::vector<VertexWord> orbit;  // discovery order, orbit[0] = vertex
    std::vector<Word> transversal;  // transversal[i] sends vertex to orbit[i]
    std::vector<Word> gens;         // reduced Schreier generators, deduplicated
};

StabilizerWords stabilizer_words(const std::shared_ptr<const RecursionSystem>& sys,
                                 const std::vector<Word>& group_gens,
                                 const VertexWord& v, const Limits& lim = {});

// The finite group at position (m, n) of the discriminant tower: the image of
// the stabilizer of x_n acting on the orbit of x_n under the stabilizer of
// x_m.  The kernel of that action is the relative core of the level-n
// stabilizer inside the level-m one.
struct DiscriminantLevel {
    int m = 0;
    int n = 0;
    VertexWord x_m;
    VertexWord x_n;
    std::vector<VertexWord> orbit;  // orbit of x_n under the stabilizer of x_m
    std::vector<LabeledPerm> gens;  // level-n stabilizer restricted to the orbit,
                                    // deduplicated by permutation
    std::vector<Word> ambient_gens; // generators (words) of the stabilizer of x_m
    unsigned long long order = 1;
    std::optional<Fingerprint> fp;  // absent when the order exceeds the limit
};

DiscriminantLevel discriminant_level(const std::shared_ptr<const RecursionSystem>& sys,
                                     const std::vector<Word>& group_gens,
                                     const EventuallyPeriodicPath& basepoint, int m, int n,
                                     const Limits& lim = {});

// One connecting homomorphism between two tower cells, verified on the
// combined action: a source generator word is re-evaluated on the target
// orbit, and the three group orders decide the flags.
struct ConnectingMap {
    int src_m = 0, src_n = 0;
    int dst_m = 0, dst_n = 0;
    bool well_defined = false;
    bool injective = false;
    bool surjective = false;
    unsigned long long kernel_size = 1;

    bool isomorphism() const { return well_defined && injective && surjective; }
};

ConnectingMap connecting_map(const std::shared_ptr<const RecursionSystem>& sys,
                             const DiscriminantLevel& src, const DiscriminantLevel& dst,
                             const Limits& lim = {});

// The grid of cells M <= m < n <= N along one basepoint, with the maps that
// decrease n within a column and the maps that increase m within a row.
struct DiscriminantTower {
    EventuallyPeriodicPath basepoint;
    int M = 0, N = 0;
    std::vector<DiscriminantLevel> cells;   // ordered by (m, n)
    std::vector<ConnectingMap> column_maps; // D(m,n) -> D(m,n-1)
    std::vector<ConnectingMap> row_maps;    // D(m,n) -> D(m+1,n)

    const DiscriminantLevel* cell(int m, int n) const;
};

DiscriminantTower discriminant_tower(const std::shared_ptr<const RecursionSystem>& sys,
                                     const std::vector<Word>& gen_words,
                                     const EventuallyPeriodicPath& basepoint, int M, int N,
                                     const Limits& lim = {});

struct ChainRow {
    int n = 0;
    bool transitive = false;
    std::uint64_t g_over_gn = 0;            // orbit size of x_n
    unsigned long long g_over_cn = 0;       // order of the level-n image
    unsigned long long gn_over_cn = 0;      // order of the (0, n) tower cell
};

std::vector<ChainRow> chain_report(const std::shared_ptr<const RecursionSystem>& sys,
                                   const std::vector<Word>& gen_words,
                                   const EventuallyPeriodicPath& basepoint, int N,
                                   const Limits& lim = {});

// Finite-depth heuristic over a computed tower.  The verdict describes the
// computed window only, never the infinite object.
struct StabilityVerdict {
    enum Kind { stable_evidence, wild_evidence, inconclusive } kind = inconclusive;
    std::optional<Fingerprint> stable_fp; // set for stable_evidence
    std::string detail;
};

// burn-in: within column m only cells with n >= m + 2 are judged (the first
// cell D(m, m+1) routinely differs from the tail).
StabilityVerdict stability_probe(const DiscriminantTower& tower);

} // namespace arbor
