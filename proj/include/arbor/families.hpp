#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "arbor/recursion.hpp"

namespace arbor {

// A recursion system together with the distinguished words that the analysis
// routines want by name (e.g. the full-cycle element of a periodic family).
struct Family {
    std::string description;
    std::shared_ptr<const RecursionSystem> system;
    std::vector<std::pair<std::string, Word>> named;
    // When nonempty, the group under analysis is generated by these words
    // instead of the raw system generators (which may generate a strictly
    // larger group used only to express the sections).
    std::vector<Word> analysis_gens;

    Word named_word(const std::string& name) const; // throws ParseError if absent
    // analysis_gens when present, else one single-letter word per generator
    std::vector<Word> group_generators() const;
};

// The d-ary adding machine: one generator cycling the first letters, carrying
// into the last branch.
Family odometer_family(int d);

// Two generators of order two on the d-ary tree whose product has infinite
// order; "alpha" names that product.  Defined for every d >= 2.
Family chebyshev_family(int d);

// Binary tree, generators a1..ar in a cyclic section pattern: a1 swaps the top
// letters and defers to ar below letter 1, every other ai shifts down the
// 0-branch.  "lambda" names a1 a2 ... ar, which acts level-transitively.
// r = 2 is the Basilica pair.
Family periodic_family(int r);

// Binary tree, generators b1..br with a preperiodic section pattern of tail
// length s (1 <= s < r): b1 swaps the top letters, b_{s+1} defers to bs and br
// on the two branches, every other bi shifts down the 0-branch.
Family preperiodic_family(int r, int s);

// preperiodic_family(2, 1): the infinite dihedral pair.
Family dihedral_family();

// Binary odometer a together with the automorphisms acting on 2-adic integers
// as multiplication by -1 (gen b) and by 5 (gen c).
Family arith_periodic_family();

// Binary generators b1, b2 of a dihedral-like pair plus the multiplication
// automorphism c; "a" names b1 b2, "b" names b1, and "z" names c^(2^r).
Family arith_preperiodic_family(int r);

// CLI dispatch: name in {odometer, chebyshev, periodic, preperiodic, dihedral,
// arith-periodic, arith-preperiodic}, with the parameters each requires.
Family make_family(const std::string& name, const std::vector<int>& params);

} // namespace arbor
