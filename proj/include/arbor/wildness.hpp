#pragma once

#include <string>
#include <vector>

#include "arbor/families.hpp"
#include "arbor/recursion.hpp"

namespace arbor {

// A replayable refutation of local quasi-analyticity: an element that is the
// identity on O_trivial (to check_depth) but not on the strictly larger
// cylinder W.  Certificates are data; checking recomputes every claim.
struct LqaWitness {
    Element element;
    Cylinder W;
    Cylinder O_trivial; // base strictly extends W's base
    int check_depth = 0;
};

// Element lambda^{-2^{nr-1}} a1^{2^n} lambda^{2^{nr-1}} of the periodic
// family, trivial on the 0-branch below 0^{nr-1} and nontrivial on W.
LqaWitness periodic_witness(int r, int n, const Limits& lim = {});

// True iff a1^{2^n} is trivial to depth nr, acts as a1 on the subtree at
// 0^{nr}, and trivially on the subtree at 0^{nr-1}1, all verified to `depth`.
bool a1_power_pattern_check(int r, int n, int depth, const Limits& lim = {});

// Replays both claims; throws ParseError when O_trivial is not strictly
// inside W.
bool check_lqa_witness(const LqaWitness& w, const Limits& lim = {});

// A replayable non-Hausdorff element: it fixes fixed_path, and for each stage
// it is trivial on O_n but nontrivial on W_n, with the W_n shrinking onto the
// path.
struct NonHausdorffCertificate {
    Element element;
    EventuallyPeriodicPath fixed_path;
    struct Stage {
        Cylinder W;
        Cylinder O;
    };
    std::vector<Stage> stages;
    int depth = 0;
};

// Certificate for generator b_gen (default r) of the preperiodic(r, s)
// family.  s+1 = r puts the fixed path at 1*; r > s+1 puts it on the periodic
// word (0^{r-s-1}1)*.  Throws InternalError if the replay fails.
NonHausdorffCertificate nonhausdorff_certificate(const Family& fam, int r, int s,
                                                 int b_gen, int depth,
                                                 const Limits& lim = {});

// Replays every claim of the certificate; false on any failing claim, throws
// ParseError on malformed set families (O outside W, W not nested, bases off
// the fixed path).
bool check_nonhausdorff(const NonHausdorffCertificate& c, const Limits& lim = {});

// Infinite-state portrait element: the vertex 0^{2k-1}1 at level 2k carries
// node_perms[k-1], every other node is the identity.  The element fixes 0*
// yet is nontrivial in every neighborhood of it, with identity cylinders
// inside each.  depth must be odd; trivial node permutations are rejected.
struct BuiltNonHausdorff {
    Element element;
    NonHausdorffCertificate certificate;
};

BuiltNonHausdorff build_portrait_nonhausdorff(const SphericalIndex& index,
                                   const std::vector<Perm>& node_perms, int depth,
                                   const Limits& lim = {});
// Same, with every node permutation parsed from one cycles string against the
// arity of its own level.
BuiltNonHausdorff build_portrait_nonhausdorff(const SphericalIndex& index,
                                   const std::string& perm_cycles, int depth,
                                   const Limits& lim = {});

// Bounded search for elements equal to one of their own sections.  A hit
// lists the word and the first vertex exhibiting it; hits where the vertex is
// also fixed go to the n1 list as well.
struct SelfSectionHit {
    Word word;
    VertexWord vertex;
};

struct SelfSectionReport {
    bool semantic = false; // false: section word-reduces to the word itself;
                           // true: truncations agree to the depth bound
    std::vector<SelfSectionHit> n0;
    std::vector<SelfSectionHit> n1;
};

SelfSectionReport n0_n1_bounded_search(const std::shared_ptr<const RecursionSystem>& sys,
                                       int word_len_bound, int depth_bound, bool semantic,
                                       const Limits& lim = {});

// Line-oriented serialization; `parse_certificate` accepts both kinds and
// dispatches to the right checker via `kind`.
std::string serialize_witness(const LqaWitness& w);
std::string serialize_certificate(const NonHausdorffCertificate& c);

struct ParsedCertificate {
    enum Kind { lqa, nonhausdorff } kind = lqa;
    std::optional<LqaWitness> witness;
    std::optional<NonHausdorffCertificate> certificate;
};
ParsedCertificate parse_certificate(const std::string& text);

} // namespace arbor
