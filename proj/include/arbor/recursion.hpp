#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "arbor/limits.hpp"
#include "arbor/perm.hpp"
#include "arbor/tree.hpp"

namespace arbor {

// A freely reduced word over the generators of a recursion system.  Entry +k
// is generator k-1, entry -k its inverse (k is 1-based so signs are usable).
// The empty word is the identity.
using Word = std::vector<std::int32_t>;

Word word_reduce(const Word& w);
Word word_concat(const Word& a, const Word& b); // reduces across the seam
Word word_inverse(const Word& w);
Word word_pow(const Word& w, long long k);      // repeated doubling, k may be negative

// A finite automaton presenting tree automorphisms: each generator g carries a
// root permutation and, for every first letter x, a section word g|_x applied
// to the rest of the input.  Semantics: g(x.w) = root_g(x) . (g|_x)(w).
//
// Sections are stored indexed by the *input* letter x.  Loaders for tuple
// presentations that index components by the sigma-preimage instead perform
// the reindexing at build time (see Builder::set_preimage_tuple).
class RecursionSystem {
public:
    struct Generator {
        std::string name;
        Perm root;                  // permutation of {0..d-1}
        std::vector<Word> sections; // sections[x] = g|_x
    };

    class Builder {
    public:
        explicit Builder(int arity);

        int add_generator(const std::string& name); // returns generator id (0-based)
        void set_root(int gen, const Perm& root);
        void set_section(int gen, Letter x, const Word& w);
        // tuple[i] becomes the section at letter root^{-1}(i); requires the
        // root permutation to be set first.
        void set_preimage_tuple(int gen, const std::vector<Word>& tuple);
        void set_basepoint(const EventuallyPeriodicPath& p);

        std::shared_ptr<const RecursionSystem> build(); // validates everything

    private:
        friend class RecursionSystem;
        int d_;
        std::vector<Generator> gens_;
        std::unordered_map<std::string, int> names_;
        std::optional<EventuallyPeriodicPath> basepoint_;
    };

    int arity() const { return d_; }
    const SphericalIndex& index() const { return index_; }
    const EventuallyPeriodicPath& basepoint() const { return basepoint_; }
    std::size_t num_generators() const { return gens_.size(); }
    const Generator& generator(int i) const { return gens_.at(static_cast<std::size_t>(i)); }
    int generator_id(const std::string& name) const; // throws ParseError if unknown

    // --- word evaluation ------------------------------------------------
    Letter letter_image(std::int32_t signed_gen, Letter x) const;
    Word signed_section(std::int32_t signed_gen, Letter x) const;

    Perm root_perm(const Word& w) const;              // induced permutation of first letters
    VertexWord apply(const Word& w, const VertexWord& v) const;
    Word section(const Word& w, Letter x) const;      // memoized
    Word section(const Word& w, const VertexWord& v) const;
    bool fixes_vertex(const Word& w, const VertexWord& v) const;

    // Dense image table of the level-n vertices in lexicographic order.
    Perm truncate(const Word& w, int n, const Limits& lim = {}) const;

    bool trivial_to_depth(const Word& w, int n) const; // memoized recursion
    // True iff every level-`depth` word extending `base` is fixed.
    bool trivial_on(const Word& w, const VertexWord& base, int depth) const;
    // True iff some word extending `base` of level <= depth is moved.
    bool nontrivial_on(const Word& w, const VertexWord& base, int depth) const;

    // --- words as text ---------------------------------------------------
    // Whitespace-separated generator names with optional ^-1; "e" = identity.
    Word parse_word(const std::string& text) const;
    std::string render_word(const Word& w) const;

    // --- file format ------------------------------------------------------
    static std::shared_ptr<const RecursionSystem> parse(const std::string& text);
    std::string emit() const;

private:
    RecursionSystem() : index_(SphericalIndex::constant(2)) {}

    int d_ = 2;
    SphericalIndex index_;
    EventuallyPeriodicPath basepoint_{{}, {0}};
    std::vector<Generator> gens_;
    std::unordered_map<std::string, int> names_;
    std::vector<Perm> root_inverses_;

    // Section memoization keyed by (interned word, letter); behaviorally
    // transparent: concurrent readers would each observe a value computed
    // from scratch at most once per key.
    struct WordHash {
        std::size_t operator()(const Word& w) const;
    };
    mutable std::unordered_map<Word, std::uint32_t, WordHash> intern_ids_;
    mutable std::vector<Word> interned_;
    mutable std::unordered_map<std::uint64_t, Word> section_memo_;
    mutable std::unordered_map<std::uint64_t, bool> trivial_memo_;
    std::uint32_t intern(const Word& w) const;

    void truncate_rec(const Word& w, int k, int n, std::uint64_t src, std::uint64_t dst,
                      Perm& out) const;
};

// Node permutations of an automorphism down to a depth cap: the vertex v
// carries the root permutation of the section at v.  Vertices absent from the
// map carry the identity, so the labeling is total on levels < depth.
struct Portrait {
    SphericalIndex index = SphericalIndex::constant(2);
    int depth = 0;
    std::map<VertexWord, Perm> nodes; // only non-identity entries stored

    const Perm* node(const VertexWord& v) const;
    Perm node_or_identity(const VertexWord& v) const;

    VertexWord apply(const VertexWord& v) const; // v.size() <= depth required

    std::string render_text() const;
    std::string render_dot() const;
};

// A tree automorphism: either a reduced word over a recursion system (exact
// at every depth) or an explicit portrait, defined only down to its cap.
class Element {
public:
    static Element from_word(std::shared_ptr<const RecursionSystem> sys, Word w);
    static Element from_portrait(Portrait p);

    bool is_word() const { return sys_ != nullptr; }
    const Word& word() const;
    const Portrait& portrait() const;
    const std::shared_ptr<const RecursionSystem>& system() const { return sys_; }
    const SphericalIndex& index() const;

    // Depth cap: words are defined at every depth (returns nullopt); portraits
    // only down to their stored depth.
    std::optional<int> cap() const;
    // Set when composing portraits with unequal caps: result is truncated to
    // the smaller cap.
    bool cap_warning() const { return cap_warning_; }

    VertexWord apply(const VertexWord& v) const;
    Element section(const VertexWord& v) const;
    Element compose(const Element& rhs) const; // this after rhs
    Element invert() const;
    Perm truncate(int n, const Limits& lim = {}) const;
    Portrait portrait_of(int n, const Limits& lim = {}) const;
    bool is_trivial_to_depth(int n, const Limits& lim = {}) const;
    bool acts_trivially_on(const Cylinder& c, int depth, const Limits& lim = {}) const;
    bool acts_nontrivially_on(const Cylinder& c, int depth, const Limits& lim = {}) const;
    bool fixes_vertex(const VertexWord& v) const;

private:
    Element() = default;
    void require_depth(int n) const; // portraits: throw CapacityError past cap

    std::shared_ptr<const RecursionSystem> sys_; // set iff word form
    Word word_;
    std::optional<Portrait> portrait_;
    bool cap_warning_ = false;
};

} // namespace arbor
