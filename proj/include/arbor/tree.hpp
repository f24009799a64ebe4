#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arbor/limits.hpp"

namespace arbor {

// A vertex of the tree: the sequence of edge labels from the root.  Letter k
// at position i must satisfy 0 <= k < (i-th branching number).  The empty word
// is the root.
using Letter = int;
using VertexWord = std::vector<Letter>;

// Branching numbers of a spherically homogeneous rooted tree, as an eventually
// periodic sequence (prefix then repeating period).  Every entry is >= 2 so
// the path space is a Cantor set.  A constant sequence models the d-ary tree.
class SphericalIndex {
public:
    SphericalIndex(std::vector<int> prefix, std::vector<int> period);
    static SphericalIndex constant(int d);

    // Branching number below level `level-1`, i.e. the number of children of a
    // level-(level-1) vertex.  Levels are 1-based.
    int entry(int level) const;

    bool is_constant() const;
    int constant_arity() const; // requires is_constant()

    // Number of level-n vertices; throws CapacityError past `max_points`.
    std::uint64_t level_width(int n, const Limits& lim = {}) const;

    bool single_digit_letters() const; // every branching number <= 10

    const std::vector<int>& prefix() const { return prefix_; }
    const std::vector<int>& period() const { return period_; }

    bool operator==(const SphericalIndex& o) const = default;

private:
    std::vector<int> prefix_;
    std::vector<int> period_;
};

// Parses "3", "2 3", or "2 | 3 4" (prefix | period).  A bare list with no '|'
// is a period of length one when it has one entry, otherwise prefix plus a
// repeated final entry is NOT assumed: the list is the period when there is no
// '|' separator and exactly one entry, else it is an error.
SphericalIndex parse_index_spec(const std::string& text);
std::string render_index_spec(const SphericalIndex& idx);

// Throws ParseError unless every letter respects the index at its position.
void validate_vertex(const SphericalIndex& idx, const VertexWord& v);

// Vertices render as bare digit strings ("0010") when every branching number
// is <= 10, else as comma-separated integers ("0,1,12").  The root renders as
// the empty string, accepted back by parse as "" or "-".
std::string render_vertex(const SphericalIndex& idx, const VertexWord& v);
VertexWord parse_vertex(const SphericalIndex& idx, const std::string& text);

// An infinite path described by a finite prefix and a repeating period block.
struct EventuallyPeriodicPath {
    VertexWord prefix;
    VertexWord period; // nonempty

    VertexWord truncate(int n) const; // first n letters
    bool operator==(const EventuallyPeriodicPath& o) const = default;
};

void validate_path(const SphericalIndex& idx, const EventuallyPeriodicPath& p);

// Renders as PREFIX(PERIOD)*, abbreviating a single-letter period: "0*",
// "011(10)*".  Parse accepts the same forms.
std::string render_path(const SphericalIndex& idx, const EventuallyPeriodicPath& p);
EventuallyPeriodicPath parse_path(const SphericalIndex& idx, const std::string& text);

// The clopen set of all infinite paths through `base`.
struct Cylinder {
    VertexWord base;

    // Containment is prefix order: this is inside `other` iff other.base is a
    // prefix of base.
    bool contained_in(const Cylinder& other) const;
    bool operator==(const Cylinder& o) const = default;
};

// Path-space metric 1/d^m where m is the length of the longest common prefix
// (d = arity; requires a constant-index tree).  Equal words of length L give
// 1/d^L.  Returned as an exact fraction num/den.
struct PathDistance {
    std::uint64_t num;
    std::uint64_t den;
};
PathDistance path_distance(const VertexWord& t, const VertexWord& w, int d);

// Lexicographic numbering of level-n vertices (mixed radix over the index).
std::uint64_t vertex_to_ordinal(const SphericalIndex& idx, const VertexWord& v);
VertexWord ordinal_to_vertex(const SphericalIndex& idx, int level, std::uint64_t ord);

} // namespace arbor
