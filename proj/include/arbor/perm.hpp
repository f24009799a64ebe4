#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace arbor {

// A permutation of {0..n-1} stored as its image table: p[i] is the image of i.
using Perm = std::vector<std::uint32_t>;

Perm perm_identity(std::size_t n);
bool perm_is_identity(const Perm& p);

// compose(a, b) applies b first, then a:  (a*b)[i] = a[b[i]].
Perm perm_compose(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& p);
unsigned long long perm_order(const Perm& p);

// Cycle notation.  "e" denotes the identity; otherwise "(0 1)(2 3)".
std::string perm_to_cycles(const Perm& p);
// Parses cycle notation into a permutation of {0..n-1}; throws ParseError on
// malformed input, repeated points, or points >= n.
Perm perm_from_cycles(const std::string& text, std::size_t n);

} // namespace arbor
