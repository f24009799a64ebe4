#pragma once

#include <cstddef>
#include <cstdint>

namespace arbor {

// Capacity configuration shared by all modules.  Every bound is explicit; an
// operation that would exceed one throws CapacityError rather than degrade.
struct Limits {
    int max_depth = 24;                          // deepest level any operation may touch
    std::uint64_t max_points = std::uint64_t(1) << 14; // vertices per level for dense tables
    unsigned long long max_order = 10'000'000ULL;      // group order via stabilizer chain
    std::size_t max_bfs = 100'000;                     // group order via naive enumeration
};

} // namespace arbor
