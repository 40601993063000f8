#ifndef PVK_SAMPLING_COVERAGE_HPP
#define PVK_SAMPLING_COVERAGE_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pvk/core/cloud.hpp"
#include "pvk/core/types.hpp"

namespace pvk {
namespace detail {

struct CellKey {
    std::int64_t x, y, z;
    bool operator==(const CellKey& o) const { return x == o.x && y == o.y && z == o.z; }
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::uint64_t h = std::uint64_t(k.x) * 0x9E3779B97F4A7C15ull;
        h ^= std::uint64_t(k.y) * 0xC2B2AE3D27D4EB4Full + (h << 6);
        h ^= std::uint64_t(k.z) * 0x165667B19E3779F9ull + (h >> 3);
        return std::size_t(h);
    }
};

}  // namespace detail

// Fraction of input points with at least one keypoint strictly within R_c.
// Exact: a uniform hash grid with cell size R_c restricts each point's
// candidate keypoints to the 27 surrounding cells.
inline double coverage_rate(const PointCloud& points, const KeypointSet& keypoints, double r_c) {
    if (r_c <= 0.0) throw argument_error("coverage_rate: R_c must be > 0");
    if (points.empty()) return 0.0;
    if (keypoints.size() == 0) return 0.0;

    std::unordered_map<detail::CellKey, std::vector<std::size_t>, detail::CellKeyHash> grid;
    grid.reserve(keypoints.size() * 2);
    for (std::size_t j = 0; j < keypoints.size(); ++j) {
        const Vec3 q = keypoints.point(j);
        grid[{std::int64_t(std::floor(q.x / r_c)), std::int64_t(std::floor(q.y / r_c)),
              std::int64_t(std::floor(q.z / r_c))}]
            .push_back(j);
    }

    const double r2 = r_c * r_c;
    std::size_t covered = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 p = points.point(i);
        const std::int64_t cx = std::int64_t(std::floor(p.x / r_c));
        const std::int64_t cy = std::int64_t(std::floor(p.y / r_c));
        const std::int64_t cz = std::int64_t(std::floor(p.z / r_c));
        bool hit = false;
        for (std::int64_t dx = -1; dx <= 1 && !hit; ++dx)
            for (std::int64_t dy = -1; dy <= 1 && !hit; ++dy)
                for (std::int64_t dz = -1; dz <= 1 && !hit; ++dz) {
                    const auto it = grid.find({cx + dx, cy + dy, cz + dz});
                    if (it == grid.end()) continue;
                    for (std::size_t j : it->second) {
                        if (dist2(p, keypoints.point(j)) < r2) {
                            hit = true;
                            break;
                        }
                    }
                }
        if (hit) ++covered;
    }
    return double(covered) / double(points.size());
}

}  // namespace pvk

#endif
