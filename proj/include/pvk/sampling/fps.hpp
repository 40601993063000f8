#ifndef PVK_SAMPLING_FPS_HPP
#define PVK_SAMPLING_FPS_HPP

#include <limits>
#include <vector>

#include "pvk/core/cloud.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

// Greedy max-min farthest point sampling over an explicit coordinate list.
// First pick is `start`; each later pick maximizes the minimum distance to the
// picked set, ties broken by lowest index. Returns picks in pick order.
inline std::vector<std::size_t> fps_indices(const std::vector<Vec3>& pts, std::size_t n,
                                            std::size_t start) {
    const std::size_t count = pts.size();
    if (n > count) throw argument_error("fps: n exceeds point count");
    if (start >= count) throw argument_error("fps: start index out of range");

    std::vector<std::size_t> picks;
    picks.reserve(n);
    picks.push_back(start);

    // min squared distance from each point to the picked set
    std::vector<double> min_d2(count, std::numeric_limits<double>::infinity());
    std::size_t last = start;
    for (std::size_t t = 1; t < n; ++t) {
        const Vec3 lp = pts[last];
        std::size_t best = 0;
        double best_d2 = -1.0;
        for (std::size_t i = 0; i < count; ++i) {
            const double d2 = dist2(pts[i], lp);
            if (d2 < min_d2[i]) min_d2[i] = d2;
            if (min_d2[i] > best_d2) {
                best_d2 = min_d2[i];
                best = i;
            }
        }
        picks.push_back(best);
        min_d2[best] = -1.0;  // sentinel: real distances are >= 0, so picked points never win again
        last = best;
    }
    return picks;
}

inline KeypointSet farthest_point_sampling(const PointCloud& points, std::size_t n,
                                           std::size_t start_index = 0) {
    if (points.empty()) throw argument_error("fps: empty point cloud");
    std::vector<Vec3> pts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) pts[i] = points.point(i);
    KeypointSet out;
    for (std::size_t i : fps_indices(pts, n, start_index))
        out.push_back(std::int64_t(i), pts[i]);
    return out;
}

}  // namespace pvk

#endif
