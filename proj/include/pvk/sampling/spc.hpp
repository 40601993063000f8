#ifndef PVK_SAMPLING_SPC_HPP
#define PVK_SAMPLING_SPC_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pvk/core/box.hpp"
#include "pvk/core/cloud.hpp"
#include "pvk/core/parallel.hpp"
#include "pvk/core/types.hpp"
#include "pvk/sampling/fps.hpp"
#include "pvk/sampling/sampler_config.hpp"

namespace pvk {

// Keeps p iff some box j satisfies ||p - c_j|| < max(dx,dy,dz)/2 + r_s.
// Output indices ascending.
inline std::vector<std::size_t> proposal_centric_filter(const PointCloud& points,
                                                        const std::vector<Box3D>& boxes,
                                                        double r_s) {
    if (r_s < 0.0) throw argument_error("proposal_centric_filter: r_s must be >= 0");
    std::vector<std::size_t> kept;
    if (boxes.empty()) return kept;

    std::vector<double> radius2(boxes.size());
    for (std::size_t j = 0; j < boxes.size(); ++j) {
        const double r = boxes[j].max_dim() / 2.0 + r_s;
        radius2[j] = r * r;
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 p = points.point(i);
        for (std::size_t j = 0; j < boxes.size(); ++j) {
            if (dist2(p, boxes[j].center) < radius2[j]) {
                kept.push_back(i);
                break;
            }
        }
    }
    return kept;
}

// Sector index of a planar offset: floor((atan2(py, px) + pi) * s / (2*pi)),
// with the atan2 == pi boundary wrapped into sector s-1.
inline int sector_of(double px, double py, int s) {
    const double raw = std::floor((std::atan2(py, px) + M_PI) * double(s) / (2.0 * M_PI));
    const int k = int(raw);
    return k >= s ? s - 1 : (k < 0 ? 0 : k);
}

inline std::vector<std::vector<std::size_t>> sector_partition(const PointCloud& points, int s,
                                                              double center_x = 0.0,
                                                              double center_y = 0.0) {
    if (s < 1) throw argument_error("sector_partition: s must be >= 1");
    std::vector<std::vector<std::size_t>> sectors;
    sectors.resize(std::size_t(s));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 p = points.point(i);
        sectors[std::size_t(sector_of(p.x - center_x, p.y - center_y, s))].push_back(i);
    }
    return sectors;
}

// Per-sector keypoint quota: floor(|S_k|/total * n) clamped to |S_k|, then the
// remainder handed out one-by-one in descending sector size (ties by index)
// without exceeding any sector size.
inline std::vector<std::size_t> sector_quota(const std::vector<std::size_t>& sector_sizes,
                                             std::size_t n) {
    const std::size_t total = std::accumulate(sector_sizes.begin(), sector_sizes.end(), std::size_t(0));
    if (total < n) throw argument_error("sector_quota: total points fewer than n");

    std::vector<std::size_t> quota(sector_sizes.size());
    std::size_t assigned = 0;
    for (std::size_t k = 0; k < sector_sizes.size(); ++k) {
        quota[k] = std::min(sector_sizes[k] * n / total, sector_sizes[k]);
        assigned += quota[k];
    }

    std::vector<std::size_t> order(sector_sizes.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sector_sizes[a] > sector_sizes[b];
    });
    while (assigned < n) {
        bool progressed = false;
        for (std::size_t k : order) {
            if (assigned == n) break;
            if (quota[k] < sector_sizes[k]) {
                ++quota[k];
                ++assigned;
                progressed = true;
            }
        }
        if (!progressed) throw argument_error("sector_quota: infeasible quota");  // unreachable given total >= n
    }
    return quota;
}

namespace detail {

// FPS over a subset of the cloud given by ascending original indices; start
// rule: lowest local index. Returns original indices in pick order.
inline std::vector<std::size_t> fps_over_subset(const PointCloud& points,
                                                const std::vector<std::size_t>& subset,
                                                std::size_t n) {
    std::vector<Vec3> pts(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) pts[i] = points.point(subset[i]);
    std::vector<std::size_t> out;
    out.reserve(n);
    for (std::size_t local : fps_indices(pts, n, 0)) out.push_back(subset[local]);
    return out;
}

}  // namespace detail

// Sectorized proposal-centric sampling: PC filter -> sector partition ->
// per-sector quota -> independent per-sector FPS. If the filter keeps fewer
// than n points, all kept points become keypoints and the shortfall is drawn
// by FPS over the complement of the kept set.
inline KeypointSet sectorized_proposal_centric_sample(const PointCloud& points,
                                                      const std::vector<Box3D>& boxes,
                                                      const SamplerConfig& cfg, int threads = 1) {
    cfg.validate();
    if (points.empty()) throw argument_error("sectorized_proposal_centric_sample: empty cloud");
    if (cfg.n > points.size())
        throw argument_error("sectorized_proposal_centric_sample: n exceeds point count");

    std::vector<std::size_t> kept = cfg.pc_filter
                                        ? proposal_centric_filter(points, boxes, cfg.extend_radius)
                                        : [&] {
                                              std::vector<std::size_t> all(points.size());
                                              std::iota(all.begin(), all.end(), std::size_t(0));
                                              return all;
                                          }();

    KeypointSet out;
    if (kept.size() < cfg.n) {
        // shortfall: every kept point is a keypoint, top up from the complement
        std::vector<bool> is_kept(points.size(), false);
        for (std::size_t i : kept) is_kept[i] = true;
        for (std::size_t i : kept) out.push_back(std::int64_t(i), points.point(i));

        std::vector<std::size_t> complement;
        complement.reserve(points.size() - kept.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            if (!is_kept[i]) complement.push_back(i);
        for (std::size_t i : detail::fps_over_subset(points, complement, cfg.n - kept.size()))
            out.push_back(std::int64_t(i), points.point(i));
        return out;
    }

    // partition kept points into sectors about the configured scene center
    const int s = cfg.sectors;
    std::vector<std::vector<std::size_t>> sectors;
    sectors.resize(std::size_t(s));
    for (std::size_t i : kept) {
        const Vec3 p = points.point(i);
        sectors[std::size_t(sector_of(p.x - cfg.scene_cx, p.y - cfg.scene_cy, s))].push_back(i);
    }
    std::vector<std::size_t> sizes(sectors.size());
    for (std::size_t k = 0; k < sectors.size(); ++k) sizes[k] = sectors[k].size();
    const std::vector<std::size_t> quota = sector_quota(sizes, cfg.n);

    std::vector<std::vector<std::size_t>> per_sector(sectors.size());
    parallel_for(sectors.size(), threads, [&](std::size_t k) {
        if (quota[k] > 0) per_sector[k] = detail::fps_over_subset(points, sectors[k], quota[k]);
    });
    for (const auto& picks : per_sector)
        for (std::size_t i : picks) out.push_back(std::int64_t(i), points.point(i));
    return out;
}

}  // namespace pvk

#endif
