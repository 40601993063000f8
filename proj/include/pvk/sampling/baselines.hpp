#ifndef PVK_SAMPLING_BASELINES_HPP
#define PVK_SAMPLING_BASELINES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "pvk/core/cloud.hpp"
#include "pvk/core/parallel.hpp"
#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"
#include "pvk/sampling/fps.hpp"
#include "pvk/sampling/sampler_config.hpp"
#include "pvk/sampling/spc.hpp"

namespace pvk {
namespace detail {

// Candidate set for a sampler: original indices, ascending.
inline std::vector<std::size_t> candidate_set(const PointCloud& points,
                                              const std::vector<Box3D>& boxes,
                                              const SamplerConfig& cfg) {
    if (cfg.pc_filter && !boxes.empty())
        return proposal_centric_filter(points, boxes, cfg.extend_radius);
    std::vector<std::size_t> all(points.size());
    std::iota(all.begin(), all.end(), std::size_t(0));
    return all;
}

// Quantization cells of the candidate points at a cubic voxel size, keyed by
// integer cell index (lexicographic order). Origin is the candidate min corner.
inline std::map<std::array<std::int64_t, 3>, std::vector<std::size_t>> quantize_cells(
    const PointCloud& points, const std::vector<std::size_t>& candidates, double voxel_size) {
    if (voxel_size <= 0.0) throw argument_error("voxelized sampler: voxel_size must be > 0");
    Vec3 lo{0, 0, 0};
    bool first = true;
    for (std::size_t i : candidates) {
        const Vec3 p = points.point(i);
        if (first) {
            lo = p;
            first = false;
        } else {
            lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        }
    }
    std::map<std::array<std::int64_t, 3>, std::vector<std::size_t>> cells;
    for (std::size_t i : candidates) {
        const Vec3 p = points.point(i);
        cells[{std::int64_t(std::floor((p.x - lo.x) / voxel_size)),
               std::int64_t(std::floor((p.y - lo.y) / voxel_size)),
               std::int64_t(std::floor((p.z - lo.z) / voxel_size))}]
            .push_back(i);
    }
    return cells;
}

inline Vec3 cell_center(const std::array<std::int64_t, 3>& idx, const Vec3& origin, double vs) {
    return {origin.x + (double(idx[0]) + 0.5) * vs, origin.y + (double(idx[1]) + 0.5) * vs,
            origin.z + (double(idx[2]) + 0.5) * vs};
}

inline Vec3 min_corner(const PointCloud& points, const std::vector<std::size_t>& candidates) {
    Vec3 lo = points.point(candidates.front());
    for (std::size_t i : candidates) {
        const Vec3 p = points.point(i);
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    }
    return lo;
}

}  // namespace detail

// Seeded uniform sampling without replacement; output in draw order.
inline KeypointSet random_sample(const PointCloud& points, const std::vector<Box3D>& boxes,
                                 const SamplerConfig& cfg) {
    cfg.validate();
    const auto candidates = detail::candidate_set(points, boxes, cfg);
    if (cfg.n > candidates.size()) throw argument_error("random_sample: n exceeds candidate count");
    Rng rng(cfg.seed);
    KeypointSet out;
    for (std::size_t local : rng.sample_draw_order(candidates.size(), cfg.n)) {
        const std::size_t i = candidates[local];
        out.push_back(std::int64_t(i), points.point(i));
    }
    return out;
}

// Voxelize the candidates, FPS over the occupied-voxel centers, and return the
// centers themselves (indices are the -1 sentinel).
inline KeypointSet voxelized_fps_voxel(const PointCloud& points, const std::vector<Box3D>& boxes,
                                       const SamplerConfig& cfg) {
    cfg.validate();
    const auto candidates = detail::candidate_set(points, boxes, cfg);
    if (candidates.empty()) throw argument_error("voxelized_fps_voxel: no candidate points");
    const auto cells = detail::quantize_cells(points, candidates, cfg.voxel_size);
    const Vec3 origin = detail::min_corner(points, candidates);

    std::vector<Vec3> centers;
    centers.reserve(cells.size());
    for (const auto& [idx, members] : cells)
        centers.push_back(detail::cell_center(idx, origin, cfg.voxel_size));
    if (cfg.n > centers.size())
        throw argument_error("voxelized_fps_voxel: n exceeds occupied voxel count");

    KeypointSet out;
    for (std::size_t v : fps_indices(centers, cfg.n, 0)) out.push_back(-1, centers[v]);
    return out;
}

// Same voxel selection, but each selected voxel contributes one seeded-random
// raw point inside it.
inline KeypointSet voxelized_fps_point(const PointCloud& points, const std::vector<Box3D>& boxes,
                                       const SamplerConfig& cfg) {
    cfg.validate();
    const auto candidates = detail::candidate_set(points, boxes, cfg);
    if (candidates.empty()) throw argument_error("voxelized_fps_point: no candidate points");
    const auto cells = detail::quantize_cells(points, candidates, cfg.voxel_size);
    const Vec3 origin = detail::min_corner(points, candidates);

    std::vector<Vec3> centers;
    std::vector<const std::vector<std::size_t>*> members;
    centers.reserve(cells.size());
    for (const auto& [idx, m] : cells) {
        centers.push_back(detail::cell_center(idx, origin, cfg.voxel_size));
        members.push_back(&m);
    }
    if (cfg.n > centers.size())
        throw argument_error("voxelized_fps_point: n exceeds occupied voxel count");

    Rng rng(cfg.seed);
    KeypointSet out;
    for (std::size_t v : fps_indices(centers, cfg.n, 0)) {
        const auto& m = *members[v];
        const std::size_t i = m[rng.uniform_below(m.size())];
        out.push_back(std::int64_t(i), points.point(i));
    }
    return out;
}

// Seeded random split into groups, then per-group FPS with proportional quota.
inline KeypointSet random_parallel_fps(const PointCloud& points, const std::vector<Box3D>& boxes,
                                       const SamplerConfig& cfg, int threads = 1) {
    cfg.validate();
    const auto candidates = detail::candidate_set(points, boxes, cfg);
    if (cfg.n > candidates.size())
        throw argument_error("random_parallel_fps: n exceeds candidate count");
    const int g = cfg.groups > 0 ? cfg.groups : cfg.sectors;

    Rng rng(cfg.seed);
    const std::size_t group_count = std::size_t(g);
    std::vector<std::vector<std::size_t>> groups(group_count);
    for (std::size_t i : candidates) groups[rng.uniform_below(std::uint64_t(g))].push_back(i);

    std::vector<std::size_t> sizes(groups.size());
    for (std::size_t k = 0; k < groups.size(); ++k) sizes[k] = groups[k].size();
    const auto quota = sector_quota(sizes, cfg.n);

    std::vector<std::vector<std::size_t>> per_group(groups.size());
    parallel_for(groups.size(), threads, [&](std::size_t k) {
        if (quota[k] > 0) per_group[k] = detail::fps_over_subset(points, groups[k], quota[k]);
    });
    KeypointSet out;
    for (const auto& picks : per_group)
        for (std::size_t i : picks) out.push_back(std::int64_t(i), points.point(i));
    return out;
}

// Dispatch by configured method. Plain FPS respects the PC filter too so
// "PC-Filter + FPS" rows are expressible.
inline KeypointSet run_sampler(const PointCloud& points, const std::vector<Box3D>& boxes,
                               const SamplerConfig& cfg, int threads = 1) {
    switch (cfg.method) {
        case SamplerMethod::fps: {
            cfg.validate();
            const auto candidates = detail::candidate_set(points, boxes, cfg);
            if (cfg.n > candidates.size()) throw argument_error("fps: n exceeds candidate count");
            KeypointSet out;
            for (std::size_t i : detail::fps_over_subset(points, candidates, cfg.n))
                out.push_back(std::int64_t(i), points.point(i));
            return out;
        }
        case SamplerMethod::random: return random_sample(points, boxes, cfg);
        case SamplerMethod::voxelized_fps_voxel: return voxelized_fps_voxel(points, boxes, cfg);
        case SamplerMethod::voxelized_fps_point: return voxelized_fps_point(points, boxes, cfg);
        case SamplerMethod::random_parallel_fps: return random_parallel_fps(points, boxes, cfg, threads);
        case SamplerMethod::sectorized_fps:
            return sectorized_proposal_centric_sample(points, boxes, cfg, threads);
    }
    throw argument_error("run_sampler: unknown method");
}

}  // namespace pvk

#endif
