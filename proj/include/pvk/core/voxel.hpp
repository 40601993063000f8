#ifndef PVK_CORE_VOXEL_HPP
#define PVK_CORE_VOXEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "pvk/core/cloud.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

struct VoxelGridSpec {
    Vec3 origin;
    Vec3 voxel_size;                       // meters, strictly positive
    std::array<std::int64_t, 3> extent{};  // voxel counts per axis
    std::int64_t stride = 1;               // downsampling factor of this level

    void validate() const {
        if (voxel_size.x <= 0.0 || voxel_size.y <= 0.0 || voxel_size.z <= 0.0)
            throw config_error("VoxelGridSpec: voxel_size must be strictly positive");
        if (extent[0] <= 0 || extent[1] <= 0 || extent[2] <= 0)
            throw config_error("VoxelGridSpec: extent must be strictly positive");
        if (stride < 1) throw config_error("VoxelGridSpec: stride must be >= 1");
    }
};

// Occupied voxels of a grid: integer indices plus per-voxel features.
struct SparseVoxelSet {
    std::vector<std::array<std::int64_t, 3>> indices;
    std::vector<float> features;  // M x C, row-major
    std::size_t num_features = 0;
    VoxelGridSpec spec;

    std::size_t size() const { return indices.size(); }
    const float* feature(std::size_t i) const { return features.data() + i * num_features; }
};

// Mean-pools point features into occupied voxels. Assignment is
// floor((p - origin) / voxel_size); points at or past the upper extent
// boundary are discarded (half-open cells).
inline SparseVoxelSet voxelize(const PointCloud& points, const VoxelGridSpec& spec) {
    spec.validate();
    const std::size_t c = points.num_features();

    // map keeps voxel order lexicographic, so output is deterministic
    std::map<std::array<std::int64_t, 3>, std::pair<std::vector<double>, std::size_t>> cells;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3 p = points.point(i);
        const std::array<std::int64_t, 3> idx{
            std::int64_t(std::floor((p.x - spec.origin.x) / spec.voxel_size.x)),
            std::int64_t(std::floor((p.y - spec.origin.y) / spec.voxel_size.y)),
            std::int64_t(std::floor((p.z - spec.origin.z) / spec.voxel_size.z))};
        bool in_range = true;
        for (int a = 0; a < 3; ++a)
            if (idx[a] < 0 || idx[a] >= spec.extent[a]) in_range = false;
        if (!in_range) continue;

        auto& cell = cells[idx];
        if (cell.first.empty()) cell.first.assign(c, 0.0);
        const float* f = points.feature(i);
        for (std::size_t k = 0; k < c; ++k) cell.first[k] += f[k];
        ++cell.second;
    }

    SparseVoxelSet out;
    out.spec = spec;
    out.num_features = c;
    out.indices.reserve(cells.size());
    out.features.reserve(cells.size() * c);
    for (const auto& [idx, cell] : cells) {
        out.indices.push_back(idx);
        for (std::size_t k = 0; k < c; ++k)
            out.features.push_back(float(cell.first[k] / double(cell.second)));
    }
    return out;
}

// Metric center of each occupied voxel:
//   origin + (index + 0.5) * voxel_size * stride
inline std::vector<Vec3> voxel_centers_metric(const SparseVoxelSet& vset) {
    std::vector<Vec3> centers;
    centers.reserve(vset.size());
    const Vec3& o = vset.spec.origin;
    const Vec3& vs = vset.spec.voxel_size;
    const double s = double(vset.spec.stride);
    for (const auto& idx : vset.indices) {
        centers.push_back({o.x + (double(idx[0]) + 0.5) * vs.x * s,
                           o.y + (double(idx[1]) + 0.5) * vs.y * s,
                           o.z + (double(idx[2]) + 0.5) * vs.z * s});
    }
    return centers;
}

}  // namespace pvk

#endif
