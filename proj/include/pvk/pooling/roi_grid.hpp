#ifndef PVK_POOLING_ROI_GRID_HPP
#define PVK_POOLING_ROI_GRID_HPP

#include <vector>

#include "pvk/core/box.hpp"
#include "pvk/core/parallel.hpp"
#include "pvk/pooling/vsa.hpp"

namespace pvk {

// RoI-grid pooling: per box, aggregate keypoint features onto its g^3 grid
// points, flatten the grid features in box_grid_points order, and run the
// head MLP. Returns one row of head.output_dim() per box.
//
// VectorPool local voxel axes stay world-aligned (the grid points themselves
// do rotate with the box).
inline std::vector<double> roi_grid_pool(const std::vector<Box3D>& boxes,
                                         const KeypointSet& keypoints,
                                         const KeypointFeatures& kp_features, int gx, int gy,
                                         int gz, const VsaLevelConfig& agg_cfg, Aggregator agg,
                                         const MlpSpec& head, int threads = 1) {
    if (gx < 1 || gy < 1 || gz < 1) throw argument_error("roi_grid_pool: grid must be >= 1");
    if (kp_features.count != keypoints.size())
        throw config_error("roi_grid_pool: keypoint feature count mismatch");
    head.validate();
    const std::size_t grid_width = agg_cfg.width(agg);
    const std::size_t cells = std::size_t(gx) * gy * gz;
    if (head.input_dim() != cells * grid_width)
        throw config_error("roi_grid_pool: head input dim must be g^3 * grid feature width");

    const std::vector<Vec3> support = detail::keypoint_coords(keypoints);
    const std::size_t out_dim = head.output_dim();
    std::vector<double> out(boxes.size() * out_dim, 0.0);

    parallel_for(boxes.size(), threads, [&](std::size_t b) {
        const std::vector<Vec3> grid = box_grid_points(boxes[b], gx, gy, gz);
        const std::vector<double> grid_feats = detail::aggregate_level(
            grid, support, kp_features.values, kp_features.width, agg_cfg, agg, 1);
        const std::vector<double> pooled = head.forward(grid_feats);
        std::copy(pooled.begin(), pooled.end(), out.begin() + std::ptrdiff_t(b * out_dim));
    });
    return out;
}

}  // namespace pvk

#endif
