#ifndef PVK_POOLING_VSA_HPP
#define PVK_POOLING_VSA_HPP

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "pvk/aggregation/mlp.hpp"
#include "pvk/aggregation/set_abstraction.hpp"
#include "pvk/aggregation/vectorpool.hpp"
#include "pvk/core/box.hpp"
#include "pvk/core/cloud.hpp"
#include "pvk/core/voxel.hpp"
#include "pvk/pooling/bev.hpp"

namespace pvk {

enum class Aggregator { set_abstraction, vectorpool };

// One aggregation source: either a multi-radius set-abstraction stack or a
// VectorPool config, selected by the aggregator argument.
struct VsaLevelConfig {
    std::vector<NeighborhoodSpec> specs;  // set abstraction
    std::vector<MlpSpec> mlps;
    VectorPoolConfig vp;                  // vectorpool

    std::size_t width(Aggregator agg) const {
        if (agg == Aggregator::vectorpool) return vp.out_mlp.output_dim();
        std::size_t w = 0;
        for (const auto& m : mlps) w += m.output_dim();
        return w;
    }
};

struct VsaConfig {
    std::vector<VsaLevelConfig> voxel_levels;  // one per supplied SparseVoxelSet
    std::optional<VsaLevelConfig> raw;         // raw-point aggregation
    bool use_bev = true;
};

struct FeatureSlice {
    std::string label;
    std::size_t offset = 0;
    std::size_t width = 0;
};

// Per-keypoint concatenated feature block plus the slice map recording which
// source produced which channel range.
struct KeypointFeatures {
    std::size_t count = 0;
    std::size_t width = 0;
    std::vector<double> values;  // count x width, row-major
    std::vector<FeatureSlice> slices;

    const double* row(std::size_t i) const { return values.data() + i * width; }
    double* row(std::size_t i) { return values.data() + i * width; }
};

namespace detail {

inline std::vector<double> widen(const std::vector<float>& v) {
    return std::vector<double>(v.begin(), v.end());
}

inline std::vector<Vec3> keypoint_coords(const KeypointSet& keypoints) {
    std::vector<Vec3> out(keypoints.size());
    for (std::size_t i = 0; i < keypoints.size(); ++i) out[i] = keypoints.point(i);
    return out;
}

// Aggregate one source (arbitrary support points + features) onto the centers.
inline std::vector<double> aggregate_level(const std::vector<Vec3>& centers,
                                           const std::vector<Vec3>& support,
                                           const std::vector<double>& features,
                                           std::size_t feature_dim, const VsaLevelConfig& level,
                                           Aggregator agg, int threads) {
    if (agg == Aggregator::vectorpool)
        return vectorpool_aggregate(centers, support, features, feature_dim, level.vp, threads);
    return set_abstraction(centers, support, features, feature_dim, level.specs, level.mlps,
                           threads);
}

}  // namespace detail

// Multi-source keypoint features, concatenated in the fixed order
// [voxel levels ascending, raw points, BEV].
inline KeypointFeatures vsa_keypoint_features(const KeypointSet& keypoints, const PointCloud& raw,
                                              const std::vector<SparseVoxelSet>& voxel_levels,
                                              const BevMap* bev, const VsaConfig& cfg,
                                              Aggregator agg, int threads = 1) {
    if (voxel_levels.size() != cfg.voxel_levels.size())
        throw config_error("vsa_keypoint_features: one level config per voxel set required");
    if (cfg.voxel_levels.empty() && !cfg.raw && !(cfg.use_bev && bev))
        throw config_error("vsa_keypoint_features: no source enabled");

    const std::vector<Vec3> centers = detail::keypoint_coords(keypoints);
    const std::size_t n = centers.size();

    KeypointFeatures out;
    out.count = n;

    struct Block {
        std::string label;
        std::size_t width;
        std::vector<double> values;
    };
    std::vector<Block> blocks;

    for (std::size_t lv = 0; lv < voxel_levels.size(); ++lv) {
        const SparseVoxelSet& vset = voxel_levels[lv];
        const std::vector<Vec3> support = voxel_centers_metric(vset);
        const std::vector<double> feats = detail::widen(vset.features);
        const std::size_t w = cfg.voxel_levels[lv].width(agg);
        blocks.push_back({"voxel_l" + std::to_string(lv), w,
                          detail::aggregate_level(centers, support, feats, vset.num_features,
                                                  cfg.voxel_levels[lv], agg, threads)});
    }
    if (cfg.raw) {
        std::vector<Vec3> support(raw.size());
        for (std::size_t i = 0; i < raw.size(); ++i) support[i] = raw.point(i);
        blocks.push_back({"raw", cfg.raw->width(agg),
                          detail::aggregate_level(centers, support, detail::widen(raw.features()),
                                                  raw.num_features(), *cfg.raw, agg, threads)});
    }
    if (cfg.use_bev && bev) {
        Block b{"bev", bev->channels, std::vector<double>(n * bev->channels)};
        for (std::size_t i = 0; i < n; ++i) {
            const std::vector<double> f = bev_bilinear(*bev, centers[i].x, centers[i].y);
            std::copy(f.begin(), f.end(), b.values.begin() + std::ptrdiff_t(i * bev->channels));
        }
        blocks.push_back(std::move(b));
    }

    for (const Block& b : blocks) {
        out.slices.push_back({b.label, out.width, b.width});
        out.width += b.width;
    }
    out.values.resize(n * out.width);
    for (std::size_t i = 0; i < n; ++i) {
        double* row = out.row(i);
        std::size_t offset = 0;
        for (const Block& b : blocks) {
            std::copy(b.values.begin() + std::ptrdiff_t(i * b.width),
                      b.values.begin() + std::ptrdiff_t((i + 1) * b.width), row + offset);
            offset += b.width;
        }
    }
    return out;
}

// Binary foreground labels: 1 iff the keypoint lies inside any ground-truth box.
inline std::vector<int> generate_seg_labels(const KeypointSet& keypoints,
                                            const std::vector<Box3D>& gt_boxes) {
    std::vector<int> labels(keypoints.size(), 0);
    for (std::size_t i = 0; i < keypoints.size(); ++i) {
        const Vec3 p = keypoints.point(i);
        for (const Box3D& box : gt_boxes) {
            if (point_in_box(p, box)) {
                labels[i] = 1;
                break;
            }
        }
    }
    return labels;
}

// Predicted keypoint weighting: scale each keypoint's feature row by the
// scalar gate sigmoid(mlp(row)).
inline KeypointFeatures pkw_reweight(const KeypointFeatures& features, const MlpSpec& mlp) {
    mlp.validate();
    if (mlp.output_dim() != 1)
        throw config_error("pkw_reweight: MLP must output a single confidence value");
    if (mlp.input_dim() != features.width)
        throw config_error("pkw_reweight: MLP input dim must match feature width");

    KeypointFeatures out = features;
    for (std::size_t i = 0; i < features.count; ++i) {
        const std::vector<double> row(features.row(i), features.row(i) + features.width);
        const double gate = 1.0 / (1.0 + std::exp(-mlp.forward(row)[0]));
        double* dst = out.row(i);
        for (std::size_t k = 0; k < features.width; ++k) dst[k] = gate * row[k];
    }
    return out;
}

}  // namespace pvk

#endif
