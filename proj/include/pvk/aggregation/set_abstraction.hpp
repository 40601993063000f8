#ifndef PVK_AGGREGATION_SET_ABSTRACTION_HPP
#define PVK_AGGREGATION_SET_ABSTRACTION_HPP

#include <limits>
#include <vector>

#include "pvk/aggregation/ball_query.hpp"
#include "pvk/aggregation/mlp.hpp"
#include "pvk/core/parallel.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

// PointNet-block aggregation: per center and radius, each neighbor's
// [feature, rel_pos] goes through the MLP and the results are max-pooled
// channel-wise. Empty neighborhoods contribute a zero block. Blocks from
// different radii are concatenated (multi-scale).
//
// `features` is N x feature_dim row-major; each MLP input dim must equal
// feature_dim + 3. Returns M x sum(mlp output dims) row-major.
inline std::vector<double> set_abstraction(const std::vector<Vec3>& centers,
                                           const std::vector<Vec3>& points,
                                           const std::vector<double>& features,
                                           std::size_t feature_dim,
                                           const std::vector<NeighborhoodSpec>& specs,
                                           const std::vector<MlpSpec>& mlps, int threads = 1) {
    if (specs.size() != mlps.size())
        throw config_error("set_abstraction: one MLP required per neighborhood spec");
    if (feature_dim > 0 && features.size() != points.size() * feature_dim)
        throw config_error("set_abstraction: features size mismatch");
    std::size_t out_dim = 0;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        mlps[s].validate();
        if (mlps[s].input_dim() != feature_dim + 3)
            throw config_error("set_abstraction: MLP input dim must be feature_dim + 3");
        out_dim += mlps[s].output_dim();
    }

    std::vector<std::vector<std::vector<std::size_t>>> neighborhoods(specs.size());
    for (std::size_t s = 0; s < specs.size(); ++s)
        neighborhoods[s] = ball_query(centers, points, specs[s]);

    std::vector<double> out(centers.size() * out_dim, 0.0);
    parallel_for(centers.size(), threads, [&](std::size_t c) {
        double* row = out.data() + c * out_dim;
        std::size_t offset = 0;
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const std::size_t block = mlps[s].output_dim();
            const auto& neighbors = neighborhoods[s][c];
            if (!neighbors.empty()) {
                std::vector<double> best(block, -std::numeric_limits<double>::infinity());
                std::vector<double> input(feature_dim + 3);
                for (std::size_t j : neighbors) {
                    for (std::size_t k = 0; k < feature_dim; ++k)
                        input[k] = features[j * feature_dim + k];
                    const Vec3 rel = points[j] - centers[c];
                    input[feature_dim] = rel.x;
                    input[feature_dim + 1] = rel.y;
                    input[feature_dim + 2] = rel.z;
                    const std::vector<double> enc = mlps[s].forward(input);
                    for (std::size_t k = 0; k < block; ++k)
                        if (enc[k] > best[k]) best[k] = enc[k];
                }
                for (std::size_t k = 0; k < block; ++k) row[offset + k] = best[k];
            }
            offset += block;
        }
    });
    return out;
}

}  // namespace pvk

#endif
