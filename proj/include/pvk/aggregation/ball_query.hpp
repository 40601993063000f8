#ifndef PVK_AGGREGATION_BALL_QUERY_HPP
#define PVK_AGGREGATION_BALL_QUERY_HPP

#include <cstdint>
#include <vector>

#include "pvk/core/cloud.hpp"
#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

struct NeighborhoodSpec {
    double radius = 1.0;       // meters, strictly positive
    std::size_t max_samples = SIZE_MAX;  // T; SIZE_MAX = keep all
    std::uint64_t sample_seed = 0;

    void validate() const {
        if (radius <= 0.0) throw argument_error("NeighborhoodSpec: radius must be > 0");
        if (max_samples < 1) throw argument_error("NeighborhoodSpec: max_samples must be >= 1");
    }
};

// Per-center indices with strict distance < r, ascending. Neighborhoods larger
// than T are reduced to a seeded uniform subsample of size T (still ascending).
// The subsample RNG is streamed per center in center order, so results are
// independent of any parallel evaluation of the caller.
inline std::vector<std::vector<std::size_t>> ball_query(const std::vector<Vec3>& centers,
                                                        const std::vector<Vec3>& points,
                                                        const NeighborhoodSpec& spec) {
    spec.validate();
    const double r2 = spec.radius * spec.radius;
    std::vector<std::vector<std::size_t>> out(centers.size());
    for (std::size_t c = 0; c < centers.size(); ++c) {
        auto& neighbors = out[c];
        for (std::size_t i = 0; i < points.size(); ++i)
            if (dist2(points[i], centers[c]) < r2) neighbors.push_back(i);
        if (neighbors.size() > spec.max_samples) {
            Rng rng(spec.sample_seed ^ (0x9E3779B97F4A7C15ull * (c + 1)));
            std::vector<std::size_t> sampled;
            sampled.reserve(spec.max_samples);
            for (std::size_t k : rng.sample_ascending(neighbors.size(), spec.max_samples))
                sampled.push_back(neighbors[k]);
            neighbors = std::move(sampled);
        }
    }
    return out;
}

inline std::vector<std::vector<std::size_t>> ball_query(const std::vector<Vec3>& centers,
                                                        const PointCloud& points,
                                                        const NeighborhoodSpec& spec) {
    std::vector<Vec3> pts(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) pts[i] = points.point(i);
    return ball_query(centers, pts, spec);
}

}  // namespace pvk

#endif
