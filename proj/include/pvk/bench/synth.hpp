#ifndef PVK_BENCH_SYNTH_HPP
#define PVK_BENCH_SYNTH_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "pvk/core/box.hpp"
#include "pvk/core/cloud.hpp"
#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

// Synthetic LiDAR-like scene: clustered objects with boxes plus concentric
// ground rings whose density decays with range.
struct SceneSpec {
    double extent = 150.0;              // square scene side, meters
    int beam_count = 32;                // number of ground rings
    double angular_resolution = 0.005;  // radians between ring samples
    double range_falloff = 1.5;         // ring thinning exponent with range
    int cluster_count = 20;
    double cluster_dim_min = 1.5;       // box dims drawn uniformly from this range
    double cluster_dim_max = 5.0;
    int points_per_cluster = 400;
    double noise_density = 0.0;         // uniform floor noise, points per m^2
    std::size_t total_points = 0;       // 0 = natural count; else pad/trim to exactly this
    std::uint64_t seed = 0;

    void validate() const {
        if (extent <= 0.0 || beam_count < 0 || angular_resolution <= 0.0 || cluster_count < 0 ||
            points_per_cluster < 0 || cluster_dim_min <= 0.0 ||
            cluster_dim_max < cluster_dim_min || noise_density < 0.0)
            throw argument_error("SceneSpec: invalid field");
    }
};

struct Scene {
    PointCloud points;  // one intensity channel
    std::vector<Box3D> boxes;
};

inline Scene synth_scene(const SceneSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    Scene scene;
    scene.points = PointCloud(0, 1);
    const double half = spec.extent / 2.0;

    // clusters: 95% of each cluster's points uniform inside the (slightly
    // shrunk) box, the rest jittered just outside
    for (int c = 0; c < spec.cluster_count; ++c) {
        const Vec3 center{rng.uniform(-0.9 * half, 0.9 * half),
                          rng.uniform(-0.9 * half, 0.9 * half), rng.uniform(-0.5, 1.5)};
        const Vec3 dims{rng.uniform(spec.cluster_dim_min, spec.cluster_dim_max),
                        rng.uniform(spec.cluster_dim_min, spec.cluster_dim_max),
                        rng.uniform(spec.cluster_dim_min, spec.cluster_dim_max)};
        const double yaw = rng.uniform(-M_PI, M_PI);
        const Box3D box(center, dims, yaw);
        scene.boxes.push_back(box);

        const double cy = std::cos(yaw), sy = std::sin(yaw);
        for (int i = 0; i < spec.points_per_cluster; ++i) {
            const bool outlier = rng.uniform01() < 0.05;
            const double grow = outlier ? rng.uniform(1.05, 1.5) : 0.98;
            const double lx = rng.uniform(-0.5, 0.5) * dims.x * grow;
            const double ly = rng.uniform(-0.5, 0.5) * dims.y * grow;
            const double lz = rng.uniform(-0.5, 0.5) * dims.z * grow;
            scene.points.push_back({center.x + cy * lx - sy * ly, center.y + sy * lx + cy * ly,
                                    center.z + lz},
                                   {float(rng.uniform01())});
        }
    }

    // ground rings; per-ring sample count thins with range
    const double base_count = 2.0 * M_PI / spec.angular_resolution;
    for (int b = 0; b < spec.beam_count; ++b) {
        const double r = half * double(b + 1) / double(spec.beam_count);
        const double keep = std::pow(1.0 - 0.95 * r / half, spec.range_falloff);
        const std::size_t count = std::size_t(std::max(8.0, base_count * keep));
        for (std::size_t k = 0; k < count; ++k) {
            const double angle = (double(k) + rng.uniform01()) * 2.0 * M_PI / double(count);
            const double rr = r + rng.gaussian(0.0, 0.01 * r + 0.02);
            scene.points.push_back({rr * std::cos(angle), rr * std::sin(angle),
                                    rng.gaussian(0.0, 0.05)},
                                   {float(rng.uniform01())});
        }
    }

    const std::size_t noise = std::size_t(spec.noise_density * spec.extent * spec.extent);
    for (std::size_t k = 0; k < noise; ++k)
        scene.points.push_back({rng.uniform(-half, half), rng.uniform(-half, half),
                                rng.uniform(-0.5, 2.5)},
                               {float(rng.uniform01())});

    if (spec.total_points > 0) {
        while (scene.points.size() < spec.total_points)
            scene.points.push_back({rng.uniform(-half, half), rng.uniform(-half, half),
                                    rng.uniform(-0.5, 2.5)},
                                   {float(rng.uniform01())});
        if (scene.points.size() > spec.total_points) {
            scene.points.mutable_coords().resize(spec.total_points * 3);
            scene.points.mutable_features().resize(spec.total_points);
        }
    }
    return scene;
}

}  // namespace pvk

#endif
