#ifndef PVK_SAMPLING_SAMPLER_CONFIG_HPP
#define PVK_SAMPLING_SAMPLER_CONFIG_HPP

#include <cstdint>
#include <string>

#include "pvk/core/types.hpp"

namespace pvk {

enum class SamplerMethod {
    fps,
    random,
    voxelized_fps_voxel,
    voxelized_fps_point,
    random_parallel_fps,
    sectorized_fps,
};

inline SamplerMethod parse_sampler_method(const std::string& s) {
    if (s == "fps") return SamplerMethod::fps;
    if (s == "random") return SamplerMethod::random;
    if (s == "voxelized_fps_voxel") return SamplerMethod::voxelized_fps_voxel;
    if (s == "voxelized_fps_point") return SamplerMethod::voxelized_fps_point;
    if (s == "random_parallel_fps") return SamplerMethod::random_parallel_fps;
    if (s == "sectorized_fps") return SamplerMethod::sectorized_fps;
    throw argument_error("unknown sampler method: " + s);
}

inline std::string to_string(SamplerMethod m) {
    switch (m) {
        case SamplerMethod::fps: return "fps";
        case SamplerMethod::random: return "random";
        case SamplerMethod::voxelized_fps_voxel: return "voxelized_fps_voxel";
        case SamplerMethod::voxelized_fps_point: return "voxelized_fps_point";
        case SamplerMethod::random_parallel_fps: return "random_parallel_fps";
        case SamplerMethod::sectorized_fps: return "sectorized_fps";
    }
    return "?";
}

struct SamplerConfig {
    std::size_t n = 1;                         // target keypoint count
    SamplerMethod method = SamplerMethod::fps;
    int sectors = 6;
    double extend_radius = 1.6;                // r^(s), meters
    double voxel_size = 0.3;                   // voxelized baselines
    std::uint64_t seed = 0;
    bool pc_filter = true;                     // apply proposal-centric filter first
    int groups = 0;                            // random_parallel_fps; 0 -> sectors
    double scene_cx = 0.0, scene_cy = 0.0;     // sector partition center

    void validate() const {
        if (n < 1) throw argument_error("SamplerConfig: n must be >= 1");
        if (sectors < 1) throw argument_error("SamplerConfig: sectors must be >= 1");
        if (extend_radius < 0.0) throw argument_error("SamplerConfig: extend_radius must be >= 0");
    }
};

}  // namespace pvk

#endif
