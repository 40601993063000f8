#ifndef PVK_CORE_CLOUD_HPP
#define PVK_CORE_CLOUD_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "pvk/core/types.hpp"

namespace pvk {

// N points with 3D coordinates plus C feature channels. Storage is float32
// (matching on-disk LiDAR records); kernels accumulate in double.
class PointCloud {
  public:
    PointCloud() = default;
    PointCloud(std::size_t n, std::size_t c) : num_features_(c), coords_(n * 3, 0.0f), features_(n * c, 0.0f) {}

    std::size_t size() const { return coords_.size() / 3; }
    std::size_t num_features() const { return num_features_; }
    bool empty() const { return coords_.empty(); }

    Vec3 point(std::size_t i) const {
        return {coords_[3 * i], coords_[3 * i + 1], coords_[3 * i + 2]};
    }
    void set_point(std::size_t i, const Vec3& p) {
        coords_[3 * i] = float(p.x);
        coords_[3 * i + 1] = float(p.y);
        coords_[3 * i + 2] = float(p.z);
    }

    const float* feature(std::size_t i) const { return features_.data() + i * num_features_; }
    float* feature(std::size_t i) { return features_.data() + i * num_features_; }

    void push_back(const Vec3& p, const std::vector<float>& f) {
        coords_.push_back(float(p.x));
        coords_.push_back(float(p.y));
        coords_.push_back(float(p.z));
        features_.insert(features_.end(), f.begin(), f.end());
    }

    const std::vector<float>& coords() const { return coords_; }
    const std::vector<float>& features() const { return features_; }
    std::vector<float>& mutable_coords() { return coords_; }
    std::vector<float>& mutable_features() { return features_; }

    bool finite() const {
        for (float v : coords_)
            if (!std::isfinite(v)) return false;
        for (float v : features_)
            if (!std::isfinite(v)) return false;
        return true;
    }

  private:
    std::size_t num_features_ = 0;
    std::vector<float> coords_;
    std::vector<float> features_;
};

// Oriented 3D box: center, dims (strictly positive), yaw about Z in (-pi, pi].
struct Box3D {
    Vec3 center;
    Vec3 dims;
    double yaw = 0.0;

    Box3D() = default;
    Box3D(const Vec3& c, const Vec3& d, double yaw_) : center(c), dims(d), yaw(wrap_angle(yaw_)) {
        if (dims.x <= 0.0 || dims.y <= 0.0 || dims.z <= 0.0)
            throw argument_error("Box3D dims must be strictly positive");
    }

    double max_dim() const { return std::max({dims.x, dims.y, dims.z}); }
};

// A sampled subset of a point cloud. index -1 marks a synthesized coordinate
// (e.g. a voxel center) with no source point.
struct KeypointSet {
    std::vector<std::int64_t> indices;
    std::vector<float> coords;  // n x 3, row-major

    std::size_t size() const { return indices.size(); }

    Vec3 point(std::size_t i) const {
        return {coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]};
    }

    void push_back(std::int64_t idx, const Vec3& p) {
        indices.push_back(idx);
        coords.push_back(float(p.x));
        coords.push_back(float(p.y));
        coords.push_back(float(p.z));
    }
};

}  // namespace pvk

#endif
