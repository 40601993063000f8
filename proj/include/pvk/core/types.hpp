#ifndef PVK_CORE_TYPES_HPP
#define PVK_CORE_TYPES_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pvk {

// Thrown for invalid call arguments (bad sizes, n > N, ...).
struct argument_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown for inconsistent configuration objects (shape mismatches, non-positive
// voxel sizes, ...).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by file loaders; carries the byte offset where parsing failed.
struct format_error : std::runtime_error {
    explicit format_error(const std::string& what, std::int64_t byte_offset = -1)
        : std::runtime_error(byte_offset >= 0
                                 ? what + " (byte offset " + std::to_string(byte_offset) + ")"
                                 : what),
          offset(byte_offset) {}
    std::int64_t offset;
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    bool operator==(const Vec3& o) const { return x == o.x && y == o.y && z == o.z; }
};

inline double dist2(const Vec3& a, const Vec3& b) { return (a - b).norm2(); }

// Chebyshev (max-axis) distance, used by cube neighborhood queries.
inline double cheby_dist(const Vec3& a, const Vec3& b) {
    return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y), std::abs(a.z - b.z)});
}

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double a) {
    const double two_pi = 2.0 * M_PI;
    a = std::fmod(a, two_pi);
    if (a <= -M_PI) a += two_pi;
    if (a > M_PI) a -= two_pi;
    return a;
}

}  // namespace pvk

#endif
