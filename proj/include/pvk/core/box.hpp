#ifndef PVK_CORE_BOX_HPP
#define PVK_CORE_BOX_HPP

#include <cmath>
#include <vector>

#include "pvk/core/cloud.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

// Point expressed in the box frame: translate by -center, rotate by -yaw about Z.
inline Vec3 to_box_frame(const Vec3& p, const Box3D& box) {
    const Vec3 d = p - box.center;
    const double c = std::cos(box.yaw), s = std::sin(box.yaw);
    return {c * d.x + s * d.y, -s * d.x + c * d.y, d.z};
}

// Boundary counts as inside.
inline bool point_in_box(const Vec3& p, const Box3D& box) {
    const Vec3 q = to_box_frame(p, box);
    return std::abs(q.x) <= box.dims.x / 2.0 && std::abs(q.y) <= box.dims.y / 2.0 &&
           std::abs(q.z) <= box.dims.z / 2.0;
}

// Cell-center lattice of gx*gy*gz points inside an oriented box, rotated by
// yaw and translated to the box center. Output order: x-major, then y, then z.
inline std::vector<Vec3> box_grid_points(const Box3D& box, int gx, int gy, int gz) {
    if (gx < 1 || gy < 1 || gz < 1) throw argument_error("box_grid_points: grid counts must be >= 1");
    const double c = std::cos(box.yaw), s = std::sin(box.yaw);
    std::vector<Vec3> out;
    out.reserve(std::size_t(gx) * gy * gz);
    for (int i = 0; i < gx; ++i) {
        const double lx = ((i + 0.5) / gx - 0.5) * box.dims.x;
        for (int j = 0; j < gy; ++j) {
            const double ly = ((j + 0.5) / gy - 0.5) * box.dims.y;
            for (int k = 0; k < gz; ++k) {
                const double lz = ((k + 0.5) / gz - 0.5) * box.dims.z;
                out.push_back({box.center.x + c * lx - s * ly,
                               box.center.y + s * lx + c * ly,
                               box.center.z + lz});
            }
        }
    }
    return out;
}

}  // namespace pvk

#endif
