#ifndef PVK_POOLING_BEV_HPP
#define PVK_POOLING_BEV_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

// Top-down 2D feature map: nx x ny cells of C channels, cell centers at
// origin + (i + 0.5) * cell_size.
struct BevMap {
    std::size_t nx = 0, ny = 0, channels = 0;
    double cell_size = 1.0;
    double origin_x = 0.0, origin_y = 0.0;
    std::vector<double> values;  // nx * ny * channels, x-major

    const double* cell(std::size_t ix, std::size_t iy) const {
        return values.data() + (ix * ny + iy) * channels;
    }
    double* cell(std::size_t ix, std::size_t iy) {
        return values.data() + (ix * ny + iy) * channels;
    }

    static BevMap random(std::size_t nx, std::size_t ny, std::size_t channels, double cell_size,
                         double origin_x, double origin_y, Rng& rng) {
        BevMap map{nx, ny, channels, cell_size, origin_x, origin_y, {}};
        map.values.resize(nx * ny * channels);
        for (double& v : map.values) v = rng.uniform(-1.0, 1.0);
        return map;
    }
};

// Bilinear blend of the four surrounding cell centers at a metric xy query.
// Queries outside the map clamp to the border cell centers.
inline std::vector<double> bev_bilinear(const BevMap& map, double x, double y) {
    if (map.nx == 0 || map.ny == 0) throw config_error("bev_bilinear: empty map");
    // continuous cell coordinates; integers sit on cell centers
    const double u = std::clamp((x - map.origin_x) / map.cell_size - 0.5, 0.0, double(map.nx - 1));
    const double v = std::clamp((y - map.origin_y) / map.cell_size - 0.5, 0.0, double(map.ny - 1));
    const std::size_t i0 = std::size_t(std::min(std::floor(u), double(map.nx - 1)));
    const std::size_t j0 = std::size_t(std::min(std::floor(v), double(map.ny - 1)));
    const std::size_t i1 = std::min(i0 + 1, map.nx - 1);
    const std::size_t j1 = std::min(j0 + 1, map.ny - 1);
    const double fu = u - double(i0), fv = v - double(j0);

    std::vector<double> out(map.channels, 0.0);
    const double* c00 = map.cell(i0, j0);
    const double* c01 = map.cell(i0, j1);
    const double* c10 = map.cell(i1, j0);
    const double* c11 = map.cell(i1, j1);
    for (std::size_t k = 0; k < map.channels; ++k)
        out[k] = (1.0 - fu) * ((1.0 - fv) * c00[k] + fv * c01[k]) +
                 fu * ((1.0 - fv) * c10[k] + fv * c11[k]);
    return out;
}

}  // namespace pvk

#endif
