#ifndef PVK_AGGREGATION_VECTORPOOL_HPP
#define PVK_AGGREGATION_VECTORPOOL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvk/aggregation/mlp.hpp"
#include "pvk/core/parallel.hpp"
#include "pvk/core/rng.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

// Parameter-free channel reduction: sums every n_r input channels into one,
//   out(k) = sum_j in(j * C_r1 + k),  C_r1 = C_in / n_r.
inline std::vector<double> channel_reduction(const std::vector<double>& features, std::size_t n,
                                             std::size_t c_in, std::size_t n_r) {
    if (n_r < 1 || c_in % n_r != 0)
        throw argument_error("channel_reduction: C_in must be divisible by n_r");
    const std::size_t c_out = c_in / n_r;
    std::vector<double> out(n * c_out, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* src = features.data() + i * c_in;
        double* dst = out.data() + i * c_out;
        for (std::size_t j = 0; j < n_r; ++j)
            for (std::size_t k = 0; k < c_out; ++k) dst[k] += src[j * c_out + k];
    }
    return out;
}

// Chebyshev neighborhood with the doubled half length: all points with
// max(|rx|, |ry|, |rz|) < 2*l relative to the center. Ascending indices.
inline std::vector<std::size_t> cube_query(const Vec3& center, const std::vector<Vec3>& points,
                                           double half_length) {
    if (half_length <= 0.0) throw argument_error("cube_query: half length must be > 0");
    const double bound = 2.0 * half_length;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (cheby_dist(points[i], center) < bound) out.push_back(i);
    return out;
}

// Per-voxel interpolation payload: reduced feature + the (zero-padded) offsets
// of the selected neighbors relative to the voxel center.
struct VoxelPayload {
    std::vector<double> feature;      // C_r1
    std::array<double, 9> rel_pos{};  // 3 neighbors x 3, zero-padded
};

namespace detail {

struct NeighborRank {
    double d2;
    Vec3 pos;
    std::size_t idx;
};

inline bool rank_less(const NeighborRank& a, const NeighborRank& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.pos.x != b.pos.x) return a.pos.x < b.pos.x;
    if (a.pos.y != b.pos.y) return a.pos.y < b.pos.y;
    return a.pos.z < b.pos.z;
}

}  // namespace detail

// Voxel center of cell (ix, iy, iz) in a cube of half length l around `center`:
//   center + ((i + 0.5) / n - 0.5) * 2l  per axis.
inline Vec3 local_voxel_center(const Vec3& center, int ix, int iy, int iz, int nx, int ny, int nz,
                               double l) {
    return {center.x + ((ix + 0.5) / nx - 0.5) * 2.0 * l,
            center.y + ((iy + 0.5) / ny - 0.5) * 2.0 * l,
            center.z + ((iz + 0.5) / nz - 0.5) * 2.0 * l};
}

// Inverse-distance interpolation of each local voxel's feature from its three
// nearest cube-query neighbors (ties by distance, then lexicographic
// coordinates). A neighbor coincident with the voxel center takes the whole
// interpolation; an empty neighborhood yields all-zero payloads. Output is
// nx*ny*nz payloads in (ix, iy, iz) row-major order.
inline std::vector<VoxelPayload> interpolate_voxel_features(
    const Vec3& center, int nx, int ny, int nz, double half_length,
    const std::vector<std::size_t>& neighbor_idx, const std::vector<Vec3>& points,
    const std::vector<double>& reduced_features, std::size_t c_r1) {
    if (nx < 1 || ny < 1 || nz < 1)
        throw argument_error("interpolate_voxel_features: grid must be >= 1 per axis");

    std::vector<VoxelPayload> out(std::size_t(nx) * ny * nz);
    for (auto& p : out) p.feature.assign(c_r1, 0.0);
    if (neighbor_idx.empty()) return out;

    std::vector<detail::NeighborRank> ranks(neighbor_idx.size());
    std::size_t voxel = 0;
    for (int ix = 0; ix < nx; ++ix)
        for (int iy = 0; iy < ny; ++iy)
            for (int iz = 0; iz < nz; ++iz, ++voxel) {
                const Vec3 v = local_voxel_center(center, ix, iy, iz, nx, ny, nz, half_length);
                for (std::size_t j = 0; j < neighbor_idx.size(); ++j) {
                    const Vec3 p = points[neighbor_idx[j]];
                    ranks[j] = {dist2(p, v), p, neighbor_idx[j]};
                }
                const std::size_t k = std::min<std::size_t>(3, ranks.size());
                std::partial_sort(ranks.begin(), ranks.begin() + std::ptrdiff_t(k), ranks.end(),
                                  detail::rank_less);

                VoxelPayload& payload = out[voxel];
                for (std::size_t j = 0; j < k; ++j) {
                    const Vec3 rel = ranks[j].pos - v;
                    payload.rel_pos[3 * j] = rel.x;
                    payload.rel_pos[3 * j + 1] = rel.y;
                    payload.rel_pos[3 * j + 2] = rel.z;
                }

                if (ranks[0].d2 == 0.0) {
                    // singular weight: the coincident neighbor contributes exactly
                    const double* f = reduced_features.data() + ranks[0].idx * c_r1;
                    payload.feature.assign(f, f + c_r1);
                    continue;
                }
                double wsum = 0.0;
                for (std::size_t j = 0; j < k; ++j) {
                    const double w = 1.0 / std::sqrt(ranks[j].d2);
                    const double* f = reduced_features.data() + ranks[j].idx * c_r1;
                    for (std::size_t ch = 0; ch < c_r1; ++ch) payload.feature[ch] += w * f[ch];
                    wsum += w;
                }
                for (std::size_t ch = 0; ch < c_r1; ++ch) payload.feature[ch] /= wsum;
            }
    return out;
}

enum class PosFusion { concat };

// Dense-voxel local aggregation parameters: grid shape, cube half length,
// channel-reduction factor, one kernel per voxel, and the output MLP.
struct VectorPoolConfig {
    int nx = 3, ny = 3, nz = 3;
    double half_length = 1.0;   // l, meters
    std::size_t reduction = 1;  // n_r
    PosFusion pos_fusion = PosFusion::concat;
    std::size_t kernel_in = 0;   // 9 + C_r1
    std::size_t kernel_out = 0;  // C_r2
    std::vector<std::vector<double>> voxel_kernels;  // per voxel, (9+C_r1) x C_r2 row-major
    MlpSpec out_mlp;

    std::size_t num_voxels() const { return std::size_t(nx) * ny * nz; }
    std::size_t c_r1() const { return kernel_in - 9; }
    std::size_t vector_dim() const { return num_voxels() * kernel_out; }

    void validate() const {
        if (nx < 1 || ny < 1 || nz < 1) throw config_error("VectorPoolConfig: grid must be >= 1");
        if (half_length <= 0.0) throw config_error("VectorPoolConfig: half_length must be > 0");
        if (reduction < 1) throw config_error("VectorPoolConfig: reduction must be >= 1");
        if (kernel_in < 10) throw config_error("VectorPoolConfig: kernel_in must be 9 + C_r1");
        if (voxel_kernels.size() != num_voxels())
            throw config_error("VectorPoolConfig: need one kernel per voxel");
        for (const auto& k : voxel_kernels)
            if (k.size() != kernel_in * kernel_out)
                throw config_error("VectorPoolConfig: kernel shape mismatch");
        out_mlp.validate();
        if (out_mlp.input_dim() != vector_dim())
            throw config_error("VectorPoolConfig: out_mlp input dim must be nx*ny*nz*C_r2");
    }

    // Seeded random instance for the given input channel count.
    static VectorPoolConfig random(std::size_t c_in, std::size_t n_r, int nx, int ny, int nz,
                                   double half_length, std::size_t c_r2, std::size_t c_out,
                                   Rng& rng) {
        if (n_r < 1 || c_in % n_r != 0)
            throw config_error("VectorPoolConfig: C_in must be divisible by n_r");
        VectorPoolConfig cfg;
        cfg.nx = nx;
        cfg.ny = ny;
        cfg.nz = nz;
        cfg.half_length = half_length;
        cfg.reduction = n_r;
        cfg.kernel_in = 9 + c_in / n_r;
        cfg.kernel_out = c_r2;
        cfg.voxel_kernels.resize(cfg.num_voxels());
        const double scale = 1.0 / std::sqrt(double(cfg.kernel_in));
        for (auto& k : cfg.voxel_kernels) {
            k.resize(cfg.kernel_in * c_r2);
            for (double& w : k) w = rng.uniform(-scale, scale);
        }
        cfg.out_mlp = MlpSpec::random({cfg.vector_dim(), c_out}, rng);
        return cfg;
    }
};

// Position-specific encoding of one voxel: [rel_pos(9), feature(C_r1)] * W_v.
// No bias, no activation.
inline std::vector<double> position_specific_encode(const VoxelPayload& payload,
                                                    const std::vector<double>& kernel,
                                                    std::size_t kernel_in, std::size_t kernel_out) {
    if (payload.feature.size() + 9 != kernel_in || kernel.size() != kernel_in * kernel_out)
        throw config_error("position_specific_encode: kernel shape mismatch");
    std::vector<double> out(kernel_out, 0.0);
    for (std::size_t i = 0; i < kernel_in; ++i) {
        const double v = i < 9 ? payload.rel_pos[i] : payload.feature[i - 9];
        if (v == 0.0) continue;
        const double* row = kernel.data() + i * kernel_out;
        for (std::size_t o = 0; o < kernel_out; ++o) out[o] += v * row[o];
    }
    return out;
}

// Full VectorPool aggregation. `features` is N x c_in row-major; returns
// M x out_mlp.output_dim() row-major. A center with an empty cube neighborhood
// outputs the zero vector directly (out_mlp bypassed).
inline std::vector<double> vectorpool_aggregate(const std::vector<Vec3>& centers,
                                                const std::vector<Vec3>& points,
                                                const std::vector<double>& features,
                                                std::size_t c_in, const VectorPoolConfig& cfg,
                                                int threads = 1) {
    cfg.validate();
    if (c_in % cfg.reduction != 0)
        throw argument_error("vectorpool_aggregate: C_in must be divisible by n_r");
    if (c_in / cfg.reduction != cfg.c_r1())
        throw config_error("vectorpool_aggregate: kernels expect C_r1 = " +
                           std::to_string(cfg.c_r1()));
    if (features.size() != points.size() * c_in)
        throw config_error("vectorpool_aggregate: features size mismatch");

    const std::vector<double> reduced =
        channel_reduction(features, points.size(), c_in, cfg.reduction);
    const std::size_t c_r1 = cfg.c_r1();
    const std::size_t out_dim = cfg.out_mlp.output_dim();

    std::vector<double> out(centers.size() * out_dim, 0.0);
    parallel_for(centers.size(), threads, [&](std::size_t c) {
        const auto neighbors = cube_query(centers[c], points, cfg.half_length);
        if (neighbors.empty()) return;  // zero vector, out_mlp bypassed

        const auto payloads = interpolate_voxel_features(centers[c], cfg.nx, cfg.ny, cfg.nz,
                                                         cfg.half_length, neighbors, points,
                                                         reduced, c_r1);
        std::vector<double> local_vec(cfg.vector_dim());
        for (std::size_t v = 0; v < payloads.size(); ++v) {
            const std::vector<double> enc = position_specific_encode(
                payloads[v], cfg.voxel_kernels[v], cfg.kernel_in, cfg.kernel_out);
            std::copy(enc.begin(), enc.end(), local_vec.begin() + std::ptrdiff_t(v * cfg.kernel_out));
        }
        const std::vector<double> result = cfg.out_mlp.forward(local_vec);
        std::copy(result.begin(), result.end(), out.begin() + std::ptrdiff_t(c * out_dim));
    });
    return out;
}

inline void to_json(nlohmann::json& j, const VectorPoolConfig& cfg) {
    j = nlohmann::json{{"nx", cfg.nx},
                       {"ny", cfg.ny},
                       {"nz", cfg.nz},
                       {"half_length", cfg.half_length},
                       {"reduction", cfg.reduction},
                       {"pos_fusion", "concat"},
                       {"kernel_in", cfg.kernel_in},
                       {"kernel_out", cfg.kernel_out},
                       {"voxel_kernels", cfg.voxel_kernels},
                       {"out_mlp", cfg.out_mlp}};
}

inline void from_json(const nlohmann::json& j, VectorPoolConfig& cfg) {
    cfg.nx = j.at("nx").get<int>();
    cfg.ny = j.at("ny").get<int>();
    cfg.nz = j.at("nz").get<int>();
    cfg.half_length = j.at("half_length").get<double>();
    cfg.reduction = j.at("reduction").get<std::size_t>();
    if (j.value("pos_fusion", "concat") != std::string("concat"))
        throw config_error("VectorPoolConfig: only concat fusion is supported");
    cfg.pos_fusion = PosFusion::concat;
    cfg.kernel_in = j.at("kernel_in").get<std::size_t>();
    cfg.kernel_out = j.at("kernel_out").get<std::size_t>();
    cfg.voxel_kernels = j.at("voxel_kernels").get<std::vector<std::vector<double>>>();
    cfg.out_mlp = j.at("out_mlp").get<MlpSpec>();
    cfg.validate();
}

}  // namespace pvk

#endif
