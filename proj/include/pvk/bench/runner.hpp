#ifndef PVK_BENCH_RUNNER_HPP
#define PVK_BENCH_RUNNER_HPP

#include <algorithm>
#include <chrono>
#include <numeric>
#include <string>
#include <vector>

#include "pvk/aggregation/set_abstraction.hpp"
#include "pvk/aggregation/vectorpool.hpp"
#include "pvk/bench/report.hpp"
#include "pvk/bench/synth.hpp"
#include "pvk/sampling/baselines.hpp"
#include "pvk/sampling/coverage.hpp"

namespace pvk {

struct NamedScene {
    std::string name;
    Scene scene;
};

namespace detail {

template <typename F>
double median_time_ms(int repeats, F&& fn) {
    fn();  // warm-up
    std::vector<double> times;
    times.reserve(std::size_t(std::max(repeats, 1)));
    for (int r = 0; r < std::max(repeats, 1); ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    const std::size_t m = times.size() / 2;
    return times.size() % 2 ? times[m] : 0.5 * (times[m - 1] + times[m]);
}

}  // namespace detail

// Table-style sampler benchmark: one row per (sampler, scene), timing only the
// sampling call (median of repeats after a warm-up) and evaluating coverage at
// each radius. Sampler failures are recorded in the row; the run continues.
inline BenchReport run_sampler_bench(const std::vector<NamedScene>& scenes,
                                     const std::vector<SamplerConfig>& samplers,
                                     const std::vector<double>& radii, int repeats,
                                     int threads = 1) {
    if (scenes.empty() || samplers.empty())
        throw argument_error("run_sampler_bench: need at least one scene and one sampler");
    BenchReport report;
    report.radii = radii;
    for (const SamplerConfig& cfg : samplers) {
        for (const NamedScene& ns : scenes) {
            BenchRow row;
            row.method = to_string(cfg.method);
            row.scene = ns.name;
            row.seed = cfg.seed;
            row.n = cfg.n;
            try {
                KeypointSet keypoints;
                row.runtime_ms = detail::median_time_ms(repeats, [&] {
                    keypoints = run_sampler(ns.scene.points, ns.scene.boxes, cfg, threads);
                });
                double sum = 0.0;
                for (double r : radii) {
                    const double c = coverage_rate(ns.scene.points, keypoints, r);
                    row.coverage.push_back(c);
                    sum += c;
                }
                row.cov_avg = radii.empty() ? 0.0 : sum / double(radii.size());
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

// Scale parameters of one kernel micro-benchmark cell.
struct KernelBenchSize {
    std::size_t n_points = 1000;
    std::size_t m_centers = 100;
};

struct KernelBenchConfig {
    std::string name = "default";
    std::size_t c_in = 16;
    std::size_t c_out = 32;
    double radius = 2.0;       // set abstraction ball radius
    std::size_t max_samples = 32;
    int grid = 3;              // vectorpool local voxels per axis
    std::size_t reduction = 2;
    double half_length = 2.0;
    std::size_t c_r2 = 8;
    double scene_extent = 50.0;
    std::uint64_t seed = 0;
};

// Times set abstraction against VectorPool aggregation on seeded random
// instances. Checksums make output determinism observable across runs.
inline KernelBenchReport run_kernel_bench(const std::vector<KernelBenchConfig>& configs,
                                          const std::vector<KernelBenchSize>& sizes,
                                          int repeats = 3, int threads = 1) {
    KernelBenchReport report;
    for (const KernelBenchConfig& cfg : configs) {
        for (const KernelBenchSize& size : sizes) {
            Rng rng(cfg.seed);
            std::vector<Vec3> points(size.n_points), centers(size.m_centers);
            const double h = cfg.scene_extent / 2.0;
            for (auto& p : points) p = {rng.uniform(-h, h), rng.uniform(-h, h), rng.uniform(-2, 2)};
            for (auto& c : centers) c = {rng.uniform(-h, h), rng.uniform(-h, h), rng.uniform(-2, 2)};
            std::vector<double> features(size.n_points * cfg.c_in);
            for (double& f : features) f = rng.uniform(-1.0, 1.0);

            std::vector<NeighborhoodSpec> specs{{cfg.radius, cfg.max_samples, cfg.seed}};
            std::vector<MlpSpec> mlps{MlpSpec::random({cfg.c_in + 3, cfg.c_out}, rng)};
            VectorPoolConfig vp = VectorPoolConfig::random(cfg.c_in, cfg.reduction, cfg.grid,
                                                           cfg.grid, cfg.grid, cfg.half_length,
                                                           cfg.c_r2, cfg.c_out, rng);

            KernelBenchRow row;
            row.config = cfg.name;
            row.n_points = size.n_points;
            row.m_centers = size.m_centers;

            std::vector<double> sa_out, vp_out;
            row.sa_ms = detail::median_time_ms(repeats, [&] {
                sa_out = set_abstraction(centers, points, features, cfg.c_in, specs, mlps, threads);
            });
            row.vp_ms = detail::median_time_ms(repeats, [&] {
                vp_out = vectorpool_aggregate(centers, points, features, cfg.c_in, vp, threads);
            });
            row.sa_checksum = std::accumulate(sa_out.begin(), sa_out.end(), 0.0);
            row.vp_checksum = std::accumulate(vp_out.begin(), vp_out.end(), 0.0);

            // dominant transient tensors, in bytes of doubles
            row.sa_peak_bytes =
                (size.m_centers * cfg.max_samples * cfg.c_out + sa_out.size()) * sizeof(double);
            row.vp_peak_bytes =
                (size.m_centers * vp.vector_dim() + size.n_points * vp.c_r1() + vp_out.size()) *
                sizeof(double);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

}  // namespace pvk

#endif
