// pvk: point-cloud sampling / aggregation kernels and benchmark harness.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pvk/pvk.hpp"

namespace {

std::vector<double> parse_radii(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw pvk::argument_error("--radii: no radii given");
    for (double r : out)
        if (r <= 0.0) throw pvk::argument_error("--radii: radii must be > 0");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw pvk::format_error("cannot write file: " + path);
    out << text;
}

// Keypoints travel as a .pts file whose single feature channel stores the
// source index (-1 for synthesized coordinates such as voxel centers).
pvk::PointCloud keypoints_to_cloud(const pvk::KeypointSet& kp) {
    pvk::PointCloud cloud(0, 1);
    for (std::size_t i = 0; i < kp.size(); ++i)
        cloud.push_back(kp.point(i), {float(kp.indices[i])});
    return cloud;
}

pvk::KeypointSet cloud_to_keypoints(const pvk::PointCloud& cloud) {
    pvk::KeypointSet kp;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const std::int64_t idx =
            cloud.num_features() > 0 ? std::int64_t(cloud.feature(i)[0]) : std::int64_t(i);
        kp.push_back(idx, cloud.point(i));
    }
    return kp;
}

struct SaJsonConfig {
    std::vector<pvk::NeighborhoodSpec> specs;
    std::vector<pvk::MlpSpec> mlps;
};

SaJsonConfig parse_sa_config(const nlohmann::json& j) {
    SaJsonConfig cfg;
    for (const auto& js : j.at("radii")) {
        pvk::NeighborhoodSpec spec;
        spec.radius = js.at("radius").get<double>();
        spec.max_samples = js.value("max_samples", std::size_t(SIZE_MAX));
        spec.sample_seed = js.value("sample_seed", std::uint64_t(0));
        cfg.specs.push_back(spec);
    }
    cfg.mlps = j.at("mlps").get<std::vector<pvk::MlpSpec>>();
    return cfg;
}

int run(int argc, char** argv) {
    CLI::App app{"Point-cloud keypoint sampling and local feature aggregation kernels"};
    app.require_subcommand(1);

    int threads = pvk::default_thread_count();
    app.add_option("--threads", threads, "worker threads (default: PVK_THREADS env or hardware)");

    // ---- synth ----
    auto* synth = app.add_subcommand("synth", "generate a synthetic LiDAR-like scene");
    pvk::SceneSpec scene_spec;
    std::string synth_out, synth_boxes, synth_format = "pts";
    synth->add_option("--seed", scene_spec.seed, "RNG seed");
    synth->add_option("--extent", scene_spec.extent, "scene side length, meters");
    synth->add_option("--clusters", scene_spec.cluster_count, "number of object clusters");
    synth->add_option("--points-per-cluster", scene_spec.points_per_cluster, "points per cluster");
    synth->add_option("--beams", scene_spec.beam_count, "ground ring count");
    synth->add_option("--angular-resolution", scene_spec.angular_resolution, "ring step, radians");
    synth->add_option("--noise-density", scene_spec.noise_density, "floor noise, points per m^2");
    synth->add_option("--total-points", scene_spec.total_points, "pad/trim to exactly this many points");
    synth->add_option("--out", synth_out, "output point file")->required();
    synth->add_option("--boxes", synth_boxes, "output boxes file (JSON lines)");
    synth->add_option("--format", synth_format, "point file format: pts|bin");

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "sample keypoints from a point cloud");
    pvk::SamplerConfig sampler_cfg;
    std::string sample_in, sample_boxes, sample_out, sample_method = "fps", sample_format = "pts";
    bool no_pc_filter = false;
    sample->add_option("--in", sample_in, "input point file")->required();
    sample->add_option("--boxes", sample_boxes, "proposal boxes file (JSON lines)");
    sample->add_option("--method", sample_method,
                       "fps|random|voxelized_fps_voxel|voxelized_fps_point|random_parallel_fps|sectorized_fps");
    sample->add_option("--n", sampler_cfg.n, "keypoint count")->required();
    sample->add_option("--sectors", sampler_cfg.sectors, "sector count for sectorized_fps");
    sample->add_option("--extend-radius", sampler_cfg.extend_radius, "r^(s), meters");
    sample->add_option("--voxel-size", sampler_cfg.voxel_size, "voxel size for voxelized baselines");
    sample->add_option("--groups", sampler_cfg.groups, "groups for random_parallel_fps (0 = sectors)");
    sample->add_option("--seed", sampler_cfg.seed, "RNG seed");
    sample->add_flag("--no-pc-filter", no_pc_filter, "skip the proposal-centric filter");
    sample->add_option("--format", sample_format, "point file format: pts|bin");
    sample->add_option("--out", sample_out, "output keypoint file (.pts)")->required();

    // ---- coverage ----
    auto* coverage = app.add_subcommand("coverage", "coverage rate of keypoints over a cloud");
    std::string cov_points, cov_keypoints, cov_out, cov_radii = "0.1,0.2,0.3,0.4,0.5";
    std::string cov_format = "pts", cov_out_format = "csv";
    coverage->add_option("--points", cov_points, "input point file")->required();
    coverage->add_option("--keypoints", cov_keypoints, "keypoint file from `sample`")->required();
    coverage->add_option("--radii", cov_radii, "comma-separated coverage radii, meters");
    coverage->add_option("--format", cov_format, "point file format: pts|bin");
    coverage->add_option("--out", cov_out, "output report (default: stdout)");
    coverage->add_option("--out-format", cov_out_format, "csv|json");

    // ---- bench-samplers ----
    auto* bench_s = app.add_subcommand("bench-samplers", "Table-style sampler benchmark");
    std::string bs_methods = "fps,sectorized_fps", bs_radii = "0.1,0.2,0.3,0.4,0.5";
    std::string bs_out, bs_out_format = "csv";
    int bs_scenes = 3, bs_repeats = 3;
    pvk::SceneSpec bs_spec;
    pvk::SamplerConfig bs_cfg;
    bs_cfg.n = 4096;
    bench_s->add_option("--methods", bs_methods, "comma-separated sampler methods");
    bench_s->add_option("--scenes", bs_scenes, "number of synthetic scenes");
    bench_s->add_option("--seed", bs_cfg.seed, "base RNG seed");
    bench_s->add_option("--n", bs_cfg.n, "keypoint count");
    bench_s->add_option("--sectors", bs_cfg.sectors, "sector count");
    bench_s->add_option("--extend-radius", bs_cfg.extend_radius, "r^(s), meters");
    bench_s->add_option("--voxel-size", bs_cfg.voxel_size, "voxelized baseline voxel size");
    bench_s->add_option("--radii", bs_radii, "coverage radii");
    bench_s->add_option("--repeats", bs_repeats, "timing repeats (median)");
    bench_s->add_option("--extent", bs_spec.extent, "scene extent");
    bench_s->add_option("--clusters", bs_spec.cluster_count, "clusters per scene");
    bench_s->add_option("--points-per-cluster", bs_spec.points_per_cluster, "points per cluster");
    bench_s->add_option("--total-points", bs_spec.total_points, "points per scene");
    bench_s->add_option("--out", bs_out, "output report (default: stdout)");
    bench_s->add_option("--out-format", bs_out_format, "csv|json");

    // ---- bench-kernels ----
    auto* bench_k = app.add_subcommand("bench-kernels", "set abstraction vs VectorPool timings");
    std::string bk_sizes = "1000x64,10000x256", bk_out, bk_out_format = "csv";
    int bk_repeats = 3;
    std::uint64_t bk_seed = 0;
    bench_k->add_option("--sizes", bk_sizes, "comma-separated NxM cells, e.g. 1000x64");
    bench_k->add_option("--repeats", bk_repeats, "timing repeats (median)");
    bench_k->add_option("--seed", bk_seed, "RNG seed");
    bench_k->add_option("--out", bk_out, "output report (default: stdout)");
    bench_k->add_option("--out-format", bk_out_format, "csv|json");

    // ---- aggregate ----
    auto* aggregate = app.add_subcommand("aggregate", "run a local aggregation kernel over centers");
    std::string ag_points, ag_centers, ag_config, ag_out, ag_format = "pts";
    aggregate->add_option("--points", ag_points, "support point file")->required();
    aggregate->add_option("--centers", ag_centers, "center file (e.g. keypoints)")->required();
    aggregate->add_option("--config", ag_config, "aggregator config JSON")->required();
    aggregate->add_option("--format", ag_format, "point file format: pts|bin");
    aggregate->add_option("--out", ag_out, "output feature file (.pts)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints help or usage+error
        return code == 0 ? 0 : 2;
    }

    if (synth->parsed()) {
        const pvk::Scene scene = pvk::synth_scene(scene_spec);
        pvk::save_point_cloud(scene.points, synth_out, pvk::parse_point_format(synth_format));
        if (!synth_boxes.empty()) pvk::save_boxes(scene.boxes, synth_boxes);
        std::cerr << "synth: " << scene.points.size() << " points, " << scene.boxes.size()
                  << " boxes\n";
        return 0;
    }

    if (sample->parsed()) {
        sampler_cfg.method = pvk::parse_sampler_method(sample_method);
        sampler_cfg.pc_filter = !no_pc_filter;
        const pvk::PointCloud cloud =
            pvk::load_point_cloud(sample_in, pvk::parse_point_format(sample_format));
        const std::vector<pvk::Box3D> boxes =
            sample_boxes.empty() ? std::vector<pvk::Box3D>{} : pvk::load_boxes(sample_boxes);
        const pvk::KeypointSet kp = pvk::run_sampler(cloud, boxes, sampler_cfg, threads);
        pvk::save_point_cloud(keypoints_to_cloud(kp), sample_out);
        std::cerr << "sample: " << kp.size() << " keypoints\n";
        return 0;
    }

    if (coverage->parsed()) {
        const pvk::PointCloud cloud =
            pvk::load_point_cloud(cov_points, pvk::parse_point_format(cov_format));
        const pvk::KeypointSet kp =
            cloud_to_keypoints(pvk::load_point_cloud(cov_keypoints, pvk::PointFormat::pts));
        const std::vector<double> radii = parse_radii(cov_radii);

        std::vector<double> values;
        double sum = 0.0;
        for (double r : radii) {
            values.push_back(pvk::coverage_rate(cloud, kp, r));
            sum += values.back();
        }
        const double avg = sum / double(radii.size());

        std::string text;
        if (cov_out_format == "json") {
            nlohmann::json j;
            for (std::size_t i = 0; i < radii.size(); ++i)
                j["coverage"][pvk::format_fixed(radii[i], 3)] = values[i];
            j["cov_avg"] = avg;
            text = j.dump(2) + "\n";
        } else {
            text = "radius,coverage\n";
            for (std::size_t i = 0; i < radii.size(); ++i)
                text += pvk::format_fixed(radii[i], 3) + "," + pvk::format_fixed(values[i], 6) + "\n";
            text += "avg," + pvk::format_fixed(avg, 6) + "\n";
        }
        write_text(cov_out, text);
        return 0;
    }

    if (bench_s->parsed()) {
        std::vector<pvk::NamedScene> scenes;
        for (int i = 0; i < bs_scenes; ++i) {
            pvk::SceneSpec spec = bs_spec;
            spec.seed = bs_cfg.seed + std::uint64_t(i);
            scenes.push_back({"scene" + std::to_string(i), pvk::synth_scene(spec)});
        }
        std::vector<pvk::SamplerConfig> samplers;
        std::stringstream ss(bs_methods);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            pvk::SamplerConfig cfg = bs_cfg;
            cfg.method = pvk::parse_sampler_method(tok);
            samplers.push_back(cfg);
        }
        const pvk::BenchReport report =
            pvk::run_sampler_bench(scenes, samplers, parse_radii(bs_radii), bs_repeats, threads);
        write_text(bs_out, bs_out_format == "json" ? report.to_json().dump(2) + "\n" : report.to_csv());
        return 0;
    }

    if (bench_k->parsed()) {
        std::vector<pvk::KernelBenchSize> sizes;
        std::stringstream ss(bk_sizes);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            const auto x = tok.find('x');
            if (x == std::string::npos) throw pvk::argument_error("--sizes: expected NxM, got " + tok);
            sizes.push_back({std::stoul(tok.substr(0, x)), std::stoul(tok.substr(x + 1))});
        }
        pvk::KernelBenchConfig cfg;
        cfg.seed = bk_seed;
        const pvk::KernelBenchReport report =
            pvk::run_kernel_bench({cfg}, sizes, bk_repeats, threads);
        write_text(bk_out, bk_out_format == "json" ? report.to_json().dump(2) + "\n" : report.to_csv());
        return 0;
    }

    if (aggregate->parsed()) {
        const pvk::PointFormat fmt = pvk::parse_point_format(ag_format);
        const pvk::PointCloud support = pvk::load_point_cloud(ag_points, fmt);
        const pvk::PointCloud center_cloud = pvk::load_point_cloud(ag_centers, pvk::PointFormat::pts);

        std::ifstream cf(ag_config);
        if (!cf) throw pvk::format_error("cannot open config: " + ag_config);
        nlohmann::json j;
        try {
            cf >> j;
        } catch (const nlohmann::json::exception& e) {
            throw pvk::format_error("bad config " + ag_config + ": " + e.what());
        }

        std::vector<pvk::Vec3> centers(center_cloud.size());
        for (std::size_t i = 0; i < center_cloud.size(); ++i) centers[i] = center_cloud.point(i);
        std::vector<pvk::Vec3> pts(support.size());
        for (std::size_t i = 0; i < support.size(); ++i) pts[i] = support.point(i);
        const std::vector<double> features(support.features().begin(), support.features().end());

        std::vector<double> result;
        std::size_t out_dim = 0;
        const std::string kind = j.at("aggregator").get<std::string>();
        if (kind == "vectorpool") {
            const auto cfg = j.at("vectorpool").get<pvk::VectorPoolConfig>();
            result = pvk::vectorpool_aggregate(centers, pts, features, support.num_features(), cfg,
                                               threads);
            out_dim = cfg.out_mlp.output_dim();
        } else if (kind == "set_abstraction") {
            const SaJsonConfig cfg = parse_sa_config(j);
            result = pvk::set_abstraction(centers, pts, features, support.num_features(), cfg.specs,
                                          cfg.mlps, threads);
            for (const auto& m : cfg.mlps) out_dim += m.output_dim();
        } else {
            throw pvk::config_error("aggregate: unknown aggregator " + kind);
        }

        pvk::PointCloud out(0, out_dim);
        for (std::size_t i = 0; i < centers.size(); ++i) {
            std::vector<float> row(result.begin() + std::ptrdiff_t(i * out_dim),
                                   result.begin() + std::ptrdiff_t((i + 1) * out_dim));
            out.push_back(centers[i], row);
        }
        pvk::save_point_cloud(out, ag_out);
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const pvk::argument_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pvk::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pvk::format_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
