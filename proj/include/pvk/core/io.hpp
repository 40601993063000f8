#ifndef PVK_CORE_IO_HPP
#define PVK_CORE_IO_HPP

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvk/core/cloud.hpp"
#include "pvk/core/types.hpp"

namespace pvk {

enum class PointFormat {
    pts,  // <name>.pts float32 N x (3+C) + <name>.pts.json sidecar
    bin,  // headerless float32 N x 4 (x, y, z, intensity)
};

inline PointFormat parse_point_format(const std::string& s) {
    if (s == "pts") return PointFormat::pts;
    if (s == "bin") return PointFormat::bin;
    throw argument_error("unknown point format: " + s);
}

namespace detail {

inline std::vector<char> read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw format_error("cannot open file: " + path);
    std::vector<char> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return data;
}

inline PointCloud cloud_from_floats(const std::vector<char>& data, std::size_t num_features,
                                    const std::string& path) {
    const std::size_t record = (3 + num_features) * sizeof(float);
    if (data.size() % record != 0)
        throw format_error("file length of " + path + " is not a multiple of the " +
                               std::to_string(record) + "-byte record",
                           std::int64_t(data.size() - data.size() % record));
    const std::size_t n = data.size() / record;
    PointCloud cloud(n, num_features);
    const float* src = reinterpret_cast<const float*>(data.data());
    for (std::size_t i = 0; i < n; ++i) {
        cloud.mutable_coords()[3 * i] = src[0];
        cloud.mutable_coords()[3 * i + 1] = src[1];
        cloud.mutable_coords()[3 * i + 2] = src[2];
        for (std::size_t k = 0; k < num_features; ++k) cloud.feature(i)[k] = src[3 + k];
        src += 3 + num_features;
    }
    return cloud;
}

}  // namespace detail

inline PointCloud load_point_cloud(const std::string& path, PointFormat format) {
    if (format == PointFormat::bin) {
        return detail::cloud_from_floats(detail::read_all(path), 1, path);
    }

    const std::string sidecar_path = path + ".json";
    std::ifstream sc(sidecar_path);
    if (!sc) throw format_error("missing sidecar: " + sidecar_path);
    nlohmann::json sidecar;
    try {
        sc >> sidecar;
    } catch (const nlohmann::json::exception& e) {
        throw format_error("bad sidecar " + sidecar_path + ": " + e.what());
    }
    if (!sidecar.contains("num_points") || !sidecar.contains("num_features"))
        throw format_error("sidecar " + sidecar_path + " lacks num_points/num_features");

    const std::size_t n = sidecar["num_points"].get<std::size_t>();
    const std::size_t c = sidecar["num_features"].get<std::size_t>();
    auto data = detail::read_all(path);
    PointCloud cloud = detail::cloud_from_floats(data, c, path);
    if (cloud.size() != n)
        throw format_error("sidecar declares " + std::to_string(n) + " points but " + path +
                               " holds " + std::to_string(cloud.size()),
                           std::int64_t(data.size()));
    return cloud;
}

inline void save_point_cloud(const PointCloud& points, const std::string& path,
                             PointFormat format = PointFormat::pts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw format_error("cannot write file: " + path);
    const std::size_t c = (format == PointFormat::bin) ? 1 : points.num_features();
    if (format == PointFormat::bin && points.num_features() != 1)
        throw argument_error("bin format requires exactly one feature channel (intensity)");
    for (std::size_t i = 0; i < points.size(); ++i) {
        out.write(reinterpret_cast<const char*>(points.coords().data() + 3 * i), 3 * sizeof(float));
        out.write(reinterpret_cast<const char*>(points.feature(i)), c * sizeof(float));
    }
    if (format == PointFormat::pts) {
        nlohmann::json sidecar{{"num_points", points.size()}, {"num_features", c}};
        std::ofstream sc(path + ".json");
        if (!sc) throw format_error("cannot write sidecar: " + path + ".json");
        sc << sidecar.dump() << "\n";
    }
}

// Boxes: JSON lines, one object per line.
inline std::vector<Box3D> load_boxes(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw format_error("cannot open file: " + path);
    std::vector<Box3D> boxes;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw format_error("bad box on line " + std::to_string(lineno) + " of " + path + ": " +
                               e.what());
        }
        boxes.emplace_back(Vec3{j.at("cx").get<double>(), j.at("cy").get<double>(), j.at("cz").get<double>()},
                           Vec3{j.at("dx").get<double>(), j.at("dy").get<double>(), j.at("dz").get<double>()},
                           j.at("yaw").get<double>());
    }
    return boxes;
}

inline void save_boxes(const std::vector<Box3D>& boxes, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw format_error("cannot write file: " + path);
    for (const Box3D& b : boxes) {
        nlohmann::json j{{"cx", b.center.x}, {"cy", b.center.y}, {"cz", b.center.z},
                         {"dx", b.dims.x},   {"dy", b.dims.y},   {"dz", b.dims.z},
                         {"yaw", b.yaw}};
        out << j.dump() << "\n";
    }
}

}  // namespace pvk

#endif
