#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "pvk/pvk.hpp"

using namespace pvk;

namespace {

PointCloud cloud_from(const std::vector<Vec3>& pts, const std::vector<std::vector<float>>& feats) {
    PointCloud c(0, feats.empty() ? 0 : feats.front().size());
    for (std::size_t i = 0; i < pts.size(); ++i) c.push_back(pts[i], feats[i]);
    return c;
}

VoxelGridSpec unit_spec(double vs = 0.1) {
    VoxelGridSpec spec;
    spec.voxel_size = {vs, vs, vs};
    spec.extent = {100, 100, 100};
    return spec;
}

}  // namespace

TEST_CASE("voxelize: single point lands in voxel (0,0,0) with its own feature") {
    const auto cloud = cloud_from({{0.05, 0.05, 0.05}}, {{7.0f}});
    const auto vset = voxelize(cloud, unit_spec());
    REQUIRE(vset.size() == 1);
    CHECK(vset.indices[0] == std::array<std::int64_t, 3>{0, 0, 0});
    CHECK(vset.feature(0)[0] == 7.0f);
}

TEST_CASE("voxelize: two points in one voxel average their features") {
    const auto cloud = cloud_from({{0.05, 0.05, 0.05}, {0.06, 0.04, 0.02}}, {{2.0f}, {4.0f}});
    const auto vset = voxelize(cloud, unit_spec());
    REQUIRE(vset.size() == 1);
    CHECK(vset.feature(0)[0] == doctest::Approx(3.0));
}

TEST_CASE("voxelize: floor quantization splits x-adjacent points") {
    const auto cloud = cloud_from({{0.05, 0.05, 0.05}, {0.15, 0.05, 0.05}}, {{1.0f}, {1.0f}});
    const auto vset = voxelize(cloud, unit_spec());
    REQUIRE(vset.size() == 2);
    CHECK(vset.indices[1][0] - vset.indices[0][0] == 1);
    CHECK(vset.indices[0][1] == vset.indices[1][1]);
}

TEST_CASE("voxelize: invalid spec is a configuration error, out-of-extent points drop") {
    const auto cloud = cloud_from({{0.05, 0.05, 0.05}, {1e6, 0, 0}}, {{1.0f}, {1.0f}});
    VoxelGridSpec bad = unit_spec();
    bad.voxel_size.x = 0.0;
    CHECK_THROWS_AS(voxelize(cloud, bad), config_error);
    CHECK(voxelize(cloud, unit_spec()).size() == 1);
}

TEST_CASE("voxelize: mean aggregation conserves per-channel feature mass") {
    Rng rng(11);
    PointCloud cloud(0, 2);
    for (int i = 0; i < 500; ++i)
        cloud.push_back({rng.uniform(0, 5), rng.uniform(0, 5), rng.uniform(0, 5)},
                        {float(rng.uniform01()), float(rng.uniform(-1, 1))});
    VoxelGridSpec spec = unit_spec(0.37);
    const auto vset = voxelize(cloud, spec);

    // recount members per voxel to weight the means
    std::map<std::array<std::int64_t, 3>, std::size_t> counts;
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3 p = cloud.point(i);
        counts[{std::int64_t(std::floor(p.x / 0.37)), std::int64_t(std::floor(p.y / 0.37)),
                std::int64_t(std::floor(p.z / 0.37))}]++;
    }
    for (int ch = 0; ch < 2; ++ch) {
        double direct = 0.0, pooled = 0.0;
        for (std::size_t i = 0; i < cloud.size(); ++i) direct += cloud.feature(i)[ch];
        for (std::size_t v = 0; v < vset.size(); ++v)
            pooled += double(vset.feature(v)[ch]) * double(counts[vset.indices[v]]);
        // voxel features are stored as float32, so mass survives only to float precision
        CHECK(pooled == doctest::Approx(direct).epsilon(1e-5));
    }
}

TEST_CASE("voxel_centers_metric: center formula, stride scaling, translation") {
    const auto cloud = cloud_from({{0.05, 0.05, 0.05}}, {{1.0f}});
    VoxelGridSpec spec = unit_spec();
    auto vset = voxelize(cloud, spec);
    auto centers = voxel_centers_metric(vset);
    CHECK(centers[0] == Vec3{0.05, 0.05, 0.05});

    vset.spec.stride = 2;
    centers = voxel_centers_metric(vset);
    CHECK(centers[0] == Vec3{0.1, 0.1, 0.1});

    vset.spec.stride = 1;
    vset.spec.origin = {1.5, -2.0, 3.0};
    centers = voxel_centers_metric(vset);
    CHECK(centers[0] == Vec3{1.55, -1.95, 3.05});
}

TEST_CASE("voxelize + centers: every center within half a strided voxel of a member point") {
    Rng rng(3);
    PointCloud cloud(0, 1);
    for (int i = 0; i < 300; ++i)
        cloud.push_back({rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0, 4)}, {0.0f});
    const auto vset = voxelize(cloud, unit_spec(0.25));
    const auto centers = voxel_centers_metric(vset);
    for (std::size_t v = 0; v < vset.size(); ++v) {
        bool close = false;
        for (std::size_t i = 0; i < cloud.size() && !close; ++i)
            close = cheby_dist(cloud.point(i), centers[v]) <= 0.125 + 1e-9;
        CHECK(close);
    }
}

TEST_CASE("point_in_box: center, beyond half-dim, rotated frame") {
    const Box3D unit({0, 0, 0}, {1, 1, 1}, 0.0);
    CHECK(point_in_box(unit.center, unit));
    CHECK_FALSE(point_in_box({0.6, 0, 0}, unit));
    CHECK(point_in_box({0.5, 0.5, 0.5}, unit));  // boundary inclusive

    const Box3D rotated({0, 0, 0}, {2, 1, 1}, M_PI / 2.0);
    CHECK_FALSE(point_in_box({0.9, 0, 0}, rotated));
    CHECK(point_in_box({0, 0.9, 0}, rotated));
}

TEST_CASE("point_in_box: invariant under joint rigid transform") {
    Rng rng(17);
    for (int it = 0; it < 100; ++it) {
        const Box3D box({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-2, 2)},
                        {rng.uniform(0.5, 3), rng.uniform(0.5, 3), rng.uniform(0.5, 3)},
                        rng.uniform(-M_PI, M_PI));
        const Vec3 p{rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(-3, 3)};
        const double a = rng.uniform(-M_PI, M_PI);
        const Vec3 t{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        const double c = std::cos(a), s = std::sin(a);
        auto rot = [&](const Vec3& v) { return Vec3{c * v.x - s * v.y, s * v.x + c * v.y, v.z}; };
        const Box3D moved(rot(box.center) + t, box.dims, box.yaw + a);
        CHECK(point_in_box(p, box) == point_in_box(rot(p) + t, moved));
    }
}

TEST_CASE("box_grid_points: degenerate grid is the center") {
    const Box3D box({1, 2, 3}, {2, 2, 2}, 0.7);
    const auto grid = box_grid_points(box, 1, 1, 1);
    REQUIRE(grid.size() == 1);
    CHECK(grid[0].x == doctest::Approx(1.0));
    CHECK(grid[0].y == doctest::Approx(2.0));
    CHECK(grid[0].z == doctest::Approx(3.0));
}

TEST_CASE("box_grid_points: 2x2x2 cell centers of the unit box") {
    const Box3D box({0, 0, 0}, {1, 1, 1}, 0.0);
    const auto grid = box_grid_points(box, 2, 2, 2);
    REQUIRE(grid.size() == 8);
    for (const Vec3& g : grid) {
        CHECK(std::abs(g.x) == doctest::Approx(0.25));
        CHECK(std::abs(g.y) == doctest::Approx(0.25));
        CHECK(std::abs(g.z) == doctest::Approx(0.25));
    }
    // x-major ordering: first point is the (-,-,-) cell
    CHECK(grid[0].x == doctest::Approx(-0.25));
    CHECK(grid[0].y == doctest::Approx(-0.25));
    CHECK(grid[0].z == doctest::Approx(-0.25));
}

TEST_CASE("box_grid_points: yaw=pi/2 maps x-offsets onto y-offsets") {
    const Box3D axis({0, 0, 0}, {2, 1, 1}, 0.0);
    const Box3D turned({0, 0, 0}, {2, 1, 1}, M_PI / 2.0);
    const auto g0 = box_grid_points(axis, 3, 2, 2);
    const auto g1 = box_grid_points(turned, 3, 2, 2);
    for (std::size_t i = 0; i < g0.size(); ++i) {
        CHECK(g1[i].x == doctest::Approx(-g0[i].y));
        CHECK(g1[i].y == doctest::Approx(g0[i].x));
        CHECK(g1[i].z == doctest::Approx(g0[i].z));
    }
}

TEST_CASE("box_grid_points: all grid points lie inside their own box") {
    Rng rng(23);
    for (int it = 0; it < 50; ++it) {
        const Box3D box({rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-2, 2)},
                        {rng.uniform(0.5, 4), rng.uniform(0.5, 4), rng.uniform(0.5, 4)},
                        rng.uniform(-M_PI, M_PI));
        const auto grid = box_grid_points(box, 4, 3, 2);
        CHECK(grid.size() == 24);
        for (const Vec3& g : grid) CHECK(point_in_box(g, box));
    }
}

TEST_CASE("point cloud io: pts round trip is bit-exact") {
    Rng rng(5);
    PointCloud cloud(0, 2);
    for (int i = 0; i < 100; ++i)
        cloud.push_back({rng.uniform(-50, 50), rng.uniform(-50, 50), rng.uniform(-3, 3)},
                        {float(rng.uniform01()), float(rng.gaussian())});
    const auto dir = std::filesystem::temp_directory_path() / "pvk_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "cloud.pts").string();

    save_point_cloud(cloud, path);
    const PointCloud loaded = load_point_cloud(path, PointFormat::pts);
    CHECK(loaded.coords() == cloud.coords());
    CHECK(loaded.features() == cloud.features());
}

TEST_CASE("point cloud io: headerless bin of 2 records gives N=2, C=1") {
    const auto dir = std::filesystem::temp_directory_path() / "pvk_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "two.bin").string();
    const float data[8] = {1, 2, 3, 0.5f, 4, 5, 6, 0.25f};
    std::ofstream(path, std::ios::binary).write(reinterpret_cast<const char*>(data), sizeof(data));

    const PointCloud loaded = load_point_cloud(path, PointFormat::bin);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded.num_features() == 1);
    CHECK(loaded.point(1) == Vec3{4, 5, 6});
    CHECK(loaded.feature(1)[0] == 0.25f);
}

TEST_CASE("point cloud io: truncated file is a format error with byte offset") {
    const auto dir = std::filesystem::temp_directory_path() / "pvk_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "trunc.bin").string();
    const char junk[10] = {};
    std::ofstream(path, std::ios::binary).write(junk, sizeof(junk));
    CHECK_THROWS_AS(load_point_cloud(path, PointFormat::bin), format_error);
    CHECK_THROWS_AS(load_point_cloud("/nonexistent/nope.bin", PointFormat::bin), format_error);
}

TEST_CASE("boxes io: JSON lines round trip") {
    const auto dir = std::filesystem::temp_directory_path() / "pvk_io_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "boxes.jsonl").string();
    const std::vector<Box3D> boxes{Box3D({1, 2, 3}, {4, 5, 6}, 0.5),
                                   Box3D({-1, 0, 1}, {2, 2, 2}, -2.5)};
    save_boxes(boxes, path);
    const auto loaded = load_boxes(path);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[1].center == boxes[1].center);
    CHECK(loaded[1].yaw == doctest::Approx(boxes[1].yaw));
}
