#ifndef PVK_BENCH_REPORT_HPP
#define PVK_BENCH_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "pvk/core/types.hpp"

namespace pvk {

inline std::string format_fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

// One (sampler, scene, seed) cell of the sampler benchmark.
struct BenchRow {
    std::string method;
    std::string scene;
    std::uint64_t seed = 0;
    std::size_t n = 0;
    double runtime_ms = 0.0;
    std::vector<double> coverage;  // one per configured radius
    double cov_avg = 0.0;
    std::string error;  // non-empty if the sampler failed; coverage cells left blank
};

struct BenchReport {
    std::vector<double> radii;
    std::vector<BenchRow> rows;

    std::string to_csv() const {
        std::string out = "method,scene,seed,n,runtime_ms";
        for (double r : radii) out += ",cov@" + format_fixed(r, 3);
        out += ",cov_avg,error\n";
        for (const BenchRow& row : rows) {
            out += row.method + "," + row.scene + "," + std::to_string(row.seed) + "," +
                   std::to_string(row.n) + "," + format_fixed(row.runtime_ms, 3);
            if (row.error.empty()) {
                for (double c : row.coverage) out += "," + format_fixed(c, 6);
                out += "," + format_fixed(row.cov_avg, 6) + ",";
            } else {
                for (std::size_t i = 0; i < radii.size(); ++i) out += ",";  // blank coverage cells
                out += ",," + row.error;
            }
            out += "\n";
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["radii"] = radii;
        j["rows"] = nlohmann::json::array();
        for (const BenchRow& row : rows) {
            nlohmann::json jr{{"method", row.method}, {"scene", row.scene},  {"seed", row.seed},
                              {"n", row.n},           {"runtime_ms", row.runtime_ms}};
            if (row.error.empty()) {
                jr["coverage"] = row.coverage;
                jr["cov_avg"] = row.cov_avg;
            } else {
                jr["error"] = row.error;
            }
            j["rows"].push_back(jr);
        }
        return j;
    }
};

// Generic CSV table of strings, for lossless round-tripping of reports.
struct CsvTable {
    std::vector<std::vector<std::string>> rows;  // includes the header row

    static CsvTable parse(const std::string& text) {
        CsvTable t;
        std::vector<std::string> row;
        std::string cell;
        for (char ch : text) {
            if (ch == ',') {
                row.push_back(cell);
                cell.clear();
            } else if (ch == '\n') {
                row.push_back(cell);
                cell.clear();
                t.rows.push_back(row);
                row.clear();
            } else {
                cell += ch;
            }
        }
        if (!cell.empty() || !row.empty()) {
            row.push_back(cell);
            t.rows.push_back(row);
        }
        return t;
    }

    std::string serialize() const {
        std::string out;
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out += ",";
                out += row[i];
            }
            out += "\n";
        }
        return out;
    }
};

// One (config, size) cell of the kernel micro-benchmark; both kernels appear
// in the same row for side-by-side comparison.
struct KernelBenchRow {
    std::string config;
    std::size_t n_points = 0;
    std::size_t m_centers = 0;
    double sa_ms = 0.0;
    std::size_t sa_peak_bytes = 0;
    double sa_checksum = 0.0;
    double vp_ms = 0.0;
    std::size_t vp_peak_bytes = 0;
    double vp_checksum = 0.0;
};

struct KernelBenchReport {
    std::vector<KernelBenchRow> rows;

    std::string to_csv() const {
        std::string out =
            "config,n_points,m_centers,sa_ms,sa_peak_bytes,sa_checksum,vp_ms,vp_peak_bytes,vp_checksum\n";
        for (const KernelBenchRow& r : rows) {
            out += r.config + "," + std::to_string(r.n_points) + "," + std::to_string(r.m_centers) +
                   "," + format_fixed(r.sa_ms, 3) + "," + std::to_string(r.sa_peak_bytes) + "," +
                   format_fixed(r.sa_checksum, 6) + "," + format_fixed(r.vp_ms, 3) + "," +
                   std::to_string(r.vp_peak_bytes) + "," + format_fixed(r.vp_checksum, 6) + "\n";
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j = nlohmann::json::array();
        for (const KernelBenchRow& r : rows)
            j.push_back({{"config", r.config},
                         {"n_points", r.n_points},
                         {"m_centers", r.m_centers},
                         {"sa_ms", r.sa_ms},
                         {"sa_peak_bytes", r.sa_peak_bytes},
                         {"sa_checksum", r.sa_checksum},
                         {"vp_ms", r.vp_ms},
                         {"vp_peak_bytes", r.vp_peak_bytes},
                         {"vp_checksum", r.vp_checksum}});
        return j;
    }
};

}  // namespace pvk

#endif
