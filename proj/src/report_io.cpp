#include "pzlink/report_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "pzlink/errors.hpp"
#include "pzlink/version.hpp"

namespace pzlink {

using nlohmann::json;

namespace {

// Shortest round-trippable decimal; keeps reruns byte-identical.
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

}  // namespace

std::vector<std::string> write_outputs(const ExperimentReport& report,
                                       const RunConfig& config,
                                       const std::string& directory) {
    namespace fs = std::filesystem;
    const fs::path dir(directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + directory);

    std::vector<std::string> written;

    json metrics = json::array();
    for (const Metric& m : report.metrics)
        metrics.push_back({{"name", m.name}, {"value", m.value}, {"unit", m.unit}});
    json series_index = json::array();
    for (const Series& s : report.series)
        series_index.push_back({{"name", s.name}, {"file", s.name + ".csv"}});
    json snapshot_index = json::array();
    for (const ShapeSnapshot& s : report.snapshots)
        snapshot_index.push_back({{"tag", s.tag}, {"time_s", s.time}});

    json doc = {{"tool", kToolName},
                {"version", kToolVersion},
                {"experiment", report.experiment},
                {"metrics", metrics},
                {"series", series_index},
                {"snapshots", snapshot_index},
                {"config", json::parse(config.echo)}};
    write_file(dir / "report.json", doc.dump(2) + "\n");
    written.push_back("report.json");

    for (const Series& s : report.series) {
        std::string csv = s.abscissa + "," + s.ordinate + "\n";
        for (const auto& [x, y] : s.points) csv += num(x) + "," + num(y) + "\n";
        write_file(dir / (s.name + ".csv"), csv);
        written.push_back(s.name + ".csv");
    }

    if (!report.snapshots.empty()) {
        std::string csv = "time_s,node_index,x_m,y_m\n";
        for (const ShapeSnapshot& shot : report.snapshots)
            for (size_t i = 0; i < shot.nodes.size(); ++i)
                csv += num(shot.time) + "," + std::to_string(i) + "," +
                       num(shot.nodes[i].x()) + "," + num(shot.nodes[i].y()) + "\n";
        write_file(dir / "shapes.csv", csv);
        written.push_back("shapes.csv");
    }
    return written;
}

}  // namespace pzlink
