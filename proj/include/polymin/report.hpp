#pragma once

// JSON report plumbing shared by the CLI subcommands: a run manifest carrying
// everything needed to reproduce a run on one thread (command, parameters,
// seed, versions, file hashes), plus small serialization helpers.

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "polymin/geometry.hpp"
#include "polymin/version.hpp"

namespace polymin {

using ordered_json = nlohmann::ordered_json;

inline ordered_json json_vec3(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

inline ordered_json json_points(const Configuration& c) {
    ordered_json pts = ordered_json::array();
    for (const Vec3& p : c.points) pts.push_back(json_vec3(p));
    return pts;
}

// FNV-1a, 64 bit; stable content fingerprint for manifest artifact hashes.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline std::string file_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return "missing";
    std::ostringstream ss;
    ss << is.rdbuf();
    return fnv1a_hex(ss.str());
}

// Wall-clock helper; manifests record elapsed seconds, the one field excluded
// from reproducibility comparisons.
class WallTimer {
  public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

struct RunManifest {
    std::string command;
    ordered_json parameters = ordered_json::object();
    ordered_json inputs = ordered_json::object();   // path -> content hash
    ordered_json outputs = ordered_json::object();  // path -> content hash
    double wall_seconds = 0;
};

inline ordered_json manifest_json(const RunManifest& m) {
    ordered_json j;
    j["command"] = m.command;
    j["parameters"] = m.parameters;
    j["versions"] = {{"polymin", kVersion}, {"compiler", __VERSION__}};
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["wall_seconds"] = m.wall_seconds;
    return j;
}

inline void write_report(const std::string& path, const ordered_json& doc) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << doc.dump(2) << '\n';
}

}  // namespace polymin
