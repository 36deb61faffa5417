#pragma once

// ASCII OFF mesh reader/writer. The writer emits triangles with 17
// significant digits so coordinates round-trip bit-exactly; the reader
// accepts general k-gon faces and can fan-triangulate them.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "polymin/geometry.hpp"
#include "polymin/hull.hpp"

namespace polymin {

struct OffParseError : std::runtime_error {
    explicit OffParseError(const std::string& what) : std::runtime_error(what) {}
};

struct OffData {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces;
};

inline std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_off(std::ostream& os, const HullMesh& mesh) {
    os << "OFF\n";
    os << mesh.vertices.size() << ' ' << mesh.faces.size() << ' ' << mesh.faces.size() * 3 / 2
       << '\n';
    for (const Vec3& p : mesh.vertices)
        os << format_real(p.x) << ' ' << format_real(p.y) << ' ' << format_real(p.z) << '\n';
    for (const auto& f : mesh.faces) os << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

inline void write_off_file(const std::string& path, const HullMesh& mesh) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_off(os, mesh);
}

namespace detail {

// Next significant line, with comments and blanks skipped.
inline bool next_line(std::istream& is, std::string* line) {
    while (std::getline(is, *line)) {
        std::size_t h = line->find('#');
        if (h != std::string::npos) line->erase(h);
        for (char c : *line)
            if (!std::isspace(static_cast<unsigned char>(c))) return true;
    }
    return false;
}

}  // namespace detail

inline OffData read_off(std::istream& is) {
    std::string line;
    if (!detail::next_line(is, &line)) throw OffParseError("empty OFF stream");
    std::istringstream header(line);
    std::string tag;
    header >> tag;
    if (tag != "OFF") throw OffParseError("missing OFF header");

    long long v = -1, f = -1, e = 0;
    if (!(header >> v >> f >> e)) {  // counts usually sit on their own line
        if (!detail::next_line(is, &line)) throw OffParseError("missing counts line");
        std::istringstream cs(line);
        if (!(cs >> v >> f >> e)) throw OffParseError("bad counts line: " + line);
    }
    if (v < 0 || f < 0) throw OffParseError("negative counts");

    OffData out;
    out.vertices.reserve(static_cast<std::size_t>(v));
    for (long long i = 0; i < v; ++i) {
        if (!detail::next_line(is, &line)) throw OffParseError("truncated vertex list");
        std::istringstream vs(line);
        Vec3 p;
        if (!(vs >> p.x >> p.y >> p.z)) throw OffParseError("bad vertex line: " + line);
        out.vertices.push_back(p);
    }
    for (long long i = 0; i < f; ++i) {
        if (!detail::next_line(is, &line)) throw OffParseError("truncated face list");
        std::istringstream fs(line);
        int k;
        if (!(fs >> k) || k < 3) throw OffParseError("bad face line: " + line);
        std::vector<int> face(k);
        for (int j = 0; j < k; ++j) {
            if (!(fs >> face[j]) || face[j] < 0 || face[j] >= v)
                throw OffParseError("face index out of range: " + line);
        }
        out.faces.push_back(std::move(face));
    }
    return out;
}

inline OffData read_off_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw OffParseError("cannot open: " + path);
    return read_off(is);
}

inline std::vector<std::array<int, 3>> fan_triangulate(const OffData& off) {
    std::vector<std::array<int, 3>> tris;
    for (const auto& f : off.faces)
        for (std::size_t i = 1; i + 1 < f.size(); ++i)
            tris.push_back({f[0], f[static_cast<int>(i)], f[static_cast<int>(i) + 1]});
    return tris;
}

inline Configuration configuration_from_off(const OffData& off, const std::string& label) {
    Configuration c;
    c.points = off.vertices;
    c.label = label;
    return c;
}

}  // namespace polymin
