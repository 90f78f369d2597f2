#include "mapfpp/pmap_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "mapfpp/errors.hpp"

namespace mapfpp {

namespace {

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool next_line(std::istream& is, std::string& line, int& lineno) {
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) return false;
        if (line[0] == '#') continue;
        return true;
    }
    return false;
}

[[noreturn]] void fail(int lineno, const std::string& msg) {
    throw FormatError("PMAP line " + std::to_string(lineno) + ": " + msg);
}

std::int64_t expect_keyed(const std::string& line, const std::string& key, int lineno) {
    std::istringstream ss(line);
    std::string k;
    std::int64_t v;
    if (!(ss >> k >> v) || k != key) fail(lineno, "expected '" + key + " <n>'");
    return v;
}

}  // namespace

void write_pmap(std::ostream& os, const RotationMap& m, const std::vector<double>* weights,
                const std::vector<std::int64_t>* labels) {
    os << "PMAP 1\n";
    os << "vertices " << m.vertex_count() << '\n';
    os << "halfedges " << m.half_edge_count() << '\n';
    os << "root " << m.root() << '\n';
    os << "marked ";
    if (m.marked())
        os << *m.marked();
    else
        os << '-';
    os << '\n';
    for (int v = 0; v < m.vertex_count(); ++v) {
        os << "v " << v << ':';
        for (int h : m.rotation(v)) os << ' ' << h;
        os << '\n';
    }
    if (weights) {
        if (static_cast<int>(weights->size()) != m.edge_count())
            throw std::invalid_argument("weights section needs one entry per edge");
        os << "weights\n";
        for (int e = 0; e < m.edge_count(); ++e) os << e << ' ' << format_real((*weights)[e]) << '\n';
    }
    if (labels) {
        if (static_cast<int>(labels->size()) != m.vertex_count())
            throw std::invalid_argument("labels section needs one entry per vertex");
        os << "labels\n";
        for (int v = 0; v < m.vertex_count(); ++v) os << v << ' ' << (*labels)[v] << '\n';
    }
}

std::string to_pmap(const RotationMap& m, const std::vector<double>* weights,
                    const std::vector<std::int64_t>* labels) {
    std::ostringstream os;
    write_pmap(os, m, weights, labels);
    return os.str();
}

PmapDocument read_pmap(std::istream& is) {
    std::string line;
    int lineno = 0;
    if (!next_line(is, line, lineno) || line != "PMAP 1") fail(lineno, "missing 'PMAP 1' header");
    if (!next_line(is, line, lineno)) fail(lineno, "truncated header");
    const auto V = expect_keyed(line, "vertices", lineno);
    if (!next_line(is, line, lineno)) fail(lineno, "truncated header");
    const auto H = expect_keyed(line, "halfedges", lineno);
    if (!next_line(is, line, lineno)) fail(lineno, "truncated header");
    const auto root = expect_keyed(line, "root", lineno);
    if (!next_line(is, line, lineno)) fail(lineno, "truncated header");
    std::optional<int> marked;
    {
        std::istringstream ss(line);
        std::string k, v;
        if (!(ss >> k >> v) || k != "marked") fail(lineno, "expected 'marked <v|->'");
        if (v != "-") {
            try {
                marked = std::stoi(v);
            } catch (const std::exception&) {
                fail(lineno, "bad marked vertex");
            }
        }
    }
    if (V < 1 || H < 0 || V > (1 << 30) || H > (1 << 30)) fail(lineno, "bad sizes");

    std::vector<std::vector<int>> rot(V);
    for (std::int64_t v = 0; v < V; ++v) {
        if (!next_line(is, line, lineno)) fail(lineno, "missing vertex line");
        std::istringstream ss(line);
        std::string tag, id;
        if (!(ss >> tag >> id) || tag != "v" || id.empty() || id.back() != ':') fail(lineno, "expected 'v <id>:'");
        if (std::stoll(id.substr(0, id.size() - 1)) != v) fail(lineno, "vertex lines out of order");
        int h;
        while (ss >> h) rot[v].push_back(h);
        if (!ss.eof()) fail(lineno, "bad half-edge id");
    }

    PmapDocument doc;
    doc.map = RotationMap::from_rotations(rot, static_cast<int>(root), marked);
    if (doc.map.half_edge_count() != H) fail(lineno, "halfedges count mismatch");

    while (next_line(is, line, lineno)) {
        if (line == "weights") {
            std::vector<double> w(doc.map.edge_count());
            for (int e = 0; e < doc.map.edge_count(); ++e) {
                if (!next_line(is, line, lineno)) fail(lineno, "truncated weights");
                std::istringstream ss(line);
                int id;
                double x;
                if (!(ss >> id >> x) || id != e) fail(lineno, "expected '<edge> <weight>'");
                w[e] = x;
            }
            doc.weights = std::move(w);
        } else if (line == "labels") {
            std::vector<std::int64_t> z(doc.map.vertex_count());
            for (int v = 0; v < doc.map.vertex_count(); ++v) {
                if (!next_line(is, line, lineno)) fail(lineno, "truncated labels");
                std::istringstream ss(line);
                int id;
                std::int64_t x;
                if (!(ss >> id >> x) || id != v) fail(lineno, "expected '<vertex> <label>'");
                z[v] = x;
            }
            doc.labels = std::move(z);
        } else {
            fail(lineno, "unknown section '" + line + "'");
        }
    }
    return doc;
}

PmapDocument parse_pmap(const std::string& text) {
    std::istringstream is(text);
    return read_pmap(is);
}

}  // namespace mapfpp
