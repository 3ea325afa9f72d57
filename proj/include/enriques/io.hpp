#ifndef ENRIQUES_IO_HPP
#define ENRIQUES_IO_HPP

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "enriques/cluster.hpp"
#include "enriques/embedded.hpp"
#include "enriques/germ.hpp"
#include "enriques/resgraph.hpp"

namespace enriques {

namespace detail {

inline std::vector<std::vector<std::string>> tokenized_lines(const std::string& text) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        if (!toks.empty()) out.push_back(std::move(toks));
    }
    return out;
}

inline std::pair<std::string, std::string> split_eq(const std::string& tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= tok.size())
        throw parse_error("expected key=value, got '" + tok + "'");
    return {tok.substr(0, eq), tok.substr(eq + 1)};
}

inline long parse_int(const std::string& s) {
    Rat q = parse_rat(s);
    if (!is_integer(q)) throw parse_error("expected an integer, got '" + s + "'");
    return to_long(q);
}

}  // namespace detail

// ---------- resolution graph files ----------
// vertex <id> self=<int> genus=<int>
// edge <id> <id>
// cycle <name> <id>=<rational> ...

struct GraphFile {
    ResolutionGraph graph;
    std::vector<std::pair<std::string, Cycle>> cycles;  // in file order

    const Cycle* find_cycle(const std::string& name) const {
        for (const auto& [n, c] : cycles)
            if (n == name) return &c;
        return nullptr;
    }
};

inline GraphFile parse_graph(const std::string& text) {
    auto lines = detail::tokenized_lines(text);
    std::vector<ResolutionGraph::Vertex> verts;
    for (const auto& toks : lines) {
        if (toks[0] != "vertex") continue;
        if (toks.size() != 4) throw parse_error("vertex line needs: vertex <id> self=<int> genus=<int>");
        ResolutionGraph::Vertex v;
        v.label = toks[1];
        for (size_t i = 2; i < 4; ++i) {
            auto [k, val] = detail::split_eq(toks[i]);
            if (k == "self")
                v.self = static_cast<int>(detail::parse_int(val));
            else if (k == "genus")
                v.genus = static_cast<int>(detail::parse_int(val));
            else
                throw parse_error("unknown vertex attribute '" + k + "'");
        }
        verts.push_back(std::move(v));
    }
    if (verts.empty()) throw parse_error("graph file declares no vertices");
    auto index = [&](const std::string& label) {
        for (size_t i = 0; i < verts.size(); ++i)
            if (verts[i].label == label) return static_cast<int>(i);
        throw parse_error("unknown vertex '" + label + "'");
    };
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<std::string, Cycle>> cycles;
    for (const auto& toks : lines) {
        if (toks[0] == "vertex") continue;
        if (toks[0] == "edge") {
            if (toks.size() != 3) throw parse_error("edge line needs: edge <id> <id>");
            edges.emplace_back(index(toks[1]), index(toks[2]));
        } else if (toks[0] == "cycle") {
            if (toks.size() < 2) throw parse_error("cycle line needs a name");
            Cycle c(verts.size(), Rat(0));
            for (size_t i = 2; i < toks.size(); ++i) {
                auto [lbl, val] = detail::split_eq(toks[i]);
                c[index(lbl)] = parse_rat(val);
            }
            cycles.emplace_back(toks[1], std::move(c));
        } else {
            throw parse_error("unknown graph declaration '" + toks[0] + "'");
        }
    }
    return GraphFile{ResolutionGraph(std::move(verts), std::move(edges)), std::move(cycles)};
}

inline std::string write_graph(const ResolutionGraph& g,
                               const std::vector<std::pair<std::string, Cycle>>& cycles = {}) {
    std::string out;
    for (int i = 0; i < g.size(); ++i) {
        const auto& v = g.vertex(i);
        out += "vertex " + v.label + " self=" + std::to_string(v.self) +
               " genus=" + std::to_string(v.genus) + "\n";
    }
    for (const auto& [a, b] : g.edges())
        out += "edge " + g.vertex(a).label + " " + g.vertex(b).label + "\n";
    for (const auto& [name, c] : cycles) {
        out += "cycle " + name;
        for (int i = 0; i < g.size(); ++i)
            if (c[i] != 0) out += " " + g.vertex(i).label + "=" + rat_str(c[i]);
        out += "\n";
    }
    return out;
}

// ---------- cluster files ----------
// point <id> root mult=<int>
// point <id> parent=<id> [sat=<id>] mult=<int> [coord=<rational>|coord=inf]

struct ClusterFile {
    Cluster cluster;
    std::vector<long> mult;
    std::vector<std::optional<Coord>> coords;

    WeightedCluster as_weighted() const { return WeightedCluster(cluster, mult); }
    GermCluster as_germ() const { return GermCluster(cluster, mult); }
    EmbeddedCluster as_embedded() const { return EmbeddedCluster(cluster, coords); }

    bool fully_embedded() const {
        for (int i = 0; i < cluster.size(); ++i)
            if (i != 0 && !cluster.is_satellite(i) && !coords[i]) return false;
        return true;
    }
};

inline ClusterFile parse_cluster(const std::string& text) {
    auto lines = detail::tokenized_lines(text);
    std::vector<Cluster::Point> pts;
    std::vector<long> mult;
    std::vector<std::optional<Coord>> coords;
    auto index = [&](const std::string& label) {
        for (size_t i = 0; i < pts.size(); ++i)
            if (pts[i].label == label) return static_cast<int>(i);
        throw parse_error("point '" + label + "' used before its declaration");
    };
    for (const auto& toks : lines) {
        if (toks[0] != "point") throw parse_error("unknown cluster declaration '" + toks[0] + "'");
        if (toks.size() < 3) throw parse_error("point line needs: point <id> root|parent=<id> ...");
        Cluster::Point p;
        p.label = toks[1];
        std::optional<long> m;
        std::optional<Coord> co;
        for (size_t i = 2; i < toks.size(); ++i) {
            if (toks[i] == "root") {
                p.parent = -1;
                continue;
            }
            auto [k, val] = detail::split_eq(toks[i]);
            if (k == "parent")
                p.parent = index(val);
            else if (k == "sat")
                p.extra = index(val);
            else if (k == "mult")
                m = detail::parse_int(val);
            else if (k == "coord")
                co = (val == "inf") ? Coord{true, 0} : Coord{false, parse_rat(val)};
            else
                throw parse_error("unknown point attribute '" + k + "'");
        }
        if (!m) throw parse_error("point " + p.label + " is missing mult=");
        pts.push_back(std::move(p));
        mult.push_back(*m);
        coords.push_back(co);
    }
    if (pts.empty()) throw parse_error("cluster file declares no points");
    Cluster c(std::move(pts));
    // reject stray coordinates early, with the file's vocabulary
    for (int i = 0; i < c.size(); ++i)
        if (coords[i] && (c.point(i).parent < 0 || c.is_satellite(i)))
            throw parse_error("point " + c.label(i) + " cannot carry coord= (not a free point)");
    return ClusterFile{std::move(c), std::move(mult), std::move(coords)};
}

inline std::string write_cluster(const Cluster& c, const std::vector<long>& mult,
                                 const std::vector<std::optional<Coord>>& coords = {}) {
    std::string out;
    for (int i = 0; i < c.size(); ++i) {
        const auto& p = c.point(i);
        out += "point " + p.label;
        if (p.parent < 0)
            out += " root";
        else
            out += " parent=" + c.label(p.parent);
        if (p.extra >= 0) out += " sat=" + c.label(p.extra);
        out += " mult=" + std::to_string(mult[i]);
        if (!coords.empty() && coords[i]) out += " coord=" + coord_str(*coords[i]);
        out += "\n";
    }
    return out;
}

// ---------- matchings ----------
// match <id_in_a>=<id_in_b>

inline Matching parse_matching(const std::string& text, const Cluster& a, const Cluster& b) {
    Matching m;
    for (const auto& toks : detail::tokenized_lines(text)) {
        if (toks[0] != "match") throw parse_error("unknown matching declaration '" + toks[0] + "'");
        if (toks.size() != 2) throw parse_error("match line needs: match <id>=<id>");
        auto [la, lb] = detail::split_eq(toks[1]);
        m.emplace_back(a.index_of(la), b.index_of(lb));
    }
    return m;
}

}  // namespace enriques

#endif
