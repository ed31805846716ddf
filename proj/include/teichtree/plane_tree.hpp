#pragma once

// Plane trees: a finite tree with a counterclockwise circular order of
// neighbors at every vertex and a 2-coloring into Vertical / Horizontal
// classes (signs -1 / +1). Parsing of the .ptree text format, validation,
// bipartite adjacency matrices and the homological multitwist pair.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "intmat.hpp"

namespace teichtree {

enum class Orientation { Vertical, Horizontal };

inline int sign_of(Orientation o) { return o == Orientation::Vertical ? -1 : +1; }

struct PlaneTree {
    struct Vertex {
        std::string id;
        Orientation cls;
        std::vector<int> neighbors;  // ccw circular order, rotated so the
                                     // lexicographically smallest id comes first
    };

    std::vector<Vertex> vertices;

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_edges() const { return n_vertices() > 0 ? n_vertices() - 1 : 0; }

    std::vector<int> class_indices(Orientation o) const {
        std::vector<int> out;
        for (int i = 0; i < n_vertices(); ++i)
            if (vertices[static_cast<size_t>(i)].cls == o) out.push_back(i);
        return out;
    }

    int degree(int v) const { return static_cast<int>(vertices[static_cast<size_t>(v)].neighbors.size()); }
};

namespace detail {

inline void rotate_lex_smallest_first(PlaneTree& t) {
    for (auto& v : t.vertices) {
        if (v.neighbors.size() < 2) continue;
        size_t best = 0;
        for (size_t i = 1; i < v.neighbors.size(); ++i)
            if (t.vertices[static_cast<size_t>(v.neighbors[i])].id <
                t.vertices[static_cast<size_t>(v.neighbors[best])].id)
                best = i;
        std::rotate(v.neighbors.begin(), v.neighbors.begin() + static_cast<long>(best), v.neighbors.end());
    }
}

inline void validate_plane_tree(const PlaneTree& t, const std::vector<int>* lines = nullptr) {
    auto line_of = [&](int v) { return lines ? (*lines)[static_cast<size_t>(v)] : 0; };
    const int n = t.n_vertices();
    if (n == 0) throw ParseError("no vertices");

    // mutual consistency and no duplicate neighbors
    for (int v = 0; v < n; ++v) {
        const auto& vtx = t.vertices[static_cast<size_t>(v)];
        std::vector<int> seen;
        for (int w : vtx.neighbors) {
            if (w == v) throw ParseError("vertex '" + vtx.id + "' lists itself as a neighbor", line_of(v));
            for (int s : seen)
                if (s == w)
                    throw ParseError("vertex '" + vtx.id + "' lists neighbor '" +
                                         t.vertices[static_cast<size_t>(w)].id + "' twice",
                                     line_of(v));
            seen.push_back(w);
            const auto& wn = t.vertices[static_cast<size_t>(w)].neighbors;
            bool back = false;
            for (int u : wn)
                if (u == v) back = true;
            if (!back)
                throw ParseError("inconsistent neighbor lists: '" + vtx.id + "' lists '" +
                                     t.vertices[static_cast<size_t>(w)].id + "' but not conversely",
                                 line_of(v));
        }
    }

    // proper 2-coloring
    for (int v = 0; v < n; ++v)
        for (int w : t.vertices[static_cast<size_t>(v)].neighbors)
            if (t.vertices[static_cast<size_t>(v)].cls == t.vertices[static_cast<size_t>(w)].cls)
                throw ParseError("edge {" + t.vertices[static_cast<size_t>(v)].id + ", " +
                                     t.vertices[static_cast<size_t>(w)].id +
                                     "} joins two vertices of the same orientation class",
                                 line_of(v));

    // tree: edge count and connectivity
    long long deg_sum = 0;
    for (int v = 0; v < n; ++v) deg_sum += t.degree(v);
    if (deg_sum % 2 != 0) throw ParseError("internal: odd degree sum");
    long long edges = deg_sum / 2;
    if (edges != n - 1) throw ParseError("not a tree: " + std::to_string(n) + " vertices but " +
                                         std::to_string(edges) + " edges (cycle present)");
    std::vector<char> vis(static_cast<size_t>(n), 0);
    std::vector<int> stack{0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : t.vertices[static_cast<size_t>(v)].neighbors)
            if (!vis[static_cast<size_t>(w)]) {
                vis[static_cast<size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
    }
    if (count != n) throw ParseError("not a tree: graph is disconnected");
}

}  // namespace detail

// Build and validate a plane tree from ids, classes and ccw neighbor-id lists.
inline PlaneTree make_plane_tree(const std::vector<std::string>& ids,
                                 const std::vector<Orientation>& classes,
                                 const std::vector<std::vector<std::string>>& neighbor_ids) {
    if (ids.size() != classes.size() || ids.size() != neighbor_ids.size())
        throw ParseError("mismatched vertex data");
    PlaneTree t;
    std::map<std::string, int> index;
    for (size_t i = 0; i < ids.size(); ++i) {
        if (index.count(ids[i])) throw ParseError("duplicate vertex id '" + ids[i] + "'");
        index[ids[i]] = static_cast<int>(i);
        t.vertices.push_back({ids[i], classes[i], {}});
    }
    for (size_t i = 0; i < ids.size(); ++i)
        for (const auto& nid : neighbor_ids[i]) {
            auto it = index.find(nid);
            if (it == index.end())
                throw ParseError("vertex '" + ids[i] + "' lists unknown neighbor '" + nid + "'");
            t.vertices[i].neighbors.push_back(it->second);
        }
    detail::rotate_lex_smallest_first(t);
    detail::validate_plane_tree(t);
    return t;
}

// Parse the .ptree format: '#' comments; one vertex per line,
//   <id> <V|H> : <id1> <id2> ... <idk>
// with the neighbor list in counterclockwise circular order.
inline PlaneTree parse_plane_tree(const std::string& text) {
    PlaneTree t;
    std::vector<int> line_of_vertex;
    std::map<std::string, int> index;
    struct Pending {
        std::vector<std::string> ids;
        int line;
    };
    std::vector<Pending> pend;

    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = line;
        size_t h = s.find('#');
        if (h != std::string::npos) s.resize(h);
        std::istringstream ls(s);
        std::string id, cls, colon;
        if (!(ls >> id)) continue;  // blank
        if (!(ls >> cls)) throw ParseError("expected '<id> <V|H> : <neighbors...>'", lineno);
        Orientation o;
        if (cls == "V")
            o = Orientation::Vertical;
        else if (cls == "H")
            o = Orientation::Horizontal;
        else
            throw ParseError("orientation class must be 'V' or 'H', got '" + cls + "'", lineno);
        if (!(ls >> colon) || colon != ":") throw ParseError("expected ':' after the class", lineno);
        if (id.find(':') != std::string::npos) throw ParseError("vertex id may not contain ':'", lineno);
        if (index.count(id)) throw ParseError("duplicate vertex id '" + id + "'", lineno);
        index[id] = t.n_vertices();
        t.vertices.push_back({id, o, {}});
        line_of_vertex.push_back(lineno);
        Pending p;
        p.line = lineno;
        std::string nid;
        while (ls >> nid) {
            if (nid.find(':') != std::string::npos) throw ParseError("neighbor id may not contain ':'", lineno);
            p.ids.push_back(nid);
        }
        pend.push_back(std::move(p));
    }
    if (t.n_vertices() == 0) throw ParseError("no vertices in input");

    for (size_t v = 0; v < pend.size(); ++v)
        for (const auto& nid : pend[v].ids) {
            auto it = index.find(nid);
            if (it == index.end())
                throw ParseError("unknown neighbor id '" + nid + "'", pend[v].line);
            t.vertices[v].neighbors.push_back(it->second);
        }

    detail::rotate_lex_smallest_first(t);
    detail::validate_plane_tree(t, &line_of_vertex);
    return t;
}

// Vertex order underlying all bipartite matrices: Vertical vertices first
// (input order), then Horizontal vertices (input order).
inline std::vector<int> bipartite_order(const PlaneTree& t) {
    std::vector<int> order = t.class_indices(Orientation::Vertical);
    for (int h : t.class_indices(Orientation::Horizontal)) order.push_back(h);
    return order;
}

// Symmetric 0/1 adjacency matrix in bipartite block form [[0,X],[X^T,0]].
inline IntMatrix adjacency_matrix(const PlaneTree& t) {
    std::vector<int> order = bipartite_order(t);
    std::vector<int> rank(static_cast<size_t>(t.n_vertices()));
    for (int i = 0; i < t.n_vertices(); ++i) rank[static_cast<size_t>(order[static_cast<size_t>(i)])] = i;
    IntMatrix A(t.n_vertices(), t.n_vertices());
    for (int v = 0; v < t.n_vertices(); ++v)
        for (int w : t.vertices[static_cast<size_t>(v)].neighbors)
            A.at(rank[static_cast<size_t>(v)], rank[static_cast<size_t>(w)]) = 1;
    return A;
}

// The pair T_a = [[I,X],[0,I]], T_b = [[I,0],[X^T,I]] acting on
// H_1(S;Z) = Z^{|V|} in the bipartite vertex order.
inline std::pair<IntMatrix, IntMatrix> homological_multitwists(const PlaneTree& t) {
    IntMatrix A = adjacency_matrix(t);
    const int n = t.n_vertices();
    const int nv = static_cast<int>(t.class_indices(Orientation::Vertical).size());
    IntMatrix Ta = IntMatrix::identity(n), Tb = IntMatrix::identity(n);
    for (int i = 0; i < nv; ++i)
        for (int j = nv; j < n; ++j) {
            Ta.at(i, j) = A.at(i, j);
            Tb.at(j, i) = A.at(j, i);
        }
    return {Ta, Tb};
}

}  // namespace teichtree
