#pragma once

// From a plane tree to an arrangement of axis-aligned segments and the
// train track obtained by identifying the two ends of every segment.
//
// Conventions frozen here:
//  - a Horizontal vertex's ccw neighbor list maps to crossings left-to-right,
//    a Vertical vertex's ccw list to crossings bottom-to-top;
//  - edges are oriented downwards (vertical) and to the left (horizontal);
//  - the wrap edge of a segment is the one passing through the identified
//    endpoints, i.e. from the first crossing to the last;
//  - edge indices are segment-major in tree input order, wrap edge first,
//    then following the cycle;
//  - crossings are indexed over Horizontal vertices in input order,
//    left-to-right within each segment.

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "plane_tree.hpp"

namespace teichtree {

struct Arrangement {
    struct Crossing {
        int v_vertical;    // tree vertex of the vertical segment
        int v_horizontal;  // tree vertex of the horizontal segment
        int x, y;          // plane coordinates
    };

    std::vector<Crossing> crossings;
    std::vector<int> line_coord;                // per tree vertex: x (Vertical) or y (Horizontal)
    std::vector<std::vector<int>> crossings_on; // per tree vertex: crossing ids, bottom-to-top / left-to-right

    int n_crossings() const { return static_cast<int>(crossings.size()); }

    // The segment crossing `c` perpendicular to the segment `seg`.
    int other_segment(int c, int seg) const {
        const Crossing& cr = crossings[static_cast<size_t>(c)];
        return cr.v_vertical == seg ? cr.v_horizontal : cr.v_vertical;
    }
};

namespace detail {

// Coordinates for one class: a topological order of the chains imposed by the
// other class's neighbor lists. Chains pairwise share at most one element on
// a tree, so the union is acyclic; Kahn's algorithm with smallest-input-index
// tie-breaking keeps the result deterministic.
inline std::vector<int> chain_coordinates(const PlaneTree& t, Orientation target) {
    const int n = t.n_vertices();
    std::vector<std::vector<int>> succ(static_cast<size_t>(n));
    std::vector<int> indeg(static_cast<size_t>(n), 0);
    std::vector<char> is_target(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) is_target[static_cast<size_t>(v)] = t.vertices[static_cast<size_t>(v)].cls == target;
    for (int v = 0; v < n; ++v) {
        if (is_target[static_cast<size_t>(v)]) continue;
        const auto& nb = t.vertices[static_cast<size_t>(v)].neighbors;
        for (size_t i = 0; i + 1 < nb.size(); ++i) {
            succ[static_cast<size_t>(nb[i])].push_back(nb[i + 1]);
            ++indeg[static_cast<size_t>(nb[i + 1])];
        }
    }
    std::vector<int> coord(static_cast<size_t>(n), 0);
    std::vector<int> ready;
    for (int v = 0; v < n; ++v)
        if (is_target[static_cast<size_t>(v)] && indeg[static_cast<size_t>(v)] == 0) ready.push_back(v);
    int next = 0;
    while (!ready.empty()) {
        auto it = std::min_element(ready.begin(), ready.end());
        int v = *it;
        ready.erase(it);
        coord[static_cast<size_t>(v)] = next++;
        for (int w : succ[static_cast<size_t>(v)])
            if (--indeg[static_cast<size_t>(w)] == 0) ready.push_back(w);
    }
    int placed = next;
    int expected = 0;
    for (int v = 0; v < n; ++v) expected += is_target[static_cast<size_t>(v)];
    if (placed != expected) throw MathError("arrangement layout: cyclic order constraints");
    return coord;
}

}  // namespace detail

// Realize the plane tree as segments with integer coordinates. Deterministic;
// per-segment crossing order realizes the circular orders under the frozen
// ccw -> left-to-right / bottom-to-top convention.
inline Arrangement embed_arrangement(const PlaneTree& t) {
    Arrangement arr;
    const int n = t.n_vertices();
    std::vector<int> xc = detail::chain_coordinates(t, Orientation::Vertical);
    std::vector<int> yc = detail::chain_coordinates(t, Orientation::Horizontal);
    arr.line_coord.assign(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v)
        arr.line_coord[static_cast<size_t>(v)] =
            t.vertices[static_cast<size_t>(v)].cls == Orientation::Vertical ? xc[static_cast<size_t>(v)] : yc[static_cast<size_t>(v)];

    // Crossing ids: horizontal vertices in input order, left-to-right.
    std::vector<std::vector<int>> cross_of_pair(static_cast<size_t>(n));
    arr.crossings_on.assign(static_cast<size_t>(n), {});
    for (int h : t.class_indices(Orientation::Horizontal)) {
        for (int v : t.vertices[static_cast<size_t>(h)].neighbors) {
            int id = arr.n_crossings();
            arr.crossings.push_back({v, h, arr.line_coord[static_cast<size_t>(v)], arr.line_coord[static_cast<size_t>(h)]});
            arr.crossings_on[static_cast<size_t>(h)].push_back(id);
            cross_of_pair[static_cast<size_t>(v)].push_back(id);
        }
    }
    // Vertical segments: order their crossings bottom-to-top = ccw neighbor order.
    for (int v = 0; v < n; ++v) {
        if (t.vertices[static_cast<size_t>(v)].cls != Orientation::Vertical) continue;
        for (int h : t.vertices[static_cast<size_t>(v)].neighbors) {
            for (int id : cross_of_pair[static_cast<size_t>(v)])
                if (arr.crossings[static_cast<size_t>(id)].v_horizontal == h) {
                    arr.crossings_on[static_cast<size_t>(v)].push_back(id);
                    break;
                }
        }
    }

    // Per-segment coordinate order must match list order.
    for (int v = 0; v < n; ++v) {
        const auto& lst = arr.crossings_on[static_cast<size_t>(v)];
        for (size_t i = 0; i + 1 < lst.size(); ++i) {
            const auto& c0 = arr.crossings[static_cast<size_t>(lst[i])];
            const auto& c1 = arr.crossings[static_cast<size_t>(lst[i + 1])];
            bool ok = t.vertices[static_cast<size_t>(v)].cls == Orientation::Vertical ? c0.y < c1.y : c0.x < c1.x;
            if (!ok) throw MathError("arrangement layout: coordinate order violation");
        }
    }
    return arr;
}

struct TrainTrack {
    struct Edge {
        int segment;   // tree vertex whose segment carries the edge (the d map)
        int s, t;      // start / end crossing under the down/left orientation
        bool wrap;     // passes the identified segment endpoints
        bool vertical; // the p map
    };

    int n_vertices = 0;  // crossings
    std::vector<Edge> edges;

    int n_edges() const { return static_cast<int>(edges.size()); }
};

// Identify the two ends of every segment; each segment of degree d becomes a
// directed cycle of d edges through its crossings.
inline TrainTrack build_train_track(const PlaneTree& t, const Arrangement& arr) {
    TrainTrack tt;
    tt.n_vertices = arr.n_crossings();
    for (int v = 0; v < t.n_vertices(); ++v) {
        const auto& lst = arr.crossings_on[static_cast<size_t>(v)];
        if (lst.empty()) continue;
        bool vert = t.vertices[static_cast<size_t>(v)].cls == Orientation::Vertical;
        int d = static_cast<int>(lst.size());
        // wrap edge: first crossing through the identification to the last
        tt.edges.push_back({v, lst[0], lst[static_cast<size_t>(d - 1)], true, vert});
        for (int i = d - 1; i >= 1; --i)
            tt.edges.push_back({v, lst[static_cast<size_t>(i)], lst[static_cast<size_t>(i - 1)], false, vert});
    }
    // sanity: 2|E| edges, non-wrap subgraph a spanning tree
    if (tt.n_edges() != 2 * t.n_edges()) throw MathError("train track: edge count violation");
    if (tt.n_vertices > 0) {
        std::vector<std::vector<int>> adj(static_cast<size_t>(tt.n_vertices));
        int nonwrap = 0;
        for (const auto& e : tt.edges)
            if (!e.wrap) {
                adj[static_cast<size_t>(e.s)].push_back(e.t);
                adj[static_cast<size_t>(e.t)].push_back(e.s);
                ++nonwrap;
            }
        if (nonwrap != tt.n_vertices - 1) throw MathError("train track: spanning tree count violation");
        std::vector<char> vis(static_cast<size_t>(tt.n_vertices), 0);
        std::vector<int> stack{0};
        vis[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[static_cast<size_t>(v)])
                if (!vis[static_cast<size_t>(w)]) {
                    vis[static_cast<size_t>(w)] = 1;
                    ++cnt;
                    stack.push_back(w);
                }
        }
        if (cnt != tt.n_vertices) throw MathError("train track: non-wrap subgraph disconnected");
    }
    return tt;
}

// The eight structure maps. s, t, d, p live on TrainTrack::Edge; the rest are
// derived from the arrangement geometry.
struct StructureMaps {
    const PlaneTree* tree;
    const Arrangement* arr;
    const TrainTrack* tt;

    // l: tree vertex -> uppermost/rightmost crossing of its segment.
    int l(int seg) const {
        const auto& lst = arr->crossings_on[static_cast<size_t>(seg)];
        if (lst.empty()) throw MathError("l of a segment without crossings");
        return lst.back();
    }

    // g: edge and crossing on one line, i.e. the crossing lies on the edge's segment.
    bool g(int e, int v) const {
        const auto& ed = tt->edges[static_cast<size_t>(e)];
        const auto& cr = arr->crossings[static_cast<size_t>(v)];
        return cr.v_vertical == ed.segment || cr.v_horizontal == ed.segment;
    }

    // a: the segment perpendicular to e at its terminal (horizontal e) or
    // starting (vertical e) vertex.
    int a(int e) const {
        const auto& ed = tt->edges[static_cast<size_t>(e)];
        return arr->other_segment(ed.vertical ? ed.s : ed.t, ed.segment);
    }

    // c: edge contained in the axis-aligned rectangle spanned by two crossings.
    // Wrap edges leave every such rectangle through the identification.
    bool c(int e, int v, int w) const {
        const auto& ed = tt->edges[static_cast<size_t>(e)];
        if (ed.wrap) return false;
        const auto& cs = arr->crossings[static_cast<size_t>(ed.s)];
        const auto& ct = arr->crossings[static_cast<size_t>(ed.t)];
        const auto& cv = arr->crossings[static_cast<size_t>(v)];
        const auto& cw = arr->crossings[static_cast<size_t>(w)];
        int rx0 = std::min(cv.x, cw.x), rx1 = std::max(cv.x, cw.x);
        int ry0 = std::min(cv.y, cw.y), ry1 = std::max(cv.y, cw.y);
        int ex0 = std::min(cs.x, ct.x), ex1 = std::max(cs.x, ct.x);
        int ey0 = std::min(cs.y, ct.y), ey1 = std::max(cs.y, ct.y);
        return rx0 <= ex0 && ex1 <= rx1 && ry0 <= ey0 && ey1 <= ry1;
    }
};

inline StructureMaps structure_maps(const PlaneTree& t, const Arrangement& arr, const TrainTrack& tt) {
    return StructureMaps{&t, &arr, &tt};
}

// Oriented simple paths from a basepoint to every crossing inside the
// non-wrap spanning tree. or = +1 when an edge is traversed along its
// canonical down/left orientation.
struct PathTable {
    struct Step {
        int edge;
        int orientation;  // +1 or -1
    };
    int basepoint = 0;
    std::vector<std::vector<Step>> path;  // per crossing
};

inline PathTable spanning_paths(const TrainTrack& tt, int basepoint) {
    if (basepoint < 0 || basepoint >= tt.n_vertices) throw MathError("basepoint out of range");
    PathTable pt;
    pt.basepoint = basepoint;
    pt.path.assign(static_cast<size_t>(tt.n_vertices), {});
    struct Hop {
        int to, edge, orient;
    };
    std::vector<std::vector<Hop>> adj(static_cast<size_t>(tt.n_vertices));
    for (int e = 0; e < tt.n_edges(); ++e) {
        const auto& ed = tt.edges[static_cast<size_t>(e)];
        if (ed.wrap) continue;
        adj[static_cast<size_t>(ed.s)].push_back({ed.t, e, +1});
        adj[static_cast<size_t>(ed.t)].push_back({ed.s, e, -1});
    }
    for (auto& v : adj)
        std::sort(v.begin(), v.end(), [](const Hop& a, const Hop& b) { return a.edge < b.edge; });

    std::vector<char> vis(static_cast<size_t>(tt.n_vertices), 0);
    std::vector<int> queue{basepoint};
    vis[static_cast<size_t>(basepoint)] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int v = queue[qi];
        for (const auto& hop : adj[static_cast<size_t>(v)]) {
            if (vis[static_cast<size_t>(hop.to)]) continue;
            vis[static_cast<size_t>(hop.to)] = 1;
            pt.path[static_cast<size_t>(hop.to)] = pt.path[static_cast<size_t>(v)];
            pt.path[static_cast<size_t>(hop.to)].push_back({hop.edge, hop.orient});
            queue.push_back(hop.to);
        }
    }
    for (int v = 0; v < tt.n_vertices; ++v)
        if (!vis[static_cast<size_t>(v)]) throw MathError("spanning paths: unreachable crossing");
    return pt;
}

// Text grid of the arrangement (rows top to bottom by y, columns by x).
inline std::string arrangement_grid(const PlaneTree& t, const Arrangement& arr) {
    if (arr.n_crossings() == 0) return "(no crossings)\n";
    int maxx = 0, maxy = 0;
    for (const auto& c : arr.crossings) {
        maxx = std::max(maxx, c.x);
        maxy = std::max(maxy, c.y);
    }
    const int W = 2 * maxx + 1, H = 2 * maxy + 1;
    std::vector<std::string> grid(static_cast<size_t>(H), std::string(static_cast<size_t>(W), ' '));
    auto put = [&](int gx, int gy, char ch) { grid[static_cast<size_t>(H - 1 - gy)][static_cast<size_t>(gx)] = ch; };
    for (int v = 0; v < t.n_vertices(); ++v) {
        const auto& lst = arr.crossings_on[static_cast<size_t>(v)];
        if (lst.empty()) continue;
        const auto& first = arr.crossings[static_cast<size_t>(lst.front())];
        const auto& last = arr.crossings[static_cast<size_t>(lst.back())];
        if (t.vertices[static_cast<size_t>(v)].cls == Orientation::Vertical) {
            for (int gy = 2 * first.y; gy <= 2 * last.y; ++gy) put(2 * first.x, gy, '|');
        } else {
            for (int gx = 2 * first.x; gx <= 2 * last.x; ++gx) put(gx, 2 * first.y, '-');
        }
    }
    for (const auto& c : arr.crossings) put(2 * c.x, 2 * c.y, '+');
    std::string out;
    for (const auto& row : grid) {
        out += row;
        out += '\n';
    }
    return out;
}

}  // namespace teichtree
