#pragma once

// Exhaustive enumeration of plane trees (trees with a cyclic neighbor order
// and the two-class coloring) up to a vertex bound, used by the property and
// acceptance suites. Rooted ordered trees are generated and deduplicated to
// distinct plane trees via a canonical encoding, so each plane tree is
// visited exactly once.

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "teichtree/plane_tree.hpp"

namespace teichtree::testing {

// All rooted ordered trees on n vertices (children lists in preorder).
inline void ordered_trees(int n, const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    std::vector<std::vector<int>> children(static_cast<size_t>(n));
    std::function<void(int, std::vector<int>&)> rec = [&](int next, std::vector<int>& right_path) {
        if (next == n) {
            emit(children);
            return;
        }
        std::vector<int> saved = right_path;
        for (size_t k = 0; k < saved.size(); ++k) {
            int parent = saved[k];
            children[static_cast<size_t>(parent)].push_back(next);
            std::vector<int> np(saved.begin(), saved.begin() + static_cast<long>(k) + 1);
            np.push_back(next);
            rec(next + 1, np);
            children[static_cast<size_t>(parent)].pop_back();
        }
    };
    std::vector<int> rp{0};
    rec(1, rp);
}

inline PlaneTree tree_from_children(const std::vector<std::vector<int>>& children, Orientation root_class) {
    int n = static_cast<int>(children.size());
    std::vector<std::string> ids(static_cast<size_t>(n));
    std::vector<Orientation> cls(static_cast<size_t>(n));
    std::vector<std::vector<std::string>> nb(static_cast<size_t>(n));
    std::vector<int> depth(static_cast<size_t>(n), 0), parent(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v)
        for (int c : children[static_cast<size_t>(v)]) {
            parent[static_cast<size_t>(c)] = v;
            depth[static_cast<size_t>(c)] = depth[static_cast<size_t>(v)] + 1;
        }
    for (int v = 0; v < n; ++v) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "v%02d", v);
        ids[static_cast<size_t>(v)] = buf;
        bool even = depth[static_cast<size_t>(v)] % 2 == 0;
        cls[static_cast<size_t>(v)] =
            (root_class == Orientation::Vertical) == even ? Orientation::Vertical : Orientation::Horizontal;
    }
    for (int v = 0; v < n; ++v) {
        if (parent[static_cast<size_t>(v)] >= 0)
            nb[static_cast<size_t>(v)].push_back(ids[static_cast<size_t>(parent[static_cast<size_t>(v)])]);
        for (int c : children[static_cast<size_t>(v)]) nb[static_cast<size_t>(v)].push_back(ids[static_cast<size_t>(c)]);
    }
    return make_plane_tree(ids, cls, nb);
}

namespace detail_enum {

// Preorder paren encoding with the children of a non-root vertex read from
// its cyclic order starting just after the parent. Minimizing over vertical
// roots and root rotations gives a canonical form for colored plane trees.
inline void encode_from(const PlaneTree& t, int v, int parent, std::string& out) {
    const auto& nb = t.vertices[static_cast<size_t>(v)].neighbors;
    out += '(';
    if (!nb.empty()) {
        size_t pi = 0;
        while (pi < nb.size() && nb[pi] != parent) ++pi;
        for (size_t step = 1; step <= nb.size(); ++step) {
            int w = nb[(pi + step) % nb.size()];
            if (w == parent) continue;
            encode_from(t, w, v, out);
        }
    }
    out += ')';
}

inline std::string canonical_form(const PlaneTree& t) {
    std::string best;
    for (int r = 0; r < t.n_vertices(); ++r) {
        if (t.vertices[static_cast<size_t>(r)].cls != Orientation::Vertical) continue;
        const auto& nb = t.vertices[static_cast<size_t>(r)].neighbors;
        size_t rots = nb.empty() ? 1 : nb.size();
        for (size_t rot = 0; rot < rots; ++rot) {
            std::string s;
            s += '[';
            for (size_t k = 0; k < nb.size(); ++k) encode_from(t, nb[(rot + k) % nb.size()], r, s);
            s += ']';
            if (best.empty() || s < best) best = s;
        }
    }
    if (best.empty()) {  // no vertical vertex: the single horizontal vertex
        best = "[H]";
    }
    return best;
}

}  // namespace detail_enum

// Every distinct plane tree with min_n..max_n vertices, both colorings
// included (vertical-rooted generation covers every tree containing a
// Vertical vertex; the lone all-Horizontal tree is the single vertex).
inline void for_each_plane_tree(int min_n, int max_n, const std::function<void(const PlaneTree&)>& fn) {
    for (int n = min_n; n <= max_n; ++n) {
        std::set<std::string> seen;
        ordered_trees(n, [&](const std::vector<std::vector<int>>& ch) {
            PlaneTree t = tree_from_children(ch, Orientation::Vertical);
            std::string canon = detail_enum::canonical_form(t);
            if (seen.insert(std::move(canon)).second) fn(t);
        });
        if (n == 1 && min_n <= 1) fn(tree_from_children({{}}, Orientation::Horizontal));
    }
}

}  // namespace teichtree::testing
