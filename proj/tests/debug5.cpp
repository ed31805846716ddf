// Probe: exhaustive enumeration sweep (the criterion-5/6 workload), timing.
#include <chrono>
#include <functional>
#include <iostream>

#include "teichtree/teich.hpp"

using namespace teichtree;

// All rooted ordered trees on n vertices, as child-count sequences in preorder.
static void ordered_trees(int n, const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    // children[v] lists the children of v; vertices are preorder-numbered
    std::vector<std::vector<int>> children(static_cast<size_t>(n));
    // recursive generation: place vertices 1..n-1 as children of the rightmost path
    std::function<void(int, std::vector<int>&)> rec = [&](int next, std::vector<int>& right_path) {
        if (next == n) {
            emit(children);
            return;
        }
        // attach `next` as a child of any vertex on the current rightmost path
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

static PlaneTree tree_from(const std::vector<std::vector<int>>& children, Orientation root_class) {
    int n = static_cast<int>(children.size());
    std::vector<std::string> ids(static_cast<size_t>(n));
    std::vector<Orientation> cls(static_cast<size_t>(n));
    std::vector<std::vector<std::string>> nb(static_cast<size_t>(n));
    std::vector<int> depth(static_cast<size_t>(n), 0);
    std::vector<int> parent(static_cast<size_t>(n), -1);
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

int main(int argc, char** argv) {
    int maxn = argc > 1 ? std::atoi(argv[1]) : 10;
    auto t0 = std::chrono::steady_clock::now();
    long total = 0, rank0 = 0, div_fail_r0 = 0, div_ok = 0, spec_fail = 0, deg_fail = 0, slow_checked = 0,
         slow_mismatch = 0, overflow_fallbacks = 0;
    for (int n = 1; n <= maxn; ++n) {
        ordered_trees(n, [&](const std::vector<std::vector<int>>& ch) {
            for (Orientation root : {Orientation::Vertical, Orientation::Horizontal}) {
                if (n == 1 && root == Orientation::Horizontal) continue;
                PlaneTree t = tree_from(ch, root);
                ++total;
                TeichResult res;
                try {
                    res = teichmuller_polynomial(t);
                } catch (const NonExactDivision&) {
                    ++div_fail_r0;
                    return;
                } catch (const OverflowError& e) {
                    std::cout << "OVERFLOW n=" << n << ": " << e.what() << std::endl;
                    ++overflow_fallbacks;
                    return;
                } catch (const std::exception& e) {
                    std::cout << "EXC in pipeline n=" << n << ": " << e.what() << std::endl;
                    throw;
                }
                ++div_ok;
                if (res.kernel_rank == 0) ++rank0;
                // x = 1 checks: P_E(1) == TaTb and numerator(1,u) == char(TaTb)
                Arrangement arr = embed_arrangement(t);
                TrainTrack tt = build_train_track(t, arr);
                auto [Ta, Tb] = geometric_multitwists(t, arr, tt);
                IntMatrix P1 = Ta * Tb;
                std::vector<int> ones(static_cast<size_t>(res.kernel_rank), 0);
                std::vector<int> alpha(static_cast<size_t>(res.kernel_rank + 1), 0);
                alpha.back() = 1;
                UniPoly lhs = specialize(res.numerator, alpha);
                LaurentPoly cp = char_poly(P1);
                UniPoly rhs;
                for (const auto& term : cp.terms()) {
                    (void)term;
                }
                std::vector<int> a1{1};
                try {
                    rhs = specialize(cp, a1);
                    if (!(lhs == rhs)) ++spec_fail;
                } catch (const std::exception& e) {
                    std::cout << "EXC in x=1 check n=" << n << ": " << e.what() << std::endl;
                    throw;
                }
                int expect = t.n_edges() + (res.euler_corrected ? 1 : 0);
                if (!res.theta.is_zero() && res.theta.degree_in(res.kernel_rank) != expect) ++deg_fail;
                // cross-check fast vs plain determinant on small trees
                if (n <= 7) {
                    ++slow_checked;
                    TeichResult slow = teichmuller_polynomial(t, std::nullopt, false);
                    if (!(slow.theta == res.theta)) ++slow_mismatch;
                }
            }
        });
        auto t1 = std::chrono::steady_clock::now();
        std::cout << "n=" << n << " cumulative total=" << total
                  << " time=" << std::chrono::duration<double>(t1 - t0).count() << "s" << std::endl;
    }
    std::cout << "total=" << total << " rank0=" << rank0 << " div_fail_r0=" << div_fail_r0 << " div_ok=" << div_ok
              << " spec_fail=" << spec_fail << " deg_fail=" << deg_fail << " slow_mismatch=" << slow_mismatch << "/"
              << slow_checked << " overflow=" << overflow_fallbacks << std::endl;
    return 0;
}
