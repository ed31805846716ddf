#include <iostream>

#include "teichtree/teich.hpp"

using namespace teichtree;

int main() {
    std::vector<std::string> ids = {"a1", "b1", "a2", "b2", "a3"};
    std::vector<Orientation> cls = {Orientation::Vertical, Orientation::Horizontal, Orientation::Vertical,
                                    Orientation::Horizontal, Orientation::Vertical};
    std::vector<std::vector<std::string>> nb = {{"b1"}, {"a1", "a2"}, {"b1", "b2"}, {"a2", "a3"}, {"b2"}};
    PlaneTree t = make_plane_tree(ids, cls, nb);
    Arrangement arr = embed_arrangement(t);
    TrainTrack tt = build_train_track(t, arr);
    std::cout << "crossings:" << std::endl;
    for (int c = 0; c < arr.n_crossings(); ++c) {
        const auto& cr = arr.crossings[static_cast<size_t>(c)];
        std::cout << "  " << c << ": " << t.vertices[static_cast<size_t>(cr.v_vertical)].id << "&"
                  << t.vertices[static_cast<size_t>(cr.v_horizontal)].id << " at (" << cr.x << "," << cr.y << ")"
                  << std::endl;
    }
    std::cout << "edges:" << std::endl;
    for (int e = 0; e < tt.n_edges(); ++e) {
        const auto& ed = tt.edges[static_cast<size_t>(e)];
        std::cout << "  e" << e << " seg=" << t.vertices[static_cast<size_t>(ed.segment)].id << " s=" << ed.s
                  << " t=" << ed.t << " wrap=" << ed.wrap << std::endl;
    }
    IntMatrix A = adjacency_matrix(t);
    KernelBasis K = kernel_basis(A);
    std::cout << "kernel column:";
    for (int i = 0; i < K.basis.rows; ++i) std::cout << " " << K.basis.at(i, 0);
    std::cout << std::endl;
    LiftedMatrices lm = build_lifted(t, arr, tt, K, 0);
    auto names = default_names(2);
    std::cout << "U entries != 0,1:" << std::endl;
    for (int i = 0; i < lm.U.n; ++i)
        for (int j = 0; j < lm.U.n; ++j) {
            const auto& e = lm.U.at(i, j);
            if (!e.is_zero() && e != LaurentPoly::constant(2, 1))
                std::cout << "  U[" << i << "][" << j << "] = " << to_string(e, names) << std::endl;
        }
    std::cout << "W diag:";
    for (int i = 0; i < lm.W.n; ++i) std::cout << " " << to_string(lm.W.at(i, i), names);
    std::cout << std::endl << "T diag:";
    for (int i = 0; i < lm.T.n; ++i) std::cout << " " << to_string(lm.T.at(i, i), names);
    std::cout << std::endl << "QR diag:";
    auto pv = vertex_action(lm);
    for (const auto& d : pv) std::cout << " " << to_string(d, names);
    std::cout << std::endl;
    return 0;
}
