#include <iostream>

#include "teichtree/teich.hpp"

using namespace teichtree;

int main() { try {
    PlaneTree t = make_plane_tree({"a1", "b1"}, {Orientation::Vertical, Orientation::Horizontal},
                                  {{"b1"}, {"a1"}});
    Arrangement arr = embed_arrangement(t);
    TrainTrack tt = build_train_track(t, arr);
    std::cout << "crossings: " << arr.n_crossings() << " edges: " << tt.n_edges() << std::endl;
    for (int e = 0; e < tt.n_edges(); ++e) {
        const auto& ed = tt.edges[static_cast<size_t>(e)];
        std::cout << "  e" << e << " seg=" << t.vertices[static_cast<size_t>(ed.segment)].id
                  << " s=" << ed.s << " t=" << ed.t << " wrap=" << ed.wrap << " vert=" << ed.vertical << std::endl;
    }
    IntMatrix A = adjacency_matrix(t);
    KernelBasis K = kernel_basis(A);
    std::cout << "kernel rank: " << K.rank() << std::endl;
    LiftedMatrices lm = build_lifted(t, arr, tt, K, 0);
    auto names = default_names(K.rank() + 1);
    for (int i = 0; i < lm.U.n; ++i)
        for (int j = 0; j < lm.U.n; ++j)
            if (!lm.U.at(i, j).is_zero())
                std::cout << "U[" << i << "][" << j << "]=" << to_string(lm.U.at(i, j), names) << "  ";
    std::cout << std::endl;
    for (int i = 0; i < lm.V.n; ++i)
        for (int j = 0; j < lm.V.n; ++j)
            if (!lm.V.at(i, j).is_zero())
                std::cout << "V[" << i << "][" << j << "]=" << to_string(lm.V.at(i, j), names) << "  ";
    std::cout << std::endl;
    LaurentMatrix PE = edge_action(lm);
    for (int i = 0; i < PE.n; ++i)
        for (int j = 0; j < PE.n; ++j)
            std::cout << "PE[" << i << "][" << j << "]=" << to_string(PE.at(i, j), names) << "  ";
    std::cout << std::endl;
    LaurentPoly num_plain = detail::numerator_plain(PE);
    std::cout << "numerator(plain) = " << to_string(num_plain, names) << std::endl;
    LaurentPoly num_fast = detail::numerator_schur(lm, tt);
    std::cout << "numerator(schur) = " << to_string(num_fast, names) << std::endl;
    LaurentPoly den = LaurentPoly::constant(K.rank() + 1, 1);
    for (const auto& d : vertex_action(lm)) den *= detail::u_minus(d, K.rank() + 1);
    std::cout << "denominator = " << to_string(den, names) << std::endl;
    } catch (const std::exception& e) { std::cout << "EXC: " << e.what() << std::endl; }
    return 0;
}
