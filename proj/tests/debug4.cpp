#include <iostream>

#include "teichtree/teich.hpp"

using namespace teichtree;

int main() {
    std::vector<std::string> ids = {"c", "p", "q", "m", "n", "s", "t"};
    std::vector<Orientation> cls = {Orientation::Vertical,   Orientation::Horizontal, Orientation::Horizontal,
                                    Orientation::Horizontal, Orientation::Horizontal, Orientation::Vertical,
                                    Orientation::Vertical};
    std::vector<std::vector<std::string>> nb1 = {{"p", "q", "m", "n"}, {"c"}, {"c"}, {"c", "s"}, {"c", "t"}, {"m"}, {"n"}};
    PlaneTree g1 = make_plane_tree(ids, cls, nb1);
    Arrangement arr = embed_arrangement(g1);
    TrainTrack tt = build_train_track(g1, arr);
    IntMatrix A = adjacency_matrix(g1);
    KernelBasis K = kernel_basis(A);
    std::cout << "r=" << K.rank() << " kernel col:";
    for (int i = 0; i < K.basis.rows; ++i) std::cout << " " << K.basis.at(i, 0);
    std::cout << std::endl;
    LiftedMatrices lm = build_lifted(g1, arr, tt, K, 0);
    auto names = default_names(K.rank() + 1);
    LaurentPoly num_plain = detail::numerator_plain(edge_action(lm));
    std::cout << "num(plain) = " << to_string(num_plain, names) << std::endl;
    try {
        LaurentPoly num_schur = detail::numerator_schur(lm, tt);
        std::cout << "num(schur) = " << (num_schur == num_plain ? "same" : to_string(num_schur, names)) << std::endl;
    } catch (const std::exception& e) {
        std::cout << "schur EXC: " << e.what() << std::endl;
    }
    LaurentPoly den = LaurentPoly::constant(K.rank() + 1, 1);
    for (const auto& d : vertex_action(lm)) den *= detail::u_minus(d, K.rank() + 1);
    std::cout << "den = " << to_string(den, names) << std::endl;
    try {
        LaurentPoly q = exact_div(num_plain, den);
        std::cout << "quotient = " << to_string(q, names) << std::endl;
    } catch (const std::exception& e) {
        std::cout << "div EXC: " << e.what() << std::endl;
    }
    return 0;
}
