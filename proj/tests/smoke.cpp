// Scratch driver used while bringing the pipeline up. Not part of the suite.
#include <iostream>

#include "teichtree/teich.hpp"

using namespace teichtree;

static PlaneTree a_path(int n) {
    std::vector<std::string> ids;
    std::vector<Orientation> cls;
    std::vector<std::vector<std::string>> nb;
    for (int i = 0; i < n; ++i) {
        bool vert = (i % 2 == 0);
        ids.push_back((vert ? "a" : "b") + std::to_string(i / 2 + 1));
        cls.push_back(vert ? Orientation::Vertical : Orientation::Horizontal);
    }
    nb.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        if (i > 0) nb[static_cast<size_t>(i)].push_back(ids[static_cast<size_t>(i - 1)]);
        if (i + 1 < n) nb[static_cast<size_t>(i)].push_back(ids[static_cast<size_t>(i + 1)]);
    }
    return make_plane_tree(ids, cls, nb);
}

int main() {
    for (int n : {2, 3, 4, 5, 7}) {
        PlaneTree t = a_path(n);
        TeichResult res = teichmuller_polynomial(t);
        std::cout << "A_" << n << ": r=" << res.kernel_rank << "  theta = "
                  << to_string(res.theta, res.variables) << "\n";
        TeichResult res_slow = teichmuller_polynomial(t, std::nullopt, false);
        std::cout << "   slow route agrees: " << (res_slow.theta == res.theta ? "yes" : "NO") << "\n";
        if (res.kernel_rank == 1) {
            // a-series change of coordinates: x0 -> y0 y1^-1, u -> y1
            SubstMap map(2, Exps(2));
            map[0][0] = 1;
            map[0][1] = -1;  // x0 -> y0 * y1^-1
            map[1][0] = 0;
            map[1][1] = 1;  // u -> y1
            LaurentPoly sub = normalize(substitute(res.theta, map, 2));
            std::cout << "   a-series: " << to_string(sub, {"y0", "y1"}) << "\n";
        }
        std::cout << "   fiber dilatation: " << dilatation(res, fiber_class(res)) << "\n";
    }
    for (int n : {3, 5, 7, 9}) {
        TeichResult cf = an_closed_form(n);
        TeichResult pl = teichmuller_polynomial(a_path(n));
        std::cout << "A_" << n << " closed-form vs pipeline, unit-equivalent: "
                  << (equivalent_up_to_units(cf.theta, pl.theta, false) ? "yes" : "NO") << "\n";
    }
    return 0;
}
