// Probe: A_11 fixture, mutant pair, basepoint classes, r=0 divisibility.
#include <chrono>
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

static LaurentPoly poly2(const std::vector<std::tuple<int, int, Coeff>>& ts) {
    LaurentPoly p(2);
    for (auto& [a, b, c] : ts) {
        Exps e(2);
        e[0] = static_cast<std::int16_t>(a);
        e[1] = static_cast<std::int16_t>(b);
        p += LaurentPoly::monomial(2, e, c);
    }
    return p;
}

int main() {
    auto t0 = std::chrono::steady_clock::now();
    // A_11 fixture: product of three displayed factors
    LaurentPoly f1 = poly2({{1, 1, 1}, {1, 0, -2}, {0, 1, -2}, {0, 0, 1}});
    LaurentPoly f2 = poly2({{2, 2, 1}, {2, 1, -4}, {1, 2, -4}, {2, 0, 4}, {1, 1, 7}, {0, 2, 4}, {1, 0, -4}, {0, 1, -4}, {0, 0, 1}});
    LaurentPoly f3 = poly2({{2, 2, 1}, {2, 1, -4}, {1, 2, -4}, {2, 0, 4}, {1, 1, 9}, {0, 2, 4}, {1, 0, -4}, {0, 1, -4}, {0, 0, 1}});
    LaurentPoly a11_fixture = f1 * f2 * f3;

    TeichResult r11 = teichmuller_polynomial(a_path(11));
    SubstMap map(2, Exps(2));
    map[0][0] = 1;
    map[0][1] = -1;
    map[1][0] = 0;
    map[1][1] = 1;
    LaurentPoly sub11 = normalize(substitute(r11.theta, map, 2));
    std::cout << "A_11 == fixture exactly: " << (sub11 == normalize(a11_fixture) ? "yes" : "no") << std::endl;
    std::cout << "A_11 unit+inv equivalent: " << equivalent_up_to_units(sub11, a11_fixture, true) << std::endl;
    auto t1 = std::chrono::steady_clock::now();
    std::cout << "A_11 time: " << std::chrono::duration<double>(t1 - t0).count() << "s" << std::endl;

    // Mutant pair: center degree 4, two leaves p,q and two 2-paths m-s, n-t.
    std::vector<std::string> ids = {"c", "p", "q", "m", "n", "s", "t"};
    std::vector<Orientation> cls = {Orientation::Vertical,   Orientation::Horizontal, Orientation::Horizontal,
                                    Orientation::Horizontal, Orientation::Horizontal, Orientation::Vertical,
                                    Orientation::Vertical};
    std::vector<std::vector<std::string>> nb1 = {{"p", "q", "m", "n"}, {"c"}, {"c"}, {"c", "s"}, {"c", "t"}, {"m"}, {"n"}};
    std::vector<std::vector<std::string>> nb2 = {{"p", "m", "q", "n"}, {"c"}, {"c"}, {"c", "s"}, {"c", "t"}, {"m"}, {"n"}};
    PlaneTree g1 = make_plane_tree(ids, cls, nb1);
    PlaneTree g2 = make_plane_tree(ids, cls, nb2);
    TeichResult m1 = teichmuller_polynomial(g1);
    TeichResult m2 = teichmuller_polynomial(g2);
    std::cout << "mutant r: " << m1.kernel_rank << " " << m2.kernel_rank << std::endl;
    std::cout << "theta1 = " << to_string(m1.theta, m1.variables) << std::endl;
    std::cout << "theta2 = " << to_string(m2.theta, m2.variables) << std::endl;
    std::cout << "distinct (unit+inv): " << !equivalent_up_to_units(m1.theta, m2.theta, true) << std::endl;
    UniPoly s1 = specialize(m1.theta, fiber_class(m1));
    UniPoly s2 = specialize(m2.theta, fiber_class(m2));
    std::cout << "x=1 specializations equal: " << (s1 == s2 ? "yes" : "no") << "  s1 = " << to_string(s1, "u")
              << std::endl;
    // frozen sextic
    UniPoly sextic = UniPoly::from({1, -12, 46, -72, 46, -12, 1});
    std::cout << "matches frozen sextic: " << (s1 == sextic ? "yes" : "no") << std::endl;

    // basepoint classes of A_5: strict vs lift-aware equivalence
    PlaneTree a5 = a_path(5);
    TeichResult base0 = teichmuller_polynomial(a5, 0);
    for (int bp = 1; bp < base0.track_vertices; ++bp) {
        TeichResult r = teichmuller_polynomial(a5, bp);
        std::cout << "A_5 bp " << bp << ": strict=" << equivalent_up_to_units(base0.theta, r.theta, true)
                  << " lift=" << equivalent_up_to_lift(base0.theta, r.theta) << std::endl;
    }
    return 0;
}
