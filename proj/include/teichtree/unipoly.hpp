#pragma once

// Single-variable integer polynomials: the target of specialization, plus
// Sturm-sequence real-root isolation over exact integers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "checked_int.hpp"
#include "errors.hpp"

namespace teichtree {

// Coefficient list, c[i] multiplies t^i. Empty list encodes the zero polynomial,
// otherwise the leading coefficient is nonzero.
struct UniPoly {
    std::vector<Coeff> c;

    bool is_zero() const { return c.empty(); }
    int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }

    void strip() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    static UniPoly from(std::vector<Coeff> v) {
        UniPoly p{std::move(v)};
        p.strip();
        return p;
    }

    bool operator==(const UniPoly& o) const { return c == o.c; }
};

inline std::string to_string(const UniPoly& p, const std::string& var = "t") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        Coeff a = p.c[static_cast<size_t>(i)];
        if (a == 0) continue;
        if (out.empty()) {
            if (a < 0) out += "-";
        } else {
            out += (a < 0) ? " - " : " + ";
        }
        Coeff mag = a < 0 ? -a : a;
        bool show_coeff = (mag != 1 || i == 0);
        if (show_coeff) out += std::to_string(mag);
        if (i > 0) {
            if (show_coeff) out += "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

namespace detail {

using I128 = __int128;

inline I128 mul128(I128 a, I128 b) {
    I128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("overflow in 128-bit *");
    return r;
}
inline I128 add128(I128 a, I128 b) {
    I128 r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("overflow in 128-bit +");
    return r;
}

struct UP128 {
    std::vector<I128> c;
    bool is_zero() const { return c.empty(); }
    int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
    void strip() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

inline UP128 to128(const UniPoly& p) {
    UP128 q;
    q.c.assign(p.c.begin(), p.c.end());
    return q;
}

inline I128 content128(const UP128& p) {
    I128 g = 0;
    for (I128 v : p.c) {
        if (v < 0) v = -v;
        while (v != 0) {
            I128 t = g % v;
            g = v;
            v = t;
        }
        if (g == 1) return 1;
    }
    return g == 0 ? 1 : g;
}

// Divide by the (positive) content; the sign pattern of the polynomial is preserved.
inline void reduce_content(UP128& p) {
    p.strip();
    if (p.is_zero()) return;
    I128 g = content128(p);
    for (auto& v : p.c) v /= g;
}

// Positive content and positive leading coefficient.
inline void make_primitive(UP128& p) {
    p.strip();
    if (p.is_zero()) return;
    I128 g = content128(p);
    if (p.c.back() < 0) g = -g;
    for (auto& v : p.c) v /= g;
}

inline UP128 derivative(const UP128& p) {
    UP128 d;
    for (int i = 1; i <= p.degree(); ++i)
        d.c.push_back(mul128(p.c[static_cast<size_t>(i)], static_cast<I128>(i)));
    d.strip();
    return d;
}

// Pseudo-remainder with positive scaling only: a is multiplied by |lc(b)| each
// step, so sign sequences stay valid for Sturm chains. Content is stripped as
// the remainder shrinks to keep coefficients bounded.
inline UP128 prem(UP128 a, const UP128& b) {
    const int db = b.degree();
    const I128 lb = b.c.back();
    const I128 lb_abs = lb < 0 ? -lb : lb;
    const I128 sgn = lb < 0 ? -1 : 1;
    a.strip();
    while (!a.is_zero() && a.degree() >= db) {
        int sh = a.degree() - db;
        I128 la = a.c.back();
        for (auto& v : a.c) v = mul128(v, lb_abs);
        I128 q = mul128(la, sgn);
        for (int i = 0; i <= db; ++i) {
            size_t k = static_cast<size_t>(i + sh);
            a.c[k] = add128(a.c[k], -mul128(q, b.c[static_cast<size_t>(i)]));
        }
        reduce_content(a);
    }
    return a;
}

inline UP128 gcd_primitive(UP128 a, UP128 b) {
    make_primitive(a);
    make_primitive(b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        UP128 r = prem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    make_primitive(a);
    return a;
}

// Long division that must be exact (used with primitive operands).
inline UP128 div_exact(const UP128& num, const UP128& den) {
    if (den.is_zero()) throw NonExactDivision("division by zero polynomial");
    UP128 r = num;
    r.strip();
    const int dd = den.degree();
    UP128 q;
    q.c.assign(num.c.size(), 0);
    while (!r.is_zero() && r.degree() >= dd) {
        int sh = r.degree() - dd;
        I128 qc = r.c.back() / den.c.back();
        if (mul128(qc, den.c.back()) != r.c.back()) throw NonExactDivision("non-exact polynomial division");
        q.c[static_cast<size_t>(sh)] = qc;
        for (int i = 0; i <= dd; ++i) {
            size_t k = static_cast<size_t>(i + sh);
            r.c[k] = add128(r.c[k], -mul128(qc, den.c[static_cast<size_t>(i)]));
        }
        r.strip();
    }
    if (!r.is_zero()) throw NonExactDivision("non-exact polynomial division");
    q.strip();
    return q;
}

// Sign of p at the dyadic rational num/2^k, evaluated exactly.
inline int sign_at_dyadic(const UP128& p, I128 num, int k) {
    if (p.is_zero()) return 0;
    const int d = p.degree();
    I128 total = 0;
    for (int i = 0; i <= d; ++i) {
        I128 t = p.c[static_cast<size_t>(i)];
        for (int j = 0; j < i; ++j) t = mul128(t, num);
        for (int j = 0; j < k * (d - i); ++j) t = mul128(t, 2);
        total = add128(total, t);
    }
    return total > 0 ? 1 : (total < 0 ? -1 : 0);
}

inline std::vector<UP128> sturm_chain(const UP128& squarefree) {
    std::vector<UP128> chain;
    UP128 s0 = squarefree;
    make_primitive(s0);
    chain.push_back(s0);
    UP128 s1 = derivative(s0);
    reduce_content(s1);
    if (s1.is_zero()) return chain;
    chain.push_back(s1);
    while (true) {
        UP128 r = prem(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        for (auto& v : r.c) v = -v;
        reduce_content(r);
        chain.push_back(r);
    }
    return chain;
}

inline int variations(const std::vector<UP128>& chain, I128 num, int k) {
    int var = 0;
    int prev = 0;
    for (const auto& s : chain) {
        int sg = sign_at_dyadic(s, num, k);
        if (sg == 0) continue;
        if (prev != 0 && sg != prev) ++var;
        prev = sg;
    }
    return var;
}

inline double eval_double(const std::vector<double>& coeffs, double x) {
    double acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

}  // namespace detail

// Largest real root of p, within tol. Isolation uses a Sturm sequence on the
// squarefree part over exact integers; the isolated simple root is then
// refined by deterministic bisection.
inline double largest_real_root(const UniPoly& p, double tol = 1e-10) {
    if (p.degree() < 1) throw MathError("largest_real_root: degree >= 1 required");
    if (!(tol > 0)) throw MathError("largest_real_root: tolerance must be positive");

    detail::UP128 p128 = detail::to128(p);
    detail::make_primitive(p128);
    detail::UP128 g = detail::gcd_primitive(p128, detail::derivative(p128));
    detail::UP128 ps = (g.degree() >= 1) ? detail::div_exact(p128, g) : p128;
    detail::make_primitive(ps);
    if (ps.degree() < 1) throw NoRealRoot("no real root");

    auto chain = detail::sturm_chain(ps);

    // Cauchy bound: every root satisfies |r| < 1 + max|c_i| / |lead|.
    detail::I128 lead = ps.c.back();
    detail::I128 mx = 0;
    for (auto v : ps.c) {
        if (v < 0) v = -v;
        if (v > mx) mx = v;
    }
    detail::I128 bound = 2 + mx / lead;

    const int vb = detail::variations(chain, bound, 0);
    auto roots_above = [&](detail::I128 num, int k) { return detail::variations(chain, num, k) - vb; };

    if (roots_above(-bound, 0) == 0) throw NoRealRoot("no real root");

    // Integer bisection for the largest root: roots_above(lo) >= 1, roots_above(hi) == 0.
    detail::I128 lo = -bound, hi = bound;
    while (hi - lo > 1) {
        detail::I128 m = lo + (hi - lo) / 2;
        if (detail::sign_at_dyadic(ps, m, 0) == 0 && roots_above(m, 0) == 0)
            return static_cast<double>(static_cast<long long>(m));
        if (roots_above(m, 0) >= 1)
            lo = m;
        else
            hi = m;
    }

    // Narrow dyadically until the bracket holds exactly one root of the squarefree part.
    int k = 0;
    detail::I128 nlo = lo, nhi = hi;
    try {
        while (k < 16 &&
               detail::variations(chain, nlo, k) - detail::variations(chain, nhi, k) > 1) {
            nlo *= 2;
            nhi *= 2;
            ++k;
            detail::I128 m = (nlo + nhi) / 2;
            if (detail::sign_at_dyadic(ps, m, k) == 0 && roots_above(m, k) == 0)
                return static_cast<double>(static_cast<long long>(m)) / std::ldexp(1.0, k);
            if (roots_above(m, k) >= 1)
                nlo = m;
            else
                nhi = m;
        }
    } catch (const OverflowError&) {
        // keep the current bracket; it still contains the largest root
    }

    double a = static_cast<double>(static_cast<long long>(nlo)) / std::ldexp(1.0, k);
    double b = static_cast<double>(static_cast<long long>(nhi)) / std::ldexp(1.0, k);
    std::vector<double> sf;
    sf.reserve(ps.c.size());
    for (auto v : ps.c) sf.push_back(static_cast<double>(v));
    double fa = detail::eval_double(sf, a);
    for (int it = 0; it < 200 && (b - a) > tol * std::max(1.0, std::abs(b)); ++it) {
        double m = 0.5 * (a + b);
        double fm = detail::eval_double(sf, m);
        if ((fa <= 0) == (fm <= 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace teichtree
