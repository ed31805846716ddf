#pragma once

// Exact multivariate Laurent polynomials over Z, square matrices over them,
// fraction-free determinants, exact division, canonical forms, monomial
// substitution and integer specialization.
//
// Convention used throughout the pipeline: variables are x_0 .. x_{r-1}
// followed by the distinguished fibration variable u as the last slot.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "checked_int.hpp"
#include "errors.hpp"
#include "unipoly.hpp"

namespace teichtree {

// ---------------------------------------------------------------------------
// Exponent vectors

// Fixed-capacity exponent vector; index = variable, value = exponent
// (negative exponents allowed).
struct Exps {
    static constexpr int kMaxVars = 16;

    std::uint8_t n = 0;
    std::array<std::int16_t, kMaxVars> e{};

    Exps() = default;
    explicit Exps(int nvars) {
        if (nvars < 0 || nvars > kMaxVars) throw MathError("Exps: unsupported variable count");
        n = static_cast<std::uint8_t>(nvars);
        e.fill(0);
    }

    int size() const { return n; }
    std::int16_t operator[](int i) const { return e[static_cast<size_t>(i)]; }
    std::int16_t& operator[](int i) { return e[static_cast<size_t>(i)]; }

    int grade() const {
        int s = 0;
        for (int i = 0; i < n; ++i) s += e[static_cast<size_t>(i)];
        return s;
    }

    bool is_zero() const {
        for (int i = 0; i < n; ++i)
            if (e[static_cast<size_t>(i)] != 0) return false;
        return true;
    }

    friend bool operator==(const Exps& a, const Exps& b) {
        if (a.n != b.n) return false;
        for (int i = 0; i < a.n; ++i)
            if (a.e[static_cast<size_t>(i)] != b.e[static_cast<size_t>(i)]) return false;
        return true;
    }
};

inline std::int16_t exp_ck(int v) {
    if (v < INT16_MIN || v > INT16_MAX) throw OverflowError("exponent out of range");
    return static_cast<std::int16_t>(v);
}

inline Exps exps_add(const Exps& a, const Exps& b) {
    Exps r(a.size());
    for (int i = 0; i < a.size(); ++i) r[i] = exp_ck(int(a[i]) + int(b[i]));
    return r;
}

// Graded lexicographic, descending: larger grade first, ties broken by the
// lexicographically larger exponent vector (earlier variables dominate).
inline bool term_before(const Exps& a, const Exps& b) {
    int ga = a.grade(), gb = b.grade();
    if (ga != gb) return ga > gb;
    for (int i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

// ---------------------------------------------------------------------------
// LaurentPoly

struct Term {
    Exps e;
    Coeff c;
};

// Terms kept sorted in descending graded-lex order with nonzero coefficients.
class LaurentPoly {
  public:
    LaurentPoly() : nvars_(0) {}
    explicit LaurentPoly(int nvars) : nvars_(nvars) {
        if (nvars < 0 || nvars > Exps::kMaxVars) throw MathError("unsupported variable count");
    }

    static LaurentPoly constant(int nvars, Coeff c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_.push_back({Exps(nvars), c});
        return p;
    }

    static LaurentPoly monomial(int nvars, const Exps& e, Coeff c) {
        LaurentPoly p(nvars);
        if (c != 0) p.terms_.push_back({e, c});
        return p;
    }

    // x_idx as a polynomial.
    static LaurentPoly variable(int nvars, int idx, int power = 1) {
        Exps e(nvars);
        e[idx] = exp_ck(power);
        return monomial(nvars, e, 1);
    }

    // Trusted constructor: terms already in descending order, coefficients
    // nonzero, no duplicate exponent vectors.
    static LaurentPoly from_sorted_terms(int nvars, std::vector<Term> ts) {
        LaurentPoly p(nvars);
        p.terms_ = std::move(ts);
        return p;
    }

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].e.is_zero()); }

    // Single term with coefficient +-1: a unit of the Laurent ring.
    bool is_unit_monomial() const {
        return terms_.size() == 1 && (terms_[0].c == 1 || terms_[0].c == -1);
    }
    bool is_monomial() const { return terms_.size() == 1; }

    const Term& leading() const {
        if (terms_.empty()) throw MathError("leading term of zero polynomial");
        return terms_.front();
    }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
        for (size_t i = 0; i < a.terms_.size(); ++i)
            if (!(a.terms_[i].e == b.terms_[i].e && a.terms_[i].c == b.terms_[i].c)) return false;
        return true;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    friend LaurentPoly operator-(const LaurentPoly& p) {
        LaurentPoly r = p;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        check_ctx(a, b);
        LaurentPoly r(a.nvars_);
        r.terms_.reserve(a.terms_.size() + b.terms_.size());
        size_t i = 0, j = 0;
        while (i < a.terms_.size() && j < b.terms_.size()) {
            const Term& ta = a.terms_[i];
            const Term& tb = b.terms_[j];
            if (ta.e == tb.e) {
                Coeff c = add_ck(ta.c, tb.c);
                if (c != 0) r.terms_.push_back({ta.e, c});
                ++i;
                ++j;
            } else if (term_before(ta.e, tb.e)) {
                r.terms_.push_back(ta);
                ++i;
            } else {
                r.terms_.push_back(tb);
                ++j;
            }
        }
        for (; i < a.terms_.size(); ++i) r.terms_.push_back(a.terms_[i]);
        for (; j < b.terms_.size(); ++j) r.terms_.push_back(b.terms_[j]);
        return r;
    }

    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }

    // Multiply by a single term; descending order is preserved by translation.
    LaurentPoly times_term(const Exps& e, Coeff c) const {
        LaurentPoly r(nvars_);
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back({exps_add(t.e, e), mul_ck(t.c, c)});
        return r;
    }

    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        check_ctx(a, b);
        LaurentPoly r(a.nvars_);
        if (a.is_zero() || b.is_zero()) return r;
        if (b.terms_.size() == 1) return a.times_term(b.terms_[0].e, b.terms_[0].c);
        if (a.terms_.size() == 1) return b.times_term(a.terms_[0].e, a.terms_[0].c);
        const LaurentPoly& big = a.terms_.size() >= b.terms_.size() ? a : b;
        const LaurentPoly& small = a.terms_.size() >= b.terms_.size() ? b : a;
        if (big.terms_.size() * small.terms_.size() > 16384) return mul_merge(big, small);
        std::vector<Term> prod;
        prod.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& ta : a.terms_)
            for (const auto& tb : b.terms_) prod.push_back({exps_add(ta.e, tb.e), mul_ck(ta.c, tb.c)});
        std::sort(prod.begin(), prod.end(),
                  [](const Term& x, const Term& y) { return term_before(x.e, y.e); });
        for (const auto& t : prod) {
            if (!r.terms_.empty() && r.terms_.back().e == t.e) {
                r.terms_.back().c = add_ck(r.terms_.back().c, t.c);
                if (r.terms_.back().c == 0) r.terms_.pop_back();
            } else {
                r.terms_.push_back(t);
            }
        }
        return r;
    }

    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    // Per-variable minimum exponent over all terms (zero polynomial: all zero).
    Exps min_exps() const {
        Exps m(nvars_);
        bool first = true;
        for (const auto& t : terms_) {
            for (int i = 0; i < nvars_; ++i)
                if (first || t.e[i] < m[i]) m[i] = t.e[i];
            first = false;
        }
        return m;
    }

    Exps max_exps() const {
        Exps m(nvars_);
        bool first = true;
        for (const auto& t : terms_) {
            for (int i = 0; i < nvars_; ++i)
                if (first || t.e[i] > m[i]) m[i] = t.e[i];
            first = false;
        }
        return m;
    }

    int degree_in(int var) const {
        if (terms_.empty()) return 0;
        return max_exps()[var];
    }

  private:
    static void check_ctx(const LaurentPoly& a, const LaurentPoly& b) {
        if (a.nvars_ != b.nvars_) throw MathError("variable contexts differ");
    }

    // k-way merge of the |small| sorted streams big*term; avoids materializing
    // and sorting the full cross product for large operands.
    static LaurentPoly mul_merge(const LaurentPoly& big, const LaurentPoly& small) {
        struct Head {
            Exps e;
            size_t stream, pos;
        };
        auto later = [](const Head& x, const Head& y) { return term_before(y.e, x.e); };  // min-heap on order
        std::vector<Head> heap;
        heap.reserve(small.terms_.size());
        for (size_t s = 0; s < small.terms_.size(); ++s)
            heap.push_back({exps_add(big.terms_[0].e, small.terms_[s].e), s, 0});
        std::make_heap(heap.begin(), heap.end(), later);
        LaurentPoly r(big.nvars_);
        r.terms_.reserve(big.terms_.size() + small.terms_.size());
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), later);
            Head h = heap.back();
            heap.pop_back();
            Coeff c = mul_ck(big.terms_[h.pos].c, small.terms_[h.stream].c);
            if (!r.terms_.empty() && r.terms_.back().e == h.e) {
                r.terms_.back().c = add_ck(r.terms_.back().c, c);
                if (r.terms_.back().c == 0) r.terms_.pop_back();
            } else {
                r.terms_.push_back({h.e, c});
            }
            if (++h.pos < big.terms_.size()) {
                h.e = exps_add(big.terms_[h.pos].e, small.terms_[h.stream].e);
                heap.push_back(h);
                std::push_heap(heap.begin(), heap.end(), later);
            }
        }
        return r;
    }

    int nvars_;
    std::vector<Term> terms_;

    friend LaurentPoly exact_div(const LaurentPoly&, const LaurentPoly&);
    friend LaurentPoly exact_div_u_binomial(const LaurentPoly&, const LaurentPoly&, int);
};

// ---------------------------------------------------------------------------
// Exact division

// q with q*den == num, in the Laurent ring. Throws NonExactDivision otherwise.
// Both operands are first reduced to honest polynomials by stripping their
// unit-monomial content (per-variable minimum exponents); the polynomial
// quotient then exists iff the Laurent quotient does.
inline LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
    if (num.nvars() != den.nvars()) throw MathError("variable contexts differ");
    if (den.is_zero()) throw NonExactDivision("division by zero polynomial");
    const int nv = num.nvars();
    if (num.is_zero()) return LaurentPoly(nv);

    Exps mn = num.min_exps(), md = den.min_exps();
    Exps shift_n(nv), shift_d(nv), shift_q(nv);
    for (int i = 0; i < nv; ++i) {
        shift_n[i] = exp_ck(-int(mn[i]));
        shift_d[i] = exp_ck(-int(md[i]));
        shift_q[i] = exp_ck(int(mn[i]) - int(md[i]));
    }
    LaurentPoly r = num.times_term(shift_n, 1);
    LaurentPoly d = den.times_term(shift_d, 1);

    LaurentPoly q(nv);
    const Term& ld = d.leading();
    while (!r.is_zero()) {
        const Term& lr = r.leading();
        if (lr.c % ld.c != 0) throw NonExactDivision("leading coefficient does not divide");
        Exps e(nv);
        for (int i = 0; i < nv; ++i) {
            int diff = int(lr.e[i]) - int(ld.e[i]);
            if (diff < 0) throw NonExactDivision("leading monomial does not divide");
            e[i] = exp_ck(diff);
        }
        Coeff c = lr.c / ld.c;
        q.terms_.push_back({e, c});  // leading terms strictly decrease, order is kept
        r -= d.times_term(e, c);
    }
    return q.times_term(shift_q, 1);
}

// Exact division by (u - M), M a monomial without the u variable, by synthetic
// division along u-slices; linear in the size of the dividend.
inline LaurentPoly exact_div_u_binomial(const LaurentPoly& p, const LaurentPoly& mono, int uvar) {
    if (!mono.is_monomial() || mono.leading().e[uvar] != 0)
        throw MathError("binomial division: divisor must be u - (x-monomial)");
    if (p.is_zero()) return p;
    const int nv = p.nvars();
    int mn = INT16_MAX, mx = INT16_MIN;
    for (const auto& t : p.terms()) {
        mn = std::min(mn, int(t.e[uvar]));
        mx = std::max(mx, int(t.e[uvar]));
    }
    // u-slices of p, each with the u-exponent cleared; slice term order is
    // inherited but clearing u can reorder, so sort each slice once
    std::vector<std::vector<Term>> slice_terms(static_cast<size_t>(mx - mn + 1));
    for (const auto& t : p.terms()) {
        Exps e = t.e;
        int k = e[uvar] - mn;
        e[uvar] = 0;
        slice_terms[static_cast<size_t>(k)].push_back({e, t.c});
    }
    std::vector<LaurentPoly> slice;
    slice.reserve(slice_terms.size());
    for (auto& ts : slice_terms) {
        std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return term_before(x.e, y.e); });
        slice.push_back(LaurentPoly::from_sorted_terms(nv, std::move(ts)));
    }
    const int d = mx - mn;
    if (d < 1) throw NonExactDivision("binomial division: dividend constant in u");
    std::vector<LaurentPoly> q(static_cast<size_t>(d), LaurentPoly(nv));
    q[static_cast<size_t>(d - 1)] = slice[static_cast<size_t>(d)];
    for (int k = d - 1; k >= 1; --k)
        q[static_cast<size_t>(k - 1)] = slice[static_cast<size_t>(k)] + mono * q[static_cast<size_t>(k)];
    if (!(slice[0] + mono * q[0]).is_zero()) throw NonExactDivision("binomial division: nonzero remainder");
    LaurentPoly out(nv);
    std::vector<Term> all;
    for (int k = 0; k < d; ++k)
        for (const auto& t : q[static_cast<size_t>(k)].terms()) {
            Exps e = t.e;
            e[uvar] = exp_ck(k + mn);
            all.push_back({e, t.c});
        }
    std::sort(all.begin(), all.end(), [](const Term& x, const Term& y) { return term_before(x.e, y.e); });
    for (const auto& t : all) out.terms_.push_back(t);
    return out;
}

// ---------------------------------------------------------------------------
// Canonical form and unit-orbit equivalence

// Canonical representative of the unit orbit {+-monomial * p}: shift so every
// variable has minimum exponent 0, negate if the leading coefficient is negative.
inline LaurentPoly normalize(const LaurentPoly& p) {
    if (p.is_zero()) throw MathError("normalize: zero polynomial");
    Exps m = p.min_exps();
    Exps shift(p.nvars());
    for (int i = 0; i < p.nvars(); ++i) shift[i] = exp_ck(-int(m[i]));
    LaurentPoly r = p.times_term(shift, 1);
    if (r.leading().c < 0) r = -r;
    return r;
}

// p with the variables in `mask` inverted (x -> x^-1). Injective on
// monomials, so sorting the mapped terms is enough.
inline LaurentPoly invert_vars(const LaurentPoly& p, unsigned mask) {
    std::vector<Term> ts;
    ts.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Exps e = t.e;
        for (int i = 0; i < p.nvars(); ++i)
            if (mask & (1u << i)) e[i] = exp_ck(-int(e[i]));
        ts.push_back({e, t.c});
    }
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return term_before(x.e, y.e); });
    return LaurentPoly::from_sorted_terms(p.nvars(), std::move(ts));
}

// True iff p equals q up to +-monomial, optionally allowing any subset of the
// x-variables of q to be inverted. The last variable (the fibration direction
// u) is never inverted.
inline bool equivalent_up_to_units(const LaurentPoly& p, const LaurentPoly& q, bool allow_inversion) {
    if (p.nvars() != q.nvars()) throw MathError("variable contexts differ");
    if (p.is_zero() || q.is_zero()) throw MathError("equivalence of zero polynomial");
    LaurentPoly np = normalize(p);
    int xs = p.nvars() > 0 ? p.nvars() - 1 : 0;
    unsigned patterns = allow_inversion ? (1u << xs) : 1u;
    for (unsigned mask = 0; mask < patterns; ++mask) {
        LaurentPoly cand = mask == 0 ? q : invert_vars(q, mask);
        if (normalize(cand) == np) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// Substitution and specialization

// Monomial image of one source variable: exponents over the target context.
using SubstMap = std::vector<Exps>;

// Determinant of a small integer matrix via Euclidean column elimination
// (used for the unimodularity check).
inline long long int_det(std::vector<std::vector<long long>> m) {
    size_t n = m.size();
    long long det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = -det;
        }
        for (size_t i = k + 1; i < n; ++i) {
            while (m[i][k] != 0) {
                long long q = m[k][k] / m[i][k];
                for (size_t j = k; j < n; ++j) m[k][j] -= q * m[i][j];
                std::swap(m[k], m[i]);
                det = -det;
            }
        }
        det *= m[k][k];
        if (det == 0) return 0;
    }
    return det;
}

// Exact substitution of variables by monomials in a new context. The exponent
// matrix must be square and unimodular (an invertible change of coordinates).
inline LaurentPoly substitute(const LaurentPoly& p, const SubstMap& map, int new_nvars) {
    if (static_cast<int>(map.size()) != p.nvars())
        throw MathError("substitution map must cover every variable");
    for (const auto& img : map)
        if (img.size() != new_nvars) throw MathError("substitution images in wrong context");
    if (new_nvars != p.nvars()) throw MathError("substitution must be a square lattice map");
    std::vector<std::vector<long long>> m(static_cast<size_t>(p.nvars()),
                                          std::vector<long long>(static_cast<size_t>(new_nvars), 0));
    for (int i = 0; i < p.nvars(); ++i)
        for (int j = 0; j < new_nvars; ++j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] = map[static_cast<size_t>(i)][j];
    long long d = int_det(m);
    if (d != 1 && d != -1) throw MathError("substitution is not unimodular");

    std::vector<Term> ts;
    ts.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Exps e(new_nvars);
        for (int i = 0; i < p.nvars(); ++i)
            for (int j = 0; j < new_nvars; ++j)
                e[j] = exp_ck(int(e[j]) + int(t.e[i]) * int(map[static_cast<size_t>(i)][j]));
        ts.push_back({e, t.c});
    }
    // a unimodular lattice map is injective on monomials
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return term_before(x.e, y.e); });
    return LaurentPoly::from_sorted_terms(new_nvars, std::move(ts));
}

// The coordinate change induced by a different choice of lift: u -> u * x^c,
// x fixed. c has one entry per non-u variable.
inline LaurentPoly shear_u(const LaurentPoly& p, const std::vector<int>& c) {
    if (static_cast<int>(c.size()) != p.nvars() - 1) throw MathError("shear: wrong length");
    const int un = p.nvars() - 1;
    std::vector<Term> ts;
    ts.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        Exps e = t.e;
        for (int j = 0; j < un; ++j) e[j] = exp_ck(int(e[j]) + c[static_cast<size_t>(j)] * int(t.e[un]));
        ts.push_back({e, t.c});
    }
    std::sort(ts.begin(), ts.end(), [](const Term& x, const Term& y) { return term_before(x.e, y.e); });
    return LaurentPoly::from_sorted_terms(p.nvars(), std::move(ts));
}

// True iff p and q agree up to a unit and a lift change u -> u * x^c.
inline bool equivalent_up_to_lift(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.nvars() != q.nvars()) throw MathError("variable contexts differ");
    if (p.is_zero() || q.is_zero()) throw MathError("equivalence of zero polynomial");
    const int nv = p.nvars();
    const int un = nv - 1;
    LaurentPoly np = normalize(p), nq = normalize(q);
    if (np == nq) return true;
    // u-levels present must coincide
    auto levels = [un](const LaurentPoly& f) {
        std::vector<int> ls;
        for (const auto& t : f.terms()) ls.push_back(t.e[un]);
        std::sort(ls.begin(), ls.end());
        ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        return ls;
    };
    auto lp = levels(np), lq = levels(nq);
    if (lp != lq) return false;
    if (lp.size() < 2) return false;  // single level: a shear is a unit, handled above
    const int l0 = lp.front(), l1 = lp.back();
    auto min_at_level = [un](const LaurentPoly& f, int lvl, int var) {
        int m = INT16_MAX;
        for (const auto& t : f.terms())
            if (t.e[un] == lvl && t.e[var] < m) m = t.e[var];
        return m;
    };
    std::vector<int> c(static_cast<size_t>(un), 0);
    for (int j = 0; j < un; ++j) {
        int dp = min_at_level(np, l1, j) - min_at_level(np, l0, j);
        int dq = min_at_level(nq, l1, j) - min_at_level(nq, l0, j);
        int diff = dp - dq;
        if (diff % (l1 - l0) != 0) return false;
        c[static_cast<size_t>(j)] = diff / (l1 - l0);
    }
    return normalize(shear_u(nq, c)) == np;
}

// Integer specialization: each variable x_i becomes t^{alpha_i}; the result is
// cleared of negative powers of t.
inline UniPoly specialize(const LaurentPoly& p, const std::vector<int>& alpha) {
    if (static_cast<int>(alpha.size()) != p.nvars()) throw MathError("specialize: wrong alpha length");
    if (p.is_zero()) return UniPoly{};
    std::vector<std::pair<long long, Coeff>> vals;
    vals.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        long long pw = 0;
        for (int i = 0; i < p.nvars(); ++i) pw += static_cast<long long>(alpha[static_cast<size_t>(i)]) * t.e[i];
        vals.emplace_back(pw, t.c);
    }
    long long mn = vals[0].first, mxv = vals[0].first;
    for (auto& v : vals) {
        mn = std::min(mn, v.first);
        mxv = std::max(mxv, v.first);
    }
    if (mxv - mn > 100000) throw MathError("specialize: degree too large");
    UniPoly out;
    out.c.assign(static_cast<size_t>(mxv - mn + 1), 0);
    for (auto& v : vals) {
        size_t k = static_cast<size_t>(v.first - mn);
        out.c[k] = add_ck(out.c[k], v.second);
    }
    out.strip();
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

// Canonical text form: terms in descending graded-lex order, explicit '*',
// '^' for exponents, e.g. "x0^2*u^2 - 4*x0^2*u + 9*x0*u + 1".
inline std::string to_string(const LaurentPoly& p, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != p.nvars()) throw MathError("to_string: wrong name count");
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& t : p.terms()) {
        if (out.empty()) {
            if (t.c < 0) out += "-";
        } else {
            out += (t.c < 0) ? " - " : " + ";
        }
        Coeff mag = t.c < 0 ? -t.c : t.c;
        std::string factors;
        for (int i = 0; i < p.nvars(); ++i) {
            if (t.e[i] == 0) continue;
            if (!factors.empty()) factors += "*";
            factors += names[static_cast<size_t>(i)];
            if (t.e[i] != 1) factors += "^" + std::to_string(int(t.e[i]));
        }
        if (factors.empty()) {
            out += std::to_string(mag);
        } else {
            if (mag != 1) out += std::to_string(mag) + "*";
            out += factors;
        }
    }
    return out;
}

// Default names x0..x{r-1}, u.
inline std::vector<std::string> default_names(int nvars) {
    std::vector<std::string> names;
    for (int i = 0; i + 1 < nvars; ++i) names.push_back("x" + std::to_string(i));
    if (nvars > 0) names.push_back("u");
    return names;
}

// ---------------------------------------------------------------------------
// Matrices over the Laurent ring

struct LaurentMatrix {
    int n = 0;
    int nv = 0;
    std::vector<LaurentPoly> a;  // row-major, n*n

    LaurentMatrix() = default;
    LaurentMatrix(int n_, int nvars)
        : n(n_), nv(nvars), a(static_cast<size_t>(n_) * static_cast<size_t>(n_), LaurentPoly(nvars)) {}

    LaurentPoly& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; }
    const LaurentPoly& at(int i, int j) const {
        return a[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
    }

    int nvars() const { return nv; }

    static LaurentMatrix identity(int n_, int nvars) {
        LaurentMatrix m(n_, nvars);
        for (int i = 0; i < n_; ++i) m.at(i, i) = LaurentPoly::constant(nvars, 1);
        return m;
    }

    friend LaurentMatrix operator*(const LaurentMatrix& x, const LaurentMatrix& y) {
        if (x.n != y.n) throw MathError("matrix size mismatch");
        LaurentMatrix r(x.n, x.nvars());
        for (int i = 0; i < x.n; ++i)
            for (int k = 0; k < x.n; ++k) {
                const LaurentPoly& xik = x.at(i, k);
                if (xik.is_zero()) continue;
                for (int j = 0; j < x.n; ++j) {
                    if (y.at(k, j).is_zero()) continue;
                    r.at(i, j) += xik * y.at(k, j);
                }
            }
        return r;
    }

    friend bool operator==(const LaurentMatrix& x, const LaurentMatrix& y) { return x.n == y.n && x.a == y.a; }
};

namespace detail {

inline LaurentPoly det_cofactor_impl(const LaurentMatrix& m, std::vector<int>& cols, int row) {
    const int n = m.n;
    if (row == n) return LaurentPoly::constant(m.nvars(), 1);
    LaurentPoly acc(m.nvars());
    int sign = 1;
    for (size_t k = 0; k < cols.size(); ++k) {
        int col = cols[k];
        if (!m.at(row, col).is_zero()) {
            std::vector<int> rest;
            rest.reserve(cols.size() - 1);
            for (size_t j = 0; j < cols.size(); ++j)
                if (j != k) rest.push_back(cols[j]);
            LaurentPoly sub = det_cofactor_impl(m, rest, row + 1);
            LaurentPoly contrib = m.at(row, col) * sub;
            acc = (sign > 0) ? acc + contrib : acc - contrib;
        }
        sign = -sign;
    }
    return acc;
}

}  // namespace detail

// Cofactor (Laplace) expansion; exponential, fine for small n and as an oracle.
inline LaurentPoly det_cofactor(const LaurentMatrix& m) {
    if (m.n == 0) return LaurentPoly::constant(m.nvars(), 1);
    std::vector<int> cols(static_cast<size_t>(m.n));
    for (int i = 0; i < m.n; ++i) cols[static_cast<size_t>(i)] = i;
    return detail::det_cofactor_impl(m, cols, 0);
}

namespace packed {

// Monomials packed into one 64-bit key: [grade:8][x_0:6]..[x_{r-1}:6][u:8]
// (nonnegative exponents only, r <= 8). Descending numeric order on keys is
// exactly descending graded-lex, so term order is a single integer compare.
using Key = std::uint64_t;

struct Codec {
    int nvars = 0;   // total variables, u last
    int xs = 0;      // nvars - 1
    int ushift = 0;  // = 0; u occupies the low 8 bits

    explicit Codec(int nv) : nvars(nv), xs(nv - 1) {}

    bool fits(const Exps& e) const {
        int g = 0;
        for (int i = 0; i < nvars; ++i) {
            if (e[i] < 0) return false;
            g += e[i];
        }
        if (g > 255) return false;
        for (int i = 0; i < xs; ++i)
            if (e[i] > 63) return false;
        return e[nvars - 1] <= 255;
    }

    Key pack(const Exps& e) const {
        Key k = 0;
        int g = 0;
        for (int i = 0; i < nvars; ++i) g += e[i];
        k = static_cast<Key>(g);
        for (int i = 0; i < xs; ++i) k = (k << 6) | static_cast<Key>(e[i]);
        k = (k << 8) | static_cast<Key>(e[nvars - 1]);
        return k;
    }

    Exps unpack(Key k) const {
        Exps e(nvars);
        e[nvars - 1] = static_cast<std::int16_t>(k & 0xFF);
        k >>= 8;
        for (int i = xs - 1; i >= 0; --i) {
            e[i] = static_cast<std::int16_t>(k & 0x3F);
            k >>= 6;
        }
        return e;
    }
};

struct Poly {
    std::vector<std::pair<Key, Coeff>> t;  // descending by key
    // per-field maxima, for overflow-free multiplication checks
    int max_grade = 0, max_u = 0;
    std::array<int, 8> max_x{};

    bool is_zero() const { return t.empty(); }

    void recompute_max(const Codec& cd) {
        max_grade = max_u = 0;
        max_x.fill(0);
        for (auto& [k, c] : t) {
            (void)c;
            Exps e = cd.unpack(k);
            int g = 0;
            for (int i = 0; i < cd.nvars; ++i) g += e[i];
            max_grade = std::max(max_grade, g);
            max_u = std::max(max_u, int(e[cd.nvars - 1]));
            for (int i = 0; i < cd.xs; ++i) max_x[static_cast<size_t>(i)] = std::max(max_x[static_cast<size_t>(i)], int(e[i]));
        }
    }
};

inline bool mul_fits(const Poly& a, const Poly& b, const Codec& cd) {
    if (a.max_grade + b.max_grade > 255 || a.max_u + b.max_u > 255) return false;
    for (int i = 0; i < cd.xs; ++i)
        if (a.max_x[static_cast<size_t>(i)] + b.max_x[static_cast<size_t>(i)] > 63) return false;
    return true;
}

// key "addition": grade and field-wise exponent sums; safe when mul_fits held
inline Key key_add(Key a, Key b) { return a + b; }

inline void consolidate(std::vector<std::pair<Key, Coeff>>& v) {
    size_t out = 0;
    for (size_t i = 0; i < v.size();) {
        Key k = v[i].first;
        Coeff c = v[i].second;
        size_t j = i + 1;
        while (j < v.size() && v[j].first == k) {
            c = add_ck(c, v[j].second);
            ++j;
        }
        if (c != 0) v[out++] = {k, c};
        i = j;
    }
    v.resize(out);
}

inline Poly mul(const Poly& a, const Poly& b, const Codec& cd) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (!mul_fits(a, b, cd)) throw OverflowError("packed exponent overflow");
    const Poly& big = a.t.size() >= b.t.size() ? a : b;
    const Poly& small = a.t.size() >= b.t.size() ? b : a;
    if (big.t.size() * small.t.size() <= 16384) {
        r.t.reserve(big.t.size() * small.t.size());
        for (auto& [ka, ca] : big.t)
            for (auto& [kb, cb] : small.t) r.t.emplace_back(key_add(ka, kb), mul_ck(ca, cb));
        std::sort(r.t.begin(), r.t.end(),
                  [](const std::pair<Key, Coeff>& x, const std::pair<Key, Coeff>& y) { return x.first > y.first; });
        consolidate(r.t);
    } else {
        // k-way merge of |small| shifted copies of big
        struct Head {
            Key k;
            size_t stream, pos;
        };
        auto later = [](const Head& x, const Head& y) { return x.k < y.k; };
        std::vector<Head> heap;
        heap.reserve(small.t.size());
        for (size_t s = 0; s < small.t.size(); ++s) heap.push_back({key_add(big.t[0].first, small.t[s].first), s, 0});
        std::make_heap(heap.begin(), heap.end(), later);
        while (!heap.empty()) {
            std::pop_heap(heap.begin(), heap.end(), later);
            Head h = heap.back();
            heap.pop_back();
            Coeff c = mul_ck(big.t[h.pos].second, small.t[h.stream].second);
            if (!r.t.empty() && r.t.back().first == h.k) {
                r.t.back().second = add_ck(r.t.back().second, c);
                if (r.t.back().second == 0) r.t.pop_back();
            } else {
                r.t.emplace_back(h.k, c);
            }
            if (++h.pos < big.t.size()) {
                h.k = key_add(big.t[h.pos].first, small.t[h.stream].first);
                heap.push_back(h);
                std::push_heap(heap.begin(), heap.end(), later);
            }
        }
    }
    r.recompute_max(cd);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b, const Codec& cd) {
    Poly r;
    r.t.reserve(a.t.size() + b.t.size());
    size_t i = 0, j = 0;
    while (i < a.t.size() && j < b.t.size()) {
        if (a.t[i].first == b.t[j].first) {
            Coeff c = sub_ck(a.t[i].second, b.t[j].second);
            if (c != 0) r.t.emplace_back(a.t[i].first, c);
            ++i;
            ++j;
        } else if (a.t[i].first > b.t[j].first) {
            r.t.push_back(a.t[i++]);
        } else {
            r.t.emplace_back(b.t[j].first, -b.t[j].second);
            ++j;
        }
    }
    for (; i < a.t.size(); ++i) r.t.push_back(a.t[i]);
    for (; j < b.t.size(); ++j) r.t.emplace_back(b.t[j].first, -b.t[j].second);
    r.recompute_max(cd);
    return r;
}

// Exact division, leading-term elimination. Divisibility of monomials is a
// per-field check on the unpacked keys.
inline Poly div_exact(const Poly& num, const Poly& den, const Codec& cd) {
    if (den.is_zero()) throw NonExactDivision("division by zero polynomial");
    Poly q;
    if (num.is_zero()) return q;
    std::vector<std::pair<Key, Coeff>> r = num.t;
    const Key kd = den.t[0].first;
    const Coeff cdiv = den.t[0].second;
    const Exps ed = cd.unpack(kd);
    while (!r.empty()) {
        Key kn = r[0].first;
        Coeff cn = r[0].second;
        if (cn % cdiv != 0) throw NonExactDivision("leading coefficient does not divide");
        Exps en = cd.unpack(kn);
        for (int v = 0; v < cd.nvars; ++v)
            if (en[v] < ed[v]) throw NonExactDivision("leading monomial does not divide");
        Key kq = kn - kd;  // exact by the field checks above
        Coeff cq = cn / cdiv;
        q.t.emplace_back(kq, cq);
        // r -= (kq,cq) * den, merged in one pass
        std::vector<std::pair<Key, Coeff>> nr;
        nr.reserve(r.size() + den.t.size());
        size_t i = 0, j = 0;
        while (i < r.size() && j < den.t.size()) {
            Key ks = key_add(kq, den.t[j].first);
            if (r[i].first == ks) {
                Coeff c = sub_ck(r[i].second, mul_ck(cq, den.t[j].second));
                if (c != 0) nr.emplace_back(r[i].first, c);
                ++i;
                ++j;
            } else if (r[i].first > ks) {
                nr.push_back(r[i++]);
            } else {
                nr.emplace_back(ks, -mul_ck(cq, den.t[j].second));
                ++j;
            }
        }
        for (; i < r.size(); ++i) nr.push_back(r[i]);
        for (; j < den.t.size(); ++j) nr.emplace_back(key_add(kq, den.t[j].first), -mul_ck(cq, den.t[j].second));
        r = std::move(nr);
    }
    q.recompute_max(cd);
    return q;
}

}  // namespace packed

namespace detail {

// Packed-key Bareiss for matrices whose cleared entries fit the key layout.
// Throws OverflowError when they do not; the caller falls back.
inline LaurentPoly det_bareiss_packed(const LaurentMatrix& m, const Exps& unit_total) {
    const int n = m.n;
    const int nv = m.nvars();
    packed::Codec cd(nv);
    std::vector<packed::Poly> w(static_cast<size_t>(n) * static_cast<size_t>(n));
    auto at = [&](int i, int j) -> packed::Poly& { return w[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            packed::Poly p;
            for (const auto& t : m.at(i, j).terms()) {
                if (!cd.fits(t.e)) throw OverflowError("packed exponent overflow");
                p.t.emplace_back(cd.pack(t.e), t.c);
            }
            std::sort(p.t.begin(), p.t.end(),
                      [](const std::pair<packed::Key, Coeff>& x, const std::pair<packed::Key, Coeff>& y) {
                          return x.first > y.first;
                      });
            p.recompute_max(cd);
            at(i, j) = std::move(p);
        }

    int sign = 1;
    packed::Poly prev;
    prev.t.emplace_back(0, 1);
    for (int k = 0; k < n - 1; ++k) {
        int pi = -1, pj = -1;
        size_t best = SIZE_MAX;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                if (at(i, j).is_zero()) continue;
                int rnz = 0, cnz = 0;
                for (int x = k; x < n; ++x) {
                    rnz += !at(i, x).is_zero();
                    cnz += !at(x, j).is_zero();
                }
                size_t cost = at(i, j).t.size() * 1000 + static_cast<size_t>(rnz) * static_cast<size_t>(cnz);
                if (cost < best) {
                    best = cost;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) return LaurentPoly(nv);
        if (pi != k) {
            for (int j = 0; j < n; ++j) std::swap(at(k, j), at(pi, j));
            sign = -sign;
        }
        if (pj != k) {
            for (int i = 0; i < n; ++i) std::swap(at(i, k), at(i, pj));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                packed::Poly num =
                    packed::sub(packed::mul(at(k, k), at(i, j), cd), packed::mul(at(i, k), at(k, j), cd), cd);
                at(i, j) = num.is_zero() ? num : packed::div_exact(num, prev, cd);
            }
            at(i, k) = packed::Poly();
        }
        prev = at(k, k);
    }
    packed::Poly d = at(n - 1, n - 1);
    std::vector<Term> ts;
    ts.reserve(d.t.size());
    for (auto& [key, c] : d.t) ts.push_back({cd.unpack(key), sign < 0 ? -c : c});
    return LaurentPoly::from_sorted_terms(nv, std::move(ts)).times_term(unit_total, 1);
}

}  // namespace detail

// Fraction-free Bareiss elimination. Rows are first cleared to honest
// polynomials by factoring out unit monomials; every division is exact.
inline LaurentPoly det_bareiss(const LaurentMatrix& m) {
    const int n = m.n;
    const int nv = m.nvars();
    if (n == 0) return LaurentPoly::constant(nv, 1);

    LaurentMatrix w = m;
    Exps unit_total(nv);
    for (int i = 0; i < n; ++i) {
        Exps mn(nv);
        bool any = false, first = true;
        for (int j = 0; j < n; ++j) {
            const LaurentPoly& e = w.at(i, j);
            if (e.is_zero()) continue;
            Exps em = e.min_exps();
            for (int v = 0; v < nv; ++v)
                if (first || em[v] < mn[v]) mn[v] = em[v];
            first = false;
            any = true;
        }
        if (!any) return LaurentPoly(nv);  // zero row
        Exps shift(nv);
        for (int v = 0; v < nv; ++v) {
            shift[v] = exp_ck(-int(mn[v]));
            unit_total[v] = exp_ck(int(unit_total[v]) + int(mn[v]));
        }
        for (int j = 0; j < n; ++j)
            if (!w.at(i, j).is_zero()) w.at(i, j) = w.at(i, j).times_term(shift, 1);
    }

    if (nv >= 1 && nv <= 9) {
        try {
            return detail::det_bareiss_packed(w, unit_total);
        } catch (const OverflowError&) {
            // exponents outside the packed layout: use the general path
        }
    }

    int sign = 1;
    LaurentPoly prev = LaurentPoly::constant(nv, 1);
    for (int k = 0; k < n - 1; ++k) {
        // Full pivoting, preferring short entries in sparse rows/columns; this
        // keeps fill-in down and defers term growth to the late steps where it
        // is forced by the size of the answer.
        int pi = -1, pj = -1;
        size_t best = SIZE_MAX;
        for (int i = k; i < n; ++i)
            for (int j = k; j < n; ++j) {
                if (w.at(i, j).is_zero()) continue;
                int rnz = 0, cnz = 0;
                for (int x = k; x < n; ++x) {
                    rnz += !w.at(i, x).is_zero();
                    cnz += !w.at(x, j).is_zero();
                }
                size_t cost = w.at(i, j).term_count() * 1000 +
                              static_cast<size_t>(rnz) * static_cast<size_t>(cnz);
                if (cost < best) {
                    best = cost;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) return LaurentPoly(nv);
        if (pi != k) {
            for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pi, j));
            sign = -sign;
        }
        if (pj != k) {
            for (int i = 0; i < n; ++i) std::swap(w.at(i, k), w.at(i, pj));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                LaurentPoly num = w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j);
                w.at(i, j) = num.is_zero() ? num : exact_div(num, prev);
            }
            w.at(i, k) = LaurentPoly(nv);
        }
        prev = w.at(k, k);
    }
    LaurentPoly d = w.at(n - 1, n - 1);
    if (sign < 0) d = -d;
    return d.times_term(unit_total, 1);
}

// Exact determinant; cofactor expansion for tiny sizes, Bareiss otherwise.
inline LaurentPoly det(const LaurentMatrix& m) {
    return m.n <= 4 ? det_cofactor(m) : det_bareiss(m);
}

}  // namespace teichtree
