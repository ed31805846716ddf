#pragma once

// Exact integer matrices, kernel bases over Z, and characteristic polynomials.

#include <algorithm>
#include <string>
#include <vector>

#include "checked_int.hpp"
#include "errors.hpp"
#include "laurent.hpp"

namespace teichtree {

struct IntMatrix {
    int rows = 0, cols = 0;
    std::vector<Coeff> a;  // row-major

    IntMatrix() = default;
    IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}

    Coeff& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    Coeff at(int i, int j) const { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols != y.rows) throw MathError("matrix size mismatch");
        IntMatrix r(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int k = 0; k < x.cols; ++k) {
                Coeff v = x.at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < y.cols; ++j)
                    if (y.at(k, j) != 0) r.at(i, j) = add_ck(r.at(i, j), mul_ck(v, y.at(k, j)));
            }
        return r;
    }

    friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }

    std::vector<Coeff> apply(const std::vector<Coeff>& v) const {
        if (static_cast<int>(v.size()) != cols) throw MathError("vector size mismatch");
        std::vector<Coeff> r(static_cast<size_t>(rows), 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (at(i, j) != 0) r[static_cast<size_t>(i)] = add_ck(r[static_cast<size_t>(i)], mul_ck(at(i, j), v[static_cast<size_t>(j)]));
        return r;
    }
};

// Basis of the integer kernel of a square matrix. Columns of `basis` are the
// generators; the lattice they span is saturated (the quotient is
// torsion-free), each column is primitive, and the first nonzero entry of
// every column is positive. Variable names x0..x{r-1} accompany the columns.
struct KernelBasis {
    IntMatrix basis;  // |V| x r
    std::vector<std::string> variables;

    int rank() const { return basis.cols; }

    std::vector<Coeff> column(int j) const {
        std::vector<Coeff> v(static_cast<size_t>(basis.rows));
        for (int i = 0; i < basis.rows; ++i) v[static_cast<size_t>(i)] = basis.at(i, j);
        return v;
    }
};

// Kernel via column reduction with a tracked unimodular transform: A*U = H in
// column echelon form; the columns of U over H's zero columns are a Z-basis of
// ker(A), automatically saturated and primitive.
inline KernelBasis kernel_basis(const IntMatrix& A) {
    if (A.rows != A.cols) throw MathError("kernel_basis: square matrix required");
    const int n = A.rows;
    IntMatrix H = A;
    IntMatrix U = IntMatrix::identity(n);

    int lead_col = 0;
    for (int row = 0; row < n && lead_col < n; ++row) {
        // Euclid across columns lead_col..n-1 on this row.
        while (true) {
            int nz = -1;
            for (int j = lead_col; j < n; ++j)
                if (H.at(row, j) != 0) {
                    if (nz < 0 || std::abs(H.at(row, j)) < std::abs(H.at(row, nz))) nz = j;
                }
            if (nz < 0) break;
            if (nz != lead_col)
                for (int i = 0; i < n; ++i) {
                    std::swap(H.a[static_cast<size_t>(i) * n + static_cast<size_t>(nz)],
                              H.a[static_cast<size_t>(i) * n + static_cast<size_t>(lead_col)]);
                    std::swap(U.a[static_cast<size_t>(i) * n + static_cast<size_t>(nz)],
                              U.a[static_cast<size_t>(i) * n + static_cast<size_t>(lead_col)]);
                }
            bool reduced = true;
            for (int j = lead_col + 1; j < n; ++j) {
                Coeff q = H.at(row, j) / H.at(row, lead_col);
                if (q != 0) {
                    for (int i = 0; i < n; ++i) {
                        H.at(i, j) = sub_ck(H.at(i, j), mul_ck(q, H.at(i, lead_col)));
                        U.at(i, j) = sub_ck(U.at(i, j), mul_ck(q, U.at(i, lead_col)));
                    }
                }
                if (H.at(row, j) != 0) reduced = false;
            }
            if (reduced) {
                ++lead_col;
                break;
            }
        }
    }

    std::vector<int> kernel_cols;
    for (int j = 0; j < n; ++j) {
        bool zero = true;
        for (int i = 0; i < n; ++i)
            if (H.at(i, j) != 0) {
                zero = false;
                break;
            }
        if (zero) kernel_cols.push_back(j);
    }

    // Deterministic order and sign: sort by (first nonzero row, entries lex),
    // then make the first nonzero entry positive.
    std::vector<std::vector<Coeff>> cols;
    for (int j : kernel_cols) {
        std::vector<Coeff> v(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = U.at(i, j);
        int fn = 0;
        while (fn < n && v[static_cast<size_t>(fn)] == 0) ++fn;
        if (fn < n && v[static_cast<size_t>(fn)] < 0)
            for (auto& x : v) x = -x;
        cols.push_back(std::move(v));
    }
    std::sort(cols.begin(), cols.end(), [](const std::vector<Coeff>& x, const std::vector<Coeff>& y) {
        auto fn = [](const std::vector<Coeff>& v) {
            size_t i = 0;
            while (i < v.size() && v[i] == 0) ++i;
            return i;
        };
        size_t fx = fn(x), fy = fn(y);
        if (fx != fy) return fx < fy;
        return x < y;
    });

    KernelBasis kb;
    kb.basis = IntMatrix(n, static_cast<int>(cols.size()));
    for (int j = 0; j < static_cast<int>(cols.size()); ++j)
        for (int i = 0; i < n; ++i) kb.basis.at(i, j) = cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
    for (int j = 0; j < kb.basis.cols; ++j) kb.variables.push_back("x" + std::to_string(j));
    return kb;
}

// det(uI - M) as a one-variable polynomial (variable index 0 = u).
inline LaurentPoly char_poly(const IntMatrix& M) {
    if (M.rows != M.cols) throw MathError("char_poly: square matrix required");
    LaurentMatrix A(M.rows, 1);
    LaurentPoly u = LaurentPoly::variable(1, 0);
    for (int i = 0; i < M.rows; ++i)
        for (int j = 0; j < M.cols; ++j) {
            LaurentPoly v = LaurentPoly::constant(1, -M.at(i, j));
            if (i == j) v += u;
            A.at(i, j) = v;
        }
    return det(A);
}

}  // namespace teichtree
