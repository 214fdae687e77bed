// Small dense exact linear algebra: reduced row echelon form, affine solve
// with nullspace basis, all over Q.
#pragma once

#include <optional>
#include <vector>

#include "pkarr/rational.hpp"

namespace pkarr {

using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

struct AffineSolution {
    QVector particular;
    std::vector<QVector> basis;  // nullspace of the coefficient matrix
    int dimension() const { return static_cast<int>(basis.size()); }
};

// Solve A x = b exactly. Returns nullopt when inconsistent.
inline std::optional<AffineSolution> solve_affine(QMatrix a, QVector b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<int> pivot_col_of_row;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
            b[i] -= f * b[r];
        }
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;

    std::vector<bool> is_pivot(cols, false);
    for (int c : pivot_col_of_row) is_pivot[static_cast<std::size_t>(c)] = true;

    AffineSolution sol;
    sol.particular.assign(cols, Rational(0));
    for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
        sol.particular[static_cast<std::size_t>(pivot_col_of_row[i])] = b[i];
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVector v(cols, Rational(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivot_col_of_row.size(); ++i)
            v[static_cast<std::size_t>(pivot_col_of_row[i])] = -a[i][c];
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

// Quadratic polynomial in several variables, kept as exact coefficients:
// value = c + l.t + sum_{a<=b} q[a][b] t_a t_b.
struct QuadForm {
    Rational constant;
    QVector linear;
    QMatrix quad;  // upper triangular, quad[a][b] for a <= b

    bool identically_zero() const {
        if (constant != 0) return false;
        for (const auto& l : linear)
            if (l != 0) return false;
        for (const auto& row : quad)
            for (const auto& q : row)
                if (q != 0) return false;
        return true;
    }

    Rational eval(const QVector& t) const {
        Rational v = constant;
        for (std::size_t a = 0; a < linear.size(); ++a) v += linear[a] * t[a];
        for (std::size_t a = 0; a < linear.size(); ++a)
            for (std::size_t b = a; b < linear.size(); ++b) v += quad[a][b] * t[a] * t[b];
        return v;
    }
};

}  // namespace pkarr
