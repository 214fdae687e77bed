// Exact rational simplex for the open-region feasibility certificates.
// Maximizes c.x subject to A x <= b with free variables, via the usual
// split x = x+ - x- and a two-phase tableau. Bland's rule throughout, so
// termination is unconditional.
#pragma once

#include <vector>

#include "pkarr/linalg.hpp"

namespace pkarr {

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    QVector x;  // a maximizer (free-variable coordinates)
};

namespace simplex_detail {

// One pivoting pass on the tableau; returns false when no entering column
// improves the objective (row 0 holds the negated reduced costs).
inline bool run(QMatrix& tab, std::vector<int>& basis, std::size_t ncols) {
    const std::size_t nrows = tab.size() - 1;
    for (;;) {
        std::size_t enter = ncols;
        for (std::size_t c = 0; c + 1 < ncols; ++c)
            if (tab[0][c] < 0) { enter = c; break; }  // Bland: lowest index
        if (enter == ncols) return true;
        std::size_t leave = 0;
        bool found = false;
        Rational best;
        for (std::size_t r = 1; r <= nrows; ++r) {
            if (tab[r][enter] <= 0) continue;
            Rational ratio = tab[r][ncols - 1] / tab[r][enter];
            if (!found || ratio < best ||
                (ratio == best && basis[r - 1] < basis[leave - 1])) {
                best = ratio;
                leave = r;
                found = true;
            }
        }
        if (!found) return false;  // unbounded
        Rational piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t r = 0; r <= nrows; ++r) {
            if (r == leave || tab[r][enter] == 0) continue;
            Rational f = tab[r][enter];
            for (std::size_t c = 0; c < ncols; ++c) tab[r][c] -= f * tab[leave][c];
        }
        basis[leave - 1] = static_cast<int>(enter);
    }
}

}  // namespace simplex_detail

inline LpResult lp_maximize(const QMatrix& a, const QVector& b, const QVector& c) {
    const std::size_t m = a.size();
    const std::size_t nfree = c.size();
    const std::size_t nsplit = 2 * nfree;
    // columns: x+ (nfree) | x- (nfree) | slacks (m) | artificials (as needed) | rhs
    std::size_t nart = 0;
    for (const auto& bi : b) (void)bi;
    std::vector<bool> needs_art(m, false);
    for (std::size_t r = 0; r < m; ++r)
        if (b[r] < 0) { needs_art[r] = true; ++nart; }

    const std::size_t ntot = nsplit + m + nart;
    QMatrix tab(m + 1, QVector(ntot + 1, Rational(0)));
    std::vector<int> basis(m, -1);
    std::size_t art = nsplit + m;
    for (std::size_t r = 0; r < m; ++r) {
        int sgn = needs_art[r] ? -1 : 1;
        for (std::size_t j = 0; j < nfree; ++j) {
            tab[r + 1][j] = sgn * a[r][j];
            tab[r + 1][nfree + j] = -sgn * a[r][j];
        }
        tab[r + 1][nsplit + r] = sgn;  // slack
        tab[r + 1][ntot] = sgn * b[r];
        if (needs_art[r]) {
            tab[r + 1][art] = 1;
            basis[r] = static_cast<int>(art);
            ++art;
        } else {
            basis[r] = static_cast<int>(nsplit + r);
        }
    }

    if (nart > 0) {
        // Phase 1: drive the artificials to zero.
        for (std::size_t j = nsplit + m; j < ntot; ++j) tab[0][j] = 1;
        for (std::size_t r = 0; r < m; ++r)
            if (needs_art[r])
                for (std::size_t cix = 0; cix <= ntot; ++cix) tab[0][cix] -= tab[r + 1][cix];
        simplex_detail::run(tab, basis, ntot + 1);
        if (tab[0][ntot] != 0) return LpResult{LpStatus::infeasible, Rational(0), {}};
        // Pivot any artificial still in the basis out (or drop a zero row).
        for (std::size_t r = 0; r < m; ++r) {
            if (basis[r] < static_cast<int>(nsplit + m)) continue;
            std::size_t enter = ntot;
            for (std::size_t cix = 0; cix < nsplit + m; ++cix)
                if (tab[r + 1][cix] != 0) { enter = cix; break; }
            if (enter == ntot) continue;  // redundant row
            Rational piv = tab[r + 1][enter];
            for (auto& v : tab[r + 1]) v /= piv;
            for (std::size_t rr = 0; rr <= m; ++rr) {
                if (rr == r + 1 || tab[rr][enter] == 0) continue;
                Rational f = tab[rr][enter];
                for (std::size_t cix = 0; cix <= ntot; ++cix)
                    tab[rr][cix] -= f * tab[r + 1][cix];
            }
            basis[r] = static_cast<int>(enter);
        }
    }

    // Phase 2 objective: maximize c.x  ==  row0 = -c on x+ / +c on x-.
    for (std::size_t cix = 0; cix <= ntot; ++cix) tab[0][cix] = 0;
    for (std::size_t j = 0; j < nfree; ++j) {
        tab[0][j] = -c[j];
        tab[0][nfree + j] = c[j];
    }
    for (std::size_t j = nsplit + m; j < ntot; ++j) tab[0][j] = Rational(1);  // keep artificials out
    for (std::size_t r = 0; r < m; ++r) {
        int bc = basis[r];
        if (tab[0][static_cast<std::size_t>(bc)] == 0) continue;
        Rational f = tab[0][static_cast<std::size_t>(bc)];
        for (std::size_t cix = 0; cix <= ntot; ++cix) tab[0][cix] -= f * tab[r + 1][cix];
    }
    bool bounded = simplex_detail::run(tab, basis, ntot + 1);
    if (!bounded) return LpResult{LpStatus::unbounded, Rational(0), {}};

    QVector xs(nsplit, Rational(0));
    for (std::size_t r = 0; r < m; ++r)
        if (basis[r] >= 0 && basis[r] < static_cast<int>(nsplit))
            xs[static_cast<std::size_t>(basis[r])] = tab[r + 1][ntot];
    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(nfree, Rational(0));
    for (std::size_t j = 0; j < nfree; ++j) res.x[j] = xs[j] - xs[nfree + j];
    res.value = 0;
    for (std::size_t j = 0; j < nfree; ++j) res.value += c[j] * res.x[j];
    return res;
}

}  // namespace pkarr
