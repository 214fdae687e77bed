// Weight-space solver: exact elimination of the affine system
//   sum_k B_jk (beta_k - 1) = -1 for all j,   sum_k (beta_k - 1) = -3,
// an open-region feasibility certificate by slack maximization, and the
// Bogomolov-Gieseker quantity restricted to the solution space.
#pragma once

#include <sstream>

#include "pkarr/simplex.hpp"
#include "pkarr/weighted.hpp"

namespace pkarr {

struct BgZeroReport {
    bool identically_zero = false;
    bool solved = false;  // exact roots attempted (dimension <= 1)
    std::vector<Rational> rational_roots;
    std::vector<std::string> symbolic_roots;  // "(a +- sqrt(D))/c" with exact entries
    bool no_zero = false;                     // solved and the zero locus is empty
};

struct SolveReport {
    bool solvable = false;  // the affine system is consistent
    int dimension = -1;
    std::vector<Rational> particular;  // a weight vector (beta)
    std::vector<QVector> basis;        // directions within the solution space
    bool interior_feasible = false;
    Rational max_slack;
    std::optional<std::vector<Rational>> interior_point;
    QuadForm bg_on_space;
    BgZeroReport bg_zero;
};

// Exact zero locus of the restricted quadratic: decided outright for zero or
// one free parameter, reported as coefficients only in higher dimension.
// Irrational roots come back in symbolic (a +- sqrt(D))/c form.
inline BgZeroReport bg_zero_locus(const QuadForm& f) {
    BgZeroReport zr;
    zr.identically_zero = f.identically_zero();
    const std::size_t dim = f.linear.size();
    if (dim == 0) {
        zr.solved = true;
        zr.no_zero = !zr.identically_zero;
        return zr;
    }
    if (dim > 1 || zr.identically_zero) return zr;
    zr.solved = true;
    Rational q = f.quad[0][0], l = f.linear[0], c = f.constant;
    if (q == 0) {
        if (l != 0)
            zr.rational_roots.push_back(-c / l);
        else
            zr.no_zero = true;  // c != 0, else identically zero
        return zr;
    }
    Rational disc = l * l - 4 * q * c;
    if (disc < 0) {
        zr.no_zero = true;
    } else if (auto root = rational_sqrt(disc)) {
        zr.rational_roots.push_back((-l + *root) / (2 * q));
        if (*root != 0) zr.rational_roots.push_back((-l - *root) / (2 * q));
    } else {
        std::ostringstream os;
        os << "(" << rat_str(-l) << " +- sqrt(" << rat_str(disc) << "))/" << rat_str(2 * q);
        zr.symbolic_roots.push_back(os.str());
    }
    return zr;
}

namespace solve_detail {

// Affine expression c0 + sum_a c[a] t_a over the free parameters.
struct Affine {
    Rational c0;
    QVector c;
};

inline void add_scaled_square(QuadForm& f, const Rational& scale, const Affine& e) {
    f.constant += scale * e.c0 * e.c0;
    for (std::size_t a = 0; a < e.c.size(); ++a) {
        f.linear[a] += 2 * scale * e.c0 * e.c[a];
        for (std::size_t b = a; b < e.c.size(); ++b)
            f.quad[a][b] += scale * e.c[a] * e.c[b] * (a == b ? 1 : 2);
    }
}

}  // namespace solve_detail

inline SolveReport solve_weights(const IncidenceLattice& lat, const BMatrix& bm) {
    const int n = lat.n();
    SolveReport rep;

    // Unknowns gamma_j = beta_j - 1.
    QMatrix a;
    QVector b;
    for (int j = 0; j < n; ++j) {
        QVector row(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k)
            row[static_cast<std::size_t>(k)] =
                Rational(bm.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
        a.push_back(std::move(row));
        b.push_back(Rational(-1));
    }
    a.push_back(QVector(static_cast<std::size_t>(n), Rational(1)));
    b.push_back(Rational(-3));

    auto sol = solve_affine(a, b);
    if (!sol) return rep;  // infeasible; dimension stays -1
    rep.solvable = true;
    rep.dimension = sol->dimension();
    for (const auto& g : sol->particular) rep.particular.push_back(g + 1);
    rep.basis = sol->basis;

    const auto mult_pts = lat.multiple_points();
    const std::size_t dim = rep.basis.size();

    // Open-region feasibility: maximize a uniform slack s over
    //   beta_j(t) >= s,  beta_j(t) <= 1 - s,  point sums >= -2 + s.
    // Strict feasibility holds exactly when the optimum is positive.
    {
        QMatrix lp_a;
        QVector lp_b;
        auto push = [&](const QVector& tcoeffs, const Rational& scoeff, const Rational& rhs) {
            QVector row = tcoeffs;
            row.push_back(scoeff);
            lp_a.push_back(std::move(row));
            lp_b.push_back(rhs);
        };
        for (int j = 0; j < n; ++j) {
            QVector up(dim), down(dim);
            for (std::size_t aix = 0; aix < dim; ++aix) {
                up[aix] = rep.basis[aix][static_cast<std::size_t>(j)];
                down[aix] = -rep.basis[aix][static_cast<std::size_t>(j)];
            }
            // s - beta_j(t) <= 0
            push(down, Rational(1), rep.particular[static_cast<std::size_t>(j)]);
            // beta_j(t) + s <= 1
            push(up, Rational(1), 1 - rep.particular[static_cast<std::size_t>(j)]);
        }
        for (int pi : mult_pts) {
            QVector row(dim, Rational(0));
            Rational rhs = 2;
            for (int li : lat.points[static_cast<std::size_t>(pi)].lines) {
                rhs += rep.particular[static_cast<std::size_t>(li)] - 1;
                for (std::size_t aix = 0; aix < dim; ++aix)
                    row[aix] -= rep.basis[aix][static_cast<std::size_t>(li)];
            }
            push(row, Rational(1), rhs);
        }
        QVector obj(dim + 1, Rational(0));
        obj[dim] = 1;
        LpResult lp = lp_maximize(lp_a, lp_b, obj);
        if (lp.status != LpStatus::optimal)
            throw InternalError("slack LP must be bounded and feasible");
        rep.max_slack = lp.value;
        rep.interior_feasible = lp.value > 0;
        if (rep.interior_feasible) {
            std::vector<Rational> pt = rep.particular;
            for (std::size_t aix = 0; aix < dim; ++aix)
                for (int j = 0; j < n; ++j)
                    pt[static_cast<std::size_t>(j)] +=
                        lp.x[aix] * rep.basis[aix][static_cast<std::size_t>(j)];
            rep.interior_point = std::move(pt);
        }
    }

    // bg restricted to the solution space, as an exact quadratic in t.
    {
        QuadForm f;
        f.constant = Rational(-3, 2);
        f.linear.assign(dim, Rational(0));
        f.quad.assign(dim, QVector(dim, Rational(0)));
        for (int pi : mult_pts) {
            solve_detail::Affine am1{Rational(0), QVector(dim, Rational(0))};  // alpha - 1
            for (int li : lat.points[static_cast<std::size_t>(pi)].lines) {
                am1.c0 += (rep.particular[static_cast<std::size_t>(li)] - 1) / 2;
                for (std::size_t aix = 0; aix < dim; ++aix)
                    am1.c[aix] += rep.basis[aix][static_cast<std::size_t>(li)] / 2;
            }
            solve_detail::add_scaled_square(f, Rational(1), am1);
        }
        for (int j = 0; j < n; ++j) {
            solve_detail::Affine u{1 - rep.particular[static_cast<std::size_t>(j)],
                                   QVector(dim, Rational(0))};
            for (std::size_t aix = 0; aix < dim; ++aix)
                u.c[aix] = -rep.basis[aix][static_cast<std::size_t>(j)];
            Rational scale =
                Rational(-bm.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)], 2);
            solve_detail::add_scaled_square(f, scale, u);
        }
        rep.bg_on_space = std::move(f);
    }

    rep.bg_zero = bg_zero_locus(rep.bg_on_space);
    return rep;
}

}  // namespace pkarr
