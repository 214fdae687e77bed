// Residue-matrix models of logarithmic connections on a (1,1) cone: the
// constraint system on the residues, the explicit three-line solution, the
// dimension of the solution space, and symbolic flatness / torsion checks.
#pragma once

#include <array>

#include "pkarr/poly2.hpp"

namespace pkarr {

template <class S>
struct Mat2 {
    S a, b, c, d;  // row major: [a b; c d]

    friend Mat2 operator+(const Mat2& x, const Mat2& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2 operator-(const Mat2& x, const Mat2& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2 operator*(const Mat2& x, const S& s) {
        return {x.a * s, x.b * s, x.c * s, x.d * s};
    }
    S trace() const { return a + d; }
    S det() const { return a * d - b * c; }
    bool is_zero() const {
        return ScalarOps<S>::is_zero(a) && ScalarOps<S>::is_zero(b) &&
               ScalarOps<S>::is_zero(c) && ScalarOps<S>::is_zero(d);
    }
    std::array<S, 2> apply(const std::array<S, 2>& v) const {
        return {a * v[0] + b * v[1], c * v[0] + d * v[1]};
    }
    Mat2 inverse() const {
        S dt = det();
        S idt = ScalarOps<S>::inv(dt);
        S m1 = ScalarOps<S>::from_rational(idt, Rational(-1));
        return {d * idt, b * idt * m1, c * idt * m1, a * idt};
    }
};

template <class S>
Mat2<S> commutator(const Mat2<S>& x, const Mat2<S>& y) {
    return x * y - y * x;
}

// Line s*z + t*w = 0 through the origin; its tangent direction is (t, -s).
template <class S>
struct OriginLine {
    S s, t;
    std::array<S, 2> tangent() const {
        S m1 = ScalarOps<S>::from_rational(s, Rational(-1));
        return {t, s * m1};
    }
};

template <class S>
struct ResidueSystem {
    std::vector<OriginLine<S>> lines;
    std::vector<Rational> weights;
    std::vector<Mat2<S>> matrices;
    Rational alpha;  // cone angle; alpha - 1 = (1/2) sum (beta_i - 1)
};

inline Rational cone_alpha(const std::vector<Rational>& weights) {
    Rational s = 0;
    for (const auto& w : weights) s += w - 1;
    return 1 + s / 2;
}

// The unique three-line system with poles at z = 0, w = 0, z + w = 0.
inline ResidueSystem<Rational> build_three_line(const Rational& b1, const Rational& b2,
                                                const Rational& b3) {
    Rational c23 = (b2 + b3 - b1 - 1) / 2;  // carried by the z+w pole, top row
    Rational c13 = (b1 + b3 - b2 - 1) / 2;  // carried by the z+w pole, bottom row
    ResidueSystem<Rational> sys;
    sys.lines = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)},
                 {Rational(1), Rational(1)}};
    sys.weights = {b1, b2, b3};
    sys.alpha = cone_alpha(sys.weights);
    sys.matrices = {
        Mat2<Rational>{b1 - 1, Rational(0), -c13, Rational(0)},   // residue at z = 0
        Mat2<Rational>{Rational(0), -c23, Rational(0), b2 - 1},   // residue at w = 0
        Mat2<Rational>{c23, c23, c13, c13},                       // residue at z + w = 0
    };
    return sys;
}

// ---------------------------------------------------------------------------
// Constraint + flatness + torsion verification. Flatness is decided by the
// cleared-denominator polynomial identity
//   sum_{i<j} [A_i, A_j] (s_i t_j - s_j t_i) prod_{k != i,j} l_k == 0,
// torsion by  sum_i A_i(-v_i) prod_{k != i} l_k == 0  (and term-wise).
// ---------------------------------------------------------------------------

template <class S>
struct FlatReport {
    bool constraints_ok = false;
    bool flat = false;
    bool torsion_free = false;
    bool torsion_termwise = false;
    bool blowup_residue_ok = false;
    std::array<Poly2<S>, 4> curvature;  // entry-wise matrix polynomial
    std::string detail;

    bool all_ok() const { return constraints_ok && flat && torsion_free && blowup_residue_ok; }
};

template <class S>
FlatReport<S> verify_flat_torsion(const ResidueSystem<S>& sys) {
    const std::size_t n = sys.lines.size();
    if (sys.matrices.size() != n || sys.weights.size() != n)
        throw IncompleteData("residue system needs one matrix and one weight per line");
    const S& like = sys.lines[0].s;
    auto rat = [&](const Rational& q) { return ScalarOps<S>::from_rational(like, q); };
    const S zero = rat(Rational(0));

    FlatReport<S> rep;
    std::ostringstream detail;

    // (a) sum A_i = (alpha - 1) Id, (b) traces, (c) kernels.
    Mat2<S> sum{zero, zero, zero, zero};
    for (const auto& m : sys.matrices) sum = sum + m;
    Rational am1 = cone_alpha(sys.weights) - 1;
    Mat2<S> target{rat(am1), zero, zero, rat(am1)};
    rep.blowup_residue_ok = (sum - target).is_zero();
    if (sys.alpha != cone_alpha(sys.weights)) {
        rep.blowup_residue_ok = false;
        detail << "declared alpha differs from 1 + (1/2) sum(beta-1); ";
    }
    rep.constraints_ok = rep.blowup_residue_ok;
    for (std::size_t i = 0; i < n; ++i) {
        if (!ScalarOps<S>::is_zero(sys.matrices[i].trace() - rat(sys.weights[i] - 1))) {
            rep.constraints_ok = false;
            detail << "trace(A_" << i << ") != beta-1; ";
        }
        auto img = sys.matrices[i].apply(sys.lines[i].tangent());
        if (!ScalarOps<S>::is_zero(img[0]) || !ScalarOps<S>::is_zero(img[1])) {
            rep.constraints_ok = false;
            detail << "A_" << i << " does not kill its line; ";
        }
    }

    std::vector<Poly2<S>> lin;
    for (const auto& l : sys.lines) lin.push_back(Poly2<S>::linear(l.s, l.t));

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            S wedge = sys.lines[i].s * sys.lines[j].t - sys.lines[j].s * sys.lines[i].t;
            Poly2<S> scale = Poly2<S>::monomial(0, 0, wedge);
            for (std::size_t k = 0; k < n; ++k)
                if (k != i && k != j) scale = scale * lin[k];
            Mat2<S> com = commutator(sys.matrices[i], sys.matrices[j]);
            rep.curvature[0] = rep.curvature[0] + scale * com.a;
            rep.curvature[1] = rep.curvature[1] + scale * com.b;
            rep.curvature[2] = rep.curvature[2] + scale * com.c;
            rep.curvature[3] = rep.curvature[3] + scale * com.d;
        }
    rep.flat = rep.curvature[0].is_zero() && rep.curvature[1].is_zero() &&
               rep.curvature[2].is_zero() && rep.curvature[3].is_zero();

    Poly2<S> torsion0, torsion1;
    rep.torsion_termwise = true;
    for (std::size_t i = 0; i < n; ++i) {
        auto v = sys.lines[i].tangent();
        auto img = sys.matrices[i].apply({v[0] * rat(Rational(-1)), v[1] * rat(Rational(-1))});
        Poly2<S> prod = Poly2<S>::monomial(0, 0, rat(Rational(1)));
        for (std::size_t k = 0; k < n; ++k)
            if (k != i) prod = prod * lin[k];
        Poly2<S> t0 = prod * img[0], t1 = prod * img[1];
        if (!t0.is_zero() || !t1.is_zero()) rep.torsion_termwise = false;
        torsion0 = torsion0 + t0;
        torsion1 = torsion1 + t1;
    }
    rep.torsion_free = torsion0.is_zero() && torsion1.is_zero();
    rep.detail = detail.str();
    return rep;
}

// ---------------------------------------------------------------------------
// Solve the residue equations with the rank-one ansatz A_i = c_i (x) (s_i,t_i),
// which encodes the kernel condition identically; the remaining constraints
// are linear in the c_i. One relation (total trace) is shared between the
// trace equations and the sum equation, so n distinct lines leave an
// (n-3)-dimensional space.
// ---------------------------------------------------------------------------

template <class S>
struct ResidueSolveReport {
    int dimension = 0;
    ResidueSystem<S> particular;
    std::vector<std::vector<Mat2<S>>> basis;  // each entry: one matrix per line
};

namespace connection_detail {

template <class S>
struct GenericAffine {
    std::vector<S> particular;
    std::vector<std::vector<S>> basis;
};

template <class S>
std::optional<GenericAffine<S>> solve_affine_generic(std::vector<std::vector<S>> a,
                                                     std::vector<S> b, const S& zero) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<int> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && ScalarOps<S>::is_zero(a[piv][c])) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        S inv = ScalarOps<S>::inv(a[r][c]);
        for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * inv;
        b[r] = b[r] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || ScalarOps<S>::is_zero(a[i][c])) continue;
            S f = a[i][c];
            S m1 = ScalarOps<S>::from_rational(f, Rational(-1));
            for (std::size_t k = c; k < cols; ++k) a[i][k] = a[i][k] + a[r][k] * f * m1;
            b[i] = b[i] + b[r] * f * m1;
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (!ScalarOps<S>::is_zero(b[i])) return std::nullopt;
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    GenericAffine<S> sol;
    sol.particular.assign(cols, zero);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        sol.particular[static_cast<std::size_t>(pivots[i])] = b[i];
    const S one = ScalarOps<S>::from_rational(zero, Rational(1));
    const S minus1 = ScalarOps<S>::from_rational(zero, Rational(-1));
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<S> v(cols, zero);
        v[c] = one;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<std::size_t>(pivots[i])] = a[i][c] * minus1;
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

}  // namespace connection_detail

template <class S>
ResidueSolveReport<S> solve_residues(const std::vector<OriginLine<S>>& lines,
                                     const std::vector<Rational>& weights) {
    const std::size_t n = lines.size();
    if (n < 3) throw ParamOutOfRange("residue systems need at least 3 lines");
    if (weights.size() != n) throw WeightsMissing("one weight per line required");
    const S& like = lines[0].s;
    auto rat = [&](const Rational& q) { return ScalarOps<S>::from_rational(like, q); };
    const S zero = rat(Rational(0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (ScalarOps<S>::is_zero(lines[i].s * lines[j].t - lines[j].s * lines[i].t))
                throw DegenerateConfiguration("repeated line in the residue system");

    // unknowns: (c_i1, c_i2), i = 0..n-1
    const std::size_t cols = 2 * n;
    std::vector<std::vector<S>> a;
    std::vector<S> b;
    Rational am1 = cone_alpha(weights) - 1;
    auto row = [&]() { return std::vector<S>(cols, zero); };
    {
        auto r11 = row(), r12 = row(), r21 = row(), r22 = row();
        for (std::size_t i = 0; i < n; ++i) {
            r11[2 * i] = lines[i].s;
            r12[2 * i] = lines[i].t;
            r21[2 * i + 1] = lines[i].s;
            r22[2 * i + 1] = lines[i].t;
        }
        a.push_back(r11); b.push_back(rat(am1));
        a.push_back(r12); b.push_back(zero);
        a.push_back(r21); b.push_back(zero);
        a.push_back(r22); b.push_back(rat(am1));
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto tr = row();
        tr[2 * i] = lines[i].s;
        tr[2 * i + 1] = lines[i].t;
        a.push_back(tr);
        b.push_back(rat(weights[i] - 1));
    }

    auto sol = connection_detail::solve_affine_generic<S>(a, b, zero);
    if (!sol) throw InternalError("residue constraint system is inconsistent");

    auto to_matrices = [&](const std::vector<S>& x) {
        std::vector<Mat2<S>> ms;
        for (std::size_t i = 0; i < n; ++i) {
            S c1 = x[2 * i], c2 = x[2 * i + 1];
            ms.push_back(Mat2<S>{c1 * lines[i].s, c1 * lines[i].t, c2 * lines[i].s,
                                 c2 * lines[i].t});
        }
        return ms;
    };

    ResidueSolveReport<S> rep;
    rep.dimension = static_cast<int>(sol->basis.size());
    rep.particular.lines = lines;
    rep.particular.weights = weights;
    rep.particular.alpha = cone_alpha(weights);
    rep.particular.matrices = to_matrices(sol->particular);
    for (const auto& v : sol->basis) rep.basis.push_back(to_matrices(v));
    return rep;
}

// Gauge change taking a three-line system to the standard poles z, w, z+w;
// residues conjugate accordingly. Any choice of normalization satisfying the
// constraints is acceptable; this one sends l1 -> z, l2 -> w, l3 -> z+w.
template <class S>
ResidueSystem<S> normalize_three(const ResidueSystem<S>& sys) {
    if (sys.lines.size() != 3) throw ParamOutOfRange("normalize_three needs exactly 3 lines");
    auto wedge = [&](const OriginLine<S>& x, const OriginLine<S>& y) {
        return x.s * y.t - y.s * x.t;
    };
    const auto &l1 = sys.lines[0], &l2 = sys.lines[1], &l3 = sys.lines[2];
    auto v1 = l1.tangent(), v2 = l2.tangent();
    S c1 = wedge(l3, l1), c2 = wedge(l3, l2);
    // columns p1 = c1 * v2, p2 = c2 * v1
    Mat2<S> p{v2[0] * c1, v1[0] * c2, v2[1] * c1, v1[1] * c2};
    Mat2<S> pinv = p.inverse();
    ResidueSystem<S> out;
    const S one = ScalarOps<S>::from_rational(l1.s, Rational(1));
    const S zero = ScalarOps<S>::from_rational(l1.s, Rational(0));
    out.lines = {{one, zero}, {zero, one}, {one, one}};
    out.weights = sys.weights;
    out.alpha = sys.alpha;
    for (const auto& m : sys.matrices) out.matrices.push_back(pinv * m * p);
    return out;
}

}  // namespace pkarr
