// Weighted arrangements and the equation system on them: the angle formula
// for cone points, the per-curve Gauss-Bonnet relation, the canonical-class
// and second-Chern-class identities, the Bogomolov-Gieseker quantity, the
// pencil criterion and the limit-cusp classification.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pkarr/lattice.hpp"

namespace pkarr {

struct CurveData {
    std::string name;
    Rational chi;           // Euler characteristic of the normalization
    Rational K_dot;         // K_S . Gamma
    Rational self_int;      // Gamma . Gamma
    Rational class_degree;  // degree of the class (lines: 1)
    Rational beta;          // cone angle 2*pi*beta
    bool has_class_degree = true;
};

enum class BranchKind { regular, z_axis, w_axis };

struct Branch {
    int curve = -1;
    BranchKind kind = BranchKind::regular;
    int count = 1;
};

struct SingularPointData {
    std::string id;
    int p = 1, q = 1;  // coprime, p <= q
    std::vector<Branch> branches;
    Rational alpha;  // derived by alpha_of_point

    // branch count of `curve` weighted 1/p, 1/q on the axes
    Rational d_of(int curve) const {
        Rational d = 0;
        for (const auto& b : branches)
            if (b.curve == curve) {
                switch (b.kind) {
                    case BranchKind::regular: d += b.count; break;
                    case BranchKind::z_axis: d += Rational(b.count, p); break;
                    case BranchKind::w_axis: d += Rational(b.count, q); break;
                }
            }
        return d;
    }
    Rational d_plain_of(int curve) const {
        Rational d = 0;
        for (const auto& b : branches)
            if (b.curve == curve) d += b.count;
        return d;
    }
};

// alpha = (pq/2) (sum_k (beta_k - 1) + (beta_z - 1)/p + (beta_w - 1)/q) + (p+q)/2,
// regular branches counted with multiplicity, absent axes contributing weight 1.
inline Rational alpha_of_point(const SingularPointData& pt, const std::vector<CurveData>& curves) {
    Rational sum = 0;
    int z_seen = 0, w_seen = 0;
    for (const auto& b : pt.branches) {
        if (b.curve < 0 || b.curve >= static_cast<int>(curves.size()))
            throw UnknownCurveReference("branch refers to unknown curve index " +
                                        std::to_string(b.curve));
        Rational defect = curves[static_cast<std::size_t>(b.curve)].beta - 1;
        switch (b.kind) {
            case BranchKind::regular:
                sum += Rational(b.count) * defect;
                break;
            case BranchKind::z_axis:
                z_seen += b.count;
                sum += defect / pt.p;
                break;
            case BranchKind::w_axis:
                w_seen += b.count;
                sum += defect / pt.q;
                break;
        }
    }
    if (z_seen > 1 || w_seen > 1)
        throw IncompleteData("point '" + pt.id + "' has more than one axis branch of a kind");
    return Rational(pt.p) * pt.q / 2 * sum + Rational(pt.p + pt.q) / 2;
}

struct WeightedSystem {
    bool line_mode = false;
    std::shared_ptr<const IncidenceLattice> lattice;  // line mode only
    std::vector<CurveData> curves;
    std::vector<SingularPointData> points;  // the non-normal-crossing singularities
    std::vector<std::vector<long long>> B;  // full symmetric matrix
    Rational c2_surface = 3;
    bool has_class_degrees = true;

    int curve_index(const std::string& name) const {
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].name == name) return static_cast<int>(i);
        throw UnknownCurveReference("unknown curve '" + name + "'");
    }
};

// Assemble the system of a weighted line arrangement: every line is a
// rational curve of degree 1, and the blown-up singularities are the lattice
// points of multiplicity >= 3 with one regular branch per incident line.
inline WeightedSystem make_line_system(std::shared_ptr<const IncidenceLattice> lat,
                                       const std::vector<Rational>& weights) {
    if (static_cast<int>(weights.size()) != lat->n())
        throw WeightsMissing("expected " + std::to_string(lat->n()) + " weights, got " +
                             std::to_string(weights.size()));
    WeightedSystem sys;
    sys.line_mode = true;
    sys.lattice = lat;
    for (int j = 0; j < lat->n(); ++j)
        sys.curves.push_back(CurveData{lat->lines[static_cast<std::size_t>(j)].name, Rational(2),
                                       Rational(-3), Rational(1), Rational(1),
                                       weights[static_cast<std::size_t>(j)]});
    for (int pi : lat->multiple_points()) {
        const auto& lp = lat->points[static_cast<std::size_t>(pi)];
        SingularPointData pt;
        pt.id = point_str(lp.point);
        pt.p = pt.q = 1;
        for (int li : lp.lines) pt.branches.push_back(Branch{li, BranchKind::regular, 1});
        pt.alpha = alpha_of_point(pt, sys.curves);
        sys.points.push_back(std::move(pt));
    }
    BMatrix bm = b_matrix(*lat);
    sys.B = bm.b;
    sys.c2_surface = 3;
    return sys;
}

inline std::vector<Rational> weights_by_name(const IncidenceLattice& lat,
                                             const std::map<std::string, Rational>& w) {
    std::vector<Rational> out;
    for (const auto& l : lat.lines) {
        auto it = w.find(l.name);
        if (it == w.end()) throw WeightsMissing("no weight for line '" + l.name + "'");
        out.push_back(it->second);
    }
    if (w.size() != static_cast<std::size_t>(lat.n()))
        throw WeightsMissing("weight table mentions lines that are not in the arrangement");
    return out;
}

// ---------------------------------------------------------------------------
// Bogomolov-Gieseker quantity and its in-plane gradient
// ---------------------------------------------------------------------------

struct BgReport {
    Rational value;
    // d/d(beta_j) of the quantity after eliminating alpha and using
    // sum(beta-1) = -3; vanishes exactly on solutions of the linear system.
    std::vector<Rational> gradient;
};

inline BgReport bg_value(const WeightedSystem& sys) {
    if (!sys.line_mode) throw IncompleteData("bg_value needs a line arrangement");
    const auto& lat = *sys.lattice;
    const int n = lat.n();
    BgReport rep;
    rep.value = Rational(-3, 2);
    for (const auto& pt : sys.points) rep.value += (pt.alpha - 1) * (pt.alpha - 1);
    for (int j = 0; j < n; ++j) {
        Rational u = 1 - sys.curves[static_cast<std::size_t>(j)].beta;
        rep.value -= u * u * sys.B[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] / 2;
    }
    auto mult_pts = lat.multiple_points();
    for (int j = 0; j < n; ++j) {
        Rational g = 1 + (1 - sys.curves[static_cast<std::size_t>(j)].beta) *
                             sys.B[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < mult_pts.size(); ++i)
            if (lat.point_on_line(mult_pts[i], j)) g -= 1 - sys.points[i].alpha;
        rep.gradient.push_back(g);
    }
    return rep;
}

// The alternative bookkeeping that blows up double points as well. Exact
// relation to the standard value:
//   bg_doubles = bg - 1/4 * sum over double points (beta_j - beta_k)^2,
// so the two agree exactly when the two weights at every double point match.
inline Rational bg_value_doubles_as_singular(const IncidenceLattice& lat,
                                             const std::vector<Rational>& weights) {
    Rational value(-3, 2);
    std::vector<long long> diag(static_cast<std::size_t>(lat.n()), -1);
    for (const auto& p : lat.points) {
        Rational s = 0;
        for (int li : p.lines) {
            s += weights[static_cast<std::size_t>(li)] - 1;
            diag[static_cast<std::size_t>(li)] += 1;
        }
        Rational am1 = s / 2;  // alpha - 1 at a (1,1) point
        value += am1 * am1;
    }
    for (int j = 0; j < lat.n(); ++j) {
        Rational u = 1 - weights[static_cast<std::size_t>(j)];
        value -= u * u * diag[static_cast<std::size_t>(j)] / 2;
    }
    return value;
}

// ---------------------------------------------------------------------------
// The full relation check
// ---------------------------------------------------------------------------

enum class Classification {
    pk_candidate_equality,
    strict_inequality,
    infeasible,
    limit_cusp,
    violation,
};

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::pk_candidate_equality: return "pk_candidate_equality";
        case Classification::strict_inequality: return "strict_inequality";
        case Classification::infeasible: return "infeasible";
        case Classification::limit_cusp: return "limit_cusp";
        case Classification::violation: return "violation";
    }
    return "?";
}

struct PointConstraint {
    std::string point_id;
    Rational sum;  // sum_j d_ij (beta_j - 1)
    bool strict = false;   // sum > -2
    bool boundary = false; // sum == -2 (the cusp equality)
};

struct CheckReport {
    std::vector<Rational> eq1_residuals;  // per curve
    bool eq2_checked = false;
    Rational eq2_residual;
    std::optional<Rational> eq3_residual;  // nullopt: not applicable
    bool gjgk_checked = false;
    std::vector<std::tuple<int, int, Rational>> gjgk_residuals;
    std::vector<bool> beta_strict;      // 0 < beta < 1, per curve
    std::vector<bool> beta_boundary;    // beta in {0, 1}, per curve
    std::vector<PointConstraint> point_constraints;
    std::vector<Rational> alphas;
    std::optional<Rational> bg;  // line mode
    Classification classification = Classification::violation;

    bool equations_hold() const {
        for (const auto& r : eq1_residuals)
            if (r != 0) return false;
        if (eq2_checked && eq2_residual != 0) return false;
        if (eq3_residual && *eq3_residual != 0) return false;
        for (const auto& [j, k, r] : gjgk_residuals)
            if (r != 0) return false;
        return true;
    }
};

inline CheckReport verify_relations(const WeightedSystem& sys) {
    const std::size_t nc = sys.curves.size();
    if (sys.B.size() != nc) throw IncompleteData("B matrix size does not match the curve count");
    for (const auto& row : sys.B)
        if (row.size() != nc) throw IncompleteData("B matrix is not square");

    CheckReport rep;
    bool all_pq_one = true;
    for (const auto& pt : sys.points) all_pq_one = all_pq_one && pt.p == 1 && pt.q == 1;

    // (1) per curve: sum_k B_jk (beta_k - 1) = -2 chi - K.Gamma - sum_i (d_ij (p+q) - 2 dt_ij)
    for (std::size_t j = 0; j < nc; ++j) {
        Rational lhs = 0;
        for (std::size_t k = 0; k < nc; ++k)
            lhs += Rational(sys.B[j][k]) * (sys.curves[k].beta - 1);
        Rational rhs = -2 * sys.curves[j].chi - sys.curves[j].K_dot;
        for (const auto& pt : sys.points)
            rhs -= pt.d_of(static_cast<int>(j)) * (pt.p + pt.q) -
                   2 * pt.d_plain_of(static_cast<int>(j));
        rep.eq1_residuals.push_back(lhs - rhs);
    }

    // (2) sum (beta_j - 1) deg_j = -3 on the plane
    if (sys.has_class_degrees) {
        Rational s = 0;
        for (const auto& c : sys.curves) s += (c.beta - 1) * c.class_degree;
        rep.eq2_checked = true;
        rep.eq2_residual = s + 3;
    }

    // (3) c2 = sum (alpha_i - 1)^2 + 1/2 sum_{j != k} B_jk (beta_j-1)(beta_k-1),
    // valid only when every singular point has p = q = 1
    if (all_pq_one) {
        Rational s = 0;
        for (const auto& pt : sys.points) s += (pt.alpha - 1) * (pt.alpha - 1);
        for (std::size_t j = 0; j < nc; ++j)
            for (std::size_t k = 0; k < nc; ++k)
                if (j != k)
                    s += Rational(sys.B[j][k]) * (sys.curves[j].beta - 1) *
                         (sys.curves[k].beta - 1) / 2;
        rep.eq3_residual = sys.c2_surface - s;
    }

    // Gamma_j . Gamma_k = B_jk + sum_i p q d_ij d_ik  (pairing from class degrees)
    if (sys.has_class_degrees) {
        rep.gjgk_checked = true;
        for (std::size_t j = 0; j < nc; ++j)
            for (std::size_t k = j + 1; k < nc; ++k) {
                Rational expect = sys.curves[j].class_degree * sys.curves[k].class_degree;
                Rational got = Rational(sys.B[j][k]);
                for (const auto& pt : sys.points)
                    got += Rational(pt.p) * pt.q * pt.d_of(static_cast<int>(j)) *
                           pt.d_of(static_cast<int>(k));
                rep.gjgk_residuals.emplace_back(static_cast<int>(j), static_cast<int>(k),
                                                expect - got);
            }
    }

    for (const auto& c : sys.curves) {
        rep.beta_strict.push_back(c.beta > 0 && c.beta < 1);
        rep.beta_boundary.push_back(c.beta == 0 || c.beta == 1);
    }
    for (const auto& pt : sys.points) {
        Rational s = 0;
        for (std::size_t j = 0; j < nc; ++j)
            s += pt.d_of(static_cast<int>(j)) * (sys.curves[j].beta - 1);
        rep.point_constraints.push_back(PointConstraint{pt.id, s, s > -2, s == -2});
        rep.alphas.push_back(pt.alpha);
    }

    if (sys.line_mode) rep.bg = bg_value(sys).value;

    bool constraints_strict = true, boundary_only = true, has_cusp = false;
    for (std::size_t j = 0; j < nc; ++j) {
        if (!rep.beta_strict[j]) {
            constraints_strict = false;
            if (!rep.beta_boundary[j]) boundary_only = false;
        }
    }
    for (const auto& pc : rep.point_constraints) {
        if (!pc.strict) {
            constraints_strict = false;
            if (pc.boundary)
                has_cusp = true;
            else
                boundary_only = false;
        }
    }

    if (!rep.equations_hold()) {
        rep.classification = Classification::violation;
    } else if (constraints_strict) {
        if (!rep.bg || *rep.bg == 0)
            rep.classification = Classification::pk_candidate_equality;
        else if (*rep.bg < 0)
            rep.classification = Classification::strict_inequality;
        else
            rep.classification = Classification::violation;
    } else if (boundary_only && has_cusp) {
        rep.classification = Classification::limit_cusp;
    } else {
        rep.classification = Classification::infeasible;
    }
    return rep;
}

inline void finalize_alphas(WeightedSystem& sys) {
    for (auto& pt : sys.points) pt.alpha = alpha_of_point(pt, sys.curves);
}

// Branch kinds at the singular points are caller data; when they are in
// doubt, enumerate every admissible assignment (at most one z-axis and one
// w-axis branch per point) and report the ones on which every residual of
// relation (1) vanishes.
struct BranchAssignment {
    std::vector<std::vector<BranchKind>> kinds;  // per point, per branch slot
    std::string describe(const WeightedSystem& sys) const {
        std::string out;
        for (std::size_t i = 0; i < kinds.size(); ++i) {
            out += sys.points[i].id + ":";
            for (auto k : kinds[i])
                out += k == BranchKind::regular ? 'r' : (k == BranchKind::z_axis ? 'z' : 'w');
            out += " ";
        }
        return out;
    }
};

inline std::vector<BranchAssignment> branch_assignment_search(WeightedSystem sys,
                                                              std::size_t cap = 1 << 20) {
    double combos = 1;
    for (const auto& pt : sys.points)
        for (std::size_t b = 0; b < pt.branches.size(); ++b) combos *= 3;
    if (combos > static_cast<double>(cap))
        throw ParamOutOfRange("branch assignment search space is too large");

    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (point, branch)
    for (std::size_t i = 0; i < sys.points.size(); ++i)
        for (std::size_t b = 0; b < sys.points[i].branches.size(); ++b) slots.emplace_back(i, b);

    std::vector<BranchAssignment> found;
    std::vector<BranchKind> choice(slots.size(), BranchKind::regular);
    const BranchKind all_kinds[3] = {BranchKind::regular, BranchKind::z_axis, BranchKind::w_axis};

    auto admissible = [&]() {
        for (std::size_t i = 0; i < sys.points.size(); ++i) {
            int z = 0, w = 0;
            for (std::size_t s = 0; s < slots.size(); ++s) {
                if (slots[s].first != i) continue;
                int cnt = sys.points[i].branches[slots[s].second].count;
                if (choice[s] == BranchKind::z_axis) z += cnt;
                if (choice[s] == BranchKind::w_axis) w += cnt;
            }
            if (z > 1 || w > 1) return false;
        }
        return true;
    };

    std::function<void(std::size_t)> rec = [&](std::size_t s) {
        if (s == slots.size()) {
            if (!admissible()) return;
            for (std::size_t t = 0; t < slots.size(); ++t)
                sys.points[slots[t].first].branches[slots[t].second].kind = choice[t];
            finalize_alphas(sys);
            CheckReport rep = verify_relations(sys);
            for (const auto& r : rep.eq1_residuals)
                if (r != 0) return;
            BranchAssignment a;
            a.kinds.resize(sys.points.size());
            for (std::size_t t = 0; t < slots.size(); ++t)
                a.kinds[slots[t].first].push_back(choice[t]);
            found.push_back(std::move(a));
            return;
        }
        for (BranchKind k : all_kinds) {
            choice[s] = k;
            rec(s + 1);
        }
        choice[s] = BranchKind::regular;
    };
    rec(0);
    return found;
}

// ---------------------------------------------------------------------------
// Pencil criterion: the lines meeting L_j at double points must share a
// common point.
// ---------------------------------------------------------------------------

struct PencilLineReport {
    std::string line;
    std::vector<int> partners;
    bool passes = false;
    std::optional<ProjPoint> witness;
};

inline std::vector<PencilLineReport> pencil_criterion(const IncidenceLattice& lat) {
    std::vector<PencilLineReport> out;
    for (int j = 0; j < lat.n(); ++j) {
        PencilLineReport rep;
        rep.line = lat.lines[static_cast<std::size_t>(j)].name;
        for (int pi : lat.per_line[static_cast<std::size_t>(j)]) {
            const auto& lp = lat.points[static_cast<std::size_t>(pi)];
            if (lp.multiplicity() == 2)
                rep.partners.push_back(lp.lines[0] == j ? lp.lines[1] : lp.lines[0]);
        }
        if (rep.partners.size() <= 1) {
            rep.passes = true;
        } else {
            ProjPoint common =
                intersect_lines(lat.lines[static_cast<std::size_t>(rep.partners[0])],
                                lat.lines[static_cast<std::size_t>(rep.partners[1])]);
            rep.passes = true;
            for (std::size_t t = 2; t < rep.partners.size(); ++t)
                if (!on_line(common, lat.lines[static_cast<std::size_t>(rep.partners[t])])) {
                    rep.passes = false;
                    break;
                }
            if (rep.passes) rep.witness = common;
        }
        out.push_back(std::move(rep));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Limit arrangements with a cusp
// ---------------------------------------------------------------------------

struct CuspProperties {
    int point_index = -1;  // lattice index of the cusp
    bool line_through_every_point = true;        // property (a)
    bool defect_transfer = true;                 // property (b), multiplicity >= 3 only
    std::vector<std::string> missing_lines;      // witnesses for (a)
    std::vector<std::string> defect_failures;    // witnesses for (b)
};

struct LimitCuspReport {
    std::vector<int> cusps;                   // lattice indices, multiplicity >= 3
    std::vector<std::string> boundary_weights;  // lines with beta in {0,1}
    std::vector<CuspProperties> properties;
};

inline LimitCuspReport classify_limit_cusp(const IncidenceLattice& lat,
                                           const std::vector<Rational>& weights) {
    if (static_cast<int>(weights.size()) != lat.n())
        throw WeightsMissing("weight count does not match the arrangement");
    LimitCuspReport rep;
    for (int j = 0; j < lat.n(); ++j)
        if (weights[static_cast<std::size_t>(j)] == 0 || weights[static_cast<std::size_t>(j)] == 1)
            rep.boundary_weights.push_back(lat.lines[static_cast<std::size_t>(j)].name);

    for (int pi : lat.multiple_points()) {
        Rational s = 0;
        for (int li : lat.points[static_cast<std::size_t>(pi)].lines)
            s += weights[static_cast<std::size_t>(li)] - 1;
        if (s == -2) rep.cusps.push_back(pi);
    }

    auto find_line = [&](const std::array<FieldElement, 3>& coeffs) -> int {
        for (int j = 0; j < lat.n(); ++j)
            if (proportional(coeffs, lat.lines[static_cast<std::size_t>(j)].coeffs)) return j;
        return -1;
    };

    for (int ci : rep.cusps) {
        CuspProperties props;
        props.point_index = ci;
        const auto& cusp = lat.points[static_cast<std::size_t>(ci)];
        for (std::size_t yi = 0; yi < lat.points.size(); ++yi) {
            if (static_cast<int>(yi) == ci) continue;
            const auto& y = lat.points[yi];
            // Does [cusp, y] belong to the arrangement?  If the two points
            // share an arrangement line that line is [cusp, y] itself.
            int join = -1;
            for (int li : y.lines)
                if (lat.point_on_line(ci, li)) { join = li; break; }
            if (join < 0) join = find_line(line_through(cusp.point, y.point));
            if (join < 0) {
                props.line_through_every_point = false;
                props.missing_lines.push_back(point_str(y.point));
                if (y.multiplicity() >= 3) {
                    props.defect_transfer = false;
                    props.defect_failures.push_back(point_str(y.point) + " (no joining line)");
                }
                continue;
            }
            if (y.multiplicity() < 3) continue;
            // (b): the defects of the lines through y avoiding the cusp must
            // sum to the defect of the joining line.
            Rational sum = 0;
            for (int li : y.lines)
                if (li != join) sum += weights[static_cast<std::size_t>(li)] - 1;
            if (sum != weights[static_cast<std::size_t>(join)] - 1) {
                props.defect_transfer = false;
                props.defect_failures.push_back(point_str(y.point));
            }
        }
        rep.properties.push_back(std::move(props));
    }
    return rep;
}

}  // namespace pkarr
