// Intersection lattice of a line arrangement: all pairwise intersection
// points grouped by canonical coordinates, their multiplicities, the
// incidence data and the B-matrix built from it.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "pkarr/projective.hpp"

namespace pkarr {

struct LatticePoint {
    ProjPoint point;
    std::vector<int> lines;  // incident line indices, sorted
    int multiplicity() const { return static_cast<int>(lines.size()); }
};

struct IncidenceLattice {
    FieldSpecPtr field;
    std::vector<ProjLine> lines;
    std::vector<LatticePoint> points;        // ordered by point_key
    std::vector<std::vector<int>> per_line;  // point indices on each line

    int n() const { return static_cast<int>(lines.size()); }

    // multiplicity -> number of points, highest multiplicity first
    std::map<int, int, std::greater<int>> signature() const {
        std::map<int, int, std::greater<int>> sig;
        for (const auto& p : points) sig[p.multiplicity()]++;
        return sig;
    }

    // indices of the points of multiplicity >= 3
    std::vector<int> multiple_points() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i].multiplicity() >= 3) out.push_back(static_cast<int>(i));
        return out;
    }

    bool point_on_line(int point_idx, int line_idx) const {
        const auto& ls = points[static_cast<std::size_t>(point_idx)].lines;
        return std::binary_search(ls.begin(), ls.end(), line_idx);
    }

    // lattice index of the intersection point of two lines
    int point_of_pair(int j, int k) const {
        for (int pi : per_line[static_cast<std::size_t>(j)])
            if (point_on_line(pi, k)) return pi;
        throw InternalError("lattice misses a line pair");
    }
};

inline IncidenceLattice build_lattice(FieldSpecPtr field, std::vector<ProjLine> lines) {
    const int n = static_cast<int>(lines.size());
    if (n < 2) throw ParamOutOfRange("an arrangement needs at least 2 lines");
    for (int i = 0; i < n; ++i) {
        if (lines[i].coeffs[0].is_zero() && lines[i].coeffs[1].is_zero() &&
            lines[i].coeffs[2].is_zero())
            throw ParseError("line '" + lines[i].name + "' has zero coefficients");
        for (int j = i + 1; j < n; ++j) {
            if (lines[i].name == lines[j].name)
                throw DuplicateLine("duplicate line name '" + lines[i].name + "'");
            if (proportional(lines[i].coeffs, lines[j].coeffs))
                throw DuplicateLine("lines '" + lines[i].name + "' and '" + lines[j].name +
                                    "' are proportional");
        }
    }

    std::map<std::string, std::pair<ProjPoint, std::vector<int>>> grouped;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ProjPoint p = intersect_lines(lines[i], lines[j]);
            auto& slot = grouped.emplace(point_key(p), std::make_pair(p, std::vector<int>{}))
                             .first->second;
            slot.second.push_back(i);
            slot.second.push_back(j);
        }

    IncidenceLattice lat;
    lat.field = std::move(field);
    lat.lines = std::move(lines);
    lat.per_line.resize(static_cast<std::size_t>(n));
    Int pair_count = 0;
    for (auto& [key, slot] : grouped) {
        LatticePoint lp;
        lp.point = slot.first;
        std::sort(slot.second.begin(), slot.second.end());
        slot.second.erase(std::unique(slot.second.begin(), slot.second.end()), slot.second.end());
        lp.lines = std::move(slot.second);
        int mu = lp.multiplicity();
        pair_count += Int(mu) * (mu - 1) / 2;
        int idx = static_cast<int>(lat.points.size());
        for (int li : lp.lines) lat.per_line[static_cast<std::size_t>(li)].push_back(idx);
        lat.points.push_back(std::move(lp));
    }
    if (pair_count != Int(n) * (n - 1) / 2)
        throw InternalError("lattice pair count does not match C(n,2)");
    return lat;
}

// ---------------------------------------------------------------------------
// B-matrix. Off-diagonal entries are 1 exactly on double-point pairs; the
// diagonal counts the points of multiplicity >= 3 on the line, minus one.
// ---------------------------------------------------------------------------

struct BMatrix {
    std::vector<std::vector<long long>> b;
    int n() const { return static_cast<int>(b.size()); }
};

inline BMatrix b_matrix(const IncidenceLattice& lat) {
    const int n = lat.n();
    BMatrix bm;
    bm.b.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (const auto& p : lat.points) {
        int mu = p.multiplicity();
        if (mu == 2) {
            bm.b[static_cast<std::size_t>(p.lines[0])][static_cast<std::size_t>(p.lines[1])] = 1;
            bm.b[static_cast<std::size_t>(p.lines[1])][static_cast<std::size_t>(p.lines[0])] = 1;
        } else {
            for (int li : p.lines) bm.b[static_cast<std::size_t>(li)][static_cast<std::size_t>(li)] += 1;
        }
    }
    for (int j = 0; j < n; ++j) bm.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] -= 1;
    return bm;
}

// ---------------------------------------------------------------------------
// Symmetric arrangements: 3m lines, each meeting the others at exactly m+1
// points.
// ---------------------------------------------------------------------------

struct SymmetricReport {
    bool is_symmetric = false;
    std::optional<int> m;
    std::vector<int> per_line_counts;
};

inline SymmetricReport symmetric_check(const IncidenceLattice& lat) {
    SymmetricReport rep;
    for (const auto& pts : lat.per_line) rep.per_line_counts.push_back(static_cast<int>(pts.size()));
    if (lat.n() % 3 != 0) return rep;
    int m = lat.n() / 3;
    for (int c : rep.per_line_counts)
        if (c != m + 1) return rep;
    rep.is_symmetric = true;
    rep.m = m;
    return rep;
}

// ---------------------------------------------------------------------------
// Hirzebruch-type count. The identity sum(mu^2) = N^2 - N + sum(mu) holds for
// every arrangement; the bound sum(mu) >= N^2/3 + N applies when every
// multiplicity is below 2N/3.
// ---------------------------------------------------------------------------

struct HirzebruchReport {
    Int sum_mu = 0;
    Rational bound;
    Rational identity_residual;
    int max_mult = 0;
    bool applicable = false;
    bool bound_holds = false;
    bool equality = false;
};

inline HirzebruchReport hirzebruch_check(const IncidenceLattice& lat) {
    HirzebruchReport rep;
    const int n = lat.n();
    Int sum_mu = 0, sum_mu2 = 0;
    for (const auto& p : lat.points) {
        int mu = p.multiplicity();
        sum_mu += mu;
        sum_mu2 += Int(mu) * mu;
        rep.max_mult = std::max(rep.max_mult, mu);
    }
    rep.sum_mu = sum_mu;
    rep.identity_residual = Rational(sum_mu2 - (Int(n) * n - n + sum_mu));
    rep.bound = Rational(Int(n) * n, 3) + n;
    rep.applicable = Rational(rep.max_mult) < Rational(2 * n, 3);
    if (rep.applicable) {
        rep.bound_holds = Rational(sum_mu) >= rep.bound;
        rep.equality = Rational(sum_mu) == rep.bound;
    }
    return rep;
}

}  // namespace pkarr
