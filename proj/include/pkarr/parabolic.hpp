// Divisor classes on the plane blown up at the multiple points, and the
// parabolic Chern / degree / stability-margin computations for the pulled
// back tangent bundle.
#pragma once

#include "pkarr/linalg.hpp"
#include "pkarr/weighted.hpp"

namespace pkarr {

// Class a.h + sum a_i e_i with pairing diag(1, -1, ..., -1).
struct DivisorClass {
    Rational h;
    QVector e;

    friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) {
        a.h += b.h;
        for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] += b.e[i];
        return a;
    }
    friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) {
        a.h -= b.h;
        for (std::size_t i = 0; i < a.e.size(); ++i) a.e[i] -= b.e[i];
        return a;
    }
    friend DivisorClass operator*(DivisorClass a, const Rational& s) {
        a.h *= s;
        for (auto& x : a.e) x *= s;
        return a;
    }
};

inline Rational pair(const DivisorClass& a, const DivisorClass& b) {
    Rational v = a.h * b.h;
    if (a.e.size() != b.e.size()) throw SpecMismatch("divisor classes have different blow-up counts");
    for (std::size_t i = 0; i < a.e.size(); ++i) v -= a.e[i] * b.e[i];
    return v;
}

struct ParabolicReport {
    DivisorClass par_ch1;
    Rational pardeg;
    Rational par_ch2;
    Rational nu_total;
    long long polarization_N = 0;
    bool below_recommended_N = false;
};

namespace parabolic_detail {

struct Admissible {
    std::vector<int> mult_pts;
    std::vector<Rational> alphas;  // aligned with mult_pts
};

inline Admissible alphas_of(const IncidenceLattice& lat, const std::vector<Rational>& weights,
                            bool diagnostic) {
    if (static_cast<int>(weights.size()) != lat.n())
        throw WeightsMissing("weight count does not match the arrangement");
    Admissible adm;
    adm.mult_pts = lat.multiple_points();
    for (int pi : adm.mult_pts) {
        Rational s = 0;
        for (int li : lat.points[static_cast<std::size_t>(pi)].lines)
            s += weights[static_cast<std::size_t>(li)] - 1;
        adm.alphas.push_back(1 + s / 2);
    }
    if (diagnostic) return adm;
    for (const auto& w : weights)
        if (!(w > 0 && w < 1))
            throw InadmissibleWeights("weights must satisfy 0 < beta < 1");
    for (const auto& a : adm.alphas)
        if (!(a > 0 && a < 1))
            throw InadmissibleWeights("cone angles at multiple points must lie in (0,1)");
    return adm;
}

}  // namespace parabolic_detail

inline ParabolicReport parabolic_chern(const IncidenceLattice& lat,
                                       const std::vector<Rational>& weights, long long N,
                                       bool diagnostic = false) {
    auto adm = parabolic_detail::alphas_of(lat, weights, diagnostic);
    const std::size_t k = adm.mult_pts.size();
    if (N <= static_cast<long long>(k))
        throw ParamOutOfRange("polarization needs N > k = " + std::to_string(k));
    BMatrix bm = b_matrix(lat);

    ParabolicReport rep;
    rep.polarization_N = N;
    rep.par_ch1 = DivisorClass{Rational(3), QVector(k, Rational(0))};
    for (int j = 0; j < lat.n(); ++j) {
        // proper transform of the line: h - sum of the exceptional classes it meets
        DivisorClass dj{Rational(1), QVector(k, Rational(0))};
        for (std::size_t i = 0; i < k; ++i)
            if (lat.point_on_line(adm.mult_pts[i], j)) dj.e[i] = -1;
        rep.par_ch1 = rep.par_ch1 - dj * (1 - weights[static_cast<std::size_t>(j)]);
    }
    for (std::size_t i = 0; i < k; ++i) {
        DivisorClass ei{Rational(0), QVector(k, Rational(0))};
        ei.e[i] = 1;
        rep.par_ch1 = rep.par_ch1 - ei * (2 * (1 - adm.alphas[i]));
    }
    DivisorClass ln{Rational(N), QVector(k, Rational(1))};
    rep.pardeg = pair(rep.par_ch1, ln);

    rep.par_ch2 = Rational(3, 2);
    for (int j = 0; j < lat.n(); ++j) {
        Rational u = 1 - weights[static_cast<std::size_t>(j)];
        rep.par_ch2 -= u;
        rep.par_ch2 -= u * u * bm.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] / 2;
    }
    for (const auto& a : adm.alphas) rep.par_ch2 += (1 - a) * (1 - a);

    rep.nu_total = 0;
    for (std::size_t i = 0; i < k; ++i)
        for (int li : lat.points[static_cast<std::size_t>(adm.mult_pts[i])].lines)
            rep.nu_total += (1 - weights[static_cast<std::size_t>(li)]) * (1 - adm.alphas[i]);
    return rep;
}

// ---------------------------------------------------------------------------
// Stability through the explicit proof bounds. The polarization threshold is
//   N > max( k/min(alpha), 2k/min(beta_j + beta_k), 3k/(1 - max(beta)) ),
// and for such N the degree bounds on sub-line bundles give the margins
// below, all of which must be negative.
// ---------------------------------------------------------------------------

struct StabilityReport {
    long long N_min = 0;
    Rational threshold_alpha, threshold_pairs, threshold_top;
    long long N_used = 0;
    std::vector<std::pair<std::string, Rational>> margins_d1;  // per lattice point
    Rational margin_generic;
    Rational margin_d0;
    bool all_negative = false;
    bool pencil_sum_guard_ok = false;  // sum_{x not on L_j}(1-beta_j) > 1 + 2k/N everywhere
};

inline StabilityReport stability_bounds(const IncidenceLattice& lat,
                                        const std::vector<Rational>& weights,
                                        std::optional<long long> n_override = {}) {
    auto adm = parabolic_detail::alphas_of(lat, weights, false);
    const long long k = static_cast<long long>(adm.mult_pts.size());
    if (k < 1) throw InadmissibleWeights("stability bounds need at least one multiple point");

    Rational min_alpha = adm.alphas[0], max_beta = weights[0];
    for (const auto& a : adm.alphas) min_alpha = std::min(min_alpha, a);
    for (const auto& w : weights) max_beta = std::max(max_beta, w);
    Rational min_pair;
    {
        // two smallest weights
        std::vector<Rational> ws = weights;
        std::sort(ws.begin(), ws.end());
        min_pair = ws[0] + ws[1];
    }

    StabilityReport rep;
    rep.threshold_alpha = Rational(k) / min_alpha;
    rep.threshold_pairs = Rational(2 * k) / min_pair;
    rep.threshold_top = Rational(3 * k) / (1 - max_beta);
    Rational worst = std::max({rep.threshold_alpha, rep.threshold_pairs, rep.threshold_top});
    rep.N_min = static_cast<long long>(strict_ceil(worst));
    rep.N_used = n_override.value_or(rep.N_min);
    const long long N = rep.N_used;

    Rational sum_one_minus_alpha = 0;
    for (const auto& a : adm.alphas) sum_one_minus_alpha += 1 - a;
    Rational total_defect = 0;  // sum_j (1 - beta_j)
    for (const auto& w : weights) total_defect += 1 - w;

    rep.all_negative = true;
    rep.pencil_sum_guard_ok = true;
    Rational guard_rhs = 1 + Rational(2 * k) / N;
    for (const auto& lp : lat.points) {
        Rational off = total_defect;
        for (int li : lp.lines) off -= 1 - weights[static_cast<std::size_t>(li)];
        Rational margin = Rational(N + k) - Rational(N) * off + sum_one_minus_alpha;
        rep.margins_d1.emplace_back(point_str(lp.point), margin);
        if (margin >= 0) rep.all_negative = false;
        if (!(off > guard_rhs)) rep.pencil_sum_guard_ok = false;
    }
    rep.margin_generic = Rational(N + k) - Rational(N) * total_defect + sum_one_minus_alpha;
    if (rep.margin_generic >= 0) rep.all_negative = false;
    rep.margin_d0 = Rational(2 * k) - Rational(N) * (1 - max_beta) + sum_one_minus_alpha;
    if (rep.margin_d0 >= 0) rep.all_negative = false;
    if (!(total_defect > guard_rhs)) rep.pencil_sum_guard_ok = false;
    return rep;
}

}  // namespace pkarr
