// Built-in arrangements with their default weights. Every entry is
// self-validated: building it and running build_lattice must reproduce the
// expected multiplicity signature.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "pkarr/lattice.hpp"

namespace pkarr {

struct CatalogArrangement {
    std::string name;
    FieldSpecPtr field;
    std::vector<ProjLine> lines;
    std::map<std::string, Rational> weights;  // defaults, by line name
    std::vector<std::string> flags;           // e.g. "boundary-weight", "limit-candidate"
};

struct CatalogOptions {
    std::optional<long long> param;
    std::optional<Rational> beta;                 // quadrilateral biased family
    std::optional<std::array<Rational, 3>> wxyz;  // seven_lines coordinate weights
};

namespace catalog_detail {

inline FieldElement fe(const FieldSpecPtr& s, long long v) {
    return FieldElement::from_rational(s, Rational(v));
}

inline ProjLine line(const FieldSpecPtr& s, std::string name, long long a, long long b, long long c) {
    return ProjLine{std::move(name), {fe(s, a), fe(s, b), fe(s, c)}};
}

inline CatalogArrangement triangle() {
    auto s = FieldSpec::rationals();
    CatalogArrangement arr;
    arr.name = "triangle";
    arr.field = s;
    arr.lines = {line(s, "x", 1, 0, 0), line(s, "y", 0, 1, 0), line(s, "z", 0, 0, 1)};
    for (const auto& l : arr.lines) arr.weights[l.name] = Rational(0);
    arr.flags = {"boundary-weight"};
    return arr;
}

inline CatalogArrangement near_pencil(long long n) {
    if (n < 3) throw ParamOutOfRange("near_pencil needs n >= 3");
    auto s = FieldSpec::rationals();
    CatalogArrangement arr;
    arr.name = "near_pencil";
    arr.field = s;
    arr.lines.push_back(line(s, "p0", 0, 1, 0));  // y = 0
    for (long long j = 0; j + 1 < n; ++j)
        arr.lines.push_back(line(s, "p" + std::to_string(j + 1), 1, -j, 0));  // x - j*y
    arr.lines.push_back(line(s, "e", 0, 0, 1));
    Rational pencil_w(n - 2, n);
    for (const auto& l : arr.lines) arr.weights[l.name] = (l.name == "e") ? Rational(0) : pencil_w;
    arr.flags = {"boundary-weight"};
    return arr;
}

inline CatalogArrangement quadrilateral(const std::optional<Rational>& beta) {
    auto s = FieldSpec::rationals();
    CatalogArrangement arr;
    arr.name = "quadrilateral";
    arr.field = s;
    arr.lines = {line(s, "x", 1, 0, 0),   line(s, "y", 0, 1, 0),   line(s, "z", 0, 0, 1),
                 line(s, "x-y", 1, -1, 0), line(s, "y-z", 0, 1, -1), line(s, "x-z", 1, 0, -1)};
    // The lines x, y, x-y pass through (0:0:1); a one-parameter family gives
    // them weight beta and the complementary lines weight 1-beta.
    Rational b = beta.value_or(Rational(1, 2));
    if (beta && (b <= 0 || b >= 1)) throw ParamOutOfRange("biased weight must be in (0,1)");
    arr.weights = {{"x", b},          {"y", b},          {"x-y", b},
                   {"z", 1 - b},      {"y-z", 1 - b},    {"x-z", 1 - b}};
    return arr;
}

inline CatalogArrangement ceva_ext(long long m) {
    if (m < 2) throw ParamOutOfRange("ceva_ext needs m >= 2");
    auto s = cyclotomic_field(m);
    CatalogArrangement arr;
    arr.name = "ceva_ext";
    arr.field = s;
    FieldElement zeta = FieldElement::generator(s);
    auto zero = FieldElement::zero(s), one = FieldElement::one(s);
    for (long long a = 0; a < m; ++a) {
        FieldElement za = zeta.pow(a);
        arr.lines.push_back(ProjLine{"xy" + std::to_string(a), {one, -za, zero}});
        arr.lines.push_back(ProjLine{"yz" + std::to_string(a), {zero, one, -za}});
        arr.lines.push_back(ProjLine{"zx" + std::to_string(a), {-za, zero, one}});
    }
    arr.lines.push_back(ProjLine{"x", {one, zero, zero}});
    arr.lines.push_back(ProjLine{"y", {zero, one, zero}});
    arr.lines.push_back(ProjLine{"z", {zero, zero, one}});
    Rational w(m, m + 1);
    for (const auto& l : arr.lines) arr.weights[l.name] = w;
    return arr;
}

// The 12 lines are generated from the 9 inflection points of a cubic (the
// lines through at least 3 of them), which doubles as an oracle for their
// coordinates.
inline CatalogArrangement hesse() {
    auto s = cyclotomic_field(3);  // t^2 + t + 1
    CatalogArrangement arr;
    arr.name = "hesse";
    arr.field = s;
    FieldElement omega = FieldElement::generator(s);
    auto zero = FieldElement::zero(s), one = FieldElement::one(s);
    std::vector<ProjPoint> base;
    for (long long a = 0; a < 3; ++a) {
        FieldElement wa = omega.pow(a);
        base.push_back(canonical_point({zero, one, -wa}));
        base.push_back(canonical_point({one, zero, -wa}));
        base.push_back(canonical_point({one, -wa, zero}));
    }
    std::map<std::string, std::pair<std::array<FieldElement, 3>, std::set<int>>> cands;
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = i + 1; j < base.size(); ++j) {
            auto l = line_through(base[i], base[j]);
            auto canon = canonical_point(l);  // same normalization works for line coefficients
            auto& slot = cands.emplace(point_key(canon), std::make_pair(canon.coords, std::set<int>{}))
                             .first->second;
            slot.second.insert(static_cast<int>(i));
            slot.second.insert(static_cast<int>(j));
        }
    int idx = 0;
    for (const auto& [key, slot] : cands) {
        if (slot.second.size() < 3) continue;
        if (slot.second.size() != 3)
            throw InternalError("hesse generator: a line meets more than 3 base points");
        ++idx;
        std::string name = (idx < 10 ? "L0" : "L") + std::to_string(idx);
        arr.lines.push_back(ProjLine{name, slot.first});
    }
    if (arr.lines.size() != 12) throw InternalError("hesse generator: expected 12 lines");
    for (const auto& l : arr.lines) arr.weights[l.name] = Rational(3, 4);
    return arr;
}

inline CatalogArrangement seven_lines(const std::optional<std::array<Rational, 3>>& wxyz) {
    auto s = FieldSpec::rationals();
    CatalogArrangement arr;
    arr.name = "seven_lines";
    arr.field = s;
    arr.lines = {line(s, "x", 1, 0, 0),      line(s, "y", 0, 1, 0),
                 line(s, "z", 0, 0, 1),      line(s, "ppp", 1, 1, 1),
                 line(s, "ppm", 1, 1, -1),   line(s, "pmp", 1, -1, 1),
                 line(s, "pmm", 1, -1, -1)};
    std::array<Rational, 3> w =
        wxyz.value_or(std::array<Rational, 3>{Rational(2, 3), Rational(2, 3), Rational(2, 3)});
    if (w[0] + w[1] + w[2] != 2)
        throw ParamOutOfRange("seven_lines coordinate weights must satisfy wx+wy+wz = 2");
    arr.weights = {{"x", w[0]}, {"y", w[1]}, {"z", w[2]},
                   {"ppp", Rational(1, 2)}, {"ppm", Rational(1, 2)},
                   {"pmp", Rational(1, 2)}, {"pmm", Rational(1, 2)}};
    return arr;
}

// Extended sides and mirror axes of a regular k-gon. Q(zeta_{4k}) contains
// both cos(pi j / k) and sin(pi j / k), so all coefficients are exact.
inline CatalogArrangement polygon_mirrors(long long k) {
    if (k < 3) throw ParamOutOfRange("polygon_mirrors needs k >= 3");
    auto s = cyclotomic_field(4 * k);
    CatalogArrangement arr;
    arr.name = "polygon_mirrors";
    arr.field = s;
    FieldElement zeta = FieldElement::generator(s);  // e^{i pi / (2k)}
    FieldElement half = FieldElement::from_rational(s, Rational(1, 2));
    FieldElement two_i = zeta.pow(k) + zeta.pow(k);
    FieldElement inv2i = two_i.inverse();
    auto cosn = [&](long long num) {  // cos(pi * num / (2k))
        return (zeta.pow(num) + zeta.pow(-num)) * half;
    };
    auto sinn = [&](long long num) {
        return (zeta.pow(num) - zeta.pow(-num)) * inv2i;
    };
    auto zero = FieldElement::zero(s);
    for (long long j = 0; j < k; ++j) {
        // side normal angle (2j+1)pi/k, offset cos(pi/k)
        arr.lines.push_back(ProjLine{"side" + std::to_string(j),
                                     {cosn(2 * (2 * j + 1)), sinn(2 * (2 * j + 1)), -cosn(2)}});
    }
    for (long long j = 0; j < k; ++j) {
        arr.lines.push_back(ProjLine{"axis" + std::to_string(j), {-sinn(2 * j), cosn(2 * j), zero}});
    }
    for (const auto& l : arr.lines)
        arr.weights[l.name] =
            l.name.starts_with("side") ? Rational(2 * k - 1, 2 * k) : Rational(k - 1, k);
    arr.flags = {"limit-candidate"};
    return arr;
}

}  // namespace catalog_detail

inline std::vector<std::string> catalog_names() {
    return {"triangle", "near_pencil", "quadrilateral", "ceva_ext",
            "hesse",    "seven_lines", "polygon_mirrors"};
}

inline bool catalog_entry_needs_param(const std::string& name) {
    return name == "near_pencil" || name == "ceva_ext" || name == "polygon_mirrors";
}

inline CatalogArrangement catalog_build(const std::string& name, const CatalogOptions& opt = {}) {
    using namespace catalog_detail;
    if (catalog_entry_needs_param(name) && !opt.param)
        throw ParamOutOfRange("catalog entry '" + name + "' needs an integer parameter");
    if (name == "triangle") return triangle();
    if (name == "near_pencil") return near_pencil(*opt.param);
    if (name == "quadrilateral") return quadrilateral(opt.beta);
    if (name == "ceva_ext") return ceva_ext(*opt.param);
    if (name == "hesse") return hesse();
    if (name == "seven_lines") return seven_lines(opt.wxyz);
    if (name == "polygon_mirrors") return polygon_mirrors(*opt.param);
    throw UnknownEntry("unknown catalog entry '" + name + "'");
}

// Expected multiplicity signature, pinned per entry (parametric entries use
// closed forms cross-checked against the brute-force lattice in the tests).
inline std::map<int, int> catalog_expected_signature(const std::string& name,
                                                     std::optional<long long> param = {}) {
    auto need = [&](const char* what) -> long long {
        if (!param) throw ParamOutOfRange(std::string("signature of ") + what + " needs a parameter");
        return *param;
    };
    if (name == "triangle") return {{2, 3}};
    if (name == "near_pencil") {
        long long n = need("near_pencil");
        return {{static_cast<int>(n), 1}, {2, static_cast<int>(n)}};
    }
    if (name == "quadrilateral") return {{3, 4}, {2, 3}};
    if (name == "ceva_ext") {
        long long m = need("ceva_ext");
        std::map<int, int> sig{{static_cast<int>(m) + 2, 3}, {2, 3 * static_cast<int>(m)}};
        sig[3] += static_cast<int>(m * m);
        return sig;
    }
    if (name == "hesse") return {{4, 9}, {2, 12}};
    if (name == "seven_lines") return {{3, 6}, {2, 3}};
    if (name == "polygon_mirrors") {
        long long k = need("polygon_mirrors");
        std::map<int, int> sig;
        sig[static_cast<int>(k)] += 1;                       // the center
        sig[3] += static_cast<int>(k * (k - 1) / 2);         // vertices and side crossings
        sig[2] += static_cast<int>(k);                       // edge midpoints
        return sig;
    }
    throw UnknownEntry("unknown catalog entry '" + name + "'");
}

inline bool catalog_validate(const std::string& name, const CatalogOptions& opt = {}) {
    CatalogArrangement arr = catalog_build(name, opt);
    IncidenceLattice lat = build_lattice(arr.field, arr.lines);
    auto sig = lat.signature();
    std::map<int, int> got(sig.begin(), sig.end());
    if (got != catalog_expected_signature(name, opt.param)) return false;
    // Entries in the symmetric family must also pass the symmetric check.
    SymmetricReport sym = symmetric_check(lat);
    if (name == "quadrilateral" && !(sym.is_symmetric && sym.m == 2)) return false;
    if (name == "hesse" && !(sym.is_symmetric && sym.m == 4)) return false;
    if (name == "ceva_ext" && !(sym.is_symmetric && sym.m == *opt.param + 1)) return false;
    if (name == "triangle" && !(sym.is_symmetric && sym.m == 1)) return false;
    return true;
}

}  // namespace pkarr
