// Lines and points of the projective plane over a number field. Points are
// kept in canonical form (first nonzero coordinate scaled to 1) so projective
// equality is plain coefficient comparison.
#pragma once

#include <array>
#include <string>

#include "pkarr/field.hpp"

namespace pkarr {

struct ProjLine {
    std::string name;
    std::array<FieldElement, 3> coeffs;  // a*x + b*y + c*z = 0
};

struct ProjPoint {
    std::array<FieldElement, 3> coords;  // canonical

    friend bool operator==(const ProjPoint& p, const ProjPoint& q) {
        return p.coords == q.coords;
    }
};

inline ProjPoint canonical_point(std::array<FieldElement, 3> v) {
    for (auto& c : v)
        if (!c.is_zero()) {
            FieldElement inv = c.inverse();
            for (auto& x : v) x = x * inv;
            return ProjPoint{std::move(v)};
        }
    throw InternalError("canonical_point: zero vector");
}

inline std::array<FieldElement, 3> cross(const std::array<FieldElement, 3>& u,
                                         const std::array<FieldElement, 3>& v) {
    return {u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

inline bool proportional(const std::array<FieldElement, 3>& u,
                         const std::array<FieldElement, 3>& v) {
    auto c = cross(u, v);
    return c[0].is_zero() && c[1].is_zero() && c[2].is_zero();
}

inline ProjPoint intersect_lines(const ProjLine& l1, const ProjLine& l2) {
    auto c = cross(l1.coeffs, l2.coeffs);
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
        throw ProportionalLines("lines '" + l1.name + "' and '" + l2.name + "' are proportional");
    return canonical_point(std::move(c));
}

// Dual construction: the unique line through two distinct points.
inline std::array<FieldElement, 3> line_through(const ProjPoint& p, const ProjPoint& q) {
    auto c = cross(p.coords, q.coords);
    if (c[0].is_zero() && c[1].is_zero() && c[2].is_zero())
        throw InternalError("line_through: coincident points");
    return c;
}

inline bool on_line(const ProjPoint& p, const ProjLine& l) {
    FieldElement acc = p.coords[0] * l.coeffs[0] + p.coords[1] * l.coeffs[1] +
                       p.coords[2] * l.coeffs[2];
    return acc.is_zero();
}

inline std::string fe_key(const FieldElement& e) {
    std::string s = "[";
    for (std::size_t i = 0; i < e.coeffs().size(); ++i) {
        if (i) s += ",";
        s += rat_str(e.coeffs()[i]);
    }
    return s + "]";
}

// Serialization of the canonical form; doubles as the grouping/ordering key.
inline std::string point_key(const ProjPoint& p) {
    return fe_key(p.coords[0]) + ":" + fe_key(p.coords[1]) + ":" + fe_key(p.coords[2]);
}

inline std::string point_str(const ProjPoint& p) {
    return "(" + p.coords[0].str() + " : " + p.coords[1].str() + " : " + p.coords[2].str() + ")";
}

}  // namespace pkarr
