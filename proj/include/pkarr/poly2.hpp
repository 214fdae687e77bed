// Sparse bivariate polynomials with exact coefficients, the carrier for the
// cleared-denominator curvature and torsion identities.
#pragma once

#include <map>
#include <sstream>
#include <utility>

#include "pkarr/field.hpp"

namespace pkarr {

// Scalar glue so the same code runs over Q and over a number field. The
// `like` argument supplies the field spec when one is needed.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static Rational zero(const Rational&) { return Rational(0); }
    static Rational from_rational(const Rational&, const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational inv(const Rational& x) {
        if (x == 0) throw InversionOfZero("division by zero");
        return 1 / x;
    }
    static std::string str(const Rational& x) { return rat_str(x); }
};

template <>
struct ScalarOps<FieldElement> {
    static FieldElement zero(const FieldElement& like) { return FieldElement::zero(like.spec()); }
    static FieldElement from_rational(const FieldElement& like, const Rational& q) {
        return FieldElement::from_rational(like.spec(), q);
    }
    static bool is_zero(const FieldElement& x) { return x.is_zero(); }
    static FieldElement inv(const FieldElement& x) { return x.inverse(); }
    static std::string str(const FieldElement& x) { return x.str(); }
};

template <class S>
class Poly2 {
  public:
    using Key = std::pair<int, int>;  // (deg_z, deg_w)

    Poly2() = default;

    static Poly2 monomial(int dz, int dw, S coeff) {
        Poly2 p;
        if (!ScalarOps<S>::is_zero(coeff)) p.terms_.emplace(Key{dz, dw}, std::move(coeff));
        return p;
    }
    // s*z + t*w
    static Poly2 linear(const S& s, const S& t) {
        Poly2 p = monomial(1, 0, s);
        p.add_term(0, 1, t);
        return p;
    }

    const std::map<Key, S>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(int dz, int dw, const S& coeff) {
        if (ScalarOps<S>::is_zero(coeff)) return;
        auto [it, inserted] = terms_.emplace(Key{dz, dw}, coeff);
        if (!inserted) {
            it->second = it->second + coeff;
            if (ScalarOps<S>::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend Poly2 operator+(Poly2 a, const Poly2& b) {
        for (const auto& [k, c] : b.terms_) a.add_term(k.first, k.second, c);
        return a;
    }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_)
                r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
        return r;
    }
    friend Poly2 operator*(Poly2 a, const S& s) {
        Poly2 r;
        for (const auto& [k, c] : a.terms_) r.add_term(k.first, k.second, c * s);
        return r;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) {
        return (a + b * detail_minus_one(a, b)).is_zero();
    }

    std::string str(const char* vz = "z", const char* vw = "w") const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            os << "(" << ScalarOps<S>::str(c) << ")";
            if (k.first) os << "*" << vz << "^" << k.first;
            if (k.second) os << "*" << vw << "^" << k.second;
            first = false;
        }
        return os.str();
    }

  private:
    static S detail_minus_one(const Poly2& a, const Poly2& b) {
        const S& like = !a.terms_.empty() ? a.terms_.begin()->second : b.terms_.begin()->second;
        return ScalarOps<S>::from_rational(like, Rational(-1));
    }
    std::map<Key, S> terms_;
};

}  // namespace pkarr
