// Number fields Q[t]/(m(t)) with exact arithmetic. The degenerate spec of
// degree 1 (min_poly = t) is plain Q; cyclotomic specs carry roots of unity
// for arrangements whose line coefficients live in Q(zeta_n).
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <vector>

#include "pkarr/rational.hpp"

namespace pkarr {

// ---------------------------------------------------------------------------
// Dense polynomials over Q, coefficients low -> high. Internal helpers; the
// public surface is FieldSpec / FieldElement below.
// ---------------------------------------------------------------------------
namespace qpoly {

using Poly = std::vector<Rational>;

inline int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

inline void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    if (degree(a) < 0 || degree(b) < 0) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// Division with remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
    int db = degree(b);
    if (db < 0) throw InternalError("polynomial division by zero");
    Poly q;
    trim(a);
    int da = degree(a);
    if (da >= db) q.assign(da - db + 1, Rational(0));
    while ((da = degree(a)) >= db) {
        Rational lead = a[da] / b[db];
        q[da - db] = lead;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= lead * b[i];
    }
    trim(a);
    return {q, a};
}

// Remainder of a modulo m.
inline Poly mod(const Poly& a, const Poly& m) { return divmod(a, m).second; }

}  // namespace qpoly

// ---------------------------------------------------------------------------
// FieldSpec
// ---------------------------------------------------------------------------

class FieldSpec {
  public:
    // min_poly: monic, degree >= 1, coefficients low -> high. Irreducibility
    // is a declared precondition of the input; see reducibility_witness().
    explicit FieldSpec(std::vector<Rational> min_poly) : min_poly_(std::move(min_poly)) {
        qpoly::trim(min_poly_);
        if (min_poly_.size() < 2) throw ParseError("min_poly must have degree >= 1");
        if (min_poly_.back() != 1) throw ParseError("min_poly must be monic");
    }

    static std::shared_ptr<const FieldSpec> rationals() {
        static const auto spec =
            std::make_shared<const FieldSpec>(std::vector<Rational>{Rational(0), Rational(1)});
        return spec;
    }

    int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
    bool is_rational() const { return degree() == 1; }
    const std::vector<Rational>& min_poly() const { return min_poly_; }

    bool same_as(const FieldSpec& other) const { return min_poly_ == other.min_poly_; }

    // Trial factorization up to degree 4; returns a human-readable witness if
    // the modulus is provably reducible over Q, nullopt otherwise. Verified by
    // multiplying the factors back, so a witness is never a false alarm.
    std::optional<std::string> reducibility_witness() const;

  private:
    std::vector<Rational> min_poly_;
};

using FieldSpecPtr = std::shared_ptr<const FieldSpec>;

// ---------------------------------------------------------------------------
// FieldElement
// ---------------------------------------------------------------------------

class FieldElement {
  public:
    FieldElement() = default;

    FieldElement(FieldSpecPtr spec, std::vector<Rational> coeffs) : spec_(std::move(spec)) {
        if (!spec_) throw SpecMismatch("field element without a field spec");
        coeffs_ = reduce(std::move(coeffs), *spec_);
    }

    static FieldElement from_rational(const FieldSpecPtr& spec, const Rational& q) {
        return FieldElement(spec, {q});
    }
    static FieldElement zero(const FieldSpecPtr& spec) { return from_rational(spec, Rational(0)); }
    static FieldElement one(const FieldSpecPtr& spec) { return from_rational(spec, Rational(1)); }
    // The class of t, i.e. the distinguished root of min_poly.
    static FieldElement generator(const FieldSpecPtr& spec) {
        return FieldElement(spec, {Rational(0), Rational(1)});
    }

    const FieldSpecPtr& spec() const { return spec_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
    }
    bool is_rational_value() const {
        for (std::size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }
    const Rational& rational_value() const {
        if (!is_rational_value()) throw SpecMismatch("field element is not a rational constant");
        return coeffs_[0];
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        a.check_same_spec(b);
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        a.check_same_spec(b);
        std::vector<Rational> r = a.coeffs_;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] += b.coeffs_[i];
        return FieldElement(a.spec_, std::move(r));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        a.check_same_spec(b);
        std::vector<Rational> r = a.coeffs_;
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b.coeffs_[i];
        return FieldElement(a.spec_, std::move(r));
    }
    friend FieldElement operator-(const FieldElement& a) {
        std::vector<Rational> r = a.coeffs_;
        for (auto& c : r) c = -c;
        return FieldElement(a.spec_, std::move(r));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        a.check_same_spec(b);
        return FieldElement(a.spec_, qpoly::mul(a.coeffs_, b.coeffs_));
    }
    friend FieldElement operator*(const FieldElement& a, const Rational& q) {
        std::vector<Rational> r = a.coeffs_;
        for (auto& c : r) c *= q;
        return FieldElement(a.spec_, std::move(r));
    }

    // Multiplicative inverse via the extended Euclidean algorithm in Q[t].
    FieldElement inverse() const {
        if (is_zero()) throw InversionOfZero("inverse of zero field element");
        qpoly::Poly r0 = spec_->min_poly(), r1 = coeffs_;
        qpoly::trim(r1);
        qpoly::Poly s0 = {}, s1 = {Rational(1)};
        while (qpoly::degree(r1) > 0) {
            auto [q, r] = qpoly::divmod(r0, r1);
            r0 = r1;
            r1 = r;
            qpoly::Poly s2 = qpoly::sub(s0, qpoly::mul(q, s1));
            s0 = s1;
            s1 = s2;
        }
        if (qpoly::degree(r1) != 0)
            throw Error("min_poly is reducible: gcd with element is non-constant");
        Rational inv_lead = 1 / r1[0];
        for (auto& c : s1) c *= inv_lead;
        return FieldElement(spec_, std::move(s1));
    }

    FieldElement pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        FieldElement acc = one(spec_), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    // Human form, lowest degree first: "1 - 2*t + t^2".
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            Rational c = coeffs_[i];
            if (first) {
                if (c < 0) { os << "-"; c = -c; }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            if (i == 0 || c != 1) os << rat_str(c);
            if (i > 0) {
                if (c != 1) os << "*";
                os << "t";
                if (i > 1) os << "^" << i;
            }
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

  private:
    static std::vector<Rational> reduce(std::vector<Rational> c, const FieldSpec& spec) {
        qpoly::Poly r = qpoly::mod(c, spec.min_poly());
        r.resize(spec.degree(), Rational(0));
        return r;
    }
    void check_same_spec(const FieldElement& other) const {
        if (!spec_ || !other.spec_ || !spec_->same_as(*other.spec_))
            throw SpecMismatch("field elements belong to different specs");
    }

    FieldSpecPtr spec_;
    std::vector<Rational> coeffs_;
};

inline FieldElement inverse(const FieldElement& a) { return a.inverse(); }

// ---------------------------------------------------------------------------
// Cyclotomic polynomials, Phi_n = (t^n - 1) / prod_{d|n, d<n} Phi_d.
// ---------------------------------------------------------------------------

inline std::vector<Rational> cyclotomic_polynomial(long long n) {
    if (n < 1) throw ParamOutOfRange("cyclotomic index must be >= 1");
    // All proper divisors of n are handled in one bottom-up pass, so the
    // function needs no shared cache and stays reentrant.
    std::map<long long, qpoly::Poly> local;
    for (long long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        qpoly::Poly num(static_cast<std::size_t>(d) + 1, Rational(0));
        num[0] = -1;
        num.back() = 1;  // t^d - 1
        for (const auto& [e, phi] : local) {
            if (d % e != 0) continue;
            auto [q, r] = qpoly::divmod(num, phi);
            if (qpoly::degree(r) >= 0) throw InternalError("cyclotomic division left a remainder");
            num = std::move(q);
        }
        local.emplace(d, std::move(num));
    }
    return local.at(n);
}

inline FieldSpecPtr cyclotomic_field(long long n) {
    auto phi = cyclotomic_polynomial(n);
    return std::make_shared<const FieldSpec>(phi);
}

// ---------------------------------------------------------------------------
// Reducibility diagnostic
// ---------------------------------------------------------------------------

inline std::optional<std::string> FieldSpec::reducibility_witness() const {
    int d = degree();
    if (d < 2 || d > 4) return std::nullopt;
    // Clear denominators: integer polynomial with the same roots.
    Int lcm = 1;
    for (const auto& c : min_poly_) lcm = boost::multiprecision::lcm(lcm, rat_den(c));
    std::vector<Int> ip;
    for (const auto& c : min_poly_) ip.push_back(rat_num(c) * (lcm / rat_den(c)));

    auto divisors = [](Int v) {
        std::vector<Int> out;
        if (v < 0) v = -v;
        if (v == 0) return out;
        for (Int i = 1; i * i <= v; ++i)
            if (v % i == 0) {
                out.push_back(i);
                if (i * i != v) out.push_back(v / i);
            }
        return out;
    };
    auto eval = [&](const Rational& x) {
        Rational acc = 0;
        for (int i = d; i >= 0; --i) acc = acc * x + Rational(ip[static_cast<std::size_t>(i)]);
        return acc;
    };
    // Rational root test (covers any linear factor).
    if (ip[0] == 0) return std::string("t divides min_poly");
    for (const Int& p : divisors(ip[0]))
        for (const Int& q : divisors(ip.back()))
            for (int sgn : {1, -1}) {
                Rational cand(sgn * p, q);
                if (eval(cand) == 0)
                    return "rational root t = " + rat_str(cand);
            }
    if (d != 4) return std::nullopt;
    // Quadratic splits of a monic quartic via the resolvent cubic: with
    // t^4+a t^3+b t^2+c t+e = (t^2+pt+q)(t^2+rt+s), y = q+s satisfies
    // y^3 - b y^2 + (ac - 4e) y - (a^2 e - 4be + c^2) = 0.
    Rational a = min_poly_[3], b = min_poly_[2], c = min_poly_[1], e = min_poly_[0];
    std::vector<Rational> res = {-(a * a * e - 4 * b * e + c * c), a * c - 4 * e, -b, Rational(1)};
    Int rl = 1;
    for (const auto& cc : res) rl = boost::multiprecision::lcm(rl, rat_den(cc));
    std::vector<Int> ri;
    for (const auto& cc : res) ri.push_back(rat_num(cc) * (rl / rat_den(cc)));
    auto reval = [&](const Rational& x) {
        Rational acc = 0;
        for (int i = 3; i >= 0; --i) acc = acc * x + Rational(ri[static_cast<std::size_t>(i)]);
        return acc;
    };
    std::vector<Rational> roots;
    if (ri[0] == 0) roots.push_back(Rational(0));
    for (const Int& p : divisors(ri[0] == 0 ? ri[1] : ri[0]))
        for (const Int& q : divisors(ri.back()))
            for (int sgn : {1, -1}) {
                Rational cand(sgn * p, q);
                if (reval(cand) == 0) roots.push_back(cand);
            }
    for (const Rational& y : roots) {
        // p + r = a, pr = b - y  =>  p, r = (a +- sqrt(a^2-4(b-y)))/2
        auto disc = rational_sqrt(a * a - 4 * (b - y));
        if (!disc) continue;
        Rational p = (a + *disc) / 2, r = (a - *disc) / 2;
        // q + s = y, ps + qr = c; if p != r solve linearly, else q s from qs=e.
        Rational q, s;
        if (p != r) {
            // s p + q r = c and q + s = y
            s = (c - r * y) / (p - r);
            q = y - s;
        } else {
            auto d2 = rational_sqrt(y * y - 4 * e);
            if (!d2) continue;
            q = (y + *d2) / 2;
            s = (y - *d2) / 2;
        }
        if (q * s == e && p * s + q * r == c) {
            return "quadratic factor t^2 + " + rat_str(p) + "*t + " + rat_str(q);
        }
    }
    return std::nullopt;
}

}  // namespace pkarr
