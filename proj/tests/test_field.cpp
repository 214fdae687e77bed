#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pkarr/field.hpp"

using namespace pkarr;

namespace {

FieldElement fe(const FieldSpecPtr& s, std::initializer_list<Rational> cs) {
    return FieldElement(s, std::vector<Rational>(cs));
}

Rational rand_rat(std::mt19937_64& gen) {
    long long num = static_cast<long long>(gen() % 21) - 10;
    long long den = static_cast<long long>(gen() % 6) + 1;
    return Rational(num, den);
}

FieldElement rand_fe(const FieldSpecPtr& s, std::mt19937_64& gen) {
    std::vector<Rational> cs;
    for (int i = 0; i < s->degree(); ++i) cs.push_back(rand_rat(gen));
    return FieldElement(s, cs);
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(rat_str(parse_rational("2/3") + parse_rational("-1/6")) == "1/2");
    CHECK(rat_str(parse_rational("4/6")) == "2/3");
    CHECK(rat_str(parse_rational("-4/6")) == "-2/3");
    CHECK(rat_str(parse_rational("0")) == "0");
    CHECK(rat_str(parse_rational(" 7 ")) == "7");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/2"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    // round-trip on canonical forms
    for (const char* s : {"-5/7", "0", "12", "3/4", "-1"}) {
        CHECK(rat_str(parse_rational(s)) == s);
    }
    CHECK(strict_ceil(Rational(24)) == 25);
    CHECK(strict_ceil(Rational(7, 2)) == 4);
    CHECK(strict_ceil(Rational(-7, 2)) == -3);
    CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
    CHECK(!rational_sqrt(Rational(2)));
    CHECK(!rational_sqrt(Rational(-4)));
}

TEST_CASE("arithmetic in Q(omega), t^2+t+1") {
    auto s = cyclotomic_field(3);
    REQUIRE(s->degree() == 2);
    FieldElement t = FieldElement::generator(s);
    // t*t reduces to -1 - t
    CHECK(t * t == fe(s, {-1, -1}));
    // extended Euclid inverse, checked by multiplying back
    FieldElement it = t.inverse();
    CHECK(it == fe(s, {-1, -1}));
    CHECK(t * it == FieldElement::one(s));
    CHECK_THROWS_AS(FieldElement::zero(s).inverse(), InversionOfZero);
}

TEST_CASE("degenerate rational spec") {
    auto s = FieldSpec::rationals();
    CHECK(s->is_rational());
    auto a = FieldElement::from_rational(s, parse_rational("2/3"));
    auto b = FieldElement::from_rational(s, parse_rational("-1/6"));
    CHECK((a + b).rational_value() == Rational(1, 2));
    auto q = cyclotomic_field(3);
    CHECK_THROWS_AS(a + FieldElement::one(q), SpecMismatch);
}

TEST_CASE("field axioms on sampled elements") {
    std::mt19937_64 gen(20240817);
    for (long long n : {3, 4, 5, 12}) {
        auto s = cyclotomic_field(n);
        for (int rep = 0; rep < 25; ++rep) {
            auto a = rand_fe(s, gen), b = rand_fe(s, gen), c = rand_fe(s, gen);
            CHECK((a + b) * c == a * c + b * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            if (!a.is_zero()) CHECK(a * a.inverse() == FieldElement::one(s));
        }
    }
}

TEST_CASE("cyclotomic polynomials") {
    using V = std::vector<Rational>;
    CHECK(cyclotomic_polynomial(1) == V{-1, 1});
    CHECK(cyclotomic_polynomial(4) == V{1, 0, 1});
    // computed by dividing t^12 - 1 by Phi_1 Phi_2 Phi_3 Phi_4 Phi_6
    CHECK(cyclotomic_polynomial(12) == V{1, 0, -1, 0, 1});

    for (long long p : {2, 3, 5, 7, 11, 13}) {
        V expect(static_cast<std::size_t>(p), Rational(1));
        CHECK(cyclotomic_polynomial(p) == expect);
    }

    // prod_{d|n} Phi_d = t^n - 1, and deg Phi_n = phi(n)
    auto totient = [](long long n) {
        long long r = 0;
        for (long long a = 1; a <= n; ++a) {
            long long x = a, y = n;
            while (y) std::swap(x %= y, y);
            if (x == 1) ++r;
        }
        return r;
    };
    for (long long n = 1; n <= 30; ++n) {
        qpoly::Poly prod = {Rational(1)};
        for (long long d = 1; d <= n; ++d)
            if (n % d == 0) prod = qpoly::mul(prod, cyclotomic_polynomial(d));
        qpoly::Poly expect(static_cast<std::size_t>(n) + 1, Rational(0));
        expect[0] = -1;
        expect.back() = 1;
        CHECK(prod == expect);
        CHECK(qpoly::degree(cyclotomic_polynomial(n)) == totient(n));
    }
    CHECK_THROWS_AS(cyclotomic_polynomial(0), ParamOutOfRange);
}

TEST_CASE("reducibility diagnostic") {
    auto witness = [](std::vector<Rational> poly) {
        return FieldSpec(std::move(poly)).reducibility_witness();
    };
    CHECK(witness({-1, 0, 1}));                 // t^2 - 1
    CHECK_FALSE(witness({1, 0, 1}));            // t^2 + 1
    CHECK_FALSE(witness({1, 1, 1}));            // Phi_3
    CHECK(witness({2, 0, 3, 0, 1}));            // (t^2+1)(t^2+2)
    CHECK(witness({1, 2, 3, 2, 1}));            // (t^2+t+1)^2
    CHECK_FALSE(witness({1, 1, 1, 1, 1}));      // Phi_5
    CHECK_FALSE(witness({1, 0, -1, 0, 1}));     // Phi_12
    CHECK(witness({-6, 11, -6, 1}));            // (t-1)(t-2)(t-3)
    // spec validation
    CHECK_THROWS_AS(FieldSpec({Rational(1), Rational(2)}), ParseError);  // not monic
    CHECK_THROWS_AS(FieldSpec({Rational(5)}), ParseError);               // degree 0
}
