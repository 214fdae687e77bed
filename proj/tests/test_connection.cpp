#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pkarr/connection.hpp"

using namespace pkarr;

namespace {

using RLine = OriginLine<Rational>;

RLine rl(long long s, long long t) { return RLine{Rational(s), Rational(t)}; }

Rational rand_weight(std::mt19937_64& gen) {
    long long den = static_cast<long long>(gen() % 9) + 2;
    long long num = static_cast<long long>(gen() % den) + 1;  // in (0,1]
    return Rational(num, den);
}

std::vector<RLine> distinct_lines(std::mt19937_64& gen, std::size_t n) {
    std::vector<RLine> lines;
    while (lines.size() < n) {
        RLine cand{Rational(static_cast<long long>(gen() % 11) - 5),
                   Rational(static_cast<long long>(gen() % 11) - 5)};
        if (cand.s == 0 && cand.t == 0) continue;
        bool dup = false;
        for (const auto& l : lines) dup = dup || (l.s * cand.t - cand.s * l.t == 0);
        if (!dup) lines.push_back(cand);
    }
    return lines;
}

bool matrices_equal(const Mat2<Rational>& a, const Mat2<Rational>& b) {
    return (a - b).is_zero();
}

}  // namespace

TEST_CASE("bivariate polynomial arithmetic") {
    using P = Poly2<Rational>;
    auto zw = P::linear(Rational(1), Rational(1));
    auto sq = zw * zw;  // z^2 + 2zw + w^2
    REQUIRE(sq.terms().size() == 3);
    CHECK(sq.terms().at({2, 0}) == 1);
    CHECK(sq.terms().at({1, 1}) == 2);
    CHECK(sq.terms().at({0, 2}) == 1);
    auto cancel = zw + zw * Rational(-1);
    CHECK(cancel.is_zero());
    CHECK(P::monomial(1, 1, Rational(0)).is_zero());
}

TEST_CASE("three-line connection: flat smooth case") {
    auto sys = build_three_line(1, 1, 1);
    for (const auto& m : sys.matrices) CHECK(m.is_zero());
    CHECK(sys.alpha == 1);
    auto rep = verify_flat_torsion(sys);
    CHECK(rep.all_ok());
}

TEST_CASE("three-line connection at weights 1/2") {
    auto sys = build_three_line(Rational(1, 2), Rational(1, 2), Rational(1, 2));
    CHECK(sys.alpha == Rational(1, 4));
    Rational am1 = Rational(-3, 4);
    for (const auto& m : sys.matrices) CHECK(m.trace() == Rational(-1, 2));
    Mat2<Rational> sum = sys.matrices[0] + sys.matrices[1] + sys.matrices[2];
    CHECK(matrices_equal(sum, Mat2<Rational>{am1, 0, 0, am1}));
    // kernels: the z residue kills (0,1), the w residue (1,0), z+w (1,-1)
    auto k0 = sys.matrices[0].apply({Rational(0), Rational(1)});
    auto k1 = sys.matrices[1].apply({Rational(1), Rational(0)});
    auto k2 = sys.matrices[2].apply({Rational(1), Rational(-1)});
    for (auto v : {k0, k1, k2}) {
        CHECK(v[0] == 0);
        CHECK(v[1] == 0);
    }
}

TEST_CASE("three-line connection passes all identities") {
    auto sys = build_three_line(Rational(1, 2), Rational(1, 3), Rational(2, 3));
    auto rep = verify_flat_torsion(sys);
    CHECK(rep.constraints_ok);
    CHECK(rep.flat);
    CHECK(rep.torsion_free);
    CHECK(rep.torsion_termwise);
    CHECK(rep.blowup_residue_ok);
    for (const auto& p : rep.curvature) CHECK(p.is_zero());
}

TEST_CASE("random weight triples stay flat and torsion free") {
    std::mt19937_64 gen(20240819);
    for (int rep = 0; rep < 20; ++rep) {
        auto sys = build_three_line(rand_weight(gen), rand_weight(gen), rand_weight(gen));
        auto r = verify_flat_torsion(sys);
        CHECK(r.all_ok());
        // trace of the total residue ties back to the cone angle
        Mat2<Rational> sum = sys.matrices[0] + sys.matrices[1] + sys.matrices[2];
        CHECK(sum.trace() == 2 * (sys.alpha - 1));
    }
}

TEST_CASE("perturbed system fails with a curvature witness") {
    auto sys = build_three_line(Rational(1, 2), Rational(1, 3), Rational(2, 3));
    sys.matrices[0].b += 1;
    auto rep = verify_flat_torsion(sys);
    CHECK_FALSE(rep.constraints_ok);
    CHECK_FALSE(rep.flat);
    bool witness = false;
    for (const auto& p : rep.curvature) witness = witness || !p.is_zero();
    CHECK(witness);
}

TEST_CASE("solver reproduces the closed-form three-line system") {
    std::vector<RLine> canon = {rl(1, 0), rl(0, 1), rl(1, 1)};
    std::vector<Rational> w = {Rational(1, 2), Rational(1, 3), Rational(2, 3)};
    auto rep = solve_residues(canon, w);
    CHECK(rep.dimension == 0);
    auto expect = build_three_line(w[0], w[1], w[2]);
    for (int i = 0; i < 3; ++i)
        CHECK(matrices_equal(rep.particular.matrices[static_cast<std::size_t>(i)],
                             expect.matrices[static_cast<std::size_t>(i)]));
}

TEST_CASE("any three-line system normalizes onto the closed form") {
    std::mt19937_64 gen(20240820);
    for (int trial = 0; trial < 10; ++trial) {
        auto lines = distinct_lines(gen, 3);
        std::vector<Rational> w = {rand_weight(gen), rand_weight(gen), rand_weight(gen)};
        auto rep = solve_residues(lines, w);
        REQUIRE(rep.dimension == 0);
        CHECK(verify_flat_torsion(rep.particular).all_ok());
        auto normalized = normalize_three(rep.particular);
        CHECK(verify_flat_torsion(normalized).all_ok());
        auto expect = build_three_line(w[0], w[1], w[2]);
        for (int i = 0; i < 3; ++i)
            CHECK(matrices_equal(normalized.matrices[static_cast<std::size_t>(i)],
                                 expect.matrices[static_cast<std::size_t>(i)]));
    }
}

TEST_CASE("solution space has dimension n - 3") {
    std::mt19937_64 gen(20240821);
    for (std::size_t n = 3; n <= 8; ++n) {
        auto lines = distinct_lines(gen, n);
        std::vector<Rational> w;
        for (std::size_t i = 0; i < n; ++i) w.push_back(rand_weight(gen));
        auto rep = solve_residues(lines, w);
        CHECK(rep.dimension == static_cast<int>(n) - 3);
    }
}

TEST_CASE("sampled solutions on five lines are flat and torsion free") {
    std::mt19937_64 gen(20240822);
    auto lines = distinct_lines(gen, 5);
    std::vector<Rational> w;
    for (int i = 0; i < 5; ++i) w.push_back(rand_weight(gen));
    auto rep = solve_residues(lines, w);
    REQUIRE(rep.dimension == 2);
    CHECK(verify_flat_torsion(rep.particular).all_ok());
    // each basis point of the affine space individually
    for (const auto& dir : rep.basis) {
        ResidueSystem<Rational> sys = rep.particular;
        for (std::size_t i = 0; i < sys.matrices.size(); ++i)
            sys.matrices[i] = sys.matrices[i] + dir[i];
        CHECK(verify_flat_torsion(sys).all_ok());
    }
    for (int trial = 0; trial < 10; ++trial) {
        ResidueSystem<Rational> sys = rep.particular;
        for (const auto& dir : rep.basis) {
            Rational c(static_cast<long long>(gen() % 13) - 6,
                       static_cast<long long>(gen() % 4) + 1);
            for (std::size_t i = 0; i < sys.matrices.size(); ++i)
                sys.matrices[i] = sys.matrices[i] + dir[i] * c;
        }
        CHECK(verify_flat_torsion(sys).all_ok());
    }
    // basis directions are genuinely nontrivial
    for (const auto& dir : rep.basis) {
        bool nonzero = false;
        for (const auto& m : dir) nonzero = nonzero || !m.is_zero();
        CHECK(nonzero);
    }
}

TEST_CASE("degenerate configurations are rejected") {
    CHECK_THROWS_AS(solve_residues<Rational>({rl(1, 0), rl(0, 1)}, {Rational(1, 2), Rational(1, 2)}),
                    ParamOutOfRange);
    CHECK_THROWS_AS(solve_residues<Rational>({rl(1, 0), rl(0, 1), rl(2, 0)},
                                             {Rational(1, 2), Rational(1, 2), Rational(1, 2)}),
                    DegenerateConfiguration);
}

TEST_CASE("weight one gives a vanishing residue") {
    auto rep = solve_residues<Rational>({rl(1, 0), rl(0, 1), rl(1, 1)},
                                        {Rational(1), Rational(1, 2), Rational(1, 2)});
    REQUIRE(rep.dimension == 0);
    CHECK(rep.particular.matrices[0].is_zero());
    CHECK(verify_flat_torsion(rep.particular).all_ok());
}

TEST_CASE("field-element backend over Q(omega)") {
    auto spec = cyclotomic_field(3);
    auto omega = FieldElement::generator(spec);
    auto one = FieldElement::one(spec);
    auto zero = FieldElement::zero(spec);
    std::vector<OriginLine<FieldElement>> lines = {
        {one, zero}, {zero, one}, {one, omega}, {one, one}};
    std::vector<Rational> w = {Rational(1, 2), Rational(2, 3), Rational(3, 4), Rational(4, 5)};
    auto rep = solve_residues(lines, w);
    CHECK(rep.dimension == 1);
    auto fr = verify_flat_torsion(rep.particular);
    CHECK(fr.all_ok());
    ResidueSystem<FieldElement> shifted = rep.particular;
    for (std::size_t i = 0; i < shifted.matrices.size(); ++i)
        shifted.matrices[i] = shifted.matrices[i] + rep.basis[0][i] * omega;
    CHECK(verify_flat_torsion(shifted).all_ok());
}
