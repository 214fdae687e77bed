#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "pkarr/catalog.hpp"
#include "pkarr/weighted.hpp"

using namespace pkarr;

namespace {

std::shared_ptr<const IncidenceLattice> lattice_of(const CatalogArrangement& arr) {
    return std::make_shared<const IncidenceLattice>(build_lattice(arr.field, arr.lines));
}

WeightedSystem catalog_system(const std::string& name, CatalogOptions opt = {}) {
    auto arr = catalog_build(name, opt);
    auto lat = lattice_of(arr);
    return make_line_system(lat, weights_by_name(*lat, arr.weights));
}

WeightedSystem uniform_system(const std::string& name, const Rational& beta,
                              CatalogOptions opt = {}) {
    auto arr = catalog_build(name, opt);
    auto lat = lattice_of(arr);
    return make_line_system(lat, std::vector<Rational>(static_cast<std::size_t>(lat->n()), beta));
}

// The two-curve tangency data of the symmetric-square metric: a conic of
// weight 1/2 and five tangent lines whose defects sum to -2, with five
// (1,2) tangency points carrying one regular branch of each curve.
WeightedSystem sym2_system(
    std::vector<Rational> line_weights = std::vector<Rational>(5, Rational(3, 5))) {
    WeightedSystem sys;
    sys.line_mode = false;
    sys.c2_surface = 3;
    sys.curves.push_back(
        CurveData{"Q", Rational(2), Rational(-6), Rational(4), Rational(2), Rational(1, 2)});
    for (int a = 0; a < 5; ++a)
        sys.curves.push_back(CurveData{"T" + std::to_string(a + 1), Rational(2), Rational(-3),
                                       Rational(1), Rational(1),
                                       line_weights[static_cast<std::size_t>(a)]});
    for (int a = 0; a < 5; ++a) {
        SingularPointData pt;
        pt.id = "tangency" + std::to_string(a + 1);
        pt.p = 1;
        pt.q = 2;
        pt.branches = {Branch{0, BranchKind::regular, 1}, Branch{a + 1, BranchKind::regular, 1}};
        sys.points.push_back(pt);
    }
    sys.B.assign(6, std::vector<long long>(6, 0));
    sys.B[0][0] = 6;  // -self + sum p q d^2 = -4 + 5*2
    for (int a = 1; a <= 5; ++a) {
        sys.B[a][a] = 1;  // -1 + 1*2*1
        for (int b = 1; b <= 5; ++b)
            if (a != b) sys.B[a][b] = 1;  // the ten pairwise double points
    }
    finalize_alphas(sys);
    return sys;
}

bool all_zero(const std::vector<Rational>& v) {
    for (const auto& r : v)
        if (r != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("alpha of a point") {
    std::vector<CurveData> curves = {
        CurveData{"a", 2, -3, 1, 1, Rational(1, 2)},
        CurveData{"b", 2, -3, 1, 1, Rational(1, 2)},
        CurveData{"c", 2, -3, 1, 1, Rational(1, 2)},
    };
    SingularPointData triple{"pt", 1, 1,
                             {Branch{0, BranchKind::regular, 1}, Branch{1, BranchKind::regular, 1},
                              Branch{2, BranchKind::regular, 1}},
                             Rational(0)};
    CHECK(alpha_of_point(triple, curves) == Rational(1, 4));

    SingularPointData smooth{"smooth", 1, 1, {}, Rational(0)};
    CHECK(alpha_of_point(smooth, curves) == 1);

    // (1,2) tangency of a conic (beta = 1/2) and a line: alpha = beta_line
    for (Rational bl : {Rational(3, 5), Rational(2, 7)}) {
        std::vector<CurveData> cs = {CurveData{"Q", 2, -6, 4, 2, Rational(1, 2)},
                                     CurveData{"L", 2, -3, 1, 1, bl}};
        SingularPointData tang{
            "t", 1, 2, {Branch{0, BranchKind::regular, 1}, Branch{1, BranchKind::regular, 1}},
            Rational(0)};
        CHECK(alpha_of_point(tang, cs) == bl);
    }

    SingularPointData bad{"bad", 1, 1, {Branch{7, BranchKind::regular, 1}}, Rational(0)};
    CHECK_THROWS_AS(alpha_of_point(bad, curves), UnknownCurveReference);
    SingularPointData twoz{"twoz", 1, 2,
                           {Branch{0, BranchKind::z_axis, 1}, Branch{1, BranchKind::z_axis, 1}},
                           Rational(0)};
    CHECK_THROWS_AS(alpha_of_point(twoz, curves), IncompleteData);
}

TEST_CASE("quadrilateral at the symmetric weight") {
    auto sys = catalog_system("quadrilateral");
    auto rep = verify_relations(sys);
    CHECK(all_zero(rep.eq1_residuals));
    CHECK(rep.eq2_checked);
    CHECK(rep.eq2_residual == 0);
    REQUIRE(rep.eq3_residual);
    CHECK(*rep.eq3_residual == 0);
    for (const auto& [j, k, r] : rep.gjgk_residuals) CHECK(r == 0);
    REQUIRE(rep.bg);
    CHECK(*rep.bg == 0);
    for (const auto& a : rep.alphas) CHECK(a == Rational(1, 4));
    CHECK(rep.classification == Classification::pk_candidate_equality);
}

TEST_CASE("quadrilateral negative control at 2/3") {
    auto sys = uniform_system("quadrilateral", Rational(2, 3));
    auto rep = verify_relations(sys);
    for (const auto& r : rep.eq1_residuals) CHECK(r == Rational(1, 3));
    CHECK(rep.classification == Classification::violation);
}

TEST_CASE("biased quadrilateral family") {
    // The equations and bg = 0 hold across the one-parameter family; the open
    // point condition at the concurrency point reads 3(beta - 1) > -2 and so
    // cuts the family down to beta > 1/3.
    for (Rational b :
         {Rational(1, 4), Rational(1, 3), Rational(2, 5), Rational(1, 2), Rational(3, 5)}) {
        auto sys = catalog_system("quadrilateral", {.beta = b});
        auto rep = verify_relations(sys);
        CAPTURE(rat_str(b));
        CHECK(all_zero(rep.eq1_residuals));
        CHECK(rep.eq2_residual == 0);
        CHECK(*rep.eq3_residual == 0);
        REQUIRE(rep.bg);
        CHECK(*rep.bg == 0);
        for (bool strict : rep.beta_strict) CHECK(strict);
        if (b > Rational(1, 3))
            CHECK(rep.classification == Classification::pk_candidate_equality);
        // the in-plane gradient vanishes on solutions of (1)+(2)
        auto bg = bg_value(sys);
        CHECK(all_zero(bg.gradient));
    }
    // below the threshold the concurrency point is inadmissible ...
    {
        auto rep = verify_relations(catalog_system("quadrilateral", {.beta = Rational(1, 4)}));
        int non_strict = 0;
        for (const auto& pc : rep.point_constraints)
            if (!pc.strict) {
                ++non_strict;
                CHECK(pc.sum == Rational(-9, 4));
            }
        CHECK(non_strict == 1);
        CHECK(rep.classification == Classification::infeasible);
    }
    // ... and exactly at it the point becomes a cusp with the full set of
    // limit properties: the joining lines soak up the defects of the
    // opposite triangle.
    {
        auto sys = catalog_system("quadrilateral", {.beta = Rational(1, 3)});
        auto rep = verify_relations(sys);
        CHECK(rep.classification == Classification::limit_cusp);
        std::vector<Rational> w;
        for (const auto& c : sys.curves) w.push_back(c.beta);
        auto cusp = classify_limit_cusp(*sys.lattice, w);
        REQUIRE(cusp.cusps.size() == 1);
        REQUIRE(cusp.properties.size() == 1);
        CHECK(cusp.properties[0].line_through_every_point);
        CHECK(cusp.properties[0].defect_transfer);
    }
}

TEST_CASE("hesse and ceva at their symmetric weights") {
    for (auto [name, param] : std::vector<std::pair<std::string, std::optional<long long>>>{
             {"hesse", std::nullopt},
             {"ceva_ext", 2},
             {"ceva_ext", 3},
             {"ceva_ext", 4},
             {"ceva_ext", 5}}) {
        CatalogOptions opt;
        opt.param = param;
        auto sys = catalog_system(name, opt);
        auto rep = verify_relations(sys);
        INFO(name);
        CHECK(all_zero(rep.eq1_residuals));
        CHECK(rep.eq2_residual == 0);
        CHECK(*rep.eq3_residual == 0);
        REQUIRE(rep.bg);
        CHECK(*rep.bg == 0);
        CHECK(rep.classification == Classification::pk_candidate_equality);
    }
}

TEST_CASE("seven-line family") {
    for (auto w : {std::array<Rational, 3>{Rational(2, 3), Rational(2, 3), Rational(2, 3)},
                   std::array<Rational, 3>{Rational(1, 2), Rational(3, 4), Rational(3, 4)},
                   std::array<Rational, 3>{Rational(1, 3), Rational(5, 6), Rational(5, 6)}}) {
        auto sys = catalog_system("seven_lines", {.wxyz = w});
        auto rep = verify_relations(sys);
        CHECK(all_zero(rep.eq1_residuals));
        CHECK(rep.eq2_residual == 0);
        CHECK(*rep.eq3_residual == 0);
        CHECK(*rep.bg == 0);
        CHECK(rep.classification == Classification::pk_candidate_equality);
    }
}

TEST_CASE("three lines at the boundary weight") {
    auto sys = uniform_system("triangle", Rational(0));
    auto rep = verify_relations(sys);
    CHECK(all_zero(rep.eq1_residuals));
    CHECK(rep.eq2_residual == 0);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK_FALSE(rep.beta_strict[j]);
        CHECK(rep.beta_boundary[j]);
    }
    CHECK(rep.classification == Classification::infeasible);  // boundary but no cusp
}

TEST_CASE("abstract tangency data of the symmetric square") {
    auto sys = sym2_system();
    auto rep = verify_relations(sys);
    REQUIRE(rep.eq1_residuals.size() == 6);
    CHECK(all_zero(rep.eq1_residuals));  // conic row: 6*(-1/2) = -3 = -4+6-5
    CHECK(rep.eq2_checked);
    CHECK(rep.eq2_residual == 0);
    CHECK_FALSE(rep.eq3_residual);  // a (1,2) point is present
    for (const auto& [j, k, r] : rep.gjgk_residuals) CHECK(r == 0);
    for (const auto& a : rep.alphas) CHECK(a == Rational(3, 5));
    CHECK(rep.classification == Classification::pk_candidate_equality);

    // asymmetric tangent-line weights with the same defect sum
    auto sys2 = sym2_system(
        {Rational(1, 2), Rational(1, 2), Rational(3, 5), Rational(7, 10), Rational(7, 10)});
    auto rep2 = verify_relations(sys2);
    CHECK(all_zero(rep2.eq1_residuals));
    CHECK(rep2.eq2_residual == 0);
}

TEST_CASE("branch assignment search recovers the tangency kinds") {
    auto sys = sym2_system();
    auto found = branch_assignment_search(sys);
    REQUIRE(!found.empty());
    bool has_all_regular = false;
    for (const auto& a : found) {
        bool all_regular = true;
        bool conic_w_axis = false;
        for (const auto& pt : a.kinds)
            for (std::size_t b = 0; b < pt.size(); ++b) {
                if (pt[b] != BranchKind::regular) all_regular = false;
                if (b == 0 && pt[b] == BranchKind::w_axis) conic_w_axis = true;
            }
        has_all_regular = has_all_regular || all_regular;
        CHECK_FALSE(conic_w_axis);  // conic on the q-axis breaks relation (1)
    }
    CHECK(has_all_regular);
}

TEST_CASE("eq residuals are affine in the weights") {
    auto arr = catalog_build("quadrilateral", {});
    auto lat = lattice_of(arr);
    std::mt19937_64 gen(11);
    auto rand_weights = [&] {
        std::vector<Rational> w;
        for (int j = 0; j < lat->n(); ++j)
            w.emplace_back(static_cast<long long>(gen() % 19) - 9,
                           static_cast<long long>(gen() % 6) + 1);
        return w;
    };
    for (int rep = 0; rep < 10; ++rep) {
        auto w1 = rand_weights(), w2 = rand_weights();
        std::vector<Rational> mid;
        for (std::size_t i = 0; i < w1.size(); ++i) mid.push_back((w1[i] + w2[i]) / 2);
        auto r1 = verify_relations(make_line_system(lat, w1));
        auto r2 = verify_relations(make_line_system(lat, w2));
        auto rm = verify_relations(make_line_system(lat, mid));
        for (std::size_t j = 0; j < w1.size(); ++j)
            CHECK(rm.eq1_residuals[j] == (r1.eq1_residuals[j] + r2.eq1_residuals[j]) / 2);
        CHECK(rm.eq2_residual == (r1.eq2_residual + r2.eq2_residual) / 2);
    }
}

TEST_CASE("pairing identity and pull-back identity in line mode") {
    std::mt19937_64 gen(12);
    for (auto name :
         {std::string("quadrilateral"), std::string("hesse"), std::string("seven_lines")}) {
        auto arr = catalog_build(name, {});
        auto lat = lattice_of(arr);
        std::vector<Rational> w;
        for (int j = 0; j < lat->n(); ++j)
            w.emplace_back(static_cast<long long>(gen() % 9) + 1,
                           static_cast<long long>(gen() % 6) + 5);
        auto sys = make_line_system(lat, w);
        auto rep = verify_relations(sys);
        // Gamma_j . Gamma_k = 1 = B_jk + sum_i d_ij d_ik is a theorem here
        for (const auto& [j, k, r] : rep.gjgk_residuals) CHECK(r == 0);
        // 2(alpha_i - 1) = sum_j d_ij (beta_j - 1)
        for (std::size_t i = 0; i < sys.points.size(); ++i) {
            Rational s = 0;
            for (std::size_t j = 0; j < sys.curves.size(); ++j)
                s += sys.points[i].d_of(static_cast<int>(j)) * (sys.curves[j].beta - 1);
            CHECK(2 * (sys.points[i].alpha - 1) == s);
        }
    }
}

TEST_CASE("bg gradient is the exact in-plane derivative") {
    auto arr = catalog_build("quadrilateral", {});
    auto lat = lattice_of(arr);
    std::mt19937_64 gen(13);
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<Rational> beta, dir;
        Rational dir_sum = 0;
        for (int j = 0; j < lat->n(); ++j) {
            beta.emplace_back(static_cast<long long>(gen() % 9) + 1,
                              static_cast<long long>(gen() % 4) + 7);
            dir.emplace_back(static_cast<long long>(gen() % 11) - 5,
                             static_cast<long long>(gen() % 3) + 1);
            dir_sum += dir.back();
        }
        dir[0] -= dir_sum;  // project into the constraint plane
        std::vector<Rational> plus = beta, minus = beta;
        for (int j = 0; j < lat->n(); ++j) {
            plus[static_cast<std::size_t>(j)] += dir[static_cast<std::size_t>(j)];
            minus[static_cast<std::size_t>(j)] -= dir[static_cast<std::size_t>(j)];
        }
        Rational diff = (bg_value(make_line_system(lat, plus)).value -
                         bg_value(make_line_system(lat, minus)).value) /
                        2;
        auto grad = bg_value(make_line_system(lat, beta)).gradient;
        Rational expect = 0;
        for (int j = 0; j < lat->n(); ++j)
            expect += dir[static_cast<std::size_t>(j)] * grad[static_cast<std::size_t>(j)];
        CHECK(diff == expect);
    }
}

TEST_CASE("gradient closed form under the plane constraint") {
    // With sum(beta - 1) = -3 the gradient equals (sum_k B_jk(1-beta_k) - 1)/2.
    for (Rational b : {Rational(1, 3), Rational(2, 5)}) {
        auto sys = catalog_system("quadrilateral", {.beta = b});
        auto grad = bg_value(sys).gradient;
        BMatrix bm = b_matrix(*sys.lattice);
        for (int j = 0; j < sys.lattice->n(); ++j) {
            Rational s = 0;
            for (int k = 0; k < sys.lattice->n(); ++k)
                s += Rational(bm.b[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) *
                     (1 - sys.curves[static_cast<std::size_t>(k)].beta);
            CHECK(grad[static_cast<std::size_t>(j)] == (s - 1) / 2);
        }
    }
}

TEST_CASE("symmetric bg closed form and the double-point convention") {
    for (auto [name, param] : std::vector<std::pair<std::string, std::optional<long long>>>{
             {"quadrilateral", std::nullopt},
             {"hesse", std::nullopt},
             {"ceva_ext", 2},
             {"ceva_ext", 3}}) {
        CatalogOptions opt;
        opt.param = param;
        auto arr = catalog_build(name, opt);
        auto lat = lattice_of(arr);
        const int n = lat->n();
        std::vector<Rational> w(static_cast<std::size_t>(n), 1 - Rational(3, n));
        auto sys = make_line_system(lat, w);
        Rational bg = bg_value(sys).value;
        auto h = hirzebruch_check(*lat);
        Rational closed =
            (Rational(3) * n * n + 9 * n - Rational(9) * Rational(h.sum_mu)) / (Rational(4) * n * n);
        CHECK(bg == closed);
        // uniform weights: both bookkeepings agree exactly
        CHECK(bg_value_doubles_as_singular(*lat, w) == bg);
    }
}

TEST_CASE("double-point convention differs by the exact correction term") {
    auto arr = catalog_build("quadrilateral", {});
    auto lat = lattice_of(arr);
    std::mt19937_64 gen(14);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Rational> w;
        for (int j = 0; j < lat->n(); ++j)
            w.emplace_back(static_cast<long long>(gen() % 9) + 1,
                           static_cast<long long>(gen() % 4) + 7);
        Rational corr = 0;
        for (const auto& p : lat->points)
            if (p.multiplicity() == 2) {
                Rational d =
                    w[static_cast<std::size_t>(p.lines[0])] - w[static_cast<std::size_t>(p.lines[1])];
                corr += d * d / 4;
            }
        CHECK(bg_value_doubles_as_singular(*lat, w) ==
              bg_value(make_line_system(lat, w)).value - corr);
    }
    // biased family: bg = 0 but the alternative bookkeeping picks up -3/4 (2b-1)^2
    auto sys = catalog_system("quadrilateral", {.beta = Rational(1, 3)});
    std::vector<Rational> w;
    for (const auto& c : sys.curves) w.push_back(c.beta);
    CHECK(bg_value(sys).value == 0);
    CHECK(bg_value_doubles_as_singular(*sys.lattice, w) == Rational(-1, 12));
}

TEST_CASE("pencil criterion") {
    auto quad = catalog_build("quadrilateral", {});
    auto latq = lattice_of(quad);
    for (const auto& rep : pencil_criterion(*latq)) {
        CHECK(rep.passes);
        CHECK(rep.partners.size() == 1);
    }
    auto hes = catalog_build("hesse", {});
    auto lath = lattice_of(hes);
    for (const auto& rep : pencil_criterion(*lath)) {
        CHECK(rep.passes);
        CHECK(rep.partners.size() == 2);
        CHECK(rep.witness);
    }
    // a line whose three double-partners are not concurrent
    auto s = FieldSpec::rationals();
    auto fe = [&](long long v) { return FieldElement::from_rational(s, Rational(v)); };
    std::vector<ProjLine> lines = {
        ProjLine{"L", {fe(0), fe(1), fe(0)}},
        ProjLine{"M1", {fe(1), fe(0), fe(0)}},
        ProjLine{"M2", {fe(1), fe(1), fe(-1)}},
        ProjLine{"M3", {fe(1), fe(-1), fe(-2)}},
    };
    auto lat = build_lattice(s, lines);
    auto reps = pencil_criterion(lat);
    CHECK_FALSE(reps[0].passes);
    CHECK(reps[0].partners.size() == 3);
    CHECK_FALSE(reps[0].witness);
}

TEST_CASE("limit cusp classification") {
    // pencil of five lines with weight 3/5 plus a line of weight 0
    auto arr = catalog_build("near_pencil", {.param = 5});
    auto lat = lattice_of(arr);
    auto w = weights_by_name(*lat, arr.weights);
    auto rep = classify_limit_cusp(*lat, w);
    REQUIRE(rep.cusps.size() == 1);
    CHECK(lat->points[static_cast<std::size_t>(rep.cusps[0])].multiplicity() == 5);
    CHECK(rep.boundary_weights == std::vector<std::string>{"e"});
    REQUIRE(rep.properties.size() == 1);
    CHECK(rep.properties[0].line_through_every_point);
    CHECK(rep.properties[0].defect_transfer);
    // the full check classifies it as a limit arrangement
    auto sys = make_line_system(lat, w);
    auto check = verify_relations(sys);
    CHECK(check.classification == Classification::limit_cusp);
    REQUIRE(check.bg);
    CHECK(*check.bg == 0);

    // no cusp at the symmetric quadrilateral weight
    auto quad = catalog_build("quadrilateral", {});
    auto latq = lattice_of(quad);
    auto repq = classify_limit_cusp(*latq, weights_by_name(*latq, quad.weights));
    CHECK(repq.cusps.empty());

    // the operation is total on the shipped limit-candidate data
    auto poly = catalog_build("polygon_mirrors", {.param = 4});
    auto latp = lattice_of(poly);
    auto repp = classify_limit_cusp(*latp, weights_by_name(*latp, poly.weights));
    CHECK(repp.boundary_weights.empty());
}

TEST_CASE("abstract mode input validation") {
    auto sys = sym2_system();
    sys.B.pop_back();
    CHECK_THROWS_AS(verify_relations(sys), IncompleteData);
    auto sys2 = sym2_system();
    sys2.points[0].branches[0].curve = 99;
    CHECK_THROWS_AS(finalize_alphas(sys2), UnknownCurveReference);
}
