// JSON ingestion and report serialization. JSON is the machine contract;
// every numeric value travels as an exact rational string.
#pragma once

#include <fstream>

#include <json.hpp>

#include "pkarr/catalog.hpp"
#include "pkarr/connection.hpp"
#include "pkarr/parabolic.hpp"
#include "pkarr/solve.hpp"

namespace pkarr::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// scalars
// ---------------------------------------------------------------------------

inline Rational rational_from_json(const json& j, const std::string& where) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw ParseError(where + ": expected a rational string or integer");
}

inline json field_spec_to_json(const FieldSpec& spec) {
    if (spec.is_rational() && spec.min_poly()[0] == 0) return json("rational");
    json coeffs = json::array();
    for (const auto& c : spec.min_poly()) coeffs.push_back(rat_str(c));
    return json{{"min_poly", coeffs}};
}

inline FieldSpecPtr field_spec_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "rational") return FieldSpec::rationals();
        throw ParseError("field: unknown spec string '" + j.get<std::string>() + "'");
    }
    if (j.is_object() && j.contains("min_poly")) {
        std::vector<Rational> coeffs;
        for (const auto& c : j.at("min_poly")) coeffs.push_back(rational_from_json(c, "min_poly"));
        return std::make_shared<const FieldSpec>(std::move(coeffs));
    }
    throw ParseError("field: expected \"rational\" or {\"min_poly\": [...]}");
}

inline json fe_to_json(const FieldElement& e) {
    json a = json::array();
    for (const auto& c : e.coeffs()) a.push_back(rat_str(c));
    return a;
}

inline FieldElement fe_from_json(const FieldSpecPtr& spec, const json& j,
                                 const std::string& where) {
    if (j.is_array()) {
        std::vector<Rational> coeffs;
        for (const auto& c : j) coeffs.push_back(rational_from_json(c, where));
        if (static_cast<int>(coeffs.size()) > spec->degree())
            throw ParseError(where + ": too many coefficients for the field spec");
        return FieldElement(spec, std::move(coeffs));
    }
    // bare rational constants are accepted as shorthand
    return FieldElement::from_rational(spec, rational_from_json(j, where));
}

// ---------------------------------------------------------------------------
// arrangement files
// ---------------------------------------------------------------------------

struct ArrangementFile {
    FieldSpecPtr field;
    std::vector<ProjLine> lines;
    std::map<std::string, Rational> weights;
    bool has_weights = false;
};

inline ArrangementFile arrangement_from_json(const json& j) {
    if (!j.is_object() || !j.contains("lines"))
        throw ParseError("arrangement: expected an object with a \"lines\" array");
    ArrangementFile file;
    file.field = j.contains("field") ? field_spec_from_json(j.at("field")) : FieldSpec::rationals();
    for (const auto& lj : j.at("lines")) {
        if (!lj.contains("name") || !lj.contains("coeffs"))
            throw ParseError("arrangement: every line needs \"name\" and \"coeffs\"");
        const auto& cj = lj.at("coeffs");
        if (!cj.is_array() || cj.size() != 3)
            throw ParseError("arrangement: \"coeffs\" must hold three field elements");
        std::string name = lj.at("name").get<std::string>();
        file.lines.push_back(ProjLine{name,
                                      {fe_from_json(file.field, cj[0], "line " + name),
                                       fe_from_json(file.field, cj[1], "line " + name),
                                       fe_from_json(file.field, cj[2], "line " + name)}});
    }
    if (j.contains("weights")) {
        file.has_weights = true;
        for (const auto& [name, wj] : j.at("weights").items())
            file.weights[name] = rational_from_json(wj, "weight of " + name);
    }
    return file;
}

inline json arrangement_to_json(const FieldSpecPtr& field, const std::vector<ProjLine>& lines,
                                const std::map<std::string, Rational>& weights) {
    json j;
    j["field"] = field_spec_to_json(*field);
    j["lines"] = json::array();
    for (const auto& l : lines) {
        j["lines"].push_back(json{{"name", l.name},
                                  {"coeffs", json::array({fe_to_json(l.coeffs[0]),
                                                          fe_to_json(l.coeffs[1]),
                                                          fe_to_json(l.coeffs[2])})}});
    }
    if (!weights.empty()) {
        json w;
        for (const auto& [name, q] : weights) w[name] = rat_str(q);
        j["weights"] = w;
    }
    return j;
}

inline std::map<std::string, Rational> weights_from_json(const json& j) {
    const json& table = (j.is_object() && j.contains("weights")) ? j.at("weights") : j;
    if (!table.is_object()) throw ParseError("weights: expected an object of name -> rational");
    std::map<std::string, Rational> w;
    for (const auto& [name, wj] : table.items()) w[name] = rational_from_json(wj, name);
    return w;
}

// ---------------------------------------------------------------------------
// abstract curve files
// ---------------------------------------------------------------------------

inline WeightedSystem curves_from_json(const json& j) {
    if (!j.is_object() || !j.contains("curves"))
        throw ParseError("curves: expected an object with a \"curves\" array");
    WeightedSystem sys;
    sys.line_mode = false;
    sys.c2_surface = j.contains("surface") && j.at("surface").contains("c2")
                         ? rational_from_json(j.at("surface").at("c2"), "surface.c2")
                         : Rational(3);
    for (const auto& cj : j.at("curves")) {
        CurveData c;
        c.name = cj.at("name").get<std::string>();
        c.chi = rational_from_json(cj.at("chi"), c.name + ".chi");
        c.K_dot = rational_from_json(cj.at("K_dot"), c.name + ".K_dot");
        c.self_int = rational_from_json(cj.at("self"), c.name + ".self");
        if (cj.contains("class_deg"))
            c.class_degree = rational_from_json(cj.at("class_deg"), c.name + ".class_deg");
        else
            c.has_class_degree = false;
        c.beta = rational_from_json(cj.at("beta"), c.name + ".beta");
        sys.curves.push_back(std::move(c));
    }
    sys.has_class_degrees = true;
    for (const auto& c : sys.curves) sys.has_class_degrees &= c.has_class_degree;

    if (j.contains("points")) {
        int index = 0;
        for (const auto& pj : j.at("points")) {
            SingularPointData pt;
            pt.id = pj.contains("id") ? pj.at("id").get<std::string>()
                                      : "point" + std::to_string(index);
            pt.p = pj.value("p", 1);
            pt.q = pj.value("q", 1);
            if (pt.p < 1 || pt.q < pt.p)
                throw ParseError(pt.id + ": singularity type needs 1 <= p <= q");
            if (!pj.contains("branches"))
                throw IncompleteData(pt.id + ": missing branch data");
            for (const auto& bj : pj.at("branches")) {
                Branch b;
                b.curve = sys.curve_index(bj.at("curve").get<std::string>());
                std::string kind = bj.value("kind", "regular");
                if (kind == "regular") b.kind = BranchKind::regular;
                else if (kind == "z_axis") b.kind = BranchKind::z_axis;
                else if (kind == "w_axis") b.kind = BranchKind::w_axis;
                else throw ParseError(pt.id + ": unknown branch kind '" + kind + "'");
                b.count = bj.value("count", 1);
                pt.branches.push_back(b);
            }
            sys.points.push_back(std::move(pt));
            ++index;
        }
    }

    const std::size_t n = sys.curves.size();
    sys.B.assign(n, std::vector<long long>(n, 0));
    if (!j.contains("B")) throw IncompleteData("curves: missing the B matrix block");
    const json& bj = j.at("B");
    if (bj.contains("diagonal"))
        for (const auto& [name, v] : bj.at("diagonal").items())
            sys.B[static_cast<std::size_t>(sys.curve_index(name))]
                 [static_cast<std::size_t>(sys.curve_index(name))] = v.get<long long>();
    if (bj.contains("off_diagonal"))
        for (const auto& entry : bj.at("off_diagonal")) {
            if (!entry.is_array() || entry.size() != 3)
                throw ParseError("B.off_diagonal entries are [nameA, nameB, count]");
            auto a = static_cast<std::size_t>(sys.curve_index(entry[0].get<std::string>()));
            auto b = static_cast<std::size_t>(sys.curve_index(entry[1].get<std::string>()));
            if (a == b) throw ParseError("B.off_diagonal cannot address the diagonal");
            sys.B[a][b] = sys.B[b][a] = entry[2].get<long long>();
        }
    finalize_alphas(sys);
    return sys;
}

// ---------------------------------------------------------------------------
// connection files
// ---------------------------------------------------------------------------

struct ConnectionFile {
    FieldSpecPtr field;
    bool rational_backend = true;
    std::vector<OriginLine<Rational>> rlines;
    std::vector<OriginLine<FieldElement>> flines;
    std::vector<Rational> weights;
    bool has_matrices = false;
    std::vector<Mat2<Rational>> rmats;
    std::vector<Mat2<FieldElement>> fmats;
};

inline ConnectionFile connection_from_json(const json& j) {
    if (!j.is_object() || !j.contains("origin_lines") || !j.contains("weights"))
        throw ParseError("connection: expected \"origin_lines\" and \"weights\"");
    ConnectionFile file;
    file.field = j.contains("field") ? field_spec_from_json(j.at("field")) : FieldSpec::rationals();
    file.rational_backend = file.field->is_rational() && file.field->min_poly()[0] == 0;
    for (const auto& lj : j.at("origin_lines")) {
        FieldElement s = fe_from_json(file.field, lj.at("s"), "origin line s");
        FieldElement t = fe_from_json(file.field, lj.at("t"), "origin line t");
        if (file.rational_backend)
            file.rlines.push_back({s.rational_value(), t.rational_value()});
        else
            file.flines.push_back({s, t});
    }
    for (const auto& wj : j.at("weights")) file.weights.push_back(rational_from_json(wj, "weights"));
    if (j.contains("matrices")) {
        file.has_matrices = true;
        for (const auto& mj : j.at("matrices")) {
            if (!mj.is_array() || mj.size() != 2 || !mj[0].is_array() || mj[0].size() != 2 ||
                !mj[1].is_array() || mj[1].size() != 2)
                throw ParseError("connection: matrices are 2x2 nested arrays");
            auto e = [&](int r, int c) { return fe_from_json(file.field, mj[r][c], "matrix entry"); };
            if (file.rational_backend)
                file.rmats.push_back(Mat2<Rational>{e(0, 0).rational_value(),
                                                    e(0, 1).rational_value(),
                                                    e(1, 0).rational_value(),
                                                    e(1, 1).rational_value()});
            else
                file.fmats.push_back(Mat2<FieldElement>{e(0, 0), e(0, 1), e(1, 0), e(1, 1)});
        }
    }
    return file;
}

// ---------------------------------------------------------------------------
// report serialization
// ---------------------------------------------------------------------------

inline json point_to_json(const ProjPoint& p) {
    return json::array({fe_to_json(p.coords[0]), fe_to_json(p.coords[1]), fe_to_json(p.coords[2])});
}

inline json lattice_to_json(const IncidenceLattice& lat) {
    json j;
    j["n"] = lat.n();
    j["field"] = field_spec_to_json(*lat.field);
    json sig;
    for (const auto& [mult, count] : lat.signature()) sig[std::to_string(mult)] = count;
    j["signature"] = sig;
    j["points"] = json::array();
    for (const auto& p : lat.points) {
        json names = json::array();
        for (int li : p.lines) names.push_back(lat.lines[static_cast<std::size_t>(li)].name);
        j["points"].push_back(json{{"coords", point_to_json(p.point)},
                                   {"multiplicity", p.multiplicity()},
                                   {"lines", names}});
    }
    return j;
}

inline json bmatrix_to_json(const BMatrix& bm) {
    json rows = json::array();
    for (const auto& row : bm.b) rows.push_back(row);
    return rows;
}

inline json symmetric_to_json(const SymmetricReport& rep) {
    json j;
    j["is_symmetric"] = rep.is_symmetric;
    j["m"] = rep.m ? json(*rep.m) : json(nullptr);
    j["per_line_counts"] = rep.per_line_counts;
    return j;
}

inline json hirzebruch_to_json(const HirzebruchReport& rep) {
    json j;
    j["sum_mu"] = rep.sum_mu.str();
    j["bound"] = rat_str(rep.bound);
    j["identity_residual"] = rat_str(rep.identity_residual);
    j["max_mult"] = rep.max_mult;
    j["applicable"] = rep.applicable;
    j["bound_holds"] = rep.applicable ? json(rep.bound_holds) : json(nullptr);
    j["equality"] = rep.applicable ? json(rep.equality) : json(nullptr);
    return j;
}

inline json check_to_json(const WeightedSystem& sys, const CheckReport& rep) {
    json j;
    json eq1;
    for (std::size_t i = 0; i < sys.curves.size(); ++i)
        eq1[sys.curves[i].name] = rat_str(rep.eq1_residuals[i]);
    j["eq1_residuals"] = eq1;
    j["eq2_residual"] = rep.eq2_checked ? json(rat_str(rep.eq2_residual)) : json("not-checked");
    j["eq3_residual"] = rep.eq3_residual ? json(rat_str(*rep.eq3_residual)) : json("not-applicable");
    json gjgk = json::array();
    for (const auto& [a, b, r] : rep.gjgk_residuals)
        gjgk.push_back(json{{"curves", {sys.curves[static_cast<std::size_t>(a)].name,
                                        sys.curves[static_cast<std::size_t>(b)].name}},
                            {"residual", rat_str(r)}});
    j["gjgk_residuals"] = rep.gjgk_checked ? json(gjgk) : json("not-checked");
    json betas;
    for (std::size_t i = 0; i < sys.curves.size(); ++i) {
        betas[sys.curves[i].name] = json{{"beta", rat_str(sys.curves[i].beta)},
                                         {"strict", static_cast<bool>(rep.beta_strict[i])},
                                         {"boundary", static_cast<bool>(rep.beta_boundary[i])}};
    }
    j["weights"] = betas;
    json pts = json::array();
    for (std::size_t i = 0; i < rep.point_constraints.size(); ++i) {
        const auto& pc = rep.point_constraints[i];
        pts.push_back(json{{"point", pc.point_id},
                           {"defect_sum", rat_str(pc.sum)},
                           {"strict", pc.strict},
                           {"cusp_equality", pc.boundary},
                           {"alpha", rat_str(rep.alphas[i])}});
    }
    j["points"] = pts;
    j["bg"] = rep.bg ? json(rat_str(*rep.bg)) : json("not-applicable");
    j["classification"] = classification_name(rep.classification);
    return j;
}

inline json bg_to_json(const WeightedSystem& sys, const BgReport& rep) {
    json j;
    j["value"] = rat_str(rep.value);
    json grad;
    for (std::size_t i = 0; i < rep.gradient.size(); ++i)
        grad[sys.curves[i].name] = rat_str(rep.gradient[i]);
    j["gradient"] = grad;
    return j;
}

inline json pencil_to_json(const IncidenceLattice& lat,
                           const std::vector<PencilLineReport>& reps) {
    json arr = json::array();
    for (const auto& rep : reps) {
        json partners = json::array();
        for (int p : rep.partners) partners.push_back(lat.lines[static_cast<std::size_t>(p)].name);
        arr.push_back(json{{"line", rep.line},
                           {"passes", rep.passes},
                           {"double_partners", partners},
                           {"witness", rep.witness ? point_to_json(*rep.witness) : json(nullptr)}});
    }
    return arr;
}

inline json limit_cusp_to_json(const IncidenceLattice& lat, const LimitCuspReport& rep) {
    json j;
    json cusps = json::array();
    for (std::size_t c = 0; c < rep.cusps.size(); ++c) {
        const auto& props = rep.properties[c];
        cusps.push_back(
            json{{"point", point_to_json(lat.points[static_cast<std::size_t>(rep.cusps[c])].point)},
                 {"multiplicity",
                  lat.points[static_cast<std::size_t>(rep.cusps[c])].multiplicity()},
                 {"line_through_every_point", props.line_through_every_point},
                 {"defect_transfer", props.defect_transfer},
                 {"missing_lines", props.missing_lines},
                 {"defect_failures", props.defect_failures}});
    }
    j["cusps"] = cusps;
    j["boundary_weight_lines"] = rep.boundary_weights;
    return j;
}

inline json quadform_to_json(const QuadForm& f) {
    json j;
    j["constant"] = rat_str(f.constant);
    json lin = json::array();
    for (const auto& l : f.linear) lin.push_back(rat_str(l));
    j["linear"] = lin;
    json quad = json::array();
    for (const auto& row : f.quad) {
        json r = json::array();
        for (const auto& q : row) r.push_back(rat_str(q));
        quad.push_back(r);
    }
    j["quadratic"] = quad;
    j["identically_zero"] = f.identically_zero();
    return j;
}

inline json solve_to_json(const IncidenceLattice& lat, const SolveReport& rep) {
    json j;
    j["solvable"] = rep.solvable;
    j["dimension"] = rep.solvable ? json(rep.dimension) : json("infeasible");
    if (!rep.solvable) return j;
    auto weights_json = [&](const std::vector<Rational>& w) {
        json o;
        for (int i = 0; i < lat.n(); ++i)
            o[lat.lines[static_cast<std::size_t>(i)].name] = rat_str(w[static_cast<std::size_t>(i)]);
        return o;
    };
    j["particular"] = weights_json(rep.particular);
    json basis = json::array();
    for (const auto& v : rep.basis) {
        json o;
        for (int i = 0; i < lat.n(); ++i)
            o[lat.lines[static_cast<std::size_t>(i)].name] = rat_str(v[static_cast<std::size_t>(i)]);
        basis.push_back(o);
    }
    j["basis"] = basis;
    j["max_slack"] = rat_str(rep.max_slack);
    j["interior_feasible"] = rep.interior_feasible;
    j["interior_point"] = rep.interior_point ? weights_json(*rep.interior_point) : json(nullptr);
    j["bg_on_space"] = quadform_to_json(rep.bg_on_space);
    json zero;
    zero["identically_zero"] = rep.bg_zero.identically_zero;
    zero["solved"] = rep.bg_zero.solved;
    json roots = json::array();
    for (const auto& r : rep.bg_zero.rational_roots) roots.push_back(rat_str(r));
    zero["rational_roots"] = roots;
    zero["symbolic_roots"] = rep.bg_zero.symbolic_roots;
    zero["no_zero"] = rep.bg_zero.no_zero;
    j["bg_zero"] = zero;
    return j;
}

inline json parabolic_to_json(const IncidenceLattice& lat, const ParabolicReport& rep,
                              const StabilityReport* stab) {
    json j;
    json e = json::array();
    for (const auto& x : rep.par_ch1.e) e.push_back(rat_str(x));
    j["par_ch1"] = json{{"h", rat_str(rep.par_ch1.h)}, {"e", e}};
    j["pardeg"] = rat_str(rep.pardeg);
    j["par_ch2"] = rat_str(rep.par_ch2);
    j["nu_total"] = rat_str(rep.nu_total);
    j["polarization_N"] = rep.polarization_N;
    j["below_recommended_N"] = rep.below_recommended_N;
    if (stab) {
        json s;
        s["N_min"] = stab->N_min;
        s["thresholds"] = json{{"alpha", rat_str(stab->threshold_alpha)},
                               {"pairs", rat_str(stab->threshold_pairs)},
                               {"top_weight", rat_str(stab->threshold_top)}};
        s["N_used"] = stab->N_used;
        json margins = json::array();
        for (const auto& [key, m] : stab->margins_d1)
            margins.push_back(json{{"point", key}, {"margin", rat_str(m)}});
        s["margins_d1"] = margins;
        s["margin_generic"] = rat_str(stab->margin_generic);
        s["margin_d0"] = rat_str(stab->margin_d0);
        s["all_negative"] = stab->all_negative;
        s["pencil_sum_guard_ok"] = stab->pencil_sum_guard_ok;
        j["stability"] = s;
        (void)lat;
    }
    return j;
}

template <class S>
json mat2_to_json(const Mat2<S>& m) {
    auto entry = [](const S& x) {
        if constexpr (std::is_same_v<S, Rational>)
            return json(rat_str(x));
        else
            return fe_to_json(x);
    };
    return json::array(
        {json::array({entry(m.a), entry(m.b)}), json::array({entry(m.c), entry(m.d)})});
}

template <class S>
json flat_report_to_json(const FlatReport<S>& rep) {
    json j;
    j["constraints_ok"] = rep.constraints_ok;
    j["flat"] = rep.flat;
    j["torsion_free"] = rep.torsion_free;
    j["torsion_termwise"] = rep.torsion_termwise;
    j["blowup_residue_ok"] = rep.blowup_residue_ok;
    j["curvature_poly"] = json::array({rep.curvature[0].str(), rep.curvature[1].str(),
                                       rep.curvature[2].str(), rep.curvature[3].str()});
    if (!rep.detail.empty()) j["detail"] = rep.detail;
    return j;
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

}  // namespace pkarr::io
