// Command-line surface. Every subcommand assembles a JSON report first; the
// human-readable table is rendered from that JSON, so the two encodings can
// never drift apart. Exit codes: 0 checks pass, 1 verified violation or
// demanded feasibility missing, 2 input/usage error, 3 internal invariant
// failure.
#pragma once

#include <random>

#include <CLI11.hpp>

#include "pkarr/io.hpp"

namespace pkarr {

struct CommandResult {
    int code = 0;
    std::string out;
    std::string err;
};

namespace cli_detail {

using io::json;

// YAML-ish projection of the report JSON.
inline void render(const json& j, std::ostream& os, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    auto scalar = [](const json& v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_null()) return "-";
        return v.dump();
    };
    auto flat = [&](const json& a) {
        std::string s = "[";
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i) s += ", ";
            s += a[i].is_structured() ? a[i].dump() : scalar(a[i]);
        }
        return s + "]";
    };
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() && !value.empty()) {
                os << pad << key << ":\n";
                render(value, os, indent + 2);
            } else if (value.is_array() && !value.empty() && value[0].is_object()) {
                os << pad << key << ":\n";
                for (const auto& item : value) {
                    os << pad << "  -\n";
                    render(item, os, indent + 4);
                }
            } else if (value.is_array()) {
                os << pad << key << ": " << flat(value) << "\n";
            } else if (value.is_object()) {
                os << pad << key << ": {}\n";
            } else {
                os << pad << key << ": " << scalar(value) << "\n";
            }
        }
    } else {
        os << pad << scalar(j) << "\n";
    }
}

inline int classification_exit(Classification c) {
    switch (c) {
        case Classification::pk_candidate_equality:
        case Classification::strict_inequality:
        case Classification::limit_cusp:
            return 0;
        case Classification::infeasible:
        case Classification::violation:
            return 1;
    }
    return 3;
}

struct LoadedArrangement {
    std::shared_ptr<const IncidenceLattice> lattice;
    std::map<std::string, Rational> weights;
    bool has_weights = false;
};

inline LoadedArrangement load_arrangement(const std::string& path,
                                          const std::string& weights_path) {
    auto file = io::arrangement_from_json(io::read_json_file(path));
    LoadedArrangement out;
    out.lattice = std::make_shared<const IncidenceLattice>(
        build_lattice(file.field, std::move(file.lines)));
    out.weights = file.weights;
    out.has_weights = file.has_weights;
    if (!weights_path.empty()) {
        out.weights = io::weights_from_json(io::read_json_file(weights_path));
        out.has_weights = true;
    }
    return out;
}

inline json lattice_report(const IncidenceLattice& lat) {
    json rep = io::lattice_to_json(lat);
    rep["b_matrix"] = io::bmatrix_to_json(b_matrix(lat));
    rep["symmetric"] = io::symmetric_to_json(symmetric_check(lat));
    rep["hirzebruch"] = io::hirzebruch_to_json(hirzebruch_check(lat));
    return rep;
}

inline std::pair<json, int> check_report(const LoadedArrangement& arr, bool doubles_convention) {
    if (!arr.has_weights)
        throw WeightsMissing("check needs weights (in the file or via --weights)");
    auto w = weights_by_name(*arr.lattice, arr.weights);
    auto sys = make_line_system(arr.lattice, w);
    CheckReport rep = verify_relations(sys);
    json out = io::check_to_json(sys, rep);
    out["bg_detail"] = io::bg_to_json(sys, bg_value(sys));
    out["pencil_criterion"] = io::pencil_to_json(*arr.lattice, pencil_criterion(*arr.lattice));
    out["limit_cusp"] =
        io::limit_cusp_to_json(*arr.lattice, classify_limit_cusp(*arr.lattice, w));
    if (doubles_convention) {
        Rational dbl = bg_value_doubles_as_singular(*arr.lattice, w);
        Rational corr = 0;
        for (const auto& p : arr.lattice->points)
            if (p.multiplicity() == 2) {
                Rational d = w[static_cast<std::size_t>(p.lines[0])] -
                             w[static_cast<std::size_t>(p.lines[1])];
                corr += d * d / 4;
            }
        if (rep.bg && dbl != *rep.bg - corr)
            throw InternalError("double-point bookkeeping identity failed");
        out["doubles_as_singular"] = json{{"bg", rat_str(dbl)},
                                          {"correction", rat_str(corr)},
                                          {"agrees_with_default", corr == 0}};
    }
    return {out, classification_exit(rep.classification)};
}

template <class S>
json residue_system_json(const ResidueSystem<S>& sys) {
    json lines = json::array();
    for (const auto& l : sys.lines) {
        if constexpr (std::is_same_v<S, Rational>)
            lines.push_back(json{{"s", rat_str(l.s)}, {"t", rat_str(l.t)}});
        else
            lines.push_back(json{{"s", io::fe_to_json(l.s)}, {"t", io::fe_to_json(l.t)}});
    }
    json mats = json::array();
    for (const auto& m : sys.matrices) mats.push_back(io::mat2_to_json(m));
    json weights = json::array();
    for (const auto& w : sys.weights) weights.push_back(rat_str(w));
    return json{{"origin_lines", lines},
                {"weights", weights},
                {"alpha", rat_str(sys.alpha)},
                {"matrices", mats}};
}

template <class S>
std::pair<json, int> connection_verify_impl(const std::vector<OriginLine<S>>& lines,
                                            const std::vector<Rational>& weights,
                                            bool has_matrices, const std::vector<Mat2<S>>& mats) {
    json out;
    bool ok = true;
    if (has_matrices) {
        ResidueSystem<S> sys{lines, weights, mats, cone_alpha(weights)};
        auto rep = verify_flat_torsion(sys);
        out["mode"] = "explicit-matrices";
        out["report"] = io::flat_report_to_json(rep);
        ok = rep.all_ok();
    } else {
        auto sol = solve_residues(lines, weights);
        out["mode"] = "solved";
        out["dimension"] = sol.dimension;
        auto rep = verify_flat_torsion(sol.particular);
        out["particular"] = residue_system_json(sol.particular);
        out["report"] = io::flat_report_to_json(rep);
        ok = rep.all_ok();
    }
    out["all_ok"] = ok;
    return {out, ok ? 0 : 1};
}

template <class S>
std::pair<json, int> connection_sample_impl(const std::vector<OriginLine<S>>& lines,
                                            const std::vector<Rational>& weights,
                                            std::uint64_t seed, int count) {
    auto sol = solve_residues(lines, weights);
    std::mt19937_64 gen(seed);
    json samples = json::array();
    bool all_ok = true;
    for (int t = 0; t < count; ++t) {
        ResidueSystem<S> sys = sol.particular;
        json coeffs = json::array();
        for (const auto& dir : sol.basis) {
            Rational c(static_cast<long long>(gen() % 25) - 12,
                       static_cast<long long>(gen() % 6) + 1);
            coeffs.push_back(rat_str(c));
            S cs = ScalarOps<S>::from_rational(lines[0].s, c);
            for (std::size_t i = 0; i < sys.matrices.size(); ++i)
                sys.matrices[i] = sys.matrices[i] + dir[i] * cs;
        }
        auto rep = verify_flat_torsion(sys);
        all_ok = all_ok && rep.all_ok();
        samples.push_back(json{{"coefficients", coeffs},
                               {"flat", rep.flat},
                               {"torsion_free", rep.torsion_free},
                               {"constraints_ok", rep.constraints_ok}});
    }
    json out;
    out["dimension"] = sol.dimension;
    out["count"] = count;
    out["samples"] = samples;
    out["all_ok"] = all_ok;
    return {out, all_ok ? 0 : 1};
}

}  // namespace cli_detail

inline CommandResult run_command(const std::vector<std::string>& args) {
    using cli_detail::json;
    std::ostringstream out, err;
    CLI::App app{"exact checker for polyhedral-Kahler candidate line arrangements", "pkarr"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false;
    app.add_flag("--json", as_json, "emit the machine-readable report");

    std::string in_path, weights_path, out_path;
    bool doubles_convention = false, require_interior = false, diagnostic = false;
    long long param = 0;
    bool has_param = false;
    std::string beta_str, wx_str, wy_str, wz_str, name;
    long long n_override = 0;
    bool has_n = false;
    std::uint64_t seed = 0;
    int count = 10;

    auto* lattice_cmd = app.add_subcommand("lattice", "intersection lattice, B-matrix and counts");
    lattice_cmd->add_option("file", in_path, "arrangement file")->required();

    auto* check_cmd = app.add_subcommand("check", "verify the relations on a weighted arrangement");
    check_cmd->add_option("file", in_path, "arrangement file")->required();
    check_cmd->add_option("--weights", weights_path, "weights file (overrides the arrangement)");
    check_cmd->add_flag("--doubles-as-singular", doubles_convention,
                        "also evaluate bg with double points blown up");

    auto* solve_cmd = app.add_subcommand("solve", "solve the weight equations exactly");
    solve_cmd->add_option("file", in_path, "arrangement file")->required();
    solve_cmd->add_flag("--require-interior", require_interior,
                        "exit 1 unless the open region is nonempty");

    auto* catalog_cmd = app.add_subcommand("catalog", "built-in arrangements");
    auto* cat_list = catalog_cmd->add_subcommand("list", "list the entries");
    auto* cat_build = catalog_cmd->add_subcommand("build", "emit an arrangement file");
    cat_build->add_option("name", name, "entry name")->required();
    cat_build->add_option("--param", param, "integer parameter")->each([&](const std::string&) {
        has_param = true;
    });
    cat_build->add_option("--beta", beta_str, "biased weight for the quadrilateral family");
    cat_build->add_option("--wx", wx_str, "seven_lines coordinate weight");
    cat_build->add_option("--wy", wy_str, "seven_lines coordinate weight");
    cat_build->add_option("--wz", wz_str, "seven_lines coordinate weight");
    cat_build->add_option("-o,--output", out_path, "output file")->required();
    auto* cat_validate = catalog_cmd->add_subcommand("validate", "rebuild and check an entry");
    cat_validate->add_option("name", name, "entry name")->required();
    cat_validate->add_option("--param", param, "integer parameter")->each(
        [&](const std::string&) { has_param = true; });
    catalog_cmd->require_subcommand(1);

    auto* curves_cmd = app.add_subcommand("curves", "verify relations on abstract curve data");
    curves_cmd->add_option("file", in_path, "curve-data file")->required();

    auto* parab_cmd = app.add_subcommand("parabolic", "parabolic Chern data and stability margins");
    parab_cmd->add_option("file", in_path, "arrangement file")->required();
    parab_cmd->add_option("--weights", weights_path, "weights file (overrides the arrangement)");
    parab_cmd->add_option("-N,--polarization", n_override, "polarization degree")->each(
        [&](const std::string&) { has_n = true; });
    parab_cmd->add_flag("--diagnostic", diagnostic, "skip the admissibility checks");

    auto* conn_cmd = app.add_subcommand("connection", "residue systems on a (1,1) cone");
    auto* conn_verify = conn_cmd->add_subcommand("verify", "check the residue identities");
    conn_verify->add_option("file", in_path, "connection file")->required();
    auto* conn_sample = conn_cmd->add_subcommand("sample", "verify random points of the space");
    conn_sample->add_option("file", in_path, "connection file")->required();
    conn_sample->add_option("--seed", seed, "rng seed");
    conn_sample->add_option("--count", count, "number of samples");
    conn_cmd->require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e, out, err);
        return {c == 0 ? 0 : 2, out.str(), err.str()};
    }

    json report;
    int code = 0;
    auto warn_reducible = [&err](const FieldSpecPtr& spec) {
        // irreducibility is the caller's responsibility; flag what the
        // trial factorization can see
        if (auto witness = spec->reducibility_witness())
            err << "warning: min_poly looks reducible (" << *witness << ")\n";
    };
    try {
        if (app.got_subcommand(lattice_cmd)) {
            auto arr = cli_detail::load_arrangement(in_path, "");
            warn_reducible(arr.lattice->field);
            report = cli_detail::lattice_report(*arr.lattice);
        } else if (app.got_subcommand(check_cmd)) {
            auto arr = cli_detail::load_arrangement(in_path, weights_path);
            warn_reducible(arr.lattice->field);
            std::tie(report, code) = cli_detail::check_report(arr, doubles_convention);
        } else if (app.got_subcommand(solve_cmd)) {
            auto arr = cli_detail::load_arrangement(in_path, "");
            auto rep = solve_weights(*arr.lattice, b_matrix(*arr.lattice));
            report = io::solve_to_json(*arr.lattice, rep);
            if (require_interior && !(rep.solvable && rep.interior_feasible)) code = 1;
        } else if (app.got_subcommand(catalog_cmd)) {
            if (catalog_cmd->got_subcommand(cat_list)) {
                json entries = json::array();
                for (const auto& n : catalog_names())
                    entries.push_back(json{{"name", n},
                                           {"needs_param", catalog_entry_needs_param(n)}});
                report["entries"] = entries;
            } else {
                CatalogOptions opt;
                if (has_param) opt.param = param;
                if (catalog_cmd->got_subcommand(cat_build)) {
                    if (!beta_str.empty()) opt.beta = parse_rational(beta_str);
                    if (!wx_str.empty() || !wy_str.empty() || !wz_str.empty()) {
                        if (wx_str.empty() || wy_str.empty() || wz_str.empty())
                            throw ParamOutOfRange("--wx, --wy, --wz must be given together");
                        opt.wxyz = std::array<Rational, 3>{parse_rational(wx_str),
                                                           parse_rational(wy_str),
                                                           parse_rational(wz_str)};
                    }
                    auto arr = catalog_build(name, opt);
                    io::write_json_file(out_path,
                                        io::arrangement_to_json(arr.field, arr.lines, arr.weights));
                    report["written"] = out_path;
                    report["name"] = name;
                    report["lines"] = arr.lines.size();
                    report["flags"] = arr.flags;
                } else {
                    bool ok = catalog_validate(name, opt);
                    report["name"] = name;
                    report["valid"] = ok;
                    if (!ok) code = 1;
                }
            }
        } else if (app.got_subcommand(curves_cmd)) {
            auto sys = io::curves_from_json(io::read_json_file(in_path));
            auto rep = verify_relations(sys);
            report = io::check_to_json(sys, rep);
            code = cli_detail::classification_exit(rep.classification);
        } else if (app.got_subcommand(parab_cmd)) {
            auto arr = cli_detail::load_arrangement(in_path, weights_path);
            if (!arr.has_weights)
                throw WeightsMissing("parabolic needs weights (in the file or via --weights)");
            auto w = weights_by_name(*arr.lattice, arr.weights);
            std::optional<StabilityReport> stab;
            if (!diagnostic) stab = stability_bounds(*arr.lattice, w);
            long long n_used = has_n ? n_override
                                     : (stab ? stab->N_min
                                             : static_cast<long long>(
                                                   arr.lattice->multiple_points().size()) + 1);
            auto rep = parabolic_chern(*arr.lattice, w, n_used, diagnostic);
            rep.below_recommended_N = stab && n_used < stab->N_min;
            if (stab && has_n) *stab = stability_bounds(*arr.lattice, w, n_used);
            report = io::parabolic_to_json(*arr.lattice, rep, stab ? &*stab : nullptr);
            if (rep.below_recommended_N)
                err << "warning: N = " << n_used << " is below the stability threshold N_min = "
                    << stab->N_min << "\n";
        } else if (app.got_subcommand(conn_cmd)) {
            auto file = io::connection_from_json(io::read_json_file(in_path));
            warn_reducible(file.field);
            if (conn_cmd->got_subcommand(conn_verify)) {
                if (file.rational_backend)
                    std::tie(report, code) = cli_detail::connection_verify_impl(
                        file.rlines, file.weights, file.has_matrices, file.rmats);
                else
                    std::tie(report, code) = cli_detail::connection_verify_impl(
                        file.flines, file.weights, file.has_matrices, file.fmats);
            } else {
                if (file.has_matrices)
                    err << "note: explicit matrices in the file are ignored by sample\n";
                if (file.rational_backend)
                    std::tie(report, code) = cli_detail::connection_sample_impl(
                        file.rlines, file.weights, seed, count);
                else
                    std::tie(report, code) = cli_detail::connection_sample_impl(
                        file.flines, file.weights, seed, count);
            }
        }
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return {3, out.str(), err.str()};
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return {2, out.str(), err.str()};
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return {3, out.str(), err.str()};
    }

    if (as_json)
        out << report.dump(2) << "\n";
    else
        cli_detail::render(report, out);
    return {code, out.str(), err.str()};
}

}  // namespace pkarr
