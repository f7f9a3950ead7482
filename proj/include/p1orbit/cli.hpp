#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "p1orbit/io.hpp"

namespace p1orbit::cli {

/// Every invocation produces one report: a status, a verb-specific payload,
/// and diagnostics. status == "error" always comes with a nonzero exit code.
struct Report {
    std::string status = "ok";
    io::json payload = io::json::object();
    std::vector<std::string> diagnostics;

    io::json to_json() const {
        return io::json{{"status", status}, {"payload", payload}, {"diagnostics", diagnostics}};
    }
};

namespace detail {

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string::npos) pos = text.size();
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

inline Direction parse_direction(const std::string& s) {
    if (s == "pos" || s == "positive") return Direction::Positive;
    if (s == "neg" || s == "negative") return Direction::Negative;
    throw parse_error("direction must be pos or neg, got '" + s + "'");
}

inline std::vector<Rational> parse_vector(const std::string& s) {
    std::vector<Rational> v;
    for (const auto& part : split(s, ',')) v.push_back(parse_rational(part));
    return v;
}

inline std::vector<std::uint32_t> parse_primes(const std::string& s) {
    std::vector<std::uint32_t> out;
    for (const auto& part : split(s, ',')) {
        unsigned long v = 0;
        try {
            std::size_t used = 0;
            v = std::stoul(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
        } catch (const std::exception&) {
            throw parse_error("invalid prime list entry '" + part + "'");
        }
        out.push_back(static_cast<std::uint32_t>(v));
    }
    return out;
}

inline BinaryForm parse_factors(const std::string& s) {
    std::vector<LinearFactor> factors;
    for (const auto& part : split(s, ',')) {
        auto fields = split(part, ':');
        if (fields.size() != 2 && fields.size() != 3)
            throw parse_error("factor must be a:b or a:b:m, got '" + part + "'");
        LinearFactor f{parse_rational(fields[0]), parse_rational(fields[1]), 1};
        if (fields.size() == 3) {
            Rational m = parse_rational(fields[2]);
            if (!is_integer(m) || m < 1) throw parse_error("multiplicity must be a positive integer");
            f.multiplicity = static_cast<int>(numerator(m).convert_to<long>());
        }
        factors.push_back(std::move(f));
    }
    return BinaryForm(std::move(factors));
}

inline std::string format_class(const std::vector<Rational>& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_rational(v[i]);
    }
    return out + ")";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Context {
    Report report;
    std::string text;

    void line(const std::string& s) { text += s + "\n"; }
};

} // namespace detail

/// Runs one command. Output goes to `out`, diagnostics of failed runs to
/// `err`. Exit codes: 0 ok, 1 precondition violation, 2 parse error, 3
/// internal invariant failure.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    using detail::Context;
    using io::json;

    CLI::App app{"exact geometry of Moebius orbit closures in products of projective lines"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    bool as_json = false;
    std::string out_path;
    app.add_flag("--json", as_json, "emit the full JSON report on stdout");
    app.add_option("--out", out_path, "also write the JSON report to this path");

    std::string points, at, dir, ff, a_points, b_points, v_list, generators, cone_choice, factors;
    int weight_k = 1, boundary_index = 0, r_arg = 0;
    bool canonical = false, want_nef = false, want_curves = false, want_dual = false;

    auto* c_info = app.add_subcommand("info", "summary of an embedding");
    c_info->add_option("--points", points)->required();

    auto* c_fixed = app.add_subcommand("fixed-points", "torus-fixed tuples of the embedding");
    c_fixed->add_option("--points", points)->required();

    auto* c_limit = app.add_subcommand("limit", "flow limit and stratum of a point");
    c_limit->add_option("--points", points)->required();
    c_limit->add_option("--at", at)->required();
    c_limit->add_option("--dir", dir)->required();
    c_limit->add_option("--k", weight_k, "one-parameter weight (nonzero)");

    auto* c_member = app.add_subcommand("member", "membership test with branch and witness");
    c_member->add_option("--points", points)->required();
    c_member->add_option("--at", at)->required();

    auto* c_equations = app.add_subcommand("equations", "determinantal equations of the slice");
    c_equations->add_option("--points", points)->required();

    auto* c_verify = app.add_subcommand("verify", "symbolic and finite-field verification");
    c_verify->add_option("--points", points)->required();
    c_verify->add_option("--ff", ff, "comma-separated primes for point counts");

    auto* c_class = app.add_subcommand("class", "divisor classes in the D-basis");
    c_class->add_option("--r", r_arg)->required();
    c_class->add_option("--boundary", boundary_index, "boundary divisor index (1-based)");
    c_class->add_flag("--canonical", canonical, "the canonical class");

    auto* c_cone = app.add_subcommand("cone", "nef cone and cone of effective one-cycles");
    c_cone->add_option("--r", r_arg)->required();
    c_cone->add_flag("--nef", want_nef);
    c_cone->add_flag("--curves", want_curves);
    c_cone->add_flag("--dual", want_dual, "also report the dual cone");

    auto* c_decompose = app.add_subcommand("decompose", "decompose a vector over a cone");
    c_decompose->add_option("--v", v_list)->required();
    c_decompose->add_option("--r", r_arg);
    c_decompose->add_option("--cone", cone_choice, "nef or curves");
    c_decompose->add_option("--generators", generators, "semicolon-separated generator rows");

    auto* c_iso = app.add_subcommand("isomorphic", "classification up to permutation and Moebius");
    c_iso->add_option("--a", a_points)->required();
    c_iso->add_option("--b", b_points)->required();

    auto* c_form = app.add_subcommand("form", "embedding on the roots of a binary form");
    c_form->add_option("--factors", factors, "factors a:b:m of the form prod (a x + b y)^m")->required();

    Context ctx;
    int code = 0;
    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            throw parse_error(e.what());
        }

        if (c_info->parsed()) {
            Embedding X(parse_tuple(points));
            auto fps = fixed_points(X);
            auto canon = canonical_class(X.r());
            json boundary = json::array();
            for (int i = 1; i <= X.r(); ++i)
                boundary.push_back(io::coefficients_to_json(boundary_class(X.r(), i).d));
            ctx.report.payload = io::embedding_to_json(X);
            ctx.report.payload["normalizer"] = io::moebius_to_json(X.normalizer());
            ctx.report.payload["fixed_point_count"] = fps.size();
            ctx.report.payload["canonical_class"] = io::coefficients_to_json(canon.d);
            ctx.report.payload["boundary_classes"] = boundary;
            ctx.report.payload["singular_along_diagonal"] = X.singular_along_diagonal();
            ctx.report.payload["strata"] = io::strata_summary_to_json(strata_summary(X));
            ctx.line("r: " + std::to_string(X.r()));
            ctx.line("points: " + format_tuple(X.points()));
            ctx.line("normalized: " + format_tuple(X.normalized()));
            ctx.line("fixed points: " + std::to_string(fps.size()));
            ctx.line("canonical class: " + detail::format_class(canon.d));
            for (int i = 1; i <= X.r(); ++i)
                ctx.line("boundary class " + std::to_string(i) + ": " +
                         detail::format_class(boundary_class(X.r(), i).d));
            ctx.line("singular along diagonal: " + detail::yes_no(X.singular_along_diagonal()));
        } else if (c_fixed->parsed()) {
            Embedding X(parse_tuple(points));
            auto fps = fixed_points(X);
            ctx.report.payload["count"] = fps.size();
            ctx.report.payload["fixed_points"] = io::fixed_points_to_json(fps);
            for (const auto& [label, tuple] : fps)
                ctx.line(to_string(label) + ": " + format_tuple(tuple));
        } else if (c_limit->parsed()) {
            Embedding X(parse_tuple(points));
            auto q = parse_tuple(at);
            Direction d = detail::parse_direction(dir);
            OneParamWeight w{weight_k};
            auto stratum = stratum_of(X, q, d, w);  // includes the membership guard
            auto lim = limit(w, q, d);
            ctx.report.payload["at"] = io::tuple_to_json(q);
            ctx.report.payload["direction"] = to_string(d);
            ctx.report.payload["k"] = weight_k;
            ctx.report.payload["limit"] = io::tuple_to_json(lim);
            ctx.report.payload["stratum"] = io::stratum_to_json(stratum);
            ctx.line("limit: " + format_tuple(lim));
            ctx.line("stratum: " + to_string(stratum.at) + ", tag " + to_string(stratum.tag) +
                     ", dimension " + std::to_string(stratum.dimension));
        } else if (c_member->parsed()) {
            Embedding X(parse_tuple(points));
            auto q = parse_tuple(at);
            auto m = classify_membership(X, q);
            ctx.report.payload = io::membership_to_json(m);
            std::string where;
            switch (m.branch) {
                case Membership::Branch::OpenOrbit: where = " (open orbit)"; break;
                case Membership::Branch::Boundary:
                    where = " (boundary component " + std::to_string(m.component) + ")";
                    break;
                case Membership::Branch::Diagonal: where = " (diagonal)"; break;
                case Membership::Branch::None: break;
            }
            ctx.line("member: " + std::string(m.member() ? "true" : "false") + where);
        } else if (c_equations->parsed()) {
            Embedding X(parse_tuple(points));
            auto system = minors_system(X);
            ctx.report.payload = io::minors_to_json(system);
            auto names = system.variable_names();
            std::string top = "matrix top:    ", bottom = "matrix bottom: ";
            for (std::size_t i = 0; i < system.top_row().size(); ++i) {
                if (i) { top += " | "; bottom += " | "; }
                top += polynomial_to_text(system.top_row()[i], names);
                bottom += polynomial_to_text(system.bottom_row()[i], names);
            }
            ctx.line(top);
            ctx.line(bottom);
            ctx.text += system.to_text();
        } else if (c_verify->parsed()) {
            Embedding X(parse_tuple(points));
            auto rep = verify_equations(X);
            ctx.report.payload["equations"] = io::verify_report_to_json(rep);
            ctx.line(std::string("equations: ") + (rep.ok() ? "ok" : "FAILED"));
            bool all_ok = rep.ok();
            for (const auto& f : rep.failures) ctx.report.diagnostics.push_back(f);
            json counts = json::array();
            if (!ff.empty()) {
                for (std::uint32_t q : detail::parse_primes(ff)) {
                    auto c = count_points_ff(X, q);
                    counts.push_back(io::count_to_json(c));
                    bool equal = c.n_variety == c.n_constructive;
                    all_ok = all_ok && equal;
                    ctx.line("ff q=" + std::to_string(q) + ": n_variety=" +
                             std::to_string(c.n_variety) + " n_constructive=" +
                             std::to_string(c.n_constructive) + (equal ? " equal" : " MISMATCH"));
                    if (!equal)
                        ctx.report.diagnostics.push_back("finite-field count mismatch at q = " +
                                                         std::to_string(q));
                }
            }
            ctx.report.payload["finite_field"] = counts;
            if (!all_ok) {
                ctx.report.status = "error";
                code = 3;  // a failed verification falsifies the implementation
            }
        } else if (c_class->parsed()) {
            if (canonical == (boundary_index != 0))
                throw parse_error("class needs exactly one of --canonical or --boundary");
            DivisorClass cls = canonical ? canonical_class(r_arg) : boundary_class(r_arg, boundary_index);
            ctx.report.payload["kind"] = canonical ? "canonical" : "boundary";
            ctx.report.payload["r"] = r_arg;
            if (!canonical) ctx.report.payload["index"] = boundary_index;
            ctx.report.payload["coefficients"] = io::coefficients_to_json(cls.d);
            ctx.report.payload["integral"] = is_integral(cls.d);
            ctx.report.payload["nef"] = is_nef(cls);
            ctx.report.payload["ample"] = is_ample(cls);
            ctx.line("class: " + detail::format_class(cls.d));
            ctx.line("integral: " + detail::yes_no(is_integral(cls.d)));
            ctx.line("nef: " + detail::yes_no(is_nef(cls)) + ", ample: " + detail::yes_no(is_ample(cls)));
        } else if (c_cone->parsed()) {
            if (want_nef == want_curves)
                throw parse_error("cone needs exactly one of --nef or --curves");
            SimplicialCone cone = want_nef ? nef_cone(r_arg) : curve_cone(r_arg);
            ctx.report.payload["which"] = want_nef ? "nef" : "curves";
            ctx.report.payload["r"] = r_arg;
            ctx.report.payload["cone"] = io::cone_to_json(cone);
            auto describe = [&](const SimplicialCone& c) {
                std::string s;
                for (std::size_t i = 0; i < c.generators().size(); ++i) {
                    if (i) s += "; ";
                    s += detail::format_class(canonicalized(c).generators()[i]);
                }
                return s;
            };
            ctx.line("cone (" + cone.basis_name() + "-basis): " + describe(cone));
            if (want_dual) {
                auto dual = dual_cone(cone);
                ctx.report.payload["dual"] = io::cone_to_json(dual);
                ctx.line("dual (" + dual.basis_name() + "-basis): " + describe(dual));
            }
        } else if (c_decompose->parsed()) {
            auto v = detail::parse_vector(v_list);
            SimplicialCone cone = [&] {
                if (!generators.empty()) {
                    std::vector<std::vector<Rational>> gens;
                    for (const auto& row : detail::split(generators, ';'))
                        gens.push_back(detail::parse_vector(row));
                    return SimplicialCone(static_cast<int>(v.size()), std::move(gens));
                }
                if (cone_choice == "nef") return nef_cone(r_arg ? r_arg : static_cast<int>(v.size()));
                if (cone_choice == "curves")
                    return curve_cone(r_arg ? r_arg : static_cast<int>(v.size()));
                throw parse_error("decompose needs --generators or --cone nef|curves");
            }();
            auto result = decompose(cone, v);
            ctx.report.payload["cone"] = io::cone_to_json(cone);
            ctx.report.payload["v"] = io::coefficients_to_json(v);
            ctx.report.payload["coefficients"] = io::coefficients_to_json(result.coefficients);
            ctx.report.payload["inside"] = result.inside;
            ctx.line("coefficients: " + detail::format_class(result.coefficients));
            ctx.line("inside: " + detail::yes_no(result.inside));
        } else if (c_iso->parsed()) {
            Embedding A(parse_tuple(a_points)), B(parse_tuple(b_points));
            auto witness = are_isomorphic(A, B);
            ctx.report.payload["isomorphic"] = bool(witness);
            if (witness) {
                ctx.report.payload["witness"] = io::witness_to_json(*witness);
                std::string perm;
                for (std::size_t i = 0; i < witness->permutation.size(); ++i) {
                    if (i) perm += ",";
                    perm += std::to_string(witness->permutation[i] + 1);
                }
                ctx.line("isomorphic: true");
                ctx.line("permutation: " + perm);
                std::string mat;
                for (std::size_t i = 0; i < 4; ++i) {
                    if (i) mat += ",";
                    mat += format_rational(witness->moebius.entries()[i]);
                }
                ctx.line("moebius: " + mat);
            } else {
                ctx.line("isomorphic: false");
            }
        } else if (c_form->parsed()) {
            BinaryForm f = detail::parse_factors(factors);
            Embedding X = embedding_from_form(f);
            json fac = json::array();
            for (const auto& factor : f.factors())
                fac.push_back(json{{"a", format_rational(factor.a)},
                                   {"b", format_rational(factor.b)},
                                   {"multiplicity", factor.multiplicity}});
            ctx.report.payload["factors"] = fac;
            ctx.report.payload["degree"] = f.degree();
            ctx.report.payload["embedding"] = io::embedding_to_json(X);
            ctx.line("degree: " + std::to_string(f.degree()));
            ctx.line("points: " + format_tuple(X.points()));
            ctx.line("normalized: " + format_tuple(X.normalized()));
        }
    } catch (const parse_error& e) {
        ctx.report.status = "error";
        ctx.report.diagnostics.push_back(e.what());
        code = 2;
    } catch (const precondition_error& e) {
        ctx.report.status = "error";
        ctx.report.diagnostics.push_back(e.what());
        code = 1;
    } catch (const internal_error& e) {
        ctx.report.status = "error";
        ctx.report.diagnostics.push_back(e.what());
        code = 3;
    } catch (const std::exception& e) {
        ctx.report.status = "error";
        ctx.report.diagnostics.push_back(std::string("unexpected: ") + e.what());
        code = 3;
    }

    if (as_json) {
        out << ctx.report.to_json().dump(2) << "\n";
    } else {
        out << ctx.text;
        for (const auto& d : ctx.report.diagnostics) err << "error: " << d << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) {
            err << "error: cannot write " << out_path << "\n";
            return code ? code : 1;
        }
        file << ctx.report.to_json().dump(2) << "\n";
    }
    return code;
}

} // namespace p1orbit::cli
