#pragma once

#include <json.hpp>

#include "p1orbit/cycles.hpp"
#include "p1orbit/embedding.hpp"
#include "p1orbit/torus.hpp"

namespace p1orbit::io {

using json = nlohmann::json;

inline json tuple_to_json(const PointTuple<Rational>& t) {
    json arr = json::array();
    for (const auto& x : t) arr.push_back(format_point(x));
    return arr;
}

inline PointTuple<Rational> tuple_from_json(const json& arr) {
    PointTuple<Rational> t;
    for (const auto& s : arr) t.push_back(parse_point(s.get<std::string>()));
    return t;
}

inline json moebius_to_json(const Moebius<Rational>& g) {
    json arr = json::array();
    for (const auto& e : g.entries()) arr.push_back(format_rational(e));
    return arr;
}

inline json embedding_to_json(const Embedding& X) {
    return json{{"r", X.r()},
                {"points", tuple_to_json(X.points())},
                {"normalized", tuple_to_json(X.normalized())}};
}

inline Embedding embedding_from_json(const json& j) {
    Embedding X(tuple_from_json(j.at("points")));
    if (j.contains("r") && j.at("r").get<int>() != X.r())
        throw parse_error("embedding JSON: r does not match the point list");
    return X;
}

inline json coefficients_to_json(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(format_rational(x));
    return arr;
}

inline std::vector<Rational> coefficients_from_json(const json& arr) {
    std::vector<Rational> v;
    for (const auto& s : arr) v.push_back(parse_rational(s.get<std::string>()));
    return v;
}

/// Cones serialize in canonical form so equal cones have equal JSON.
inline json cone_to_json(const SimplicialCone& cone) {
    auto canon = canonicalized(cone);
    json gens = json::array();
    for (const auto& g : canon.generators()) gens.push_back(coefficients_to_json(g));
    json out{{"n", canon.n()}, {"generators", gens}};
    if (!canon.basis_name().empty()) out["basis"] = canon.basis_name();
    return out;
}

inline SimplicialCone cone_from_json(const json& j) {
    std::vector<std::vector<Rational>> gens;
    for (const auto& g : j.at("generators")) gens.push_back(coefficients_from_json(g));
    return SimplicialCone(j.at("n").get<int>(), std::move(gens),
                          j.value("basis", std::string{}));
}

inline json fixed_points_to_json(
    const std::vector<std::pair<FixedPointLabel, PointTuple<Rational>>>& fps) {
    json arr = json::array();
    for (const auto& [label, tuple] : fps)
        arr.push_back(json{{"label", to_string(label)}, {"tuple", tuple_to_json(tuple)}});
    return arr;
}

inline json stratum_to_json(const StratumDescriptor& s) {
    return json{{"direction", to_string(s.direction)},
                {"label", to_string(s.at)},
                {"tag", to_string(s.tag)},
                {"dimension", s.dimension}};
}

/// One row per (fixed point, direction), in table order.
inline json strata_summary_to_json(const std::vector<StratumRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        arr.push_back(json{{"label", to_string(row.at)},
                           {"direction", "positive"},
                           {"tag", to_string(row.tag_positive)},
                           {"dimension", row.dim_positive}});
        arr.push_back(json{{"label", to_string(row.at)},
                           {"direction", "negative"},
                           {"tag", to_string(row.tag_negative)},
                           {"dimension", row.dim_negative}});
    }
    return arr;
}

inline json membership_to_json(const Membership& m) {
    json out{{"member", m.member()}};
    switch (m.branch) {
        case Membership::Branch::OpenOrbit: out["branch"] = "open-orbit"; break;
        case Membership::Branch::Boundary: out["branch"] = "boundary"; break;
        case Membership::Branch::Diagonal: out["branch"] = "diagonal"; break;
        case Membership::Branch::None: out["branch"] = "none"; break;
    }
    if (m.branch == Membership::Branch::Boundary) out["component"] = m.component;
    if (m.witness) out["witness"] = moebius_to_json(*m.witness);
    return out;
}

inline json minors_to_json(const MinorsSystem& system) {
    auto names = system.variable_names();
    json top = json::array(), bottom = json::array(), minors = json::array();
    for (const auto& p : system.top_row()) top.push_back(polynomial_to_text(p, names));
    for (const auto& p : system.bottom_row()) bottom.push_back(polynomial_to_text(p, names));
    for (std::size_t i = 0; i < system.minor_count(); ++i) {
        auto [a, b] = system.minor_columns(i);
        minors.push_back(json{
            {"columns", json::array({a, b})},
            {"polynomial",
             polynomial_to_text(primitive_integer_form(system.minors()[i]), names)}});
    }
    return json{{"r", system.r()},
                {"matrix", json{{"top", top}, {"bottom", bottom}}},
                {"minors", minors}};
}

inline json verify_report_to_json(const VerifyReport& rep) {
    return json{{"r", rep.r},
                {"parametrization_ok", rep.parametrization_ok},
                {"diagonal_ok", rep.diagonal_ok},
                {"coordinate_lines_ok", rep.coordinate_lines_ok},
                {"failures", rep.failures}};
}

inline json count_to_json(const FiniteFieldCount& c) {
    return json{{"q", c.q},
                {"n_variety", c.n_variety},
                {"n_constructive", c.n_constructive},
                {"equal", c.n_variety == c.n_constructive}};
}

inline json witness_to_json(const IsomorphismWitness& w) {
    json perm = json::array();
    for (int i : w.permutation) perm.push_back(i + 1);  // 1-based slots
    return json{{"permutation", perm}, {"moebius", moebius_to_json(w.moebius)}};
}

} // namespace p1orbit::io
