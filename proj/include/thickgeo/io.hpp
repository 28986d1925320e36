#pragma once

// JSON documents: bush files, geodesic descriptions, challenges, responses and reports.
// Every rational is written as a canonical "p/q" string.

#include "thickgeo/brute_force.hpp"
#include "thickgeo/bush.hpp"
#include "thickgeo/construction.hpp"
#include "thickgeo/errors.hpp"
#include "thickgeo/family.hpp"
#include "thickgeo/gauge.hpp"
#include "thickgeo/rational.hpp"
#include "thickgeo/witness.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace thickgeo::io {

using Json = nlohmann::ordered_json;

/// Vectors with more coordinates than this are written as {"sparse": [[i, "v"], ...]}.
inline constexpr std::size_t kDenseLimit = 256;

enum class NumberFormat { rational, decimal };

inline NumberFormat parse_number_format(std::string_view s) {
    if (s == "rational") return NumberFormat::rational;
    if (s == "decimal") return NumberFormat::decimal;
    throw InputError("unknown number format '" + std::string(s) + "'");
}

inline std::string format_number(const Rational& r, NumberFormat fmt) {
    return fmt == NumberFormat::rational ? to_string(r) : to_decimal(r);
}

inline Rational rational_from(const Json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    throw InputError("expected a rational string, got " + j.dump());
}

inline Json rationals_to_json(const std::vector<Rational>& values) {
    Json arr = Json::array();
    for (const auto& v : values) arr.push_back(to_string(v));
    return arr;
}

inline std::vector<Rational> rationals_from(const Json& j) {
    if (!j.is_array()) throw InputError("expected an array of rationals");
    std::vector<Rational> out;
    for (const auto& x : j) out.push_back(rational_from(x));
    return out;
}

inline Json vector_to_json(const Vector& v) {
    if (v.dimension() <= kDenseLimit) return rationals_to_json(v.dense());
    Json entries = Json::array();
    for (const auto& e : v.entries()) entries.push_back(Json::array({e.index, to_string(e.value)}));
    return Json{{"sparse", entries}};
}

inline Vector vector_from(const Json& j, std::size_t dimension) {
    if (j.is_array()) {
        auto coords = rationals_from(j);
        if (coords.size() != dimension) {
            throw InputError("vector has " + std::to_string(coords.size()) + " coordinates, expected " +
                             std::to_string(dimension));
        }
        return Vector::from_dense(coords);
    }
    if (j.is_object() && j.contains("sparse")) {
        Vector v(dimension);
        for (const auto& e : j.at("sparse")) {
            if (!e.is_array() || e.size() != 2) throw InputError("sparse entry must be [index, value]");
            std::size_t i = e[0].get<std::size_t>();
            if (i >= dimension) throw InputError("sparse index out of range");
            v.set(i, rational_from(e[1]));
        }
        return v;
    }
    throw InputError("malformed vector " + j.dump());
}

inline Json space_to_json(const NormedSpace& s) {
    Json j;
    j["dimension"] = s.dimension();
    j["norm"] = std::string(to_string(s.kind()));
    j["weights"] = rationals_to_json(s.weights());
    return j;
}

inline NormedSpace space_from(const Json& j) {
    auto dim = j.at("dimension").get<std::size_t>();
    auto kind = parse_norm_kind(j.at("norm").get<std::string>());
    std::vector<Rational> weights;
    if (j.contains("weights")) weights = rationals_from(j.at("weights"));
    if (kind != NormKind::weighted_l1) weights.clear();
    return NormedSpace(dim, kind, std::move(weights));
}

inline Json bush_to_json(const Bush& b) {
    Json j;
    j["space"] = space_to_json(b.space);
    j["epsilon"] = to_string(b.epsilon);
    Json levels = Json::array();
    for (const auto& level : b.levels) {
        Json arr = Json::array();
        for (const auto& v : level) arr.push_back(vector_to_json(v));
        levels.push_back(arr);
    }
    j["levels"] = levels;
    j["partitions"] = b.partitions;
    Json weights = Json::array();
    for (const auto& w : b.weights) weights.push_back(rationals_to_json(w));
    j["weights"] = weights;
    j["functional"] = rationals_to_json(b.functional.coefficients);
    return j;
}

inline Bush bush_from(const Json& j) {
    try {
        Bush b;
        b.space = space_from(j.at("space"));
        b.epsilon = rational_from(j.at("epsilon"));
        for (const auto& level : j.at("levels")) {
            std::vector<Vector> vs;
            for (const auto& v : level) vs.push_back(vector_from(v, b.space.dimension()));
            b.levels.push_back(std::move(vs));
        }
        b.partitions = j.at("partitions").get<std::vector<std::vector<std::vector<std::size_t>>>>();
        for (const auto& w : j.at("weights")) b.weights.push_back(rationals_from(w));
        // level 0 carries no weight; accept ["1"] for it as well
        if (!b.weights.empty() && b.weights[0].size() == 1 && b.weights[0][0] == 1) b.weights[0].clear();
        b.functional.coefficients = rationals_from(j.at("functional"));
        check_structure(b);
        return b;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed bush document: ") + e.what());
    }
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

inline Json geodesic_to_json(const PastedGeodesic& g) {
    Json j;
    j["breakpoints"] = rationals_to_json(g.breakpoints);
    Json pieces = Json::array();
    for (const auto& p : g.pieces) pieces.push_back(Json{{"bits", p.bits.bits()}, {"depth", p.depth}});
    j["pieces"] = pieces;
    return j;
}

/// Parses a geodesic description; validation happens in paste().
inline PastedGeodesic geodesic_from(const Json& j) {
    try {
        PastedGeodesic g;
        g.breakpoints = rationals_from(j.at("breakpoints"));
        for (const auto& p : j.at("pieces")) {
            g.pieces.push_back(BranchSpec{Label::parse(p.at("bits").get<std::string>()), p.at("depth").get<std::size_t>()});
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed geodesic description: ") + e.what());
    }
}

struct Challenge {
    PastedGeodesic geodesic;
    std::vector<Rational> t;
};

inline Json challenge_to_json(const Challenge& c) {
    return Json{{"geodesic", geodesic_to_json(c.geodesic)}, {"t", rationals_to_json(c.t)}};
}

inline Challenge challenge_from(const Json& j) {
    try {
        return Challenge{geodesic_from(j.at("geodesic")), rationals_from(j.at("t"))};
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed challenge: ") + e.what());
    }
}

inline Json witness_to_json(const ThicknessWitness& w) {
    Json j;
    j["q"] = rationals_to_json(w.q);
    j["s"] = rationals_to_json(w.s);
    j["deviation_total"] = to_string(w.deviation_total);
    Json gaps = Json::array();
    for (const auto& g : w.gaps) {
        gaps.push_back(Json{{"q_left", to_string(g.q_left)},
                            {"s", to_string(g.s)},
                            {"q_right", to_string(g.q_right)},
                            {"deviation", to_string(g.deviation)}});
    }
    j["gaps"] = gaps;
    return j;
}

inline ThicknessWitness witness_from(const Json& j) {
    try {
        ThicknessWitness w;
        w.q = rationals_from(j.at("q"));
        w.s = rationals_from(j.at("s"));
        w.deviation_total = rational_from(j.at("deviation_total"));
        if (j.contains("gaps")) {
            for (const auto& g : j.at("gaps")) {
                w.gaps.push_back(WitnessGap{rational_from(g.at("q_left")), rational_from(g.at("s")),
                                            rational_from(g.at("q_right")), rational_from(g.at("deviation"))});
            }
        }
        return w;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed witness: ") + e.what());
    }
}

inline Json response_to_json(const ChallengeResponse& r) {
    Json j;
    j["geodesic_tilde"] = geodesic_to_json(r.g_tilde);
    j["witness"] = witness_to_json(r.witness);
    Json pieces = Json::array();
    for (const auto& p : r.pieces) {
        Json cover = Json::array();
        for (const auto& iv : p.covering) cover.push_back(Json::array({to_string(iv.lo), to_string(iv.hi)}));
        pieces.push_back(Json{{"switch_depth", p.switch_depth},
                              {"switched_bits", p.switched_bits.bits()},
                              {"covering", cover},
                              {"deviation", to_string(p.deviation)}});
    }
    j["pieces"] = pieces;
    return j;
}

inline Json checks_to_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json e{{"name", c.name}, {"passed", c.passed}};
        if (c.warning_only) e["warning_only"] = true;
        if (!c.detail.empty()) e["detail"] = c.detail;
        arr.push_back(e);
    }
    return arr;
}

inline Json bush_report_to_json(const BushReport& r) {
    Json j;
    j["passed"] = r.passed();
    j["mode"] = r.mode == BushMode::normalized ? "normalized" : "raw";
    j["epsilon"] = to_string(r.epsilon);
    j["lambda_max"] = to_string(r.lambda_max);
    j["max_norm"] = r.max_norm;
    j["checks"] = checks_to_json(r.checks);
    j["warnings"] = r.warnings();
    return j;
}

inline Json deviation_report_to_json(const DeviationReport& r, NumberFormat fmt) {
    Json j;
    j["label"] = r.label.display();
    j["deviation"] = format_number(r.total, fmt);
    j["selected_length"] = format_number(r.selected_length, fmt);
    j["bound"] = format_number(r.epsilon / 2 * r.selected_length, fmt);
    j["meets_bound"] = r.meets_bound();
    j["empty_selection"] = r.empty_selection;
    Json gaps = Json::array();
    for (const auto& g : r.gaps) {
        gaps.push_back(Json{{"gap", g.gap},
                            {"start", format_number(g.start, fmt)},
                            {"length", format_number(g.length, fmt)},
                            {"midpoint", format_number(g.midpoint, fmt)},
                            {"deviation", format_number(g.deviation, fmt)}});
    }
    j["gaps"] = gaps;
    return j;
}

inline Json witness_report_to_json(const WitnessReport& r) {
    Json j;
    j["passed"] = r.passed();
    j["alpha"] = to_string(r.alpha);
    j["achieved"] = to_string(r.achieved);
    j["evaluation_depth"] = r.evaluation_depth;
    j["approximation_error"] = to_string(r.approximation_error);
    j["checks"] = checks_to_json(r.checks);
    return j;
}

inline Json alpha_report_to_json(const AlphaReport& r) {
    Json j;
    j["bound"] = to_string(r.bound);
    j["worst_geodesic"] = r.worst_geodesic;
    j["worst_challenge"] = rationals_to_json(r.worst_challenge);
    j["geodesics"] = r.geodesics;
    j["challenges_per_geodesic"] = r.challenges;
    j["probe_points"] = r.probe_points;
    j["evaluation_depth"] = r.evaluation_depth;
    return j;
}

/// Tabular vertex export: a comment line with metadata, a header row, then
/// "arclength,x0,x1,..." rows.
inline std::string vertex_table(const VertexList& verts, const std::string& metadata, NumberFormat fmt) {
    std::ostringstream out;
    out << "# " << metadata << " format=" << (fmt == NumberFormat::rational ? "rational" : "decimal") << "\n";
    const std::size_t dim = verts.points.empty() ? 0 : verts.points.front().dimension();
    out << "arclength";
    for (std::size_t i = 0; i < dim; ++i) out << ",x" << i;
    out << "\n";
    for (std::size_t r = 0; r < verts.size(); ++r) {
        out << format_number(verts.arclengths[r], fmt);
        auto dense = verts.points[r].dense();
        for (const auto& c : dense) out << "," << format_number(c, fmt);
        out << "\n";
    }
    return out.str();
}

/// Parses a table written by vertex_table in rational mode.
inline VertexList parse_vertex_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    VertexList verts;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<Rational> fields;
        std::stringstream row(line);
        std::string cell;
        while (std::getline(row, cell, ',')) fields.push_back(parse_rational(cell));
        if (fields.empty()) continue;
        verts.arclengths.push_back(fields[0]);
        verts.points.push_back(Vector::from_dense(std::vector<Rational>(fields.begin() + 1, fields.end())));
    }
    return verts;
}

} // namespace thickgeo::io
