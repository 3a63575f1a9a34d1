#pragma once

#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paracone/error.hpp"
#include "paracone/mapping.hpp"
#include "paracone/modulus.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/paraconvexity.hpp"
#include "paracone/quotient_analysis.hpp"
#include "paracone/report.hpp"
#include "paracone/vec.hpp"

namespace paracone {

using json = nlohmann::json;

inline json to_json_value(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const Vec& v) {
    json arr = json::array();
    for (double c : v) arr.push_back(to_json_value(c));
    return arr;
}

inline Vec vec_from_json(const json& j, const char* what) {
    if (!j.is_array()) throw InputError(std::string(what) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : j) {
        if (!e.is_number()) throw InputError(std::string(what) + " must contain only numbers");
        const double v = e.get<double>();
        if (!std::isfinite(v)) throw InputError(std::string(what) + " must be finite");
        out.push_back(v);
    }
    return Vec(std::move(out));
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LookupError("cannot open file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("invalid JSON in '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Cones: {"dim": m, "facet_normals": [[...]], "generators": [[...]], "membership_tol": t}
// ---------------------------------------------------------------------------

inline ConeDescriptor cone_from_json(const json& j) {
    if (!j.is_object()) throw InputError("cone document must be a JSON object");
    if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
        throw InputError("cone document needs a positive integer 'dim'");
    }
    const auto dim = static_cast<std::size_t>(j["dim"].get<long long>());
    std::vector<Vec> normals;
    if (j.contains("facet_normals")) {
        if (!j["facet_normals"].is_array()) throw InputError("'facet_normals' must be an array");
        for (const auto& row : j["facet_normals"]) normals.push_back(vec_from_json(row, "facet normal"));
    }
    std::optional<std::vector<Vec>> gens;
    if (j.contains("generators") && !j["generators"].is_null()) {
        if (!j["generators"].is_array()) throw InputError("'generators' must be an array");
        gens.emplace();
        for (const auto& row : j["generators"]) gens->push_back(vec_from_json(row, "generator"));
    }
    double tol = kDefaultMembershipTol;
    if (j.contains("membership_tol")) {
        if (!j["membership_tol"].is_number()) throw InputError("'membership_tol' must be a number");
        tol = j["membership_tol"].get<double>();
    }
    return ConeDescriptor(dim, std::move(normals), std::move(gens), tol);
}

inline json to_json(const ConeDescriptor& cone) {
    json j;
    j["dim"] = cone.dim();
    j["facet_normals"] = json::array();
    for (const Vec& a : cone.facet_normals()) j["facet_normals"].push_back(to_json(a));
    if (cone.stored_generators()) {
        j["generators"] = json::array();
        for (const Vec& g : *cone.stored_generators()) j["generators"].push_back(to_json(g));
    }
    j["membership_tol"] = cone.membership_tol();
    return j;
}

inline ConeDescriptor load_cone(const std::string& path) { return cone_from_json(read_json_file(path)); }

// ---------------------------------------------------------------------------
// Polynomial mappings:
//   {"n": 1, "m": 2, "components": [[[coeff, [exponents]], ...], ...],
//    "domain": [[lo, hi], ...], "name": "...", "known_C": c, "k0": [...],
//    "alpha": "pow:2", "cone": {...}}
// Everything after "components" is optional; the domain defaults to [-1, 1]^n.
// ---------------------------------------------------------------------------

inline MappingSpec mapping_from_json(const json& j, const std::string& fallback_name = "user") {
    if (!j.is_object()) throw InputError("mapping document must be a JSON object");
    for (const char* key : {"n", "m"}) {
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long long>() <= 0) {
            throw InputError(std::string("mapping document needs a positive integer '") + key + "'");
        }
    }
    PolynomialMap poly;
    poly.n = static_cast<std::size_t>(j["n"].get<long long>());
    poly.m = static_cast<std::size_t>(j["m"].get<long long>());
    if (!j.contains("components") || !j["components"].is_array()) throw InputError("mapping document needs 'components'");
    for (const auto& comp : j["components"]) {
        if (!comp.is_array()) throw InputError("each component must be an array of [coeff, [exponents]] terms");
        std::vector<Monomial> terms;
        for (const auto& term : comp) {
            if (!term.is_array() || term.size() != 2 || !term[0].is_number() || !term[1].is_array()) {
                throw InputError("each term must be [coeff, [exponents]]");
            }
            Monomial mono;
            mono.coeff = term[0].get<double>();
            for (const auto& e : term[1]) {
                if (!e.is_number_integer() || e.get<long long>() < 0) throw InputError("exponents must be nonnegative integers");
                mono.exponents.push_back(static_cast<unsigned>(e.get<long long>()));
            }
            terms.push_back(std::move(mono));
        }
        poly.components.push_back(std::move(terms));
    }

    Vec lo(poly.n, -1.0);
    Vec hi(poly.n, 1.0);
    if (j.contains("domain")) {
        const auto& d = j["domain"];
        if (!d.is_array() || d.size() != poly.n) throw InputError("'domain' must list one [lo, hi] pair per input");
        for (std::size_t i = 0; i < poly.n; ++i) {
            const Vec pair = vec_from_json(d[i], "domain bound");
            if (pair.size() != 2) throw InputError("'domain' entries must be [lo, hi]");
            lo[i] = pair[0];
            hi[i] = pair[1];
        }
    }

    MappingMetadata md;
    if (j.contains("known_C")) md.known_C = j["known_C"].get<double>();
    if (j.contains("k0")) md.known_k0 = vec_from_json(j["k0"], "k0");
    if (j.contains("alpha")) md.known_modulus = j["alpha"].get<std::string>();
    if (j.contains("cone")) md.cone = cone_from_json(j["cone"]);
    const std::string name = j.contains("name") ? j["name"].get<std::string>() : fallback_name;
    return make_polynomial_mapping(name, std::move(poly), Box(lo, hi), std::move(md));
}

inline MappingSpec load_mapping(const std::string& path) { return mapping_from_json(read_json_file(path), path); }

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline json to_json(const CheckParams& p) {
    return json{{"C", to_json_value(p.C)}, {"k0", to_json(p.k0)}, {"alpha", p.alpha}, {"form", p.form}, {"tolerance", p.tolerance}};
}

inline json to_json(const CheckReport& r) {
    json j;
    j["passed"] = r.passed;
    j["worst_slack"] = to_json_value(r.worst_slack);
    if (r.witness) {
        j["witness"] = {{"x1", to_json(r.witness->x1)}, {"x2", to_json(r.witness->x2)}, {"lambda", r.witness->lambda}};
    } else {
        j["witness"] = nullptr;
    }
    j["samples_used"] = r.samples_used;
    j["params"] = to_json(r.params);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json to_json(const ModulusReport& r) {
    json j{{"passed", r.passed}, {"samples_used", r.samples_used}};
    j["witness_t"] = r.witness_t ? to_json_value(*r.witness_t) : json(nullptr);
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

inline json to_json(const SquareShiftReport& r) {
    return json{{"paraconvex", to_json(r.paraconvex)},
                {"shifted_convex", to_json(r.shifted_convex)},
                {"verdicts_agree", r.verdicts_agree()},
                {"identity_max_error", r.identity_max_error},
                {"identity_pairs", r.identity_pairs},
                {"identity_holds", r.identity_holds},
                {"passed", r.passed()}};
}

inline json to_json(const LemmaReport& r) {
    return json{{"status", to_string(r.status)},
                {"membership", r.membership.passed},
                {"monotone", r.monotone.passed},
                {"scalarized_tail", to_json_value(r.scalarized_tail)},
                {"scalarized_tolerance", to_json_value(r.scalarized_tolerance)},
                {"scalarized_converges", r.scalarized_converges},
                {"final_norm", to_json_value(r.final_norm)},
                {"conclusion", r.conclusion}};
}

inline json to_json(const DerivativeEstimate& e) {
    json j;
    j["value"] = to_json(e.value);
    j["converged"] = e.converged;
    j["cauchy_gap"] = to_json_value(e.cauchy_gap);
    j["correction_tail"] = to_json_value(e.correction_tail);
    j["delta"] = to_json_value(e.trace.delta);
    j["steps"] = e.trace.size();
    j["final_t"] = e.trace.size() ? to_json_value(e.trace.t_values.back()) : json(nullptr);
    j["h_scale"] = e.trace.h_scale;
    j["tolerance"] = e.tolerance;
    json sub;
    sub["monotone"] = to_json(e.monotone);
    if (e.lower_bound) {
        sub["lower_bound"] = to_json(e.lower_bound->check);
        sub["lower_bound"]["b"] = to_json(e.lower_bound->b);
    } else {
        sub["lower_bound"] = {{"skipped", e.lower_bound_note}};
    }
    sub["lemma"] = to_json(e.lemma);
    j["subchecks"] = sub;
    if (e.analytic) {
        j["analytic"] = to_json(*e.analytic);
        j["analytic_error"] = to_json_value(*e.analytic_error);
    }
    j["params"] = {{"C", e.trace.C},
                   {"k0", to_json(e.trace.k0)},
                   {"alpha", e.trace.alpha.label()},
                   {"x0", to_json(e.trace.x0)},
                   {"h", to_json(e.trace.h)}};
    j["truncated"] = {{"domain", e.trace.truncated_domain}, {"underflow", e.trace.truncated_underflow}};
    return j;
}

/// CSV columns: t, raw_1..raw_m, corrected_1..corrected_m, monotone_slack.
///
/// monotone_slack on row j is the smallest alpha-monotonicity slack over all
/// coarser rows i < j; the first row has none and leaves the field empty.
inline void write_trace_csv(std::ostream& out, const QuotientTrace& trace, const ConeDescriptor& cone) {
    const std::size_t m = trace.k0.size();
    out << "t";
    for (std::size_t c = 1; c <= m; ++c) out << ",raw_" << c;
    for (std::size_t c = 1; c <= m; ++c) out << ",corrected_" << c;
    out << ",monotone_slack\n";

    std::vector<double> row_slack(trace.size(), std::numeric_limits<double>::infinity());
    for (const auto& p : alpha_monotone_pairs(trace, cone)) row_slack[p.j] = std::min(row_slack[p.j], p.slack);

    std::ostringstream line;
    line.precision(17);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        line.str("");
        line << trace.t_values[i];
        for (std::size_t c = 0; c < m; ++c) line << ',' << trace.raw_quotients[i][c];
        for (std::size_t c = 0; c < m; ++c) line << ',' << trace.corrected_quotients[i][c];
        line << ',';
        if (i > 0 && std::isfinite(row_slack[i])) line << row_slack[i];
        out << line.str() << '\n';
    }
}

}  // namespace paracone
