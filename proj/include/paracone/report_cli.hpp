#pragma once

/**
 * @file report_cli.hpp
 * @brief Command orchestration behind the `paracone` executable.
 *
 * Exit status: 0 pass/converged, 1 fail/diverged, 2 usage or input error.
 * Reports are JSON objects with sorted keys and no timestamps, so equal
 * configurations produce byte-identical files.
 */

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "paracone/corpus.hpp"
#include "paracone/error.hpp"
#include "paracone/json_io.hpp"
#include "paracone/mapping.hpp"
#include "paracone/modulus.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/paraconvexity.hpp"
#include "paracone/quotient_analysis.hpp"

namespace paracone {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr std::uint64_t kDefaultSeed = 7;

inline const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> names{"check-paraconvex", "check-convex", "estimate-C", "dderiv", "cone-info", "corpus-run"};
    return names;
}

/// Every field is optional so a config file and command-line flags can be layered.
struct RunConfig {
    std::string command;
    std::optional<std::string> mapping;
    std::optional<std::string> cone;
    std::optional<std::string> alpha;
    std::optional<double> C;
    std::optional<std::string> k0;
    std::optional<std::string> form;
    std::optional<std::string> grid;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> t_start;
    std::optional<double> ratio;
    std::optional<std::size_t> steps;
    std::optional<std::string> x0;
    std::optional<std::string> h;
    std::optional<std::string> norm;
    std::optional<std::size_t> samples;
    std::optional<std::string> out;
    std::optional<std::string> trace;
    bool all = false;

    /// Fields set in `flags` win over this config's.
    [[nodiscard]] RunConfig overridden_by(const RunConfig& flags) const {
        RunConfig r = *this;
        if (!flags.command.empty()) r.command = flags.command;
        auto take = [](auto& dst, const auto& src) {
            if (src) dst = src;
        };
        take(r.mapping, flags.mapping);
        take(r.cone, flags.cone);
        take(r.alpha, flags.alpha);
        take(r.C, flags.C);
        take(r.k0, flags.k0);
        take(r.form, flags.form);
        take(r.grid, flags.grid);
        take(r.seed, flags.seed);
        take(r.tol, flags.tol);
        take(r.t_start, flags.t_start);
        take(r.ratio, flags.ratio);
        take(r.steps, flags.steps);
        take(r.x0, flags.x0);
        take(r.h, flags.h);
        take(r.norm, flags.norm);
        take(r.samples, flags.samples);
        take(r.out, flags.out);
        take(r.trace, flags.trace);
        r.all = r.all || flags.all;
        return r;
    }
};

namespace detail {

// Vectors may be given as "1,0" strings or JSON arrays in a config file.
inline std::string vec_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
        std::ostringstream s;
        s << std::setprecision(17) << v.get<double>();
        return s.str();
    }
    if (v.is_array()) {
        std::ostringstream s;
        s << std::setprecision(17);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw InputError("vector entries must be numbers");
            s << (i ? "," : "") << v[i].get<double>();
        }
        return s.str();
    }
    throw InputError("expected a vector as string, number or array");
}

}  // namespace detail

inline RunConfig config_from_json(const json& j) {
    if (!j.is_object()) throw InputError("config file must hold a JSON object");
    RunConfig c;
    auto str = [&](const char* key, std::optional<std::string>& dst) {
        if (j.contains(key)) dst = j[key].get<std::string>();
    };
    auto vec = [&](const char* key, std::optional<std::string>& dst) {
        if (j.contains(key)) dst = detail::vec_text(j[key]);
    };
    try {
        if (j.contains("command")) c.command = j["command"].get<std::string>();
        str("mapping", c.mapping);
        str("cone", c.cone);
        str("alpha", c.alpha);
        if (j.contains("C")) c.C = j["C"].get<double>();
        vec("k0", c.k0);
        str("form", c.form);
        str("grid", c.grid);
        if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("tol")) c.tol = j["tol"].get<double>();
        if (j.contains("t_start")) c.t_start = j["t_start"].get<double>();
        if (j.contains("ratio")) c.ratio = j["ratio"].get<double>();
        if (j.contains("steps")) c.steps = j["steps"].get<std::size_t>();
        vec("x0", c.x0);
        vec("h", c.h);
        str("norm", c.norm);
        if (j.contains("samples")) c.samples = j["samples"].get<std::size_t>();
        str("out", c.out);
        str("trace", c.trace);
        if (j.contains("all")) c.all = j["all"].get<bool>();
    } catch (const json::exception& e) {
        throw InputError(std::string("bad config value: ") + e.what());
    }
    return c;
}

inline std::uint64_t seed_default() {
    if (const char* env = std::getenv("PARACONE_SEED")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError(std::string("PARACONE_SEED is not an unsigned integer: '") + env + "'");
    }
    return kDefaultSeed;
}

inline SamplingPlan plan_named(const std::string& name, std::uint64_t seed) {
    SamplingPlan plan = SamplingPlan::default_plan(seed);
    if (name == "default") return plan;
    if (name == "coarse") {
        plan.points_per_dim = 5;
        plan.random_triples = 500;
        plan.search_budget = 2000;
        return plan;
    }
    if (name == "fine") {
        plan.lambdas.clear();
        for (int k = 0; k <= 100; ++k) plan.lambdas.push_back(0.01 * k);
        plan.points_per_dim = 17;
        plan.max_grid_points = 900;
        plan.random_triples = 20000;
        plan.search_budget = 100000;
        return plan;
    }
    throw InputError("unknown grid '" + name + "' (expected default, coarse or fine)");
}

namespace detail {

inline MappingSpec resolve_mapping(const RunConfig& c) {
    if (!c.mapping) throw InputError("--mapping is required");
    const auto& reg = corpus();
    if (auto it = reg.find(*c.mapping); it != reg.end()) return it->second;
    std::ifstream probe(*c.mapping);
    if (probe) return load_mapping(*c.mapping);
    throw LookupError("mapping '" + *c.mapping + "' is neither a corpus entry nor a readable file");
}

inline ConeDescriptor resolve_cone(const RunConfig& c, const MappingSpec* f) {
    if (c.cone) return load_cone(*c.cone);
    if (f && f->metadata().cone) return *f->metadata().cone;
    if (f) return ConeDescriptor::orthant(f->m());
    throw InputError("--cone is required");
}

inline Modulus resolve_alpha(const RunConfig& c, const MappingSpec& f) {
    if (c.alpha) return parse_modulus(*c.alpha);
    return parse_modulus(f.metadata().known_modulus.value_or("pow:2"));
}

inline double resolve_C(const RunConfig& c, const MappingSpec& f) {
    if (c.C) return *c.C;
    if (f.metadata().known_C) return *f.metadata().known_C;
    throw InputError("--C is required for mapping '" + f.name() + "' (no stored constant)");
}

inline Vec resolve_k0(const RunConfig& c, const MappingSpec& f, const ConeDescriptor& cone) {
    if (c.k0) return parse_vec(*c.k0);
    if (f.metadata().known_k0) return *f.metadata().known_k0;
    // Sum of the cone's generators lies in K and is nonzero for a nontrivial cone.
    Vec k(cone.dim());
    for (const Vec& g : cone.require_generators("default k0")) k += g;
    return k;
}

inline void emit(const json& j, const RunConfig& c, std::ostream& out) {
    const std::string text = j.dump(2) + "\n";
    if (c.out) {
        std::ofstream f(*c.out);
        if (!f) throw LookupError("cannot write '" + *c.out + "'");
        f << text;
    } else {
        out << text;
    }
}

/// Parameter echo: every input that was set, output paths excluded.
inline json echo(const RunConfig& c) {
    json j;
    j["command"] = c.command;
    auto put = [&](const char* key, const auto& v) {
        if (v) j[key] = *v;
    };
    put("mapping", c.mapping);
    put("cone", c.cone);
    put("alpha", c.alpha);
    put("C", c.C);
    put("k0", c.k0);
    put("form", c.form);
    put("grid", c.grid);
    put("seed", c.seed);
    put("tol", c.tol);
    put("norm", c.norm);
    put("x0", c.x0);
    put("h", c.h);
    put("t_start", c.t_start);
    put("ratio", c.ratio);
    put("steps", c.steps);
    put("samples", c.samples);
    if (c.all) j["all"] = true;
    return j;
}

inline int cmd_check(const RunConfig& c, bool convex_only, std::ostream& out) {
    const MappingSpec f = resolve_mapping(c);
    const ConeDescriptor cone = resolve_cone(c, &f);
    SamplingPlan plan = plan_named(c.grid.value_or("default"), c.seed.value_or(seed_default()));
    if (c.tol) plan.tolerance = *c.tol;
    if (c.norm) plan.norm = parse_norm(*c.norm);
    CheckReport report;
    if (convex_only) {
        report = check_cone_convex(f, cone, plan);
    } else {
        const Modulus alpha = resolve_alpha(c, f);
        report = check_paraconvex(f, cone, alpha, resolve_C(c, f), resolve_k0(c, f, cone), parse_form(c.form.value_or("min")), plan);
    }
    json j = to_json(report);
    j["config"] = echo(c);
    j["config"]["seed"] = plan.seed;
    emit(j, c, out);
    return report.passed ? kExitPass : kExitFail;
}

inline int cmd_estimate_C(const RunConfig& c, std::ostream& out) {
    const MappingSpec f = resolve_mapping(c);
    const ConeDescriptor cone = resolve_cone(c, &f);
    const Modulus alpha = resolve_alpha(c, f);
    const Vec k0 = resolve_k0(c, f, cone);
    const DefectForm form = parse_form(c.form.value_or("min"));
    SamplingPlan plan = plan_named(c.grid.value_or("default"), c.seed.value_or(seed_default()));
    if (c.norm) plan.norm = parse_norm(*c.norm);
    json j;
    j["config"] = echo(c);
    j["config"]["seed"] = plan.seed;
    j["params"] = {{"k0", to_json(k0)}, {"alpha", alpha.label()}, {"form", to_string(form)}};
    int status = kExitPass;
    try {
        const double chat = estimate_min_C(f, cone, alpha, k0, form, plan);
        j["C_hat"] = chat;
        j["finite"] = true;
    } catch (const NoFiniteConstant& e) {
        j["C_hat"] = nullptr;
        j["finite"] = false;
        j["reason"] = e.what();
        status = kExitFail;
    }
    emit(j, c, out);
    return status;
}

inline int cmd_dderiv(const RunConfig& c, std::ostream& out) {
    const MappingSpec f = resolve_mapping(c);
    const ConeDescriptor cone = resolve_cone(c, &f);
    const Modulus alpha = resolve_alpha(c, f);
    const double C = resolve_C(c, f);
    const Vec k0 = resolve_k0(c, f, cone);
    const Vec x0 = c.x0 ? parse_vec(*c.x0) : Vec(f.n());
    Vec h(f.n());
    if (c.h) {
        h = parse_vec(*c.h);
    } else {
        h[0] = 1.0;
    }
    const auto est = estimate_directional_derivative(f, x0, h, C, k0, alpha, cone, c.tol.value_or(1e-6), c.steps.value_or(40),
                                                     c.t_start.value_or(0.5), c.ratio.value_or(0.5));
    json j = to_json(est);
    j["config"] = echo(c);
    emit(j, c, out);
    if (c.trace) {
        std::ofstream csv(*c.trace);
        if (!csv) throw LookupError("cannot write '" + *c.trace + "'");
        write_trace_csv(csv, est.trace, cone);
    }
    return est.converged ? kExitPass : kExitFail;
}

inline int cmd_cone_info(const RunConfig& c, std::ostream& out) {
    const ConeDescriptor cone = resolve_cone(c, nullptr);
    const NormChoice nk = c.norm ? parse_norm(*c.norm) : NormChoice::euclidean;
    json j;
    j["cone"] = to_json(cone);
    j["norm"] = to_string(nk);
    j["pointed"] = is_pointed(cone);
    const auto gens = cone.generators();
    if (gens) {
        j["generators"] = json::array();
        for (const Vec& g : *gens) j["generators"].push_back(to_json(g));
        j["dual"] = to_json(dual_cone(cone));
        const auto witness = well_based_witness(cone, nk);
        j["well_based_witness"] = witness ? to_json(*witness) : json(nullptr);
        if (is_pointed(cone) && !gens->empty()) {
            const std::size_t samples = c.samples.value_or(100000);
            const std::uint64_t seed = c.seed.value_or(seed_default());
            j["normality_estimate"] = {{"value", estimate_normality_constant(cone, nk, samples, seed)},
                                       {"samples", samples},
                                       {"seed", seed},
                                       {"lower_bound", true}};
        }
    } else {
        j["generators"] = nullptr;
        j["note"] = "generators unavailable: cone is not simplicial and none were supplied";
    }
    emit(j, c, out);
    return kExitPass;
}

struct CorpusRow {
    std::string name;
    bool certified = false;
    bool paraconvex_ok = false;
    bool dderiv_ok = true;
    double c_hat = 0.0;
    std::string verdict;
};

/// Full suite for one entry. Certified entries must pass everything; entries
/// without a stored constant are negative controls and must fail at C = 1, 10, 100.
inline json corpus_suite(const MappingSpec& f, const SamplingPlan& plan, CorpusRow& row) {
    json j;
    const ConeDescriptor cone = f.metadata().cone.value_or(ConeDescriptor::orthant(f.m()));
    const Modulus alpha = parse_modulus(f.metadata().known_modulus.value_or("pow:2"));
    row.name = f.name();
    row.certified = is_certified(f);
    j["certified"] = row.certified;
    j["convex"] = to_json(check_cone_convex(f, cone, plan));

    if (row.certified) {
        const double C = *f.metadata().known_C;
        const Vec k0 = *f.metadata().known_k0;
        const auto para = check_paraconvex(f, cone, alpha, C, k0, DefectForm::min_form, plan);
        j["paraconvex"] = to_json(para);
        row.paraconvex_ok = para.passed;
        row.c_hat = estimate_min_C(f, cone, alpha, k0, DefectForm::min_form, plan);
        j["C_hat"] = row.c_hat;

        json derivs = json::array();
        Rng rng(plan.seed);
        for (int k = 0; k < 3; ++k) {
            Vec x0(f.n());
            Vec h(f.n());
            for (std::size_t i = 0; i < f.n(); ++i) {
                x0[i] = k == 0 ? 0.0 : rng.uniform(-0.4, 0.4) * (f.domain().upper[i] - f.domain().lower[i]) / 2.0;
                h[i] = rng.uniform(-1.0, 1.0);
            }
            if (f.n() == 1) h[0] = 1.0;
            const auto est = estimate_directional_derivative(f, x0, h, C, k0, alpha, cone);
            const bool ok = est.converged && est.monotone.passed && (!est.lower_bound || est.lower_bound->check.passed) &&
                            est.lemma.status != LemmaStatus::falsified &&
                            (!est.analytic_error || *est.analytic_error <= 10.0 * est.tolerance);
            row.dderiv_ok = row.dderiv_ok && ok;
            json d = to_json(est);
            d["ok"] = ok;
            derivs.push_back(d);
        }
        j["dderiv"] = derivs;
        row.verdict = row.paraconvex_ok && row.dderiv_ok ? "pass" : "FAIL";
    } else {
        const Vec k0 = resolve_k0(RunConfig{}, f, cone);
        json controls = json::array();
        bool all_fail = true;
        for (double C : {1.0, 10.0, 100.0}) {
            const auto r = check_paraconvex(f, cone, alpha, C, k0, DefectForm::min_form, plan);
            controls.push_back(to_json(r));
            all_fail = all_fail && !r.passed;
        }
        j["negative_control"] = controls;
        row.paraconvex_ok = all_fail;
        row.verdict = all_fail ? "pass (rejected)" : "FAIL (accepted)";
    }
    return j;
}

inline int cmd_corpus_run(const RunConfig& c, std::ostream& out) {
    std::vector<std::string> names;
    if (c.all || !c.mapping) {
        names = corpus_names();
    } else {
        corpus_get(*c.mapping);
        names.push_back(*c.mapping);
    }
    const SamplingPlan plan = plan_named(c.grid.value_or("default"), c.seed.value_or(seed_default()));
    json j;
    j["config"] = echo(c);
    j["config"]["seed"] = plan.seed;
    std::vector<CorpusRow> rows;
    bool ok = true;
    for (const auto& name : names) {
        CorpusRow row;
        j["entries"][name] = corpus_suite(corpus_get(name), plan, row);
        ok = ok && row.verdict.rfind("pass", 0) == 0;
        rows.push_back(row);
    }

    std::ostream& table = out;
    table << std::left << std::setw(18) << "mapping" << std::setw(11) << "certified" << std::setw(12) << "C_hat"
          << "verdict\n";
    for (const auto& r : rows) {
        std::ostringstream chat;
        if (r.certified) chat << std::setprecision(6) << r.c_hat;
        else chat << "-";
        table << std::left << std::setw(18) << r.name << std::setw(11) << (r.certified ? "yes" : "no") << std::setw(12)
              << chat.str() << r.verdict << "\n";
    }
    if (c.out) emit(j, c, out);
    return ok ? kExitPass : kExitFail;
}

}  // namespace detail

/**
 * Executes one command. Diagnostics go to `err`; JSON goes to `--out` when
 * given, else to `out`. corpus-run prints its summary table to `out` and
 * writes the full JSON only when `--out` is set.
 */
inline int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    try {
        const std::string& cmd = config.command;
        if (cmd == "check-paraconvex") return detail::cmd_check(config, false, out);
        if (cmd == "check-convex") return detail::cmd_check(config, true, out);
        if (cmd == "estimate-C") return detail::cmd_estimate_C(config, out);
        if (cmd == "dderiv") return detail::cmd_dderiv(config, out);
        if (cmd == "cone-info") return detail::cmd_cone_info(config, out);
        if (cmd == "corpus-run") return detail::cmd_corpus_run(config, out);
        err << "error: unknown command '" << cmd << "'\n";
        return kExitUsage;
    } catch (const EvaluationError& e) {
        err << "error: evaluation aborted: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoFiniteConstant& e) {
        err << "error: " << e.what() << "\n";
        return kExitFail;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace paracone
