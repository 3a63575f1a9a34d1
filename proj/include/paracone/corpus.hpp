#pragma once

/**
 * @file corpus.hpp
 * @brief Registry of reference mappings with analytic ground truth.
 *
 * Entries carrying known_C are certified: at first use every such entry is
 * run through check_paraconvex at its stored (C, k0, alpha) in the min form,
 * and the registry refuses to load if one fails.
 */

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "paracone/error.hpp"
#include "paracone/mapping.hpp"
#include "paracone/modulus.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/paraconvexity.hpp"

namespace paracone {

namespace detail {

inline ConeDescriptor wedge_cone() {
    // {(u, v) : v >= 2|u|}
    return ConeDescriptor(2, {Vec{-2.0, 1.0}, Vec{2.0, 1.0}});
}

inline std::map<std::string, MappingSpec> build_corpus() {
    std::map<std::string, MappingSpec> out;
    auto add = [&](MappingSpec spec) { out.emplace(spec.name(), std::move(spec)); };

    {
        MappingMetadata md;
        md.known_C = 1.0;
        md.known_k0 = Vec{1.0};
        md.known_modulus = "pow:2";
        md.cone = ConeDescriptor::orthant(1);
        md.analytic_dderiv = [](const Vec& x0, const Vec& h) { return Vec{-2.0 * x0[0] * h[0]}; };
        add(MappingSpec("neg_square", 1, 1, [](const Vec& x) { return Vec{-x[0] * x[0]}; }, Box::cube(1, -2.0, 2.0), md));
    }
    {
        // F(x) = M x with M = [[1, 2], [-1, 0.5]].
        MappingMetadata md;
        md.known_C = 0.0;
        md.known_k0 = Vec{1.0, 1.0};
        md.known_modulus = "pow:2";
        md.cone = ConeDescriptor::orthant(2);
        md.analytic_dderiv = [](const Vec&, const Vec& h) { return Vec{h[0] + 2.0 * h[1], -h[0] + 0.5 * h[1]}; };
        add(MappingSpec("linear", 2, 2, [](const Vec& x) { return Vec{x[0] + 2.0 * x[1], -x[0] + 0.5 * x[1]}; },
                        Box::cube(2, -1.0, 1.0), md));
    }
    {
        // G(x) = (x1^2 + x2^2 / 2, (x1 + x2)^2 + x1) is R^2_+-convex and F = G - ||x||^2 (1, 1).
        MappingMetadata md;
        md.known_C = 1.0;
        md.known_k0 = Vec{1.0, 1.0};
        md.known_modulus = "pow:2";
        md.cone = ConeDescriptor::orthant(2);
        md.analytic_dderiv = [](const Vec& x0, const Vec& h) {
            return Vec{-x0[1] * h[1], 2.0 * (x0[0] * h[1] + x0[1] * h[0]) + h[0]};
        };
        add(MappingSpec("hilbert_shift", 2, 2,
                        [](const Vec& x) { return Vec{-0.5 * x[1] * x[1], 2.0 * x[0] * x[1] + x[0]}; },
                        Box::cube(2, -1.0, 1.0), md));
    }
    {
        // Negative control: the kink defect is linear in |x1 - x2|, alpha is quadratic.
        MappingMetadata md;
        md.known_modulus = "pow:2";
        md.cone = ConeDescriptor::orthant(1);
        md.analytic_dderiv = [](const Vec& x0, const Vec& h) {
            if (x0[0] > 0.0) return Vec{-h[0]};
            if (x0[0] < 0.0) return Vec{h[0]};
            return Vec{-std::abs(h[0])};
        };
        add(MappingSpec("abs_kink", 1, 1, [](const Vec& x) { return Vec{-std::abs(x[0])}; }, Box::cube(1, -2.0, 2.0), md));
    }
    {
        MappingMetadata md;
        md.known_C = 1.0;
        md.known_k0 = Vec{1.0, 0.0};
        md.known_modulus = "pow:2";
        md.cone = ConeDescriptor::orthant(2);
        md.analytic_dderiv = [](const Vec& x0, const Vec& h) { return Vec{-2.0 * x0[0] * h[0], 2.0 * x0[0] * h[0]}; };
        add(MappingSpec("neg_square_pair", 1, 2, [](const Vec& x) { return Vec{-x[0] * x[0], x[0] * x[0]}; },
                        Box::cube(1, -2.0, 2.0), md));
    }
    {
        MappingMetadata md;
        md.known_C = 0.0;
        md.known_k0 = Vec{1.0};
        md.known_modulus = "pow:2";
        md.cone = ConeDescriptor::orthant(1);
        md.analytic_dderiv = [](const Vec& x0, const Vec& h) { return Vec{2.0 * x0[0] * h[0]}; };
        add(MappingSpec("convex_square", 1, 1, [](const Vec& x) { return Vec{x[0] * x[0]}; }, Box::cube(1, -2.0, 2.0), md));
    }
    {
        // F(x) = (x^2 / 2, -x^2) ordered by the wedge v >= 2|u| with k0 = (0, 1);
        // the defect along (-2, 1) needs C min{l, 1-l} >= 2 l (1 - l), so C = 2.
        MappingMetadata md;
        md.known_C = 2.0;
        md.known_k0 = Vec{0.0, 1.0};
        md.known_modulus = "pow:2";
        md.cone = wedge_cone();
        md.analytic_dderiv = [](const Vec& x0, const Vec& h) { return Vec{x0[0] * h[0], -2.0 * x0[0] * h[0]}; };
        add(MappingSpec("wedge_mix", 1, 2, [](const Vec& x) { return Vec{0.5 * x[0] * x[0], -x[0] * x[0]}; },
                        Box::cube(1, -2.0, 2.0), md));
    }
    return out;
}

/// Certification plan used when the registry loads.
inline SamplingPlan certification_plan() {
    SamplingPlan plan = SamplingPlan::default_plan(7);
    plan.random_triples = 500;
    return plan;
}

}  // namespace detail

/// Runs check_paraconvex at the metadata's (C, k0, alpha) in the min form.
inline CheckReport certify(const MappingSpec& spec, const SamplingPlan& plan = detail::certification_plan()) {
    const auto& md = spec.metadata();
    if (!md.known_C || !md.known_k0 || !md.cone) {
        throw ParameterError("mapping '" + spec.name() + "' carries no paraconvexity metadata to certify");
    }
    const Modulus alpha = parse_modulus(md.known_modulus.value_or("pow:2"));
    return check_paraconvex(spec, *md.cone, alpha, *md.known_C, *md.known_k0, DefectForm::min_form, plan);
}

inline bool is_certified(const MappingSpec& spec) {
    return spec.metadata().known_C.has_value() && spec.metadata().known_k0.has_value() && spec.metadata().cone.has_value();
}

/// The built-in registry, certified once on first access.
inline const std::map<std::string, MappingSpec>& corpus() {
    static const std::map<std::string, MappingSpec> registry = [] {
        auto entries = detail::build_corpus();
        for (const auto& [name, spec] : entries) {
            if (!is_certified(spec)) continue;
            const auto report = certify(spec);
            if (!report.passed) {
                throw Error("corpus entry '" + name + "' fails its stored paraconvexity constant (worst slack " +
                            std::to_string(report.worst_slack) + ")");
            }
        }
        return entries;
    }();
    return registry;
}

inline std::vector<std::string> corpus_names() {
    std::vector<std::string> names;
    for (const auto& [name, spec] : corpus()) names.push_back(name);
    return names;
}

inline const MappingSpec& corpus_get(const std::string& name) {
    const auto& reg = corpus();
    auto it = reg.find(name);
    if (it == reg.end()) {
        std::string known;
        for (const auto& [n, s] : reg) known += (known.empty() ? "" : ", ") + n;
        throw LookupError("unknown mapping '" + name + "' (known: " + known + ")");
    }
    return it->second;
}

}  // namespace paracone
