#pragma once

/**
 * @file paraconvexity.hpp
 * @brief Sampled checks of cone convexity and strong alpha-k0 paraconvexity.
 *
 * For x1, x2 in the domain and lambda in [0, 1] with mid = lambda x1 + (1 - lambda) x2,
 * F is strongly alpha-k0 paraconvex with constant C when
 *
 *   lambda F(x1) + (1 - lambda) F(x2) + C w(lambda) alpha(||x1 - x2||) k0 - F(mid)  in K,
 *
 * where w(lambda) = min{lambda, 1 - lambda} (min form) or 2 lambda (1 - lambda)
 * (product form). C = 0 is K-convexity.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paracone/error.hpp"
#include "paracone/mapping.hpp"
#include "paracone/modulus.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/random.hpp"
#include "paracone/report.hpp"
#include "paracone/vec.hpp"

namespace paracone {

enum class DefectForm { min_form, product_form };

inline double defect_weight(DefectForm form, double lambda) noexcept {
    return form == DefectForm::min_form ? std::min(lambda, 1.0 - lambda) : 2.0 * lambda * (1.0 - lambda);
}

inline std::string to_string(DefectForm form) { return form == DefectForm::min_form ? "min" : "product"; }

inline DefectForm parse_form(const std::string& text) {
    if (text == "min" || text == "min_form") return DefectForm::min_form;
    if (text == "product" || text == "product_form") return DefectForm::product_form;
    throw InputError("unknown defect form '" + text + "' (expected min or product)");
}

/// 0.05, 0.10, ..., 0.95.
inline std::vector<double> interior_lambda_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(0.05 * k);
    return grid;
}

/**
 * Deterministic tensor grid unioned with seeded uniform random triples,
 * followed by a seeded counterexample search.
 *
 * Grid triples pair every two distinct points of a per-dimension grid over
 * the domain box with every lambda in `lambdas`.
 */
struct SamplingPlan {
    std::vector<double> lambdas;
    std::size_t points_per_dim = 9;
    std::size_t max_grid_points = 400;
    std::size_t random_triples = 2000;
    std::size_t search_budget = 10000;  // hill-climb slack evaluations after the fixed samples
    std::uint64_t seed = 7;
    double tolerance = 1e-9;
    NormChoice norm = NormChoice::euclidean;

    static SamplingPlan default_plan(std::uint64_t seed = 7) {
        SamplingPlan plan;
        plan.lambdas = interior_lambda_grid();
        plan.lambdas.push_back(0.0);
        plan.lambdas.push_back(1.0);
        plan.seed = seed;
        return plan;
    }

    /// Grid-only plan with the given lambdas (no random triples).
    static SamplingPlan grid_only(std::vector<double> lambdas, std::size_t points_per_dim = 9) {
        SamplingPlan plan;
        plan.lambdas = std::move(lambdas);
        plan.points_per_dim = points_per_dim;
        plan.random_triples = 0;
        plan.search_budget = 0;
        return plan;
    }
};

namespace detail {

inline std::vector<Vec> box_grid(const Box& box, std::size_t per_dim, std::size_t max_points) {
    const std::size_t n = box.dim();
    per_dim = std::max<std::size_t>(per_dim, 2);
    while (per_dim > 2 && std::pow(static_cast<double>(per_dim), static_cast<double>(n)) > static_cast<double>(max_points)) {
        --per_dim;
    }
    std::vector<Vec> points;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        Vec p(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double s = static_cast<double>(idx[j]) / static_cast<double>(per_dim - 1);
            p[j] = box.lower[j] + s * (box.upper[j] - box.lower[j]);
        }
        points.push_back(std::move(p));
        std::size_t j = 0;
        while (j < n && ++idx[j] == per_dim) idx[j++] = 0;
        if (j == n) break;
    }
    return points;
}

inline Vec random_point(const Box& box, Rng& rng) {
    Vec p(box.dim());
    for (std::size_t j = 0; j < box.dim(); ++j) p[j] = rng.uniform(box.lower[j], box.upper[j]);
    return p;
}

inline Vec convex_combination(const Vec& x1, const Vec& x2, double lambda) { return lambda * x1 + (1.0 - lambda) * x2; }

/// F-values at a triple, evaluated once and shared by every checker.
struct TripleValues {
    Vec f1;
    Vec f2;
    Vec fmid;
    double distance;
};

inline TripleValues evaluate_triple(const MappingSpec& f, const SampleTriple& s, NormChoice norm_kind, const Vec* f1 = nullptr,
                                    const Vec* f2 = nullptr) {
    return {f1 ? *f1 : f.evaluate(s.x1), f2 ? *f2 : f.evaluate(s.x2), f.evaluate(convex_combination(s.x1, s.x2, s.lambda)),
            norm(s.x1 - s.x2, norm_kind)};
}

/// Visits grid triples then random triples. Endpoint values are cached per pair.
template <typename Visitor>
void for_each_triple(const MappingSpec& f, const SamplingPlan& plan, Visitor&& visit) {
    const auto points = box_grid(f.domain(), plan.points_per_dim, plan.max_grid_points);
    std::vector<Vec> values;
    values.reserve(points.size());
    for (const Vec& p : points) values.push_back(f.evaluate(p));
    for (std::size_t a = 0; a < points.size(); ++a) {
        for (std::size_t b = 0; b < points.size(); ++b) {
            if (a == b) continue;
            for (double lambda : plan.lambdas) {
                const SampleTriple s{points[a], points[b], lambda};
                visit(s, evaluate_triple(f, s, plan.norm, &values[a], &values[b]));
            }
        }
    }
    Rng rng(plan.seed);
    for (std::size_t k = 0; k < plan.random_triples; ++k) {
        SampleTriple s{random_point(f.domain(), rng), random_point(f.domain(), rng), rng.uniform()};
        visit(s, evaluate_triple(f, s, plan.norm));
    }
}

inline double max_normal_norm(const ConeDescriptor& cone) {
    double m = 1.0;
    for (const Vec& a : cone.facet_normals()) m = std::max(m, norm(a));
    return m;
}

inline void require_dims(const MappingSpec& f, const ConeDescriptor& cone) {
    if (f.m() != cone.dim()) {
        throw InputError("mapping '" + f.name() + "' has range dimension " + std::to_string(f.m()) + " but the cone has dimension " +
                         std::to_string(cone.dim()));
    }
}

inline void require_k0(const ConeDescriptor& cone, const Vec& k0) {
    if (k0.size() != cone.dim()) throw ParameterError("k0 has wrong dimension");
    if (!k0.all_finite()) throw ParameterError("k0 must be finite");
    if (norm(k0) == 0.0) throw ParameterError("k0 must be nonzero");
    if (!cone.contains(k0)) throw ParameterError("k0 is not a member of the ordering cone");
}

/// Paraconvexity inclusion vector, the magnitude of the terms it combines, and
/// the size of its two parts (convexity gap plus defect term).
struct Inclusion {
    Vec vec;
    double magnitude;
    double spread;
};

inline Inclusion paraconvex_inclusion(const TripleValues& v, double lambda, double defect_coeff, const Vec& k0) {
    Vec y = lambda * v.f1 + (1.0 - lambda) * v.f2 - v.fmid;
    double mag = lambda * norm(v.f1) + (1.0 - lambda) * norm(v.f2) + norm(v.fmid);
    double spread = norm(y);
    if (defect_coeff != 0.0) {
        y += defect_coeff * k0;
        mag += std::abs(defect_coeff) * norm(k0);
        spread += std::abs(defect_coeff) * norm(k0);
    }
    return {std::move(y), mag, spread};
}

/// What a probe reports for one triple. `spread` bounds |slack| by the size of
/// the compared terms and normalizes the search objective.
struct Probed {
    double slack;
    double threshold;
    double spread;
};

/// Outcome of a counterexample search over (x1, x2, lambda).
struct SearchResult {
    std::optional<SampleTriple> witness;
    SampleTriple best;
    double best_slack = std::numeric_limits<double>::infinity();
    double best_threshold = 0.0;
    std::size_t used = 0;
};

/**
 * Multi-start hill climb over triples, where `probe` returns a Probed value.
 * The objective is the relative excess (slack + threshold) / (spread + threshold),
 * which lies in [-1, 1] up to rounding and does not reward merely shrinking
 * the segment; it is negative exactly on violations. Step sizes adapt by the one-fifth success rule;
 * besides coordinate moves, a contraction move shrinks the segment about its
 * weighted midpoint and a translation move shifts it by a multiple of its own
 * length. Half the starts use a short segment at a log-uniform scale. A start
 * is abandoned once its step size collapses.
 */
inline constexpr std::size_t kStallLimit = 60;

template <typename Probe>
SearchResult hill_climb(const Box& box, Probe&& probe, std::size_t budget, std::uint64_t seed) {
    SearchResult out;
    Rng rng(seed);
    double best_excess = std::numeric_limits<double>::infinity();
    auto excess = [&](const SampleTriple& s) {
        ++out.used;
        const Probed p = probe(s);
        const double e = (p.slack + p.threshold) / std::max(p.spread + p.threshold, std::numeric_limits<double>::min());
        if (e < best_excess) {
            best_excess = e;
            out.best = s;
            out.best_slack = p.slack;
            out.best_threshold = p.threshold;
        }
        return e;
    };
    auto gaussian = [&] {
        const double u1 = 1.0 - rng.uniform();
        const double u2 = rng.uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    };
    auto clip = [&](Vec x) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = std::clamp(x[j], box.lower[j], box.upper[j]);
        return x;
    };

    while (out.used < budget) {
        SampleTriple cur{random_point(box, rng), random_point(box, rng), rng.uniform()};
        if (rng.coin()) {
            // Short segment: x2 = x1 + offset at a log-uniform scale.
            const double scale = std::pow(10.0, rng.uniform(-4.0, 0.0));
            for (std::size_t j = 0; j < box.dim(); ++j) cur.x2[j] = cur.x1[j] + scale * (box.upper[j] - box.lower[j]) * gaussian();
            cur.x2 = clip(cur.x2);
        }
        double cur_val = excess(cur);
        if (cur_val < 0.0) {
            out.witness = cur;
            return out;
        }
        double sigma = 0.25;
        std::size_t stalled = 0;
        while (out.used < budget && stalled < kStallLimit) {
            SampleTriple cand = cur;
            const auto move = rng.below(4);
            if (move == 0) {
                // Contract or stretch about a random anchor on the segment.
                const Vec anchor = convex_combination(cur.x1, cur.x2, rng.uniform());
                const double factor = std::exp(4.0 * sigma * gaussian());
                cand.x1 = clip(anchor + factor * (cur.x1 - anchor));
                cand.x2 = clip(anchor + factor * (cur.x2 - anchor));
            } else if (move == 1) {
                // Translate the segment, step scaled to its own length.
                const double len = std::max(norm(cur.x1 - cur.x2), 1e-12);
                for (std::size_t j = 0; j < box.dim(); ++j) {
                    const double shift = sigma * len * gaussian();
                    cand.x1[j] += shift;
                    cand.x2[j] += shift;
                }
                cand.x1 = clip(cand.x1);
                cand.x2 = clip(cand.x2);
            } else {
                for (std::size_t j = 0; j < box.dim(); ++j) {
                    const double width = box.upper[j] - box.lower[j];
                    cand.x1[j] += sigma * width * gaussian();
                    cand.x2[j] += sigma * width * gaussian();
                }
                cand.x1 = clip(cand.x1);
                cand.x2 = clip(cand.x2);
                cand.lambda = std::clamp(cand.lambda + sigma * gaussian(), 0.0, 1.0);
            }
            const double val = excess(cand);
            if (val < 0.0) {
                out.witness = cand;
                return out;
            }
            if (val < cur_val) {
                cur = std::move(cand);
                cur_val = val;
                sigma *= 1.5;
                stalled = 0;
            } else {
                sigma *= 0.9;
                ++stalled;
            }
        }
    }
    return out;
}

/// Folds a search into a report as one extra sample (its best triple).
inline void record_search(CheckReport& report, const SearchResult& r) {
    if (r.used == 0) return;
    report.record(r.best_slack, r.best_threshold, &r.best);
    report.samples_used += r.used - 1;
}

}  // namespace detail

namespace detail {

/// Runs `probe(triple, values) -> Probed` over the plan's samples and search.
template <typename Probe>
void run_plan(CheckReport& report, const MappingSpec& f, const SamplingPlan& plan, Probe&& probe) {
    for_each_triple(f, plan, [&](const SampleTriple& s, const TripleValues& v) {
        const Probed p = probe(s, v);
        report.record(p.slack, p.threshold, &s);
    });
    if (plan.search_budget == 0) return;
    auto direct = [&](const SampleTriple& s) { return probe(s, evaluate_triple(f, s, plan.norm)); };
    record_search(report, hill_climb(f.domain(), direct, plan.search_budget, plan.seed ^ 0x9e3779b97f4a7c15ULL));
}

}  // namespace detail

/// K-convexity: lambda F(x1) + (1 - lambda) F(x2) - F(mid) in K on every sample.
inline CheckReport check_cone_convex(const MappingSpec& f, const ConeDescriptor& cone, const SamplingPlan& plan) {
    detail::require_dims(f, cone);
    CheckReport report;
    report.params.tolerance = plan.tolerance;
    report.params.form = "convex";
    const double scale = detail::max_normal_norm(cone);
    const Vec zero(cone.dim());
    detail::run_plan(report, f, plan, [&](const SampleTriple& s, const detail::TripleValues& v) {
        const auto inc = detail::paraconvex_inclusion(v, s.lambda, 0.0, zero);
        return detail::Probed{cone.slack(inc.vec), plan.tolerance * (1.0 + inc.magnitude) * scale, inc.spread * scale};
    });
    return report;
}

/// Slack of the paraconvexity inclusion at a single triple.
inline double paraconvex_slack(const MappingSpec& f, const ConeDescriptor& cone, const Modulus& alpha, double C, const Vec& k0,
                               DefectForm form, const SampleTriple& s, NormChoice norm_kind = NormChoice::euclidean,
                               double* magnitude = nullptr) {
    const auto v = detail::evaluate_triple(f, s, norm_kind);
    const double coeff = C * defect_weight(form, s.lambda) * alpha(v.distance);
    const auto inc = detail::paraconvex_inclusion(v, s.lambda, coeff, k0);
    if (magnitude) *magnitude = inc.magnitude;
    return cone.slack(inc.vec);
}

inline CheckReport check_paraconvex(const MappingSpec& f, const ConeDescriptor& cone, const Modulus& alpha, double C,
                                    const Vec& k0, DefectForm form, const SamplingPlan& plan) {
    detail::require_dims(f, cone);
    if (!(C >= 0.0) || !std::isfinite(C)) throw ParameterError("C must be finite and nonnegative");
    detail::require_k0(cone, k0);
    CheckReport report;
    report.params = {C, k0, alpha.label(), to_string(form), plan.tolerance};
    const double scale = detail::max_normal_norm(cone);
    detail::run_plan(report, f, plan, [&](const SampleTriple& s, const detail::TripleValues& v) {
        const double coeff = C * defect_weight(form, s.lambda) * alpha(v.distance);
        const auto inc = detail::paraconvex_inclusion(v, s.lambda, coeff, k0);
        return detail::Probed{cone.slack(inc.vec), plan.tolerance * (1.0 + inc.magnitude) * scale, inc.spread * scale};
    });
    return report;
}

/// Strong alpha-K paraconvexity restricted to a finite list of (k, C_k) pairs.
inline CheckReport check_paraconvex_family(const MappingSpec& f, const ConeDescriptor& cone, const Modulus& alpha,
                                           const std::vector<std::pair<Vec, double>>& directions, DefectForm form,
                                           const SamplingPlan& plan) {
    if (directions.empty()) throw ParameterError("at least one (k, C) pair is required");
    std::optional<CheckReport> total;
    for (const auto& [k, C] : directions) {
        auto r = check_paraconvex(f, cone, alpha, C, k, form, plan);
        total = total ? merge(std::move(*total), r) : r;
    }
    total->params.k0 = Vec();
    total->params.C = std::numeric_limits<double>::quiet_NaN();
    total->note = "family of " + std::to_string(directions.size()) + " directions";
    return *total;
}

/**
 * Smallest C making every sampled inclusion hold:
 *   max over samples and facet normals a with a . k0 > 0 of
 *   a . (F(mid) - lambda F(x1) - (1 - lambda) F(x2)) / (w(lambda) alpha(||x1 - x2||) a . k0),
 * clamped at 0. Samples with w alpha = 0 are skipped.
 */
inline double estimate_min_C(const MappingSpec& f, const ConeDescriptor& cone, const Modulus& alpha, const Vec& k0,
                             DefectForm form, const SamplingPlan& plan) {
    detail::require_dims(f, cone);
    detail::require_k0(cone, k0);
    const auto& normals = cone.facet_normals();
    std::vector<double> along_k0;
    for (const Vec& a : normals) along_k0.push_back(dot(a, k0));
    const double scale = detail::max_normal_norm(cone);

    double best = 0.0;
    detail::for_each_triple(f, plan, [&](const SampleTriple& s, const detail::TripleValues& v) {
        const double wa = defect_weight(form, s.lambda) * alpha(v.distance);
        const Vec excess = v.fmid - s.lambda * v.f1 - (1.0 - s.lambda) * v.f2;
        const double mag = s.lambda * norm(v.f1) + (1.0 - s.lambda) * norm(v.f2) + norm(v.fmid);
        const double tol = plan.tolerance * (1.0 + mag) * scale;
        for (std::size_t i = 0; i < normals.size(); ++i) {
            const double d = dot(normals[i], excess);
            if (along_k0[i] <= tol) {
                if (d > tol) {
                    throw NoFiniteConstant("facet normal " + std::to_string(i) +
                                           " is not positive on k0 but the convexity defect along it is positive");
                }
                continue;
            }
            // Excess within the rounding allowance needs no defect, matching the checker.
            if (!(wa > 0.0) || d <= tol) continue;
            best = std::max(best, d / (wa * along_k0[i]));
        }
    });
    return best;
}

inline bool is_dual_feasible(const Vec& ystar, const ConeDescriptor& cone) {
    const auto gens = cone.require_generators("dual feasibility");
    for (const Vec& g : gens) {
        if (dot(ystar, g) < -cone.membership_tol() * (1.0 + norm(ystar) * norm(g))) return false;
    }
    return true;
}

/// y*(F(mid)) <= lambda y*(F(x1)) + (1 - lambda) y*(F(x2)) + C y*(k0) w(lambda) alpha(||x1 - x2||).
inline CheckReport check_scalarization(const MappingSpec& f, const ConeDescriptor& cone, const Modulus& alpha, double C,
                                       const Vec& k0, const Vec& ystar, DefectForm form, const SamplingPlan& plan) {
    detail::require_dims(f, cone);
    if (!(C >= 0.0) || !std::isfinite(C)) throw ParameterError("C must be finite and nonnegative");
    detail::require_k0(cone, k0);
    if (ystar.size() != cone.dim()) throw ParameterError("y* has wrong dimension");
    if (!is_dual_feasible(ystar, cone)) throw ParameterError("y* is not in the dual cone");
    const double scalar_C = C * dot(ystar, k0);
    CheckReport report;
    report.params = {scalar_C, k0, alpha.label(), to_string(form), plan.tolerance};
    report.note = "scalarized constant C * y*(k0)";
    const double ys = norm(ystar);
    detail::run_plan(report, f, plan, [&](const SampleTriple& s, const detail::TripleValues& v) {
        const double lhs = dot(ystar, v.fmid);
        const double defect = scalar_C * defect_weight(form, s.lambda) * alpha(v.distance);
        const double rhs = s.lambda * dot(ystar, v.f1) + (1.0 - s.lambda) * dot(ystar, v.f2) + defect;
        const double mag = ys * (s.lambda * norm(v.f1) + (1.0 - s.lambda) * norm(v.f2) + norm(v.fmid)) + std::abs(defect);
        const double gap = std::abs(s.lambda * dot(ystar, v.f1) + (1.0 - s.lambda) * dot(ystar, v.f2) - lhs);
        return detail::Probed{rhs - lhs, plan.tolerance * (1.0 + mag), gap + std::abs(defect)};
    });
    return report;
}

struct SquareShiftReport {
    CheckReport paraconvex;      // F with defect C lambda (1 - lambda) ||x1 - x2||^2 k0
    CheckReport shifted_convex;  // G = F + C ||.||^2 k0 is K-convex
    double identity_max_error = 0.0;
    std::size_t identity_pairs = 0;
    bool identity_holds = true;

    [[nodiscard]] bool verdicts_agree() const noexcept { return paraconvex.passed == shifted_convex.passed; }
    [[nodiscard]] bool passed() const noexcept { return verdicts_agree() && paraconvex.passed && identity_holds; }
};

/**
 * lambda ||x1||^2 + (1 - lambda) ||x2||^2 - ||lambda x1 + (1 - lambda) x2||^2 - lambda (1 - lambda) ||x1 - x2||^2,
 * the residual of the Hilbert-space norm identity (zero in exact arithmetic).
 */
inline double hilbert_identity_residual(const Vec& x1, const Vec& x2, double lambda) {
    const double n1 = norm(x1);
    const double n2 = norm(x2);
    const double nm = norm(detail::convex_combination(x1, x2, lambda));
    const double nd = norm(x1 - x2);
    return lambda * n1 * n1 + (1.0 - lambda) * n2 * n2 - nm * nm - lambda * (1.0 - lambda) * nd * nd;
}

/**
 * Square-shift characterization for alpha(t) = t^2 with the defect C lambda (1 - lambda):
 * F passes iff G = F + C ||.||^2 k0 is K-convex. Runs both checks on the same
 * plan plus `identity_pairs` random checks of the norm identity at 1e-12.
 *
 * The product form carries a factor 2, so the paraconvex side runs it with C/2.
 */
inline SquareShiftReport verify_square_shift(const MappingSpec& f, const ConeDescriptor& cone, double C, const Vec& k0,
                                             const SamplingPlan& plan, std::size_t identity_pairs = 10000) {
    if (plan.norm != NormChoice::euclidean) throw UnsupportedRepresentation("square-shift characterization needs the euclidean norm");
    const Modulus alpha = make_power_modulus(2.0);
    SquareShiftReport out;
    out.paraconvex = check_paraconvex(f, cone, alpha, 0.5 * C, k0, DefectForm::product_form, plan);
    out.paraconvex.params.C = C;
    out.paraconvex.note = "defect C*lambda*(1-lambda)*||x1-x2||^2";
    const Vec k = k0;
    const MappingSpec shifted = f.plus(f.name() + "+C|x|^2k0", [C, k](const Vec& x) {
        const double r = norm(x);
        return C * r * r * k;
    });
    out.shifted_convex = check_cone_convex(shifted, cone, plan);

    Rng rng(plan.seed ^ 0x5eedULL);
    out.identity_pairs = identity_pairs;
    for (std::size_t i = 0; i < identity_pairs; ++i) {
        const Vec x1 = detail::random_point(f.domain(), rng);
        const Vec x2 = detail::random_point(f.domain(), rng);
        const double lambda = rng.uniform();
        out.identity_max_error = std::max(out.identity_max_error, std::abs(hilbert_identity_residual(x1, x2, lambda)));
    }
    out.identity_holds = out.identity_max_error <= 1e-12;
    return out;
}

/**
 * Randomized multi-start hill climb for a counterexample to the paraconvexity
 * inclusion. Returns a triple whose slack is below -tolerance * (1 + magnitude),
 * or nullopt when `budget` slack evaluations find none. Deterministic per seed.
 */
inline std::optional<SampleTriple> search_violation(const MappingSpec& f, const ConeDescriptor& cone, const Modulus& alpha,
                                                    double C, const Vec& k0, DefectForm form, std::size_t budget,
                                                    std::uint64_t seed, double tolerance = 1e-9,
                                                    NormChoice norm_kind = NormChoice::euclidean) {
    if (budget == 0) throw ParameterError("budget must be positive");
    detail::require_dims(f, cone);
    detail::require_k0(cone, k0);
    const double scale = detail::max_normal_norm(cone);
    auto probe = [&](const SampleTriple& s) {
        const auto v = detail::evaluate_triple(f, s, norm_kind);
        const auto inc = detail::paraconvex_inclusion(v, s.lambda, C * defect_weight(form, s.lambda) * alpha(v.distance), k0);
        return detail::Probed{cone.slack(inc.vec), tolerance * (1.0 + inc.magnitude) * scale, inc.spread * scale};
    };
    return detail::hill_climb(f.domain(), probe, budget, seed).witness;
}

}  // namespace paracone
