#pragma once

/**
 * @file quotient_analysis.hpp
 * @brief alpha-corrected difference quotients and one-sided directional derivatives.
 *
 * Along a direction h with ||h|| = 1 the corrected quotient is
 *
 *   phi(t) = (F(x0 + t h) - F(x0)) / t + C (alpha(t) / t) k0.
 *
 * For a strongly alpha-k0 paraconvex F it satisfies, for t_j < t_i,
 *
 *   phi(t_i) - phi(t_j) + C (alpha(t_j) / t_j) k0  in K        (alpha-monotonicity)
 *   phi(t) - b  in K   for 0 < t < delta                        (lower bound)
 *
 * with b = F(x0) - F(x0 - h) - (C alpha(1) + 1) k0 and delta chosen so that
 * 2 C alpha(2t) / (2t) <= 1 below it. Together they force the raw quotient to
 * converge; the estimator reports the raw quotient at the finest step.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "paracone/error.hpp"
#include "paracone/mapping.hpp"
#include "paracone/modulus.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/report.hpp"
#include "paracone/vec.hpp"

namespace paracone {

struct QuotientTrace {
    Vec x0;
    Vec h;                 // unit direction actually used
    double h_scale = 1.0;  // norm of the direction the caller passed
    Vec f_x0;
    std::vector<double> t_values;
    std::vector<Vec> raw_quotients;
    std::vector<Vec> corrected_quotients;
    // (||F(x0 + t h)|| + ||F(x0)||) / t: size of the terms whose difference forms the quotient.
    std::vector<double> rounding_scale;
    double C = 0.0;
    Vec k0;
    Modulus alpha;
    double delta = 0.0;
    bool truncated_domain = false;
    bool truncated_underflow = false;

    [[nodiscard]] std::size_t size() const noexcept { return t_values.size(); }

    /// C alpha(t) / t, the correction added to the raw quotient at step i.
    [[nodiscard]] double correction_coeff(std::size_t i) const { return C * alpha(t_values[i]) / t_values[i]; }
};

/**
 * Largest probe-grid t such that 2 C alpha(2s) / (2s) <= 1 at every grid point s <= t.
 * Returns 0 when the condition already fails at the finest grid point.
 */
inline double lower_bound_radius(const Modulus& alpha, double C) {
    const auto& grid = alpha.probe_grid();
    double delta = 0.0;
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        const double t = *it;
        if (2.0 * C * alpha(2.0 * t) / (2.0 * t) > 1.0) break;
        delta = t;
    }
    return delta;
}

/**
 * Samples phi on t_i = t_start * ratio^(i-1), i = 1..steps.
 *
 * A direction with ||h|| != 1 is normalized and its norm kept in h_scale.
 * Steps whose point leaves the domain box are dropped (truncated_domain) and
 * the trace stops once t underflows (truncated_underflow).
 */
inline QuotientTrace build_trace(const MappingSpec& f, const Vec& x0, const Vec& h, double C, const Vec& k0, const Modulus& alpha,
                                 double t_start = 0.5, double ratio = 0.5, std::size_t steps = 40,
                                 NormChoice norm_kind = NormChoice::euclidean) {
    if (x0.size() != f.n() || h.size() != f.n()) throw InputError("x0 and h must have the mapping's input dimension");
    if (k0.size() != f.m()) throw InputError("k0 must have the mapping's output dimension");
    if (!x0.all_finite() || !h.all_finite() || !k0.all_finite()) throw InputError("x0, h and k0 must be finite");
    if (!(C >= 0.0) || !std::isfinite(C)) throw ParameterError("C must be finite and nonnegative");
    if (!(ratio > 0.0 && ratio < 1.0)) throw ParameterError("ratio must lie in (0, 1)");
    if (!(t_start > 0.0) || !std::isfinite(t_start)) throw ParameterError("t_start must be positive");
    if (steps == 0) throw ParameterError("steps must be positive");
    if (!f.domain().contains(x0)) throw DomainError("x0 lies outside the domain box");
    const double hn = norm(h, norm_kind);
    if (!(hn > 0.0)) throw InputError("direction h must be nonzero");

    QuotientTrace trace{x0, h / hn, hn, f.evaluate(x0), {}, {}, {}, {}, C, k0, alpha, lower_bound_radius(alpha, C)};
    const double f0_norm = norm(trace.f_x0);
    double t = t_start;
    for (std::size_t i = 0; i < steps; ++i, t *= ratio) {
        if (!(t >= std::numeric_limits<double>::min())) {
            trace.truncated_underflow = true;
            break;
        }
        const Vec x = x0 + t * trace.h;
        if (!f.domain().contains(x)) {
            trace.truncated_domain = true;
            continue;
        }
        const Vec fx = f.evaluate(x);
        Vec raw = (fx - trace.f_x0) / t;
        Vec corrected = raw + (C * alpha(t) / t) * k0;
        trace.t_values.push_back(t);
        trace.raw_quotients.push_back(std::move(raw));
        trace.corrected_quotients.push_back(std::move(corrected));
        trace.rounding_scale.push_back((norm(fx) + f0_norm) / t);
    }
    return trace;
}

struct PairSlack {
    std::size_t i;  // coarser step (larger t)
    std::size_t j;  // finer step (smaller t)
    double slack;
    double threshold;
};

/// Slack of phi(t_i) - phi(t_j) + C (alpha(t_j) / t_j) k0 in K for every i < j.
inline std::vector<PairSlack> alpha_monotone_pairs(const QuotientTrace& trace, const ConeDescriptor& cone, double tolerance = 1e-9) {
    if (cone.dim() != trace.k0.size()) throw InputError("cone dimension does not match the trace");
    std::vector<PairSlack> out;
    const std::size_t n = trace.size();
    out.reserve(n * (n - (n > 0)) / 2);
    const double knorm = norm(trace.k0);
    double scale = 1.0;
    for (const Vec& a : cone.facet_normals()) scale = std::max(scale, norm(a));
    for (std::size_t j = 0; j < n; ++j) {
        const double corr = trace.correction_coeff(j);
        for (std::size_t i = 0; i < j; ++i) {
            const Vec y = trace.corrected_quotients[i] - trace.corrected_quotients[j] + corr * trace.k0;
            const double mag = norm(trace.corrected_quotients[i]) + norm(trace.corrected_quotients[j]) + corr * knorm +
                               trace.rounding_scale[i] + trace.rounding_scale[j];
            out.push_back({i, j, cone.slack(y), tolerance * (1.0 + mag) * scale});
        }
    }
    return out;
}

inline CheckReport check_alpha_monotone(const QuotientTrace& trace, const ConeDescriptor& cone, double tolerance = 1e-9) {
    CheckReport report;
    report.params = {trace.C, trace.k0, trace.alpha.label(), "alpha-monotone", tolerance};
    for (const auto& p : alpha_monotone_pairs(trace, cone, tolerance)) {
        const SampleTriple s{Vec{trace.t_values[p.i]}, Vec{trace.t_values[p.j]}, 0.0};
        report.record(p.slack, p.threshold, &s);
    }
    report.note = "witness holds (t_i, t_j) in x1, x2";
    return report;
}

struct LowerBoundReport {
    CheckReport check;
    Vec b;
    double delta = 0.0;
};

/// b = F(x0) - F(x0 - h) - (C alpha(1) + 1) k0 for the trace's unit direction.
inline Vec lower_bound_anchor(const QuotientTrace& trace, const MappingSpec& f) {
    const Vec back = trace.x0 - trace.h;
    if (!f.domain().contains(back)) throw DomainError("x0 - h lies outside the domain box; the lower bound needs it");
    return trace.f_x0 - f.evaluate(back) - (trace.C * trace.alpha(1.0) + 1.0) * trace.k0;
}

/// phi(t) - b in K for every trace point with t < delta.
inline LowerBoundReport check_lower_bound(const QuotientTrace& trace, const MappingSpec& f, const ConeDescriptor& cone,
                                          double tolerance = 1e-9) {
    if (cone.dim() != f.m()) throw InputError("cone dimension does not match the mapping");
    LowerBoundReport out;
    out.b = lower_bound_anchor(trace, f);
    out.delta = trace.delta;
    out.check.params = {trace.C, trace.k0, trace.alpha.label(), "lower-bound", tolerance};
    const double bnorm = norm(out.b);
    double scale = 1.0;
    for (const Vec& a : cone.facet_normals()) scale = std::max(scale, norm(a));
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double t = trace.t_values[i];
        if (!(t < trace.delta)) continue;
        const Vec y = trace.corrected_quotients[i] - out.b;
        const double mag = norm(trace.corrected_quotients[i]) + bnorm + trace.rounding_scale[i];
        const SampleTriple s{Vec{t}, Vec{}, 0.0};
        out.check.record(cone.slack(y), tolerance * (1.0 + mag) * scale, &s);
    }
    if (out.check.samples_used == 0) out.check.note = "no trace point below delta";
    return out;
}

enum class LemmaStatus { holds, premises_unmet, falsified };

inline std::string to_string(LemmaStatus s) {
    switch (s) {
        case LemmaStatus::holds: return "holds";
        case LemmaStatus::premises_unmet: return "premises unmet";
        case LemmaStatus::falsified: return "falsified";
    }
    return "unknown";
}

struct LemmaReport {
    CheckReport membership;  // (i)  Phi(t) in K
    CheckReport monotone;    // (ii) Phi(t) - Phi(t1) + (alpha(t1) / t1) k0 in K for t1 < t
    double scalarized_tail = 0.0;       // max over unit dual generators a of |a . Phi(t_n)|
    double scalarized_tolerance = 0.0;  // tail bound that forces ||Phi(t_n)|| <= tol
    bool scalarized_converges = false;  // (iii) in R^m
    double final_norm = 0.0;
    bool conclusion = false;            // ||Phi(t_n)|| <= tol
    LemmaStatus status = LemmaStatus::premises_unmet;
};

/**
 * Checks the three premises of the norm-convergence lemma on a sampled Phi
 * and whether its conclusion holds. Weak convergence is read as convergence
 * of a . Phi for the (unit) facet normals of K, which generate K*.
 *
 * The scalarized tolerance is tol / kappa with kappa = sqrt(p) / sigma_min(A),
 * so a vanishing scalarized tail bounds ||Phi|| by tol whenever K is pointed.
 */
inline LemmaReport check_lemma_trace(const std::vector<std::pair<double, Vec>>& phi, const ConeDescriptor& cone, const Vec& k0,
                                     const Modulus& alpha, double tolerance = 1e-5, double slack_tolerance = 1e-9) {
    if (phi.empty()) throw InputError("lemma trace is empty");
    for (std::size_t i = 0; i < phi.size(); ++i) {
        if (phi[i].second.size() != cone.dim()) throw InputError("lemma trace vector has wrong dimension");
        if (!(phi[i].first > 0.0)) throw InputError("lemma trace t values must be positive");
        if (i > 0 && !(phi[i].first < phi[i - 1].first)) throw InputError("lemma trace t values must be decreasing");
    }
    if (k0.size() != cone.dim()) throw InputError("k0 has wrong dimension");

    LemmaReport out;
    double scale = 1.0;
    for (const Vec& a : cone.facet_normals()) scale = std::max(scale, norm(a));
    for (const auto& [t, v] : phi) {
        const SampleTriple s{Vec{t}, Vec{}, 0.0};
        out.membership.record(cone.slack(v), slack_tolerance * (1.0 + norm(v)) * scale, &s);
    }
    const double knorm = norm(k0);
    for (std::size_t j = 0; j < phi.size(); ++j) {
        const double corr = alpha(phi[j].first) / phi[j].first;
        for (std::size_t i = 0; i < j; ++i) {
            const Vec y = phi[i].second - phi[j].second + corr * k0;
            const double mag = norm(phi[i].second) + norm(phi[j].second) + corr * knorm;
            const SampleTriple s{Vec{phi[i].first}, Vec{phi[j].first}, 0.0};
            out.monotone.record(cone.slack(y), slack_tolerance * (1.0 + mag) * scale, &s);
        }
    }

    const auto& normals = cone.facet_normals();
    const Vec& last = phi.back().second;
    out.final_norm = norm(last);
    if (!normals.empty()) {
        Eigen::MatrixXd a(normals.size(), cone.dim());
        for (std::size_t i = 0; i < normals.size(); ++i) {
            const double an = norm(normals[i]);
            for (std::size_t j = 0; j < cone.dim(); ++j) a(i, j) = normals[i][j] / an;
            out.scalarized_tail = std::max(out.scalarized_tail, std::abs(dot(normals[i], last)) / an);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        const double sigma_min = svd.singularValues().size() == static_cast<Eigen::Index>(cone.dim())
                                     ? svd.singularValues()(svd.singularValues().size() - 1)
                                     : 0.0;
        if (sigma_min > 1e-12) {
            out.scalarized_tolerance = tolerance * sigma_min / std::sqrt(static_cast<double>(normals.size()));
        }
    }
    out.scalarized_converges = out.scalarized_tail <= out.scalarized_tolerance && out.scalarized_tolerance > 0.0;
    out.conclusion = out.final_norm <= tolerance;

    const bool premises = out.membership.passed && out.monotone.passed && out.scalarized_converges;
    if (!premises) {
        out.status = LemmaStatus::premises_unmet;
    } else {
        out.status = out.conclusion ? LemmaStatus::holds : LemmaStatus::falsified;
    }
    return out;
}

struct DerivativeEstimate {
    Vec value;  // F'(x0; h) for the caller's h (unit-direction limit times h_scale)
    QuotientTrace trace;
    double cauchy_gap = std::numeric_limits<double>::infinity();
    double correction_tail = std::numeric_limits<double>::infinity();
    bool converged = false;
    double tolerance = 1e-6;
    CheckReport monotone;
    std::optional<LowerBoundReport> lower_bound;
    std::string lower_bound_note;
    LemmaReport lemma;
    std::optional<Vec> analytic;
    std::optional<double> analytic_error;
};

/**
 * One-sided directional derivative on a geometric t-grid.
 *
 * Steps until ||phi(t_n) - phi(t_{n-1})|| < tol and C alpha(t_n)/t_n ||k0|| < tol,
 * or max_steps is reached (converged = false). The value is the raw quotient at
 * the last step. The Lemma check runs on Phi(t) = phi(t) - value with k0 scaled by C.
 */
inline DerivativeEstimate estimate_directional_derivative(const MappingSpec& f, const Vec& x0, const Vec& h, double C,
                                                          const Vec& k0, const Modulus& alpha, const ConeDescriptor& cone,
                                                          double tol = 1e-6, std::size_t max_steps = 40, double t_start = 0.5,
                                                          double ratio = 0.5, double lemma_tolerance = 1e-5) {
    if (!(tol > 0.0)) throw ParameterError("tol must be positive");
    if (cone.dim() != f.m()) throw InputError("cone dimension does not match the mapping");
    QuotientTrace full = build_trace(f, x0, h, C, k0, alpha, t_start, ratio, max_steps);
    if (full.size() == 0) throw DomainError("no step x0 + t h stays inside the domain box");

    DerivativeEstimate est{Vec(), full, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), false,
                           tol, {}, std::nullopt, {}, {}, std::nullopt, std::nullopt};
    const double knorm = norm(k0);
    std::size_t stop = full.size() - 1;
    for (std::size_t n = 0; n < full.size(); ++n) {
        est.correction_tail = full.correction_coeff(n) * knorm;
        est.cauchy_gap = n == 0 ? std::numeric_limits<double>::infinity()
                                : norm(full.corrected_quotients[n] - full.corrected_quotients[n - 1]);
        if (est.cauchy_gap < tol && est.correction_tail < tol) {
            est.converged = true;
            stop = n;
            break;
        }
    }

    QuotientTrace& trace = est.trace;
    const std::size_t keep = stop + 1;
    trace.t_values.resize(keep);
    trace.raw_quotients.resize(keep);
    trace.corrected_quotients.resize(keep);
    trace.rounding_scale.resize(keep);
    est.value = trace.raw_quotients.back() * trace.h_scale;

    est.monotone = check_alpha_monotone(trace, cone);
    try {
        est.lower_bound = check_lower_bound(trace, f, cone);
    } catch (const DomainError& e) {
        est.lower_bound_note = e.what();
    }

    const Vec& limit = trace.raw_quotients.back();
    std::vector<std::pair<double, Vec>> phi;
    for (std::size_t i = 0; i < trace.size(); ++i) phi.emplace_back(trace.t_values[i], trace.corrected_quotients[i] - limit);
    est.lemma = check_lemma_trace(phi, cone, C * k0, alpha, lemma_tolerance);

    if (f.metadata().analytic_dderiv) {
        est.analytic = f.metadata().analytic_dderiv(x0, h);
        est.analytic_error = norm(*est.analytic - est.value);
    }
    return est;
}

/// |y*(phi(t_n)) - y*(phi(t_{n-1}))| along the trace.
inline std::vector<double> scalarized_gaps(const QuotientTrace& trace, const Vec& ystar) {
    std::vector<double> gaps;
    for (std::size_t n = 1; n < trace.size(); ++n) {
        gaps.push_back(std::abs(dot(ystar, trace.corrected_quotients[n]) - dot(ystar, trace.corrected_quotients[n - 1])));
    }
    return gaps;
}

}  // namespace paracone
