#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paracone/error.hpp"

namespace paracone {

/// Default probe grid 2^-1, 2^-2, ..., 2^-40.
inline std::vector<double> default_probe_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 40; ++k) grid.push_back(std::ldexp(1.0, -k));
    return grid;
}

/// Deep-tail point for the alpha(t)/t -> 0 proxy.
inline constexpr double kModulusTailPoint = 0x1.0p-1000;
inline constexpr double kModulusTailThreshold = 1e-9;

/// Modulus alpha: R_+ -> R_+, nondecreasing with alpha(t)/t -> 0 as t -> 0+.
class Modulus {
public:
    Modulus(std::function<double(double)> evaluator, std::string label,
            std::vector<double> probe_grid = default_probe_grid())
        : evaluator_(std::move(evaluator)), label_(std::move(label)), probe_grid_(std::move(probe_grid)) {}

    double operator()(double t) const { return evaluator_(t); }

    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const std::vector<double>& probe_grid() const noexcept { return probe_grid_; }

private:
    std::function<double(double)> evaluator_;
    std::string label_;
    std::vector<double> probe_grid_;
};

struct ModulusReport {
    bool passed = true;
    std::optional<double> witness_t;
    std::string reason;
    std::size_t samples_used = 0;
};

/**
 * Numeric proxy for the modulus conditions:
 *  - alpha(0) = 0, alpha finite and nonnegative on the probe grid;
 *  - alpha nondecreasing along the grid;
 *  - alpha(t)/t nonincreasing along the grid;
 *  - alpha(t)/t below 1e-9 at the deep-tail point t = 2^-1000.
 * A limit cannot be certified from samples; this rejects moduli whose ratio
 * is flat, growing, or stalls away from zero.
 */
inline ModulusReport validate(const Modulus& alpha) {
    ModulusReport report;
    auto fail = [&](double t, std::string why) {
        report.passed = false;
        report.witness_t = t;
        report.reason = std::move(why);
        return report;
    };

    const double at_zero = alpha(0.0);
    ++report.samples_used;
    if (!std::isfinite(at_zero)) return fail(0.0, "alpha(0) is not finite");
    if (at_zero != 0.0) return fail(0.0, "alpha(0) != 0");

    const auto& grid = alpha.probe_grid();
    if (grid.empty()) return fail(0.0, "empty probe grid");
    double prev_value = 0.0;
    double prev_ratio = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        if (!(t > 0.0)) return fail(t, "probe grid must be positive");
        if (i > 0 && !(t < grid[i - 1])) return fail(t, "probe grid must be strictly decreasing");
        const double value = alpha(t);
        ++report.samples_used;
        if (!std::isfinite(value)) return fail(t, "alpha is not finite");
        if (value < 0.0) return fail(t, "alpha is negative");
        const double ratio = value / t;
        if (i > 0) {
            // The grid decreases, so monotonicity means value <= prev_value.
            if (value > prev_value * (1.0 + 1e-12)) return fail(t, "alpha is not nondecreasing");
            if (ratio > prev_ratio * (1.0 + 1e-12)) return fail(t, "alpha(t)/t does not decrease toward 0");
        }
        prev_value = value;
        prev_ratio = ratio;
    }

    const double tail = alpha(kModulusTailPoint);
    ++report.samples_used;
    if (!std::isfinite(tail)) return fail(kModulusTailPoint, "alpha is not finite at the tail");
    if (tail / kModulusTailPoint >= kModulusTailThreshold) {
        return fail(kModulusTailPoint, "alpha(t)/t does not vanish at the tail");
    }
    return report;
}

/// alpha(t) = t^gamma, gamma > 1.
inline Modulus make_power_modulus(double gamma) {
    if (!std::isfinite(gamma) || !(gamma > 1.0)) {
        throw InvalidModulus("power modulus needs gamma > 1 (alpha(t)/t must vanish), got " +
                             std::to_string(gamma));
    }
    std::string label = "pow:";
    {
        // Shortest representation that round-trips, e.g. "pow:2", "pow:1.5".
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", gamma);
        for (int prec = 1; prec <= 17; ++prec) {
            char trial[32];
            std::snprintf(trial, sizeof trial, "%.*g", prec, gamma);
            if (std::stod(trial) == gamma) {
                std::snprintf(buf, sizeof buf, "%s", trial);
                break;
            }
        }
        label += buf;
    }
    return Modulus([gamma](double t) { return t <= 0.0 ? 0.0 : std::pow(t, gamma); }, label);
}

/// Parses a CLI modulus label such as "pow:2".
inline Modulus parse_modulus(const std::string& text) {
    const std::string prefix = "pow:";
    if (text.rfind(prefix, 0) != 0) {
        throw InputError("unknown modulus '" + text + "' (expected pow:<gamma>)");
    }
    const std::string arg = text.substr(prefix.size());
    std::size_t used = 0;
    double gamma = 0.0;
    try {
        gamma = std::stod(arg, &used);
    } catch (const std::exception&) {
        throw InputError("cannot parse modulus exponent '" + arg + "'");
    }
    if (used != arg.size()) throw InputError("cannot parse modulus exponent '" + arg + "'");
    return make_power_modulus(gamma);
}

}  // namespace paracone
