#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paracone/error.hpp"
#include "paracone/ordered_space.hpp"
#include "paracone/vec.hpp"

namespace paracone {

/// Axis-aligned box standing in for the convex domain A.
struct Box {
    Vec lower;
    Vec upper;

    Box(Vec lo, Vec hi) : lower(std::move(lo)), upper(std::move(hi)) {
        if (lower.size() != upper.size() || lower.empty()) throw InputError("box bounds must have equal positive dimension");
        for (std::size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
                throw InputError("box bounds must be finite with lower <= upper");
            }
        }
    }

    static Box cube(std::size_t dim, double lo, double hi) { return Box(Vec(dim, lo), Vec(dim, hi)); }

    [[nodiscard]] std::size_t dim() const noexcept { return lower.size(); }

    [[nodiscard]] bool contains(const Vec& x, double tol = 0.0) const {
        if (x.size() != dim()) return false;
        for (std::size_t i = 0; i < dim(); ++i) {
            const double slack = tol * (1.0 + std::abs(lower[i]) + std::abs(upper[i]));
            if (x[i] < lower[i] - slack || x[i] > upper[i] + slack) return false;
        }
        return true;
    }
};

using Evaluator = std::function<Vec(const Vec&)>;
using DirectionalDerivative = std::function<Vec(const Vec& x0, const Vec& h)>;

/// Analytic facts about a mapping, used as ground truth by the checkers.
struct MappingMetadata {
    std::optional<double> known_C;  // defect constant in the min{lambda, 1-lambda} form
    std::optional<Vec> known_k0;
    std::optional<std::string> known_modulus;
    std::optional<ConeDescriptor> cone;
    DirectionalDerivative analytic_dderiv;  // empty when unknown
};

/// Black-box mapping F: R^n -> R^m on a box domain.
class MappingSpec {
public:
    MappingSpec(std::string name, std::size_t n, std::size_t m, Evaluator evaluate, Box domain,
                MappingMetadata metadata = {})
        : name_(std::move(name)),
          n_(n),
          m_(m),
          evaluate_(std::move(evaluate)),
          domain_(std::move(domain)),
          metadata_(std::move(metadata)) {
        if (n_ == 0 || m_ == 0) throw InputError("mapping dimensions must be positive");
        if (domain_.dim() != n_) throw InputError("domain box dimension does not match n");
        if (metadata_.cone && metadata_.cone->dim() != m_) throw InputError("metadata cone dimension does not match m");
        if (metadata_.known_k0 && metadata_.known_k0->size() != m_) throw InputError("metadata k0 dimension does not match m");
    }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t m() const noexcept { return m_; }
    [[nodiscard]] const Box& domain() const noexcept { return domain_; }
    [[nodiscard]] const MappingMetadata& metadata() const noexcept { return metadata_; }

    /// Evaluates F, rejecting wrong dimensions and non-finite output.
    [[nodiscard]] Vec evaluate(const Vec& x) const {
        if (x.size() != n_) throw InputError("mapping '" + name_ + "' expects " + std::to_string(n_) + " inputs");
        Vec y;
        try {
            y = evaluate_(x);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationError("mapping '" + name_ + "' failed: " + e.what());
        }
        if (y.size() != m_) throw EvaluationError("mapping '" + name_ + "' returned wrong output dimension");
        if (!y.all_finite()) throw EvaluationError("mapping '" + name_ + "' returned a non-finite value");
        return y;
    }

    Vec operator()(const Vec& x) const { return evaluate(x); }

    [[nodiscard]] MappingSpec with_metadata(MappingMetadata md) const {
        return MappingSpec(name_, n_, m_, evaluate_, domain_, std::move(md));
    }

    /// G(x) = F(x) + shift(x).
    [[nodiscard]] MappingSpec plus(std::string name, Evaluator shift) const {
        auto base = evaluate_;
        return MappingSpec(std::move(name), n_, m_,
                           [base, shift](const Vec& x) { return base(x) + shift(x); }, domain_);
    }

private:
    std::string name_;
    std::size_t n_;
    std::size_t m_;
    Evaluator evaluate_;
    Box domain_;
    MappingMetadata metadata_;
};

/// One monomial coeff * prod_j x_j^{e_j}.
struct Monomial {
    double coeff = 0.0;
    std::vector<unsigned> exponents;
};

/// Componentwise polynomial mapping R^n -> R^m.
struct PolynomialMap {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::vector<Monomial>> components;

    void validate() const {
        if (n == 0 || m == 0) throw InputError("polynomial mapping needs positive n and m");
        if (components.size() != m) throw InputError("polynomial mapping has " + std::to_string(components.size()) + " components, expected m = " + std::to_string(m));
        for (const auto& comp : components) {
            for (const auto& term : comp) {
                if (term.exponents.size() != n) throw InputError("monomial exponent list must have n entries");
                if (!std::isfinite(term.coeff)) throw InputError("monomial coefficient must be finite");
            }
        }
    }

    [[nodiscard]] Vec operator()(const Vec& x) const {
        Vec y(m);
        for (std::size_t c = 0; c < m; ++c) {
            double sum = 0.0;
            for (const auto& term : components[c]) {
                double prod = term.coeff;
                for (std::size_t j = 0; j < n; ++j) prod *= std::pow(x[j], static_cast<int>(term.exponents[j]));
                sum += prod;
            }
            y[c] = sum;
        }
        return y;
    }

    /// Gradient applied to h; polynomials are smooth so this is F'(x0; h).
    [[nodiscard]] Vec directional_derivative(const Vec& x0, const Vec& h) const {
        Vec d(m);
        for (std::size_t c = 0; c < m; ++c) {
            double sum = 0.0;
            for (const auto& term : components[c]) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (term.exponents[j] == 0) continue;
                    double prod = term.coeff * term.exponents[j] * h[j];
                    for (std::size_t k = 0; k < n; ++k) {
                        const int e = static_cast<int>(term.exponents[k]) - (k == j ? 1 : 0);
                        prod *= std::pow(x0[k], e);
                    }
                    sum += prod;
                }
            }
            d[c] = sum;
        }
        return d;
    }
};

inline MappingSpec make_polynomial_mapping(std::string name, PolynomialMap poly, Box domain,
                                           MappingMetadata metadata = {}) {
    poly.validate();
    if (!metadata.analytic_dderiv) {
        metadata.analytic_dderiv = [poly](const Vec& x0, const Vec& h) { return poly.directional_derivative(x0, h); };
    }
    const std::size_t n = poly.n;
    const std::size_t m = poly.m;
    return MappingSpec(std::move(name), n, m, [poly](const Vec& x) { return poly(x); }, std::move(domain),
                       std::move(metadata));
}

}  // namespace paracone
