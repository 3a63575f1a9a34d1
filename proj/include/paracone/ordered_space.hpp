#pragma once

/**
 * @file ordered_space.hpp
 * @brief R^m ordered by a closed convex polyhedral cone.
 *
 * A cone is stored in facet-normal form K = {y : a_i . y >= 0 for all i}.
 * The generator form K = cone(g_1, ..., g_p) is optional; it is derived
 * automatically for simplicial cones (square invertible normal matrix) and
 * for the whole space (no facet normals). Operations that need generators
 * throw UnsupportedRepresentation when neither is available.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "paracone/error.hpp"
#include "paracone/random.hpp"
#include "paracone/vec.hpp"

namespace paracone {

inline constexpr double kDefaultMembershipTol = 1e-9;

class ConeDescriptor {
public:
    /// Validates dimensions and that every stored generator is a member.
    ConeDescriptor(std::size_t dim, std::vector<Vec> facet_normals,
                   std::optional<std::vector<Vec>> generators = std::nullopt,
                   double membership_tol = kDefaultMembershipTol)
        : dim_(dim),
          facet_normals_(std::move(facet_normals)),
          generators_(std::move(generators)),
          membership_tol_(membership_tol) {
        if (dim_ == 0) throw InputError("cone dimension must be positive");
        if (!(membership_tol_ >= 0.0) || !std::isfinite(membership_tol_)) {
            throw InputError("membership_tol must be finite and nonnegative");
        }
        for (const Vec& a : facet_normals_) {
            if (a.size() != dim_) throw InputError("facet normal has wrong dimension");
            if (!a.all_finite()) throw InputError("facet normal has non-finite entries");
        }
        if (generators_) {
            for (const Vec& g : *generators_) {
                if (g.size() != dim_) throw InputError("generator has wrong dimension");
                if (!g.all_finite()) throw InputError("generator has non-finite entries");
                if (!contains(g)) throw InputError("stored generator is not a member of the cone");
            }
        }
    }

    /// Nonnegative orthant R^m_+.
    static ConeDescriptor orthant(std::size_t dim) {
        std::vector<Vec> normals;
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < dim; ++i) {
            Vec e(dim);
            e[i] = 1.0;
            normals.push_back(e);
            gens.push_back(e);
        }
        return ConeDescriptor(dim, std::move(normals), std::move(gens));
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<Vec>& facet_normals() const noexcept { return facet_normals_; }
    [[nodiscard]] const std::optional<std::vector<Vec>>& stored_generators() const noexcept {
        return generators_;
    }
    [[nodiscard]] double membership_tol() const noexcept { return membership_tol_; }

    /// min_i a_i . y, or +infinity when there are no facet normals.
    [[nodiscard]] double slack(const Vec& y) const {
        if (y.size() != dim_) {
            throw InputError("dimension mismatch: vector has " + std::to_string(y.size()) +
                             " coordinates, cone has dimension " + std::to_string(dim_));
        }
        double s = std::numeric_limits<double>::infinity();
        for (const Vec& a : facet_normals_) s = std::min(s, dot(a, y));
        return s;
    }

    [[nodiscard]] bool contains(const Vec& y) const {
        return slack(y) >= -membership_tol_ * (1.0 + norm(y));
    }

    /// Stored generators, or derived ones for simplicial cones and the whole space.
    [[nodiscard]] std::optional<std::vector<Vec>> generators() const {
        if (generators_) return generators_;
        if (facet_normals_.empty()) {
            std::vector<Vec> gens;
            for (std::size_t i = 0; i < dim_; ++i) {
                Vec e(dim_);
                e[i] = 1.0;
                gens.push_back(e);
                gens.push_back(-e);
            }
            return gens;
        }
        if (facet_normals_.size() != dim_) return std::nullopt;
        Eigen::MatrixXd a(dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) a(i, j) = facet_normals_[i][j];
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        if (!lu.isInvertible()) return std::nullopt;
        const Eigen::MatrixXd inv = lu.inverse();
        // K = {A^{-1} z : z >= 0}, so the generators are the columns of A^{-1}.
        std::vector<Vec> gens;
        for (std::size_t j = 0; j < dim_; ++j) {
            Vec g(dim_);
            for (std::size_t i = 0; i < dim_; ++i) g[i] = inv(i, j);
            gens.push_back(g);
        }
        return gens;
    }

    [[nodiscard]] std::vector<Vec> require_generators(const char* operation) const {
        auto gens = generators();
        if (!gens) {
            throw UnsupportedRepresentation(
                std::string(operation) +
                " needs cone generators; supply them or use a simplicial facet description");
        }
        return *gens;
    }

private:
    std::size_t dim_;
    std::vector<Vec> facet_normals_;
    std::optional<std::vector<Vec>> generators_;
    double membership_tol_;
};

struct Membership {
    bool member;
    double slack;
};

inline Membership member(const Vec& y, const ConeDescriptor& cone) {
    return {cone.contains(y), cone.slack(y)};
}

/// x <=_K y  iff  y - x in K.
inline bool leq(const Vec& x, const Vec& y, const ConeDescriptor& cone) {
    if (x.size() != y.size()) throw InputError("dimension mismatch in leq");
    return cone.contains(y - x);
}

/// Positive dual cone K* = {y* : y* . y >= 0 for all y in K}.
///
/// For K = {y : A y >= 0} = cone(G) the dual is {y* : G y* >= 0} = cone(rows of A),
/// so the two representations simply swap roles.
inline ConeDescriptor dual_cone(const ConeDescriptor& cone) {
    std::vector<Vec> gens = cone.require_generators("dual_cone");
    return ConeDescriptor(cone.dim(), std::move(gens), cone.facet_normals(), cone.membership_tol());
}

/// K is pointed iff its lineality space {y : A y = 0} is trivial, i.e. rank A = m.
inline bool is_pointed(const ConeDescriptor& cone) {
    if (cone.facet_normals().empty()) return false;
    Eigen::MatrixXd a(cone.facet_normals().size(), cone.dim());
    for (std::size_t i = 0; i < cone.facet_normals().size(); ++i)
        for (std::size_t j = 0; j < cone.dim(); ++j) a(i, j) = cone.facet_normals()[i][j];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    return static_cast<std::size_t>(lu.rank()) == cone.dim();
}

namespace detail {

// Random cone member: nonnegative combination of generators, each weight
// zeroed with probability 1/2 so boundary rays are hit often.
inline Vec random_cone_member(const std::vector<Vec>& gens, std::size_t dim, Rng& rng) {
    Vec out(dim);
    bool any = false;
    for (const Vec& g : gens) {
        if (rng.coin()) continue;
        out += rng.uniform(0.0, 1.0) * g;
        any = true;
    }
    if (!any) out += gens[rng.below(gens.size())];
    return out;
}

}  // namespace detail

/**
 * Sampled lower bound on the normality constant
 *   C = sup { ||x|| / ||y|| : 0 <=_K x <=_K y, y != 0 }.
 *
 * Pairs are drawn as x in K, y = x + s z with z in K and a log-uniform scale
 * s in [1e-3, 1e1]. The draw stream depends only on the seed, so the result is
 * a running maximum over a fixed sequence and never decreases with `samples`.
 */
inline double estimate_normality_constant(const ConeDescriptor& cone, NormChoice norm_kind,
                                          std::size_t samples, std::uint64_t seed) {
    if (samples == 0) throw ParameterError("samples must be positive");
    if (!is_pointed(cone)) throw ParameterError("normality constant requires a pointed cone");
    const std::vector<Vec> gens = cone.require_generators("estimate_normality_constant");
    if (gens.empty()) throw EstimationError("cone has no generators; no feasible pair exists");

    Rng rng(seed);
    double best = 0.0;
    bool found = false;
    for (std::size_t k = 0; k < samples; ++k) {
        const Vec x = detail::random_cone_member(gens, cone.dim(), rng);
        const Vec z = detail::random_cone_member(gens, cone.dim(), rng);
        const double scale = std::pow(10.0, rng.uniform(-3.0, 1.0));
        const Vec y = x + scale * z;
        const double ny = norm(y, norm_kind);
        if (!(ny > 0.0)) continue;
        best = std::max(best, norm(x, norm_kind) / ny);
        found = true;
    }
    if (!found) throw EstimationError("no feasible pair (x, y) with y != 0 was sampled");
    return best;
}

/**
 * Functional y* with y* . k >= ||k|| on K, or nullopt when none exists.
 *
 * For a pointed cone the sum of facet normals is strictly positive on every
 * nonzero member, so scaling it to dominate ||g|| on each generator solves
 * the finite system; norm subadditivity extends the bound to all of K.
 */
inline std::optional<Vec> well_based_witness(const ConeDescriptor& cone, NormChoice norm_kind) {
    if (!is_pointed(cone)) return std::nullopt;
    const std::vector<Vec> gens = cone.require_generators("well_based_witness");
    Vec direction(cone.dim());
    for (const Vec& a : cone.facet_normals()) direction += a / norm(a);

    double scale = 0.0;
    for (const Vec& g : gens) {
        const double ng = norm(g, norm_kind);
        if (ng == 0.0) continue;
        const double value = dot(direction, g);
        if (!(value > 1e-12 * ng * norm(direction))) return std::nullopt;
        scale = std::max(scale, ng / value);
    }
    if (scale == 0.0) return std::nullopt;
    Vec witness = scale * direction;
    // Round-off can leave y* . g a few ulps short of ||g||.
    double shortfall = 1.0;
    for (const Vec& g : gens) {
        const double ng = norm(g, norm_kind);
        if (ng > 0.0) shortfall = std::max(shortfall, ng / dot(witness, g));
    }
    if (shortfall > 1.0) witness *= shortfall * (1.0 + 4 * std::numeric_limits<double>::epsilon());
    return witness;
}

}  // namespace paracone
