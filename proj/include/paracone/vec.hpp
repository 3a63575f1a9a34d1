#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "paracone/error.hpp"

namespace paracone {

/// Dense real vector in R^m with value semantics.
class Vec {
public:
    Vec() = default;
    explicit Vec(std::size_t dim, double fill = 0.0) : coords_(dim, fill) {}
    Vec(std::initializer_list<double> values) : coords_(values) {}
    explicit Vec(std::vector<double> values) : coords_(std::move(values)) {}

    [[nodiscard]] std::size_t size() const noexcept { return coords_.size(); }
    [[nodiscard]] bool empty() const noexcept { return coords_.empty(); }

    double& operator[](std::size_t i) { return coords_[i]; }
    double operator[](std::size_t i) const { return coords_[i]; }

    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return coords_; }

    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }

    [[nodiscard]] bool all_finite() const noexcept {
        return std::all_of(coords_.begin(), coords_.end(),
                           [](double v) { return std::isfinite(v); });
    }

    Vec& operator+=(const Vec& rhs) {
        require_same_dim(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
        return *this;
    }
    Vec& operator-=(const Vec& rhs) {
        require_same_dim(rhs);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
        return *this;
    }
    Vec& operator*=(double s) noexcept {
        for (double& c : coords_) c *= s;
        return *this;
    }
    Vec& operator/=(double s) noexcept {
        for (double& c : coords_) c /= s;
        return *this;
    }

    friend Vec operator+(Vec lhs, const Vec& rhs) { return lhs += rhs; }
    friend Vec operator-(Vec lhs, const Vec& rhs) { return lhs -= rhs; }
    friend Vec operator-(Vec v) { return v *= -1.0; }
    friend Vec operator*(Vec v, double s) noexcept { return v *= s; }
    friend Vec operator*(double s, Vec v) noexcept { return v *= s; }
    friend Vec operator/(Vec v, double s) noexcept { return v /= s; }

    friend bool operator==(const Vec&, const Vec&) = default;

private:
    void require_same_dim(const Vec& rhs) const {
        if (rhs.size() != size()) {
            throw InputError("dimension mismatch: " + std::to_string(size()) + " vs " +
                             std::to_string(rhs.size()));
        }
    }

    std::vector<double> coords_;
};

inline double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) {
        throw InputError("dimension mismatch in dot product: " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

enum class NormChoice { euclidean, sup };

inline double norm(const Vec& v, NormChoice kind = NormChoice::euclidean) noexcept {
    if (kind == NormChoice::sup) {
        double m = 0.0;
        for (double c : v) m = std::max(m, std::abs(c));
        return m;
    }
    double scale = 0.0;
    for (double c : v) scale = std::max(scale, std::abs(c));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (double c : v) s += (c / scale) * (c / scale);
    return scale * std::sqrt(s);
}

inline std::string to_string(NormChoice kind) {
    return kind == NormChoice::sup ? "sup" : "euclidean";
}

inline NormChoice parse_norm(const std::string& name) {
    if (name == "euclidean" || name == "l2") return NormChoice::euclidean;
    if (name == "sup" || name == "max" || name == "linf") return NormChoice::sup;
    throw InputError("unknown norm '" + name + "' (expected euclidean or sup)");
}

/// Parses "1,0.5,-2" into a vector.
inline Vec parse_vec(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (token.empty()) throw InputError("empty coordinate in vector '" + text + "'");
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception&) {
            throw InputError("cannot parse coordinate '" + token + "'");
        }
        if (used != token.size() || !std::isfinite(value)) {
            throw InputError("cannot parse coordinate '" + token + "'");
        }
        out.push_back(value);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Vec(std::move(out));
}

}  // namespace paracone
