#pragma once

#include "thickgeo/errors.hpp"
#include "thickgeo/rational.hpp"
#include "thickgeo/vector.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace thickgeo {

enum class NormKind { weighted_l1, linf, l2 };

inline std::string_view to_string(NormKind kind) {
    switch (kind) {
    case NormKind::weighted_l1: return "wl1";
    case NormKind::linf: return "linf";
    case NormKind::l2: return "l2";
    }
    return "?";
}

inline NormKind parse_norm_kind(std::string_view name) {
    if (name == "wl1") return NormKind::weighted_l1;
    if (name == "linf") return NormKind::linf;
    if (name == "l2") return NormKind::l2;
    throw InputError("unknown norm kind '" + std::string(name) + "'");
}

/// R^d with a weighted-l1, l-infinity or Euclidean norm.
class NormedSpace {
public:
    NormedSpace() = default;

    /// `weights` is required (length = dimension, all > 0) for weighted-l1 and ignored otherwise.
    NormedSpace(std::size_t dimension, NormKind kind, std::vector<Rational> weights = {})
        : dimension_(dimension), kind_(kind) {
        if (dimension == 0) throw InputError("space dimension must be positive");
        if (kind == NormKind::weighted_l1) {
            if (weights.size() != dimension) {
                throw InputError("weighted-l1 space needs " + std::to_string(dimension) + " weights, got " +
                                 std::to_string(weights.size()));
            }
            for (std::size_t i = 0; i < weights.size(); ++i) {
                if (weights[i] <= 0) throw InputError("weight " + std::to_string(i) + " is not positive");
            }
            weights_ = std::move(weights);
        }
    }

    static NormedSpace weighted_l1(std::vector<Rational> weights) {
        std::size_t d = weights.size();
        return NormedSpace(d, NormKind::weighted_l1, std::move(weights));
    }
    static NormedSpace linf(std::size_t dimension) { return NormedSpace(dimension, NormKind::linf); }
    static NormedSpace l2(std::size_t dimension) { return NormedSpace(dimension, NormKind::l2); }

    std::size_t dimension() const { return dimension_; }
    NormKind kind() const { return kind_; }
    const std::vector<Rational>& weights() const { return weights_; }
    bool is_polyhedral() const { return kind_ != NormKind::l2; }

    void require_member(const Vector& v) const {
        if (v.dimension() != dimension_) {
            throw InputError("vector of dimension " + std::to_string(v.dimension()) +
                             " does not belong to a space of dimension " + std::to_string(dimension_));
        }
    }

    void require_polyhedral(std::string_view what) const {
        if (!is_polyhedral()) {
            throw InputError(std::string(what) + " requires a polyhedral norm (wl1 or linf)");
        }
    }

    bool operator==(const NormedSpace&) const = default;

private:
    std::size_t dimension_ = 0;
    NormKind kind_ = NormKind::weighted_l1;
    std::vector<Rational> weights_;
};

/// Exact norm for the polyhedral kinds.
inline Rational exact_norm(const NormedSpace& space, const Vector& v) {
    space.require_member(v);
    space.require_polyhedral("exact norm");
    Rational result(0);
    if (space.kind() == NormKind::weighted_l1) {
        for (const auto& e : v.entries()) result += space.weights()[e.index] * abs(e.value);
    } else {
        for (const auto& e : v.entries()) {
            Rational a = abs(e.value);
            if (a > result) result = a;
        }
    }
    return result;
}

inline double norm(const NormedSpace& space, const Vector& v) {
    space.require_member(v);
    if (space.is_polyhedral()) return to_double(exact_norm(space, v));
    Rational squares(0);
    for (const auto& e : v.entries()) squares += e.value * e.value;
    return std::sqrt(to_double(squares));
}

inline Rational exact_distance(const NormedSpace& space, const Vector& a, const Vector& b) {
    return exact_norm(space, a - b);
}

inline double distance(const NormedSpace& space, const Vector& a, const Vector& b) {
    return norm(space, a - b);
}

/// Linear functional v -> sum_i coefficients_i * v_i.
struct Functional {
    std::vector<Rational> coefficients;

    std::size_t dimension() const { return coefficients.size(); }

    Rational operator()(const Vector& v) const {
        if (v.dimension() != coefficients.size()) {
            throw InputError("functional of dimension " + std::to_string(coefficients.size()) +
                             " applied to vector of dimension " + std::to_string(v.dimension()));
        }
        Rational result(0);
        for (const auto& e : v.entries()) result += coefficients[e.index] * e.value;
        return result;
    }

    bool operator==(const Functional&) const = default;
};

inline Rational functional_eval(const Functional& f, const Vector& v) { return f(v); }

/// Dual norm of f, in floating point; see has_unit_operator_norm for the exact test.
inline double operator_norm(const NormedSpace& space, const Functional& f) {
    if (f.dimension() != space.dimension()) throw InputError("functional dimension mismatch");
    switch (space.kind()) {
    case NormKind::weighted_l1: {
        Rational best(0);
        for (std::size_t i = 0; i < f.dimension(); ++i) {
            Rational r = abs(f.coefficients[i]) / space.weights()[i];
            if (r > best) best = r;
        }
        return to_double(best);
    }
    case NormKind::linf: {
        Rational sum(0);
        for (const auto& c : f.coefficients) sum += abs(c);
        return to_double(sum);
    }
    case NormKind::l2: {
        Rational squares(0);
        for (const auto& c : f.coefficients) squares += c * c;
        return std::sqrt(to_double(squares));
    }
    }
    return 0.0;
}

/// Exact test of ||f||_* == 1 (on the squared value for l2).
inline bool has_unit_operator_norm(const NormedSpace& space, const Functional& f) {
    if (f.dimension() != space.dimension()) return false;
    switch (space.kind()) {
    case NormKind::weighted_l1: {
        Rational best(0);
        for (std::size_t i = 0; i < f.dimension(); ++i) {
            Rational r = abs(f.coefficients[i]) / space.weights()[i];
            if (r > best) best = r;
        }
        return best == 1;
    }
    case NormKind::linf: {
        Rational sum(0);
        for (const auto& c : f.coefficients) sum += abs(c);
        return sum == 1;
    }
    case NormKind::l2: {
        Rational squares(0);
        for (const auto& c : f.coefficients) squares += c * c;
        return squares == 1;
    }
    }
    return false;
}

} // namespace thickgeo
