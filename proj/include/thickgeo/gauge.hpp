#pragma once

// Minkowski gauge of conv(B_X ∪ {±b_j}) for finitely many vectors b_j.
//
// The gauge is the infimal convolution of the base norm with the l1-type gauge
// of {±b_j}:
//     gauge(v) = min { ||u|| + sum_j |c_j| : v = u + sum_j c_j b_j }.
// Polyhedral base norms turn this into an exact rational LP. For l2 the dual
//     gauge(v) = max { <phi, v> : ||phi||_2 <= 1, |<phi, b_j>| <= 1 }
// is bracketed between a polyhedral outer approximation of the Euclidean ball
// (tangent cuts) and the same optimum pulled back into the ball.

#include "thickgeo/errors.hpp"
#include "thickgeo/normed_space.hpp"
#include "thickgeo/rational.hpp"
#include "thickgeo/simplex.hpp"
#include "thickgeo/vector.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace thickgeo {

struct GaugeOptions {
    double tolerance = 1e-8;          // l2 only: width of the final bracket
    std::size_t max_iterations = 400; // l2 only: cutting-plane rounds
    std::size_t max_pivots = 200000;
};

struct GaugeResult {
    double value = 0.0;
    std::optional<Rational> exact; // polyhedral base norms
    double lower = 0.0;            // bracket, equal to value in the exact case
    double upper = 0.0;
    std::size_t iterations = 0;
};

namespace detail {

inline void check_gauge_inputs(const NormedSpace& space, const std::vector<Vector>& generators, const Vector& v) {
    space.require_member(v);
    if (generators.empty()) throw InputError("gauge needs at least one bush vector");
    for (std::size_t j = 0; j < generators.size(); ++j) {
        space.require_member(generators[j]);
        if (generators[j].is_zero()) throw InputError("bush vector " + std::to_string(j) + " is zero");
    }
}

inline Rational polyhedral_gauge(const NormedSpace& space, const std::vector<Vector>& generators, const Vector& v,
                                 const GaugeOptions& options) {
    const std::size_t d = space.dimension();
    const std::size_t k = generators.size();
    std::vector<std::vector<Rational>> cols;
    cols.reserve(k);
    for (const auto& g : generators) cols.push_back(g.dense());
    std::vector<Rational> rhs = v.dense();

    lp::Problem<Rational> p;
    if (space.kind() == NormKind::weighted_l1) {
        // variables: u+ (d), u- (d), c+ (k), c- (k)
        p = lp::Problem<Rational>(d, 2 * d + 2 * k);
        for (std::size_t i = 0; i < d; ++i) {
            p.at(i, i) = 1;
            p.at(i, d + i) = -1;
            for (std::size_t j = 0; j < k; ++j) {
                p.at(i, 2 * d + j) = cols[j][i];
                p.at(i, 2 * d + k + j) = -cols[j][i];
            }
            p.b[i] = rhs[i];
            p.c[i] = space.weights()[i];
            p.c[d + i] = space.weights()[i];
        }
        for (std::size_t j = 0; j < 2 * k; ++j) p.c[2 * d + j] = 1;
    } else {
        // variables: tau, c+ (k), c- (k), sigma (d), rho (d)
        //   tau + (Bc)_i - sigma_i =  v_i
        //   tau - (Bc)_i - rho_i   = -v_i
        p = lp::Problem<Rational>(2 * d, 1 + 2 * k + 2 * d);
        for (std::size_t i = 0; i < d; ++i) {
            p.at(i, 0) = 1;
            p.at(d + i, 0) = 1;
            for (std::size_t j = 0; j < k; ++j) {
                p.at(i, 1 + j) = cols[j][i];
                p.at(i, 1 + k + j) = -cols[j][i];
                p.at(d + i, 1 + j) = -cols[j][i];
                p.at(d + i, 1 + k + j) = cols[j][i];
            }
            p.at(i, 1 + 2 * k + i) = -1;
            p.at(d + i, 1 + 2 * k + d + i) = -1;
            p.b[i] = rhs[i];
            p.b[d + i] = -rhs[i];
        }
        p.c[0] = 1;
        for (std::size_t j = 0; j < 2 * k; ++j) p.c[1 + j] = 1;
    }
    auto sol = lp::minimize(p, options.max_pivots);
    if (sol.status != lp::Status::optimal) {
        std::ostringstream msg;
        msg << "gauge LP did not reach optimality (status " << static_cast<int>(sol.status) << ", " << sol.pivots
            << " pivots)";
        throw NumericalError(msg.str());
    }
    return sol.objective;
}

inline GaugeResult euclidean_gauge(const NormedSpace& space, const std::vector<Vector>& generators, const Vector& v,
                                   const GaugeOptions& options) {
    const std::size_t d = space.dimension();
    std::vector<std::vector<double>> gens;
    for (const auto& g : generators) {
        std::vector<double> col(d);
        for (const auto& e : g.entries()) col[e.index] = to_double(e.value);
        gens.push_back(std::move(col));
    }
    std::vector<double> target(d);
    for (const auto& e : v.entries()) target[e.index] = to_double(e.value);
    const double base = norm(space, v);

    // Rows of "row . phi <= 1".
    std::vector<std::vector<double>> rows;
    for (const auto& g : gens) {
        rows.push_back(g);
        std::vector<double> neg(d);
        std::transform(g.begin(), g.end(), neg.begin(), [](double x) { return -x; });
        rows.push_back(std::move(neg));
    }
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> e(d, 0.0);
        e[i] = 1.0;
        rows.push_back(e);
        e[i] = -1.0;
        rows.push_back(e);
    }

    GaugeResult result;
    double best_lower = 0.0;
    for (std::size_t iter = 1; iter <= options.max_iterations; ++iter) {
        const std::size_t m = rows.size();
        // variables: phi+ (d), phi- (d), slack (m)
        lp::Problem<double> p(m, 2 * d + m);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t i = 0; i < d; ++i) {
                p.at(r, i) = rows[r][i];
                p.at(r, d + i) = -rows[r][i];
            }
            p.at(r, 2 * d + r) = 1.0;
            p.b[r] = 1.0;
        }
        for (std::size_t i = 0; i < d; ++i) {
            p.c[i] = -target[i];
            p.c[d + i] = target[i];
        }
        auto sol = lp::minimize(p, options.max_pivots);
        if (sol.status != lp::Status::optimal) {
            throw NumericalError("l2 gauge: outer LP failed at round " + std::to_string(iter));
        }
        std::vector<double> phi(d);
        double phi_norm2 = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            phi[i] = sol.x[i] - sol.x[d + i];
            phi_norm2 += phi[i] * phi[i];
        }
        const double phi_norm = std::sqrt(phi_norm2);
        const double upper = -sol.objective;
        const double lower = upper / std::max(1.0, phi_norm);
        best_lower = std::max(best_lower, lower);
        result.iterations = iter;
        result.upper = std::min(upper, base);
        result.lower = std::min(best_lower, result.upper);
        if (result.upper - result.lower <= options.tolerance) {
            result.value = 0.5 * (result.upper + result.lower);
            return result;
        }
        std::vector<double> cut(d);
        for (std::size_t i = 0; i < d; ++i) cut[i] = phi[i] / phi_norm;
        rows.push_back(std::move(cut));
    }
    std::ostringstream msg;
    msg << "l2 gauge did not converge in " << options.max_iterations << " rounds; bracket [" << result.lower << ", "
        << result.upper << "]";
    throw NumericalError(msg.str());
}

} // namespace detail

/// Gauge of conv(B_X ∪ {±b_j}) at v; the equivalent norm in which every b_j with
/// ||b_j|| >= 1 and x*(b_j) = 1 has norm exactly 1.
inline GaugeResult gauge_renorm_detailed(const NormedSpace& space, const std::vector<Vector>& bush_vectors,
                                         const Vector& v, const GaugeOptions& options = {}) {
    detail::check_gauge_inputs(space, bush_vectors, v);
    GaugeResult result;
    if (v.is_zero()) {
        if (space.is_polyhedral()) result.exact = Rational(0);
        return result;
    }
    if (space.is_polyhedral()) {
        Rational exact = detail::polyhedral_gauge(space, bush_vectors, v, options);
        result.value = result.lower = result.upper = to_double(exact);
        result.exact = exact;
        result.iterations = 1;
        return result;
    }
    return detail::euclidean_gauge(space, bush_vectors, v, options);
}

inline double gauge_renorm(const NormedSpace& space, const std::vector<Vector>& bush_vectors, const Vector& v,
                           const GaugeOptions& options = {}) {
    return gauge_renorm_detailed(space, bush_vectors, v, options).value;
}

} // namespace thickgeo
