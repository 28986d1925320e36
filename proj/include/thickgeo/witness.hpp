#pragma once

// Checker for the thickness conditions on a pair (g, g~) and a challenge t_1..t_n:
//   * {q_i} contains every t_i
//   * 0 <= s_1 <= q_1 <= s_2 <= ... <= q_m <= s_{m+1} <= 1
//   * g(q_i) = g~(q_i) for every i
//   * sum_i ||g(s_i) - g~(s_i)|| >= alpha
// plus g(t_i) = g~(t_i). Failures are report entries, never exceptions.

#include "thickgeo/bush.hpp"
#include "thickgeo/family.hpp"
#include "thickgeo/normed_space.hpp"
#include "thickgeo/rational.hpp"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

namespace thickgeo {

struct WitnessReport {
    std::vector<Check> checks;
    Rational achieved;         // sum of deviations at the s-points
    Rational alpha;
    std::size_t evaluation_depth = 0;
    Rational approximation_error; // (λ_max)^depth bound between the evaluated lines and the limits

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    const Check* find(std::string_view name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
};

/// Generic form: `g` and `g_tilde` map an arclength (Rational) to a Vector.
template <class EvalG, class EvalGt>
WitnessReport validate_witness_with(const NormedSpace& space, EvalG&& g, EvalGt&& g_tilde,
                                    const std::vector<Rational>& t, const ThicknessWitness& w, const Rational& alpha,
                                    double tol) {
    WitnessReport report;
    report.alpha = alpha;
    const Rational rtol(tol);
    auto in_unit = [](const Rational& x) { return x >= 0 && x <= 1; };

    {
        Check c{"arclengths_in_range"};
        std::ostringstream det;
        for (const auto* list : {&w.q, &w.s, &t}) {
            for (const auto& x : *list) {
                if (!in_unit(x)) {
                    c.passed = false;
                    det << to_string(x) << " ";
                }
            }
        }
        c.detail = det.str();
        report.checks.push_back(c);
        if (!c.passed) {
            report.checks.push_back({"deviation", false, "not evaluated"});
            return report;
        }
    }
    {
        Check c{"q_contains_t"};
        std::ostringstream det;
        for (const auto& ti : t) {
            if (std::find(w.q.begin(), w.q.end(), ti) == w.q.end()) {
                c.passed = false;
                det << "missing " << to_string(ti) << "; ";
            }
        }
        c.detail = det.str();
        report.checks.push_back(c);
    }
    {
        Check c{"interleaving"};
        if (w.s.size() != w.q.size() + 1) {
            c.passed = false;
            c.detail = std::to_string(w.q.size()) + " q-points need " + std::to_string(w.q.size() + 1) +
                       " s-points, got " + std::to_string(w.s.size());
        } else {
            std::vector<Rational> chain;
            chain.push_back(Rational(0));
            for (std::size_t i = 0; i < w.q.size(); ++i) {
                chain.push_back(w.s[i]);
                chain.push_back(w.q[i]);
            }
            chain.push_back(w.s.back());
            chain.push_back(Rational(1));
            for (std::size_t i = 1; i < chain.size(); ++i) {
                if (chain[i] < chain[i - 1]) {
                    c.passed = false;
                    c.detail = "order broken at position " + std::to_string(i) + ": " + to_string(chain[i - 1]) +
                               " > " + to_string(chain[i]);
                    break;
                }
            }
        }
        report.checks.push_back(c);
    }

    auto gap = [&](const Rational& x) { return exact_distance(space, g(x), g_tilde(x)); };
    {
        Check c{"common_points"};
        std::ostringstream det;
        for (const auto& x : w.q) {
            Rational d = gap(x);
            if (d > rtol) {
                c.passed = false;
                det << "||g - g~|| = " << to_decimal(d) << " at q = " << to_string(x) << "; ";
            }
        }
        c.detail = det.str();
        report.checks.push_back(c);
    }
    {
        Check c{"challenge_images"};
        std::ostringstream det;
        for (const auto& x : t) {
            Rational d = gap(x);
            if (d > rtol) {
                c.passed = false;
                det << "||g - g~|| = " << to_decimal(d) << " at t = " << to_string(x) << "; ";
            }
        }
        c.detail = det.str();
        report.checks.push_back(c);
    }
    Rational total(0);
    for (const auto& x : w.s) total += gap(x);
    report.achieved = total;
    report.checks.push_back({"deviation", total >= alpha - rtol,
                             "sum = " + to_string(total) + " vs alpha = " + to_string(alpha)});
    report.checks.push_back({"claimed_total", w.deviation_total <= total + rtol,
                             "claimed " + to_string(w.deviation_total) + ", achieved " + to_string(total)});
    return report;
}

/// Both geodesics are evaluated at a common depth (the largest piece depth of either),
/// so vertices of any shallower line are reproduced exactly.
inline WitnessReport validate_witness(LineCache& cache, const PastedGeodesic& g, const PastedGeodesic& g_tilde,
                                      const std::vector<Rational>& t, const ThicknessWitness& w, const Rational& alpha,
                                      double tol) {
    const std::size_t depth = std::max(g.max_depth(), g_tilde.max_depth());
    auto eval_g = [&](const Rational& s) { return eval_pasted(cache, g, s, depth); };
    auto eval_gt = [&](const Rational& s) { return eval_pasted(cache, g_tilde, s, depth); };
    WitnessReport report = validate_witness_with(cache.bush().space, eval_g, eval_gt, t, w, alpha, tol);
    report.evaluation_depth = depth;
    report.approximation_error = pow(cache.lambda_max(), depth);
    return report;
}

} // namespace thickgeo
