#pragma once

// Exhaustive grid-restricted thickness bound for a small finite family:
//     min over g and challenges T ⊆ grid (|T| <= n_max)
//     of max over g~ != g with g~ = g on T of the best witness deviation,
// where q ranges over every probe point on which g and g~ agree and one s is
// chosen per slot between consecutive common points to maximise ||g - g~||.
// Probe points are the grid plus every vertex arclength of every member.

#include "thickgeo/construction.hpp"
#include "thickgeo/errors.hpp"
#include "thickgeo/family.hpp"
#include "thickgeo/rational.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <set>
#include <string>
#include <vector>

namespace thickgeo {

struct AlphaReport {
    Rational bound;
    std::size_t worst_geodesic = 0;
    std::vector<Rational> worst_challenge;
    std::size_t geodesics = 0;
    std::size_t challenges = 0;   // per geodesic
    std::size_t probe_points = 0;
    std::size_t evaluation_depth = 0;
};

struct AlphaLimits {
    std::size_t max_family = 64;
    std::size_t max_challenge_size = 3;
    std::size_t max_work = 200'000'000; // family^2 * challenges
};

/// Every depth-`depth` broken line as a single-piece geodesic, labels in lexicographic order.
inline std::vector<PastedGeodesic> truncated_family(LineCache& cache, std::size_t depth) {
    if (depth > cache.bush().depth()) throw DepthError("family depth exceeds bush depth");
    std::vector<PastedGeodesic> out;
    const std::size_t count = std::size_t{1} << depth;
    for (std::size_t code = 0; code < count; ++code) {
        std::string bits;
        for (std::size_t i = 0; i < depth; ++i) bits.push_back(((code >> (depth - 1 - i)) & 1U) ? '1' : '0');
        out.push_back(paste(cache, {Rational(0), Rational(1)}, {BranchSpec{Label(bits), depth}}));
    }
    return out;
}

/// Union of vertex arclengths of all lines with labels of length `depth`.
inline std::vector<Rational> vertex_grid(LineCache& cache, std::size_t depth) {
    std::set<Rational> grid;
    for (const auto& g : truncated_family(cache, depth)) {
        auto arcs = arclengths(*cache.line(g.pieces[0].label_at(depth)));
        grid.insert(arcs.begin(), arcs.end());
    }
    return {grid.begin(), grid.end()};
}

inline AlphaReport brute_force_alpha(LineCache& cache, const std::vector<PastedGeodesic>& family, std::size_t n_max,
                                     const std::vector<Rational>& grid, const AlphaLimits& limits = {}) {
    if (family.size() > limits.max_family) {
        throw BudgetError("family of " + std::to_string(family.size()) + " geodesics exceeds the limit of " +
                          std::to_string(limits.max_family));
    }
    if (n_max > limits.max_challenge_size) {
        throw BudgetError("challenge size " + std::to_string(n_max) + " exceeds the limit of " +
                          std::to_string(limits.max_challenge_size));
    }
    for (const auto& x : grid) {
        if (x < 0 || x > 1) throw InputError("grid point " + to_string(x) + " outside [0, 1]");
    }
    std::vector<Rational> challenge_grid = grid;
    std::sort(challenge_grid.begin(), challenge_grid.end());
    challenge_grid.erase(std::unique(challenge_grid.begin(), challenge_grid.end()), challenge_grid.end());

    // all subsets of size <= n_max, in lexicographic index order
    std::vector<std::vector<std::size_t>> subsets{{}};
    for (std::size_t size = 1; size <= n_max; ++size) {
        std::vector<std::size_t> idx(size);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t from) {
            if (pos == size) {
                subsets.push_back(idx);
                return;
            }
            for (std::size_t i = from; i < challenge_grid.size(); ++i) {
                idx[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        rec(0, 0);
    }
    const std::size_t work = family.size() * family.size() * subsets.size();
    if (work > limits.max_work) {
        throw BudgetError("brute-force search needs " + std::to_string(work) + " pair checks, limit " +
                          std::to_string(limits.max_work));
    }

    AlphaReport report;
    report.geodesics = family.size();
    report.challenges = subsets.size();
    if (family.empty()) return report;

    std::size_t depth = 0;
    for (const auto& g : family) depth = std::max(depth, g.max_depth());
    report.evaluation_depth = depth;

    std::set<Rational> probe_set(challenge_grid.begin(), challenge_grid.end());
    for (const auto& g : family) {
        for (const auto& p : g.pieces) {
            auto arcs = arclengths(*cache.line(p.label_at(depth)));
            probe_set.insert(arcs.begin(), arcs.end());
        }
    }
    const std::vector<Rational> probes(probe_set.begin(), probe_set.end());
    report.probe_points = probes.size();

    std::vector<std::vector<Vector>> values(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        values[i].reserve(probes.size());
        for (const auto& x : probes) values[i].push_back(eval_pasted(cache, family[i], x, depth));
    }
    std::vector<std::size_t> grid_pos(challenge_grid.size());
    for (std::size_t i = 0; i < challenge_grid.size(); ++i) {
        grid_pos[i] = static_cast<std::size_t>(std::lower_bound(probes.begin(), probes.end(), challenge_grid[i]) -
                                               probes.begin());
    }
    const NormedSpace& space = cache.bush().space;

    struct PairData {
        std::vector<bool> common;
        Rational deviation;
    };
    auto pair_data = [&](std::size_t a, std::size_t b) {
        PairData pd;
        pd.common.resize(probes.size());
        std::vector<Rational> dist(probes.size());
        for (std::size_t p = 0; p < probes.size(); ++p) {
            pd.common[p] = values[a][p] == values[b][p];
            if (!pd.common[p]) dist[p] = exact_distance(space, values[a][p], values[b][p]);
        }
        // one s per slot between consecutive common probes; 0 and 1 are always common
        Rational best(0);
        for (std::size_t p = 0; p < probes.size(); ++p) {
            if (pd.common[p]) {
                pd.deviation += best;
                best = 0;
            } else if (dist[p] > best) {
                best = dist[p];
            }
        }
        pd.deviation += best;
        return pd;
    };

    struct Worst {
        Rational value;
        std::size_t subset = 0;
    };
    auto solve_for = [&](std::size_t gi) {
        std::vector<PairData> partners;
        for (std::size_t hi = 0; hi < family.size(); ++hi) {
            if (hi != gi) partners.push_back(pair_data(gi, hi));
        }
        Worst worst{Rational(-1), 0};
        for (std::size_t si = 0; si < subsets.size(); ++si) {
            Rational best(0);
            for (const auto& pd : partners) {
                bool agrees = std::all_of(subsets[si].begin(), subsets[si].end(),
                                          [&](std::size_t k) { return pd.common[grid_pos[k]]; });
                if (agrees && pd.deviation > best) best = pd.deviation;
            }
            if (worst.value < 0 || best < worst.value) worst = {best, si};
        }
        return worst;
    };

    std::vector<std::future<Worst>> jobs;
    for (std::size_t gi = 0; gi < family.size(); ++gi) jobs.push_back(std::async(std::launch::async, solve_for, gi));
    bool first = true;
    for (std::size_t gi = 0; gi < family.size(); ++gi) {
        Worst w = jobs[gi].get();
        if (first || w.value < report.bound) {
            first = false;
            report.bound = w.value;
            report.worst_geodesic = gi;
            report.worst_challenge.clear();
            for (std::size_t k : subsets[w.subset]) report.worst_challenge.push_back(challenge_grid[k]);
        }
    }
    return report;
}

} // namespace thickgeo
