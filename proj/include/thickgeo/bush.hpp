#pragma once

#include "thickgeo/budget.hpp"
#include "thickgeo/errors.hpp"
#include "thickgeo/normed_space.hpp"
#include "thickgeo/rational.hpp"
#include "thickgeo/vector.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <sstream>
#include <string_view>
#include <utility>
#include <string>
#include <vector>

namespace thickgeo {

/// A finite-depth ε-bush.
///
/// Indices are 0-based: `levels[n][j]` is x_{n,j}, `partitions[n][k]` lists the
/// children j at level n whose parent is x_{n-1,k}, and `weights[n][j]` is λ_{n,j}.
/// Level 0 holds exactly one vector; `partitions[0]` and `weights[0]` are empty.
struct Bush {
    NormedSpace space;
    Rational epsilon;
    std::vector<std::vector<Vector>> levels;
    std::vector<std::vector<std::vector<std::size_t>>> partitions;
    std::vector<std::vector<Rational>> weights;
    Functional functional;

    std::size_t depth() const { return levels.empty() ? 0 : levels.size() - 1; }
    std::size_t level_size(std::size_t n) const { return levels.at(n).size(); }
    const Vector& vec(std::size_t n, std::size_t j) const { return levels.at(n).at(j); }
    const Rational& weight(std::size_t n, std::size_t j) const { return weights.at(n).at(j); }
    const std::vector<std::size_t>& block(std::size_t n, std::size_t k) const { return partitions.at(n).at(k); }
    const Vector& root() const { return levels.at(0).at(0); }

    /// All bush vectors, level by level.
    std::vector<Vector> all_vectors() const {
        std::vector<Vector> out;
        for (const auto& level : levels) out.insert(out.end(), level.begin(), level.end());
        return out;
    }

    bool operator==(const Bush&) const = default;
};

/// Throws StructuralError on shape problems: level sizes, m_0 = 1, partitions that
/// overlap or leave gaps, weight/vector dimension mismatches.
inline void check_structure(const Bush& b) {
    std::ostringstream problems;
    if (b.levels.empty() || b.levels[0].size() != 1) {
        problems << "level 0 must contain exactly one vector; ";
    }
    const std::size_t depth = b.depth();
    if (b.partitions.size() != b.levels.size()) problems << "partitions must have one entry per level; ";
    if (b.weights.size() != b.levels.size()) problems << "weights must have one entry per level; ";
    if (b.functional.dimension() != b.space.dimension()) problems << "functional dimension mismatch; ";
    for (std::size_t n = 0; n < b.levels.size(); ++n) {
        for (std::size_t j = 0; j < b.levels[n].size(); ++j) {
            if (b.levels[n][j].dimension() != b.space.dimension()) {
                problems << "x[" << n << "][" << j << "] has wrong dimension; ";
            }
        }
    }
    std::string so_far = problems.str();
    if (!so_far.empty()) throw StructuralError("malformed bush: " + so_far);

    for (std::size_t n = 1; n <= depth; ++n) {
        const std::size_t m = b.levels[n].size();
        const std::size_t parents = b.levels[n - 1].size();
        if (m == 0) problems << "level " << n << " is empty; ";
        if (b.weights[n].size() != m) problems << "level " << n << " has " << b.weights[n].size() << " weights for " << m << " vectors; ";
        if (b.partitions[n].size() != parents) {
            problems << "level " << n << " has " << b.partitions[n].size() << " blocks for " << parents << " parents; ";
            continue;
        }
        std::vector<int> seen(m, 0);
        std::vector<std::size_t> out_of_range;
        for (const auto& blk : b.partitions[n]) {
            for (std::size_t j : blk) {
                if (j >= m) out_of_range.push_back(j);
                else ++seen[j];
            }
        }
        std::vector<std::size_t> overlap, gap;
        for (std::size_t j = 0; j < m; ++j) {
            if (seen[j] > 1) overlap.push_back(j);
            if (seen[j] == 0) gap.push_back(j);
        }
        auto list = [](const std::vector<std::size_t>& idx) {
            std::string s;
            for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i]);
            return s;
        };
        if (!out_of_range.empty()) problems << "level " << n << " out-of-range indices {" << list(out_of_range) << "}; ";
        if (!overlap.empty()) problems << "level " << n << " overlapping indices {" << list(overlap) << "}; ";
        if (!gap.empty()) problems << "level " << n << " uncovered indices {" << list(gap) << "}; ";
    }
    so_far = problems.str();
    if (!so_far.empty()) throw StructuralError("malformed partitions: " + so_far);
}

/// Index k of the block at level n containing child j.
inline std::size_t parent_index(const Bush& b, std::size_t n, std::size_t j) {
    if (n == 0 || n > b.depth()) throw IndexError("level " + std::to_string(n) + " has no parents");
    for (std::size_t k = 0; k < b.partitions[n].size(); ++k) {
        const auto& blk = b.partitions[n][k];
        if (std::find(blk.begin(), blk.end(), j) != blk.end()) return k;
    }
    throw IndexError("x[" + std::to_string(n) + "][" + std::to_string(j) + "] is in no block");
}

/// max λ_{n,j} over n >= 1 (0 for a depth-0 bush).
inline Rational lambda_max(const Bush& b) {
    Rational best(0);
    for (std::size_t n = 1; n < b.weights.size(); ++n) {
        for (const auto& w : b.weights[n]) {
            if (w > best) best = w;
        }
    }
    return best;
}

enum class BushMode {
    raw,       // the ε-bush axioms only
    normalized // also ||x_{n,j}|| = 1 and x*(x_{n,j}) = 1 with ||x*|| = 1
};

struct Check {
    Check() = default;
    Check(std::string n, bool ok = true, std::string d = {}) : name(std::move(n)), passed(ok), detail(std::move(d)) {}

    std::string name;
    bool passed = true;
    std::string detail;
    bool warning_only = false;
};

struct BushReport {
    BushMode mode = BushMode::normalized;
    std::vector<Check> checks;
    Rational lambda_max;
    Rational epsilon;
    double max_norm = 0.0;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed || c.warning_only; });
    }
    const Check* find(std::string_view name) const {
        for (const auto& c : checks) {
            if (c.name == name) return &c;
        }
        return nullptr;
    }
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (const auto& c : checks) {
            if (!c.passed && c.warning_only) out.push_back(c.name + ": " + c.detail);
        }
        return out;
    }
};

/// Checks every bush axiom. Convexity is exact; norm (in)equalities use `tol`.
/// Throws StructuralError for malformed partitions.
inline BushReport validate_bush(const Bush& b, double tol = 0.0, BushMode mode = BushMode::normalized) {
    check_structure(b);
    BushReport report;
    report.mode = mode;
    report.epsilon = b.epsilon;
    report.lambda_max = lambda_max(b);
    const Rational rtol(tol);
    const NormedSpace& space = b.space;

    auto dist_at_least = [&](const Vector& a, const Vector& c, const Rational& bound) {
        if (space.is_polyhedral()) return exact_distance(space, a, c) >= bound - rtol;
        return distance(space, a, c) >= to_double(bound) - tol;
    };

    {
        Check c{"epsilon_positive", b.epsilon > 0, "epsilon = " + to_string(b.epsilon)};
        report.checks.push_back(c);
    }

    Check weights_ok{"weights_nonnegative"};
    Check sums_ok{"weights_sum_to_one"};
    Check convex_ok{"convexity"};
    Check sep_ok{"separation"};
    Check blocks_ok{"blocks_nontrivial"};
    std::ostringstream wdet, sdet, cdet, pdet, bdet;
    for (std::size_t n = 1; n <= b.depth(); ++n) {
        for (std::size_t k = 0; k < b.partitions[n].size(); ++k) {
            const auto& blk = b.partitions[n][k];
            const Vector& parent = b.levels[n - 1][k];
            if (b.epsilon > 0 && blk.size() < 2) {
                blocks_ok.passed = false;
                bdet << "A[" << n << "][" << k << "] has " << blk.size() << " element(s); ";
            }
            Rational total(0);
            Vector combo(space.dimension());
            for (std::size_t j : blk) {
                const Rational& w = b.weights[n][j];
                if (w < 0) {
                    weights_ok.passed = false;
                    wdet << "lambda[" << n << "][" << j << "] = " << to_string(w) << "; ";
                }
                total += w;
                combo.add_scaled(w, b.levels[n][j]);
                if (!dist_at_least(b.levels[n][j], parent, b.epsilon)) {
                    sep_ok.passed = false;
                    pdet << "||x[" << n << "][" << j << "] - x[" << n - 1 << "][" << k
                         << "]|| = " << distance(space, b.levels[n][j], parent) << "; ";
                }
            }
            if (total != 1) {
                sums_ok.passed = false;
                sdet << "block A[" << n << "][" << k << "] sums to " << to_string(total) << "; ";
            }
            if (combo != parent) {
                convex_ok.passed = false;
                cdet << "sum of lambda*x over A[" << n << "][" << k << "] differs from x[" << n - 1 << "][" << k
                     << "]; ";
            }
        }
    }
    weights_ok.detail = wdet.str();
    sums_ok.detail = sdet.str();
    convex_ok.detail = cdet.str();
    sep_ok.detail = pdet.str();
    blocks_ok.detail = bdet.str();
    for (auto* c : {&weights_ok, &sums_ok, &convex_ok, &sep_ok, &blocks_ok}) report.checks.push_back(*c);

    for (const auto& level : b.levels) {
        for (const auto& x : level) report.max_norm = std::max(report.max_norm, norm(space, x));
    }
    report.checks.push_back({"bounded", std::isfinite(report.max_norm),
                             "max norm = " + std::to_string(report.max_norm)});

    // 1 - λ_max >= ε/2 (warning only in raw mode)
    {
        Rational bound = Rational(1) - b.epsilon / 2;
        Check c{"lambda_max_bound", b.depth() == 0 || report.lambda_max <= bound + rtol,
                "lambda_max = " + to_string(report.lambda_max) + ", 1 - eps/2 = " + to_string(bound)};
        c.warning_only = (mode == BushMode::raw);
        report.checks.push_back(c);
    }

    if (mode == BushMode::normalized) {
        Check unit{"unit_norm"};
        Check fval{"functional_value_one"};
        std::ostringstream udet, fdet;
        for (std::size_t n = 0; n < b.levels.size(); ++n) {
            for (std::size_t j = 0; j < b.levels[n].size(); ++j) {
                const Vector& x = b.levels[n][j];
                bool ok = space.is_polyhedral() ? abs(exact_norm(space, x) - 1) <= rtol
                                                : std::abs(norm(space, x) - 1.0) <= tol;
                if (!ok) {
                    unit.passed = false;
                    udet << "||x[" << n << "][" << j << "]|| = " << norm(space, x) << "; ";
                }
                Rational fx = b.functional(x);
                if (abs(fx - 1) > rtol) {
                    fval.passed = false;
                    fdet << "x*(x[" << n << "][" << j << "]) = " << to_string(fx) << "; ";
                }
            }
        }
        unit.detail = udet.str();
        fval.detail = fdet.str();
        report.checks.push_back(unit);
        report.checks.push_back(fval);
        report.checks.push_back({"functional_unit_operator_norm", has_unit_operator_norm(space, b.functional),
                                 "||x*|| = " + std::to_string(operator_norm(space, b.functional))});
    }
    return report;
}

/// Throws InputError unless the bush passes normalized validation exactly.
inline void require_normalized(const Bush& b) {
    BushReport r = validate_bush(b, 0.0, BushMode::normalized);
    if (!r.passed()) {
        std::string failed;
        for (const auto& c : r.checks) {
            if (!c.passed && !c.warning_only) failed += " " + c.name;
        }
        throw InputError("bush is not normalized; failing checks:" + failed);
    }
}

/// Haar-type bush of dyadic step functions: weighted-l1 on 2^N points with weights 2^-N,
/// x_{n,j} = 2^n on the j-th dyadic block of length 2^(N-n), blocks {2k, 2k+1}, λ = 1/2, ε = 1.
inline Bush dyadic_bush(std::size_t N, std::size_t budget = depth_budget()) {
    if (N == 0) throw InputError("dyadic bush depth must be positive");
    if (N > budget) {
        throw BudgetError("dyadic bush depth " + std::to_string(N) + " exceeds the depth budget " +
                          std::to_string(budget));
    }
    const std::size_t dim = std::size_t{1} << N;
    const Rational cell(1, dim);
    Bush b{NormedSpace::weighted_l1(std::vector<Rational>(dim, cell)), Rational(1), {}, {}, {}, {}};
    b.functional.coefficients.assign(dim, cell);
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t count = std::size_t{1} << n;
        const std::size_t width = dim / count;
        const Rational height(static_cast<unsigned long>(count));
        std::vector<Vector> level;
        level.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            Vector v(dim);
            for (std::size_t i = j * width; i < (j + 1) * width; ++i) v.set(i, height);
            level.push_back(std::move(v));
        }
        b.levels.push_back(std::move(level));
        if (n == 0) {
            b.partitions.emplace_back();
            b.weights.emplace_back();
        } else {
            std::vector<std::vector<std::size_t>> blocks(count / 2);
            for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] = {2 * k, 2 * k + 1};
            b.partitions.push_back(std::move(blocks));
            b.weights.emplace_back(count, Rational(1, 2));
        }
    }
    return b;
}

/// Martingale bush in l-infinity on R^(N+1): x_{n,j} = (1, σ_1, ..., σ_n, 0, ..., 0) with
/// signs read from the binary digits of j, x* = e_1, λ = 1/2, ε = 1.
inline Bush rademacher_bush(std::size_t N, std::size_t budget = depth_budget()) {
    if (N == 0) throw InputError("rademacher bush depth must be positive");
    if (N > budget) throw BudgetError("rademacher bush depth exceeds the depth budget");
    const std::size_t dim = N + 1;
    Bush b{NormedSpace::linf(dim), Rational(1), {}, {}, {}, {}};
    b.functional.coefficients.assign(dim, Rational(0));
    b.functional.coefficients[0] = 1;
    for (std::size_t n = 0; n <= N; ++n) {
        const std::size_t count = std::size_t{1} << n;
        std::vector<Vector> level;
        for (std::size_t j = 0; j < count; ++j) {
            Vector v(dim);
            v.set(0, Rational(1));
            for (std::size_t s = 1; s <= n; ++s) {
                bool negative = (j >> (n - s)) & 1U;
                v.set(s, Rational(negative ? -1 : 1));
            }
            level.push_back(std::move(v));
        }
        b.levels.push_back(std::move(level));
        if (n == 0) {
            b.partitions.emplace_back();
            b.weights.emplace_back();
        } else {
            std::vector<std::vector<std::size_t>> blocks(count / 2);
            for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] = {2 * k, 2 * k + 1};
            b.partitions.push_back(std::move(blocks));
            b.weights.emplace_back(count, Rational(1, 2));
        }
    }
    return b;
}

struct SplitBushOptions {
    std::size_t depth = 3;
    std::size_t max_children = 3;
    std::size_t dimension_factor = 0; // 0: random in [1, 3]
    std::uint64_t seed = 1;
};

/// Random normalized bush in a random weighted-l1 space.
///
/// Each parent p >= 0 is split along a random partition {S_j} of its support:
/// x_j = p·1_{S_j} / λ_j with λ_j = x*(p·1_{S_j}). Then ||x_j - p|| = 2(1 - λ_j),
/// and ε is set to the smallest of these, i.e. 2(1 - λ_max).
inline Bush split_bush(const SplitBushOptions& opt) {
    if (opt.depth == 0) throw InputError("split bush depth must be positive");
    if (opt.depth > depth_budget()) throw BudgetError("split bush depth exceeds the depth budget");
    if (opt.max_children < 2) throw InputError("split bush needs max_children >= 2");
    std::mt19937_64 rng(opt.seed);
    auto uniform = [&](std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    };
    const std::size_t factor = opt.dimension_factor ? opt.dimension_factor : uniform(1, 3);
    const std::size_t dim = (std::size_t{1} << opt.depth) * factor;

    std::vector<Rational> raw(dim);
    Rational total(0);
    for (auto& w : raw) {
        w = Rational(static_cast<unsigned long>(uniform(1, 4)));
        total += w;
    }
    for (auto& w : raw) w /= total;

    Bush b{NormedSpace::weighted_l1(raw), Rational(0), {}, {}, {}, Functional{raw}};
    Vector root(dim);
    for (std::size_t i = 0; i < dim; ++i) root.set(i, Rational(1));
    b.levels.push_back({root});
    b.partitions.emplace_back();
    b.weights.emplace_back();

    Rational lam_max(0);
    for (std::size_t n = 1; n <= opt.depth; ++n) {
        const std::size_t min_size = std::size_t{1} << (opt.depth - n);
        std::vector<Vector> level;
        std::vector<Rational> level_weights;
        std::vector<std::vector<std::size_t>> blocks;
        for (const Vector& parent : b.levels[n - 1]) {
            std::vector<std::size_t> support;
            for (const auto& e : parent.entries()) support.push_back(e.index);
            std::shuffle(support.begin(), support.end(), rng);
            const std::size_t m = uniform(2, std::min(opt.max_children, support.size() / min_size));
            std::vector<std::size_t> sizes(m, min_size);
            for (std::size_t extra = support.size() - m * min_size; extra > 0; --extra) ++sizes[uniform(0, m - 1)];
            std::vector<std::size_t> blk;
            std::size_t pos = 0;
            for (std::size_t c = 0; c < m; ++c) {
                Vector piece(dim);
                for (std::size_t t = 0; t < sizes[c]; ++t, ++pos) {
                    piece.set(support[pos], parent[support[pos]]);
                }
                Rational lam = b.functional(piece);
                piece *= Rational(1) / lam;
                blk.push_back(level.size());
                level.push_back(std::move(piece));
                level_weights.push_back(lam);
                if (lam > lam_max) lam_max = lam;
            }
            blocks.push_back(std::move(blk));
        }
        b.levels.push_back(std::move(level));
        b.weights.push_back(std::move(level_weights));
        b.partitions.push_back(std::move(blocks));
    }
    b.epsilon = 2 * (Rational(1) - lam_max);
    return b;
}

/// Translates every bush vector by x; partitions, weights, ε and x* are kept.
inline Bush shift_bush(const Bush& b, const Vector& x) {
    b.space.require_member(x);
    Bush out = b;
    for (auto& level : out.levels) {
        for (auto& v : level) v += x;
    }
    return out;
}

struct MidpointVector {
    std::size_t level = 0; // ℓ + 1
    std::size_t parent_index = 0;
    std::size_t child_index = 0;
    Vector value;
    Rational norm;
    Rational distance_to_parent;
    Rational distance_to_child;
};

/// y_{ℓ+1,j} = (x_{ℓ,k} + x_{ℓ+1,j}) / 2 with its norm and distances to both ends.
inline MidpointVector midpoint_y(const Bush& b, std::size_t parent_level, std::size_t k, std::size_t j) {
    b.space.require_polyhedral("midpoint_y");
    const std::size_t child_level = parent_level + 1;
    if (child_level > b.depth()) {
        throw IndexError("no level " + std::to_string(child_level) + " in a bush of depth " + std::to_string(b.depth()));
    }
    if (k >= b.partitions[child_level].size()) {
        throw IndexError("no parent x[" + std::to_string(parent_level) + "][" + std::to_string(k) + "]");
    }
    const auto& blk = b.partitions[child_level][k];
    if (std::find(blk.begin(), blk.end(), j) == blk.end()) {
        throw IndexError("x[" + std::to_string(child_level) + "][" + std::to_string(j) + "] is not in block A[" +
                         std::to_string(child_level) + "][" + std::to_string(k) + "]");
    }
    MidpointVector y;
    y.level = child_level;
    y.parent_index = k;
    y.child_index = j;
    y.value = b.levels[parent_level][k] + b.levels[child_level][j];
    y.value *= Rational(1, 2);
    y.norm = exact_norm(b.space, y.value);
    y.distance_to_parent = exact_distance(b.space, y.value, b.levels[parent_level][k]);
    y.distance_to_child = exact_distance(b.space, y.value, b.levels[child_level][j]);
    return y;
}

} // namespace thickgeo
