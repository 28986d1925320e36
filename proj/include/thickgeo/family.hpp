#pragma once

// Truncated branch geodesics (T_0), their vertex-respecting pastings (T_X) and
// the thickness challenge responder.

#include "thickgeo/budget.hpp"
#include "thickgeo/bush.hpp"
#include "thickgeo/construction.hpp"
#include "thickgeo/errors.hpp"
#include "thickgeo/rational.hpp"
#include "thickgeo/vector.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace thickgeo {

/// Prefix of an infinite branch; bits past the prefix are 0. Evaluated through the
/// broken line of depth `depth`, within (λ_max)^depth of the branch limit.
struct BranchSpec {
    Label bits;
    std::size_t depth = 0;

    Label label_at(std::size_t d) const { return bits.extended(d).prefix(d); }
    /// Bit number i (0-based) of the infinite branch.
    int branch_bit(std::size_t i) const { return i < bits.size() ? bits.bit(i) : 0; }

    bool operator==(const BranchSpec&) const = default;
};

inline void check_branch(const LineCache& cache, const BranchSpec& spec) {
    if (spec.depth < spec.bits.size()) {
        throw InputError("branch " + spec.bits.display() + " has depth " + std::to_string(spec.depth) +
                         " below its prefix length");
    }
    if (spec.depth > cache.bush().depth()) {
        throw BudgetError("branch depth " + std::to_string(spec.depth) + " exceeds bush depth " +
                          std::to_string(cache.bush().depth()));
    }
    if (spec.depth > depth_budget()) {
        throw BudgetError("branch depth " + std::to_string(spec.depth) + " exceeds the depth budget");
    }
}

struct BranchValue {
    Vector point;
    Rational error_bound; // (λ_max)^depth
};

inline BranchValue branch_eval(LineCache& cache, const BranchSpec& spec, const Rational& s) {
    check_branch(cache, spec);
    if (s < 0 || s > 1) throw InputError("arclength " + to_string(s) + " outside [0, 1]");
    auto verts = cache.vertices(spec.label_at(spec.depth));
    return BranchValue{verts->eval(s), pow(cache.lambda_max(), spec.depth)};
}

/// Breakpoints 0 = h_0 < ... < h_w = 1 with one branch per interval [h_{d}, h_{d+1}].
struct PastedGeodesic {
    std::vector<Rational> breakpoints;
    std::vector<BranchSpec> pieces;

    std::size_t max_depth() const {
        std::size_t d = 0;
        for (const auto& p : pieces) d = std::max(d, p.depth);
        return d;
    }

    /// Index of the interval containing s (the left one at an interior breakpoint).
    std::size_t piece_index(const Rational& s) const {
        for (std::size_t d = 0; d + 1 < breakpoints.size(); ++d) {
            if (s <= breakpoints[d + 1]) return d;
        }
        return pieces.size() - 1;
    }

    bool operator==(const PastedGeodesic&) const = default;
};

/// Validates a pasting: every interior breakpoint must be a vertex arclength of both
/// adjacent depth-D lines, and the two vertices must coincide.
inline PastedGeodesic paste(LineCache& cache, std::vector<Rational> breakpoints, std::vector<BranchSpec> pieces) {
    if (pieces.empty()) throw PastingError("a pasted geodesic needs at least one piece");
    if (breakpoints.size() != pieces.size() + 1) {
        throw PastingError(std::to_string(pieces.size()) + " pieces need " + std::to_string(pieces.size() + 1) +
                           " breakpoints, got " + std::to_string(breakpoints.size()));
    }
    if (breakpoints.front() != 0 || breakpoints.back() != 1) {
        throw PastingError("breakpoints must start at 0 and end at 1");
    }
    for (std::size_t d = 0; d + 1 < breakpoints.size(); ++d) {
        if (!(breakpoints[d] < breakpoints[d + 1])) {
            throw PastingError("breakpoints must be strictly increasing (h_" + std::to_string(d) + " = " +
                               to_string(breakpoints[d]) + ", h_" + std::to_string(d + 1) + " = " +
                               to_string(breakpoints[d + 1]) + ")");
        }
    }
    for (const auto& p : pieces) check_branch(cache, p);
    for (std::size_t d = 1; d + 1 < breakpoints.size(); ++d) {
        const Rational& h = breakpoints[d];
        auto left = cache.vertices(pieces[d - 1].label_at(pieces[d - 1].depth));
        auto right = cache.vertices(pieces[d].label_at(pieces[d].depth));
        auto li = left->find(h);
        auto ri = right->find(h);
        if (!li || !ri) {
            throw PastingError("breakpoint h_" + std::to_string(d) + " = " + to_string(h) +
                               " is not a vertex of " + (!li ? "the left" : "the right") + " piece");
        }
        if (left->points[*li] != right->points[*ri]) {
            throw PastingError("pieces disagree at breakpoint h_" + std::to_string(d) + " = " + to_string(h));
        }
    }
    return PastedGeodesic{std::move(breakpoints), std::move(pieces)};
}

/// g(s), with every piece evaluated at depth max(its own depth, depth_floor).
inline Vector eval_pasted(LineCache& cache, const PastedGeodesic& g, const Rational& s, std::size_t depth_floor = 0) {
    if (s < 0 || s > 1) throw InputError("arclength " + to_string(s) + " outside [0, 1]");
    const BranchSpec& piece = g.pieces[g.piece_index(s)];
    const std::size_t d = std::max(piece.depth, depth_floor);
    if (d > cache.bush().depth()) throw BudgetError("evaluation depth exceeds bush depth");
    return cache.vertices(piece.label_at(d))->eval(s);
}

/// Vertices of the pasted broken line: each piece's depth-max(D, depth_floor) vertices inside its interval.
inline VertexList pasted_vertices(LineCache& cache, const PastedGeodesic& g, std::size_t depth_floor = 0) {
    VertexList out;
    for (std::size_t d = 0; d < g.pieces.size(); ++d) {
        const BranchSpec& piece = g.pieces[d];
        auto verts = cache.vertices(piece.label_at(std::max(piece.depth, depth_floor)));
        for (std::size_t i = 0; i < verts->size(); ++i) {
            const Rational& s = verts->arclengths[i];
            if (s < g.breakpoints[d] || s > g.breakpoints[d + 1]) continue;
            if (!out.arclengths.empty() && out.arclengths.back() == s) continue;
            out.arclengths.push_back(s);
            out.points.push_back(verts->points[i]);
        }
    }
    return out;
}

struct WitnessGap {
    Rational q_left;
    Rational s;
    Rational q_right;
    Rational deviation;
};

/// Common points q_1..q_m, probe points s_1..s_{m+1} and the claimed deviation sum.
struct ThicknessWitness {
    std::vector<Rational> q;
    std::vector<Rational> s;
    Rational deviation_total;
    std::vector<WitnessGap> gaps;
};

struct Interval {
    Rational lo;
    Rational hi;
    bool operator==(const Interval&) const = default;
};

struct PieceResponse {
    std::size_t switch_depth = 0; // L
    std::vector<Interval> covering;
    std::vector<Interval> complement;
    Label switched_bits; // (b_1..b_L, 1 - b_{L+1})
    Rational deviation;
};

struct ChallengeResponse {
    PastedGeodesic g_tilde;
    ThicknessWitness witness;
    std::vector<PieceResponse> pieces;
};

namespace detail {

inline std::vector<Interval> merge_intervals(std::vector<Interval> in) {
    std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    std::vector<Interval> out;
    for (auto& iv : in) {
        if (!out.empty() && iv.lo <= out.back().hi) {
            if (iv.hi > out.back().hi) out.back().hi = iv.hi;
        } else {
            out.push_back(iv);
        }
    }
    return out;
}

inline std::vector<Interval> complement_in(const Interval& whole, const std::vector<Interval>& cover) {
    std::vector<Interval> out;
    Rational cursor = whole.lo;
    for (const auto& iv : cover) {
        if (iv.lo > cursor) out.push_back({cursor, iv.lo});
        if (iv.hi > cursor) cursor = iv.hi;
    }
    if (cursor < whole.hi) out.push_back({cursor, whole.hi});
    return out;
}

} // namespace detail

/// Answers a thickness challenge (g, t_1..t_n).
///
/// For each piece [h_{d-1}, h_d] following branch b, picks the smallest L with
/// h_{d-1}, h_d vertices of the depth-L line and the points t_i in the piece covered
/// by depth-L segments of total length <= (h_d - h_{d-1})/2. g~ keeps g on the cover
/// and follows the branch (b_1..b_L, 1 - b_{L+1}) elsewhere; the two children of
/// (b_1..b_L) then deviate by at least ε/2 per unit length of the uncovered part,
/// giving a total of at least ε/4.
inline ChallengeResponse challenge_respond(LineCache& cache, const PastedGeodesic& g, std::vector<Rational> t,
                                           std::size_t budget = depth_budget()) {
    const Bush& b = cache.bush();
    for (const auto& ti : t) {
        if (ti < 0 || ti > 1) throw InputError("challenge point " + to_string(ti) + " outside [0, 1]");
    }
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    const std::size_t max_L1 = std::min(b.depth(), budget);

    ChallengeResponse response;
    std::vector<Rational> tilde_breaks{Rational(0)};
    std::vector<BranchSpec> tilde_pieces;
    auto push_piece = [&](const Rational& hi, const BranchSpec& spec) {
        if (!tilde_pieces.empty() && tilde_pieces.back() == spec) {
            tilde_breaks.back() = hi;
        } else {
            tilde_pieces.push_back(spec);
            tilde_breaks.push_back(hi);
        }
    };
    std::map<Rational, WitnessGap> deviation_gaps; // keyed by left endpoint
    std::vector<Rational> q_points(t.begin(), t.end());

    for (std::size_t d = 0; d < g.pieces.size(); ++d) {
        const BranchSpec& spec = g.pieces[d];
        const Interval whole{g.breakpoints[d], g.breakpoints[d + 1]};
        q_points.push_back(whole.lo);
        q_points.push_back(whole.hi);
        std::vector<Rational> inside;
        for (const auto& ti : t) {
            if (ti >= whole.lo && ti <= whole.hi) inside.push_back(ti);
        }

        std::optional<std::size_t> found;
        std::vector<Interval> cover;
        for (std::size_t L = 0; L + 1 <= max_L1; ++L) {
            auto line = cache.line(spec.label_at(L));
            auto arcs = arclengths(*line);
            auto is_vertex = [&](const Rational& x) { return std::binary_search(arcs.begin(), arcs.end(), x); };
            if (!is_vertex(whole.lo) || !is_vertex(whole.hi)) continue;
            std::vector<Interval> raw;
            for (const auto& ti : inside) {
                auto it = std::lower_bound(arcs.begin(), arcs.end(), ti);
                if (*it == ti) continue; // vertex of every deeper line on both branches
                raw.push_back({*(it - 1), *it});
            }
            cover = detail::merge_intervals(std::move(raw));
            Rational covered(0);
            for (const auto& iv : cover) covered += iv.hi - iv.lo;
            if (2 * covered <= whole.hi - whole.lo) {
                found = L;
                break;
            }
        }
        if (!found) {
            double lam = to_double(cache.lambda_max());
            double len = to_double(Rational(whole.hi - whole.lo));
            double need = std::ceil(std::log(2.0 * std::max<std::size_t>(inside.size(), 1) / len) / std::log(1.0 / lam));
            throw BudgetError("piece " + std::to_string(d) + " [" + to_string(whole.lo) + ", " + to_string(whole.hi) +
                              "] with " + std::to_string(inside.size()) + " challenge points needs switch depth L >= " +
                              std::to_string(static_cast<long>(need)) + " (estimate) but only L <= " +
                              std::to_string(max_L1 == 0 ? 0 : max_L1 - 1) + " is available");
        }
        const std::size_t L = *found;
        PieceResponse pr;
        pr.switch_depth = L;
        pr.covering = cover;
        pr.complement = detail::complement_in(whole, cover);
        const Label base = spec.label_at(L);
        pr.switched_bits = base.child(1 - spec.branch_bit(L));
        const BranchSpec same{spec.bits, std::max(spec.depth, L + 1)};
        const BranchSpec switched{pr.switched_bits, L + 1};

        // g~ on this piece: alternate between the cover (same branch) and its complement (switched branch).
        std::vector<std::pair<Interval, const BranchSpec*>> parts;
        for (const auto& iv : pr.covering) parts.push_back({iv, &same});
        for (const auto& iv : pr.complement) parts.push_back({iv, &switched});
        std::sort(parts.begin(), parts.end(), [](const auto& x, const auto& y) { return x.first.lo < y.first.lo; });
        for (const auto& [iv, sp] : parts) push_piece(iv.hi, *sp);

        // Deviation gaps: intermediate segments of `base` inside the complement.
        auto mid = cache.intermediate(base);
        Rational start(0);
        std::size_t ci = 0;
        for (const auto& term : mid->terms) {
            Rational end = start + term.coefficient;
            while (ci < pr.complement.size() && pr.complement[ci].hi <= start) ++ci;
            if (ci < pr.complement.size() && start >= pr.complement[ci].lo && end <= pr.complement[ci].hi) {
                const auto& y = std::get<MidpointRef>(term.generator);
                Rational dev = term.coefficient / 2 *
                               exact_distance(b.space, b.vec(y.level - 1, y.parent), b.vec(y.level, y.child));
                WitnessGap gap{start, Rational(start + term.coefficient / 2), end, dev};
                pr.deviation += dev;
                q_points.push_back(start);
                q_points.push_back(end);
                deviation_gaps.emplace(start, std::move(gap));
            }
            start = end;
        }
        response.pieces.push_back(std::move(pr));
    }

    response.g_tilde = paste(cache, std::move(tilde_breaks), std::move(tilde_pieces));

    ThicknessWitness& w = response.witness;
    std::sort(q_points.begin(), q_points.end());
    q_points.erase(std::unique(q_points.begin(), q_points.end()), q_points.end());
    w.q = q_points;
    w.s.push_back(w.q.front());
    for (std::size_t i = 1; i < w.q.size(); ++i) {
        auto it = deviation_gaps.find(w.q[i - 1]);
        if (it != deviation_gaps.end() && it->second.q_right == w.q[i]) {
            w.s.push_back(it->second.s);
            w.deviation_total += it->second.deviation;
            w.gaps.push_back(it->second);
        } else {
            w.s.push_back(w.q[i - 1]);
        }
    }
    w.s.push_back(w.q.back());
    return response;
}

} // namespace thickgeo
