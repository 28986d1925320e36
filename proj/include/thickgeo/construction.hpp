#pragma once

// Broken-line geodesics from 0 to x_{0,1} labelled by vertices of the binary tree.
//
// A line is a list of terms c·g where g is a bush vector x_{n,j} or a midpoint
// y_{ℓ+1,j} = (x_{ℓ,k} + x_{ℓ+1,j})/2, all of norm 1 and x*-value 1, so the
// coefficients are segment lengths and sum to 1. A child line is obtained in
// two passes: every x_{ℓ,k} is refined into its weighted midpoints
// {λ_{ℓ+1,j} y_{ℓ+1,j}}, then every y is split into (x_{ℓ,k}/2, x_{ℓ+1,j}/2)
// for bit 0 or (x_{ℓ+1,j}/2, x_{ℓ,k}/2) for bit 1.

#include "thickgeo/bush.hpp"
#include "thickgeo/errors.hpp"
#include "thickgeo/normed_space.hpp"
#include "thickgeo/rational.hpp"
#include "thickgeo/vector.hpp"

#include <algorithm>
#include <compare>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace thickgeo {

/// Finite 0/1 string naming a vertex of the binary tree; empty is the root.
class Label {
public:
    Label() = default;
    explicit Label(std::string bits) : bits_(std::move(bits)) {
        for (char c : bits_) {
            if (c != '0' && c != '1') throw InputError("label '" + bits_ + "' contains a character other than 0/1");
        }
    }

    /// Accepts "", "-", "e" and "∅" for the empty label.
    static Label parse(std::string_view text) {
        if (text.empty() || text == "-" || text == "e" || text == "\xE2\x88\x85") return Label();
        return Label(std::string(text));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int bit(std::size_t i) const { return bits_.at(i) - '0'; }
    const std::string& bits() const { return bits_; }
    std::string display() const { return bits_.empty() ? std::string("\xE2\x88\x85") : bits_; }

    Label child(int b) const { return Label(bits_ + (b ? '1' : '0')); }
    Label prefix(std::size_t n) const { return Label(bits_.substr(0, std::min(n, bits_.size()))); }
    Label parent() const { return prefix(bits_.empty() ? 0 : bits_.size() - 1); }
    /// The label padded with zeros up to `length`.
    Label extended(std::size_t length) const {
        if (length <= bits_.size()) return *this;
        return Label(bits_ + std::string(length - bits_.size(), '0'));
    }

    auto operator<=>(const Label&) const = default;

private:
    std::string bits_;
};

struct BushVectorRef {
    std::size_t level = 0;
    std::size_t index = 0;
    bool operator==(const BushVectorRef&) const = default;
};

/// y_{level, child} with parent x_{level-1, parent}.
struct MidpointRef {
    std::size_t level = 0;
    std::size_t parent = 0;
    std::size_t child = 0;
    bool operator==(const MidpointRef&) const = default;
};

using Generator = std::variant<BushVectorRef, MidpointRef>;

struct Term {
    Rational coefficient;
    Generator generator;
    bool operator==(const Term&) const = default;
};

struct BrokenLine {
    Label label;
    bool intermediate = false;
    std::vector<Term> terms;

    Rational length() const {
        Rational total(0);
        for (const auto& t : terms) total += t.coefficient;
        return total;
    }
    bool operator==(const BrokenLine&) const = default;
};

inline Vector generator_vector(const Bush& b, const Generator& g) {
    if (const auto* x = std::get_if<BushVectorRef>(&g)) return b.vec(x->level, x->index);
    const auto& y = std::get<MidpointRef>(g);
    Vector v = b.vec(y.level - 1, y.parent) + b.vec(y.level, y.child);
    return v *= Rational(1, 2);
}

/// Sum of the terms as vectors.
inline Vector line_sum(const Bush& b, const BrokenLine& line) {
    Vector total(b.space.dimension());
    for (const auto& t : line.terms) total.add_scaled(t.coefficient, generator_vector(b, t.generator));
    return total;
}

/// The segment [0, x_{0,1}].
inline BrokenLine root_line(const Bush& b) {
    b.space.require_polyhedral("broken-line construction");
    require_normalized(b);
    return BrokenLine{Label(), false, {Term{Rational(1), BushVectorRef{0, 0}}}};
}

/// Replaces every c·x_{ℓ,k} by {(c·λ_{ℓ+1,j})·y_{ℓ+1,j}} over j in A^{ℓ+1}_k, ascending j.
inline BrokenLine intermediate_line(const Bush& b, const BrokenLine& line) {
    if (line.intermediate) throw InputError("line " + line.label.display() + " is already intermediate");
    BrokenLine out{line.label, true, {}};
    out.terms.reserve(line.terms.size() * 2);
    for (const auto& t : line.terms) {
        const auto* x = std::get_if<BushVectorRef>(&t.generator);
        if (!x) throw InputError("non-intermediate line contains a midpoint term");
        const std::size_t next = x->level + 1;
        if (next > b.depth()) {
            throw DepthError("refining x[" + std::to_string(x->level) + "][" + std::to_string(x->index) +
                             "] needs bush depth " + std::to_string(next) + ", have " + std::to_string(b.depth()));
        }
        for (std::size_t j : b.block(next, x->index)) {
            const Rational& lam = b.weight(next, j);
            if (lam == 0) continue;
            out.terms.push_back(Term{Rational(t.coefficient * lam), MidpointRef{next, x->index, j}});
        }
    }
    return out;
}

/// Child (label, bit) of a non-intermediate line; runs the intermediate pass internally.
inline BrokenLine child_line(const Bush& b, const BrokenLine& line, int bit) {
    if (bit != 0 && bit != 1) throw InputError("bit must be 0 or 1");
    BrokenLine mid = intermediate_line(b, line);
    BrokenLine out{line.label.child(bit), false, {}};
    out.terms.reserve(mid.terms.size() * 2);
    for (const auto& t : mid.terms) {
        const auto& y = std::get<MidpointRef>(t.generator);
        Rational half = t.coefficient / 2;
        Term parent_term{half, BushVectorRef{y.level - 1, y.parent}};
        Term child_term{half, BushVectorRef{y.level, y.child}};
        if (bit == 0) {
            out.terms.push_back(std::move(parent_term));
            out.terms.push_back(std::move(child_term));
        } else {
            out.terms.push_back(std::move(child_term));
            out.terms.push_back(std::move(parent_term));
        }
    }
    return out;
}

inline BrokenLine line_for_label(const Bush& b, const Label& label) {
    if (label.size() > b.depth()) {
        throw DepthError("label of length " + std::to_string(label.size()) + " needs bush depth " +
                         std::to_string(label.size()) + ", have " + std::to_string(b.depth()));
    }
    BrokenLine line = root_line(b);
    for (std::size_t i = 0; i < label.size(); ++i) line = child_line(b, line, label.bit(i));
    return line;
}

/// Cumulative arclengths 0 = σ_0 < ... < σ_m = 1 of the vertices.
inline std::vector<Rational> arclengths(const BrokenLine& line) {
    std::vector<Rational> out;
    out.reserve(line.terms.size() + 1);
    Rational acc(0);
    out.push_back(acc);
    for (const auto& t : line.terms) {
        acc += t.coefficient;
        out.push_back(acc);
    }
    return out;
}

inline Rational max_gap(const BrokenLine& line) {
    Rational best(0);
    for (const auto& t : line.terms) {
        if (t.coefficient > best) best = t.coefficient;
    }
    return best;
}

/// Vertices of a broken line with arclength parameterization.
struct VertexList {
    std::vector<Rational> arclengths;
    std::vector<Vector> points;

    std::size_t size() const { return points.size(); }

    std::optional<std::size_t> find(const Rational& s) const {
        auto it = std::lower_bound(arclengths.begin(), arclengths.end(), s);
        if (it != arclengths.end() && *it == s) return static_cast<std::size_t>(it - arclengths.begin());
        return std::nullopt;
    }

    Vector eval(const Rational& s) const {
        if (arclengths.empty()) throw InputError("empty vertex list");
        if (s < 0 || s > arclengths.back()) {
            throw InputError("arclength " + to_string(s) + " outside [0, " + to_string(arclengths.back()) + "]");
        }
        auto it = std::lower_bound(arclengths.begin(), arclengths.end(), s);
        std::size_t i = static_cast<std::size_t>(it - arclengths.begin());
        if (*it == s) return points[i];
        // s lies strictly inside segment [i-1, i]
        const Rational& a = arclengths[i - 1];
        Rational t = (s - a) / (arclengths[i] - a);
        Vector out = points[i - 1];
        out.add_scaled(t, points[i] - points[i - 1]);
        return out;
    }
};

inline VertexList vertices(const Bush& b, const BrokenLine& line) {
    VertexList out;
    out.arclengths.reserve(line.terms.size() + 1);
    out.points.reserve(line.terms.size() + 1);
    Rational acc(0);
    Vector point(b.space.dimension());
    out.arclengths.push_back(acc);
    out.points.push_back(point);
    for (const auto& t : line.terms) {
        acc += t.coefficient;
        point.add_scaled(t.coefficient, generator_vector(b, t.generator));
        out.arclengths.push_back(acc);
        out.points.push_back(point);
    }
    return out;
}

/// g(s) for s in [0, 1].
inline Vector eval_at(const Bush& b, const BrokenLine& line, const Rational& s) {
    if (s < 0 || s > 1) throw InputError("arclength " + to_string(s) + " outside [0, 1]");
    Rational acc(0);
    Vector point(b.space.dimension());
    for (const auto& t : line.terms) {
        Rational next = acc + t.coefficient;
        if (s <= next) {
            point.add_scaled(Rational(s - acc), generator_vector(b, t.generator));
            return point;
        }
        point.add_scaled(t.coefficient, generator_vector(b, t.generator));
        acc = next;
    }
    return point;
}

/// Memo table of lines by label plus a small LRU of vertex lists.
///
/// Safe for concurrent use; a miss is computed outside the lock and the first
/// inserted value wins (all values for a key are identical).
class LineCache {
public:
    explicit LineCache(Bush bush, std::size_t vertex_capacity = 24)
        : bush_(std::move(bush)), capacity_(std::max<std::size_t>(vertex_capacity, 2)) {
        bush_.space.require_polyhedral("broken-line construction");
        require_normalized(bush_);
        lines_.emplace(std::string(), std::make_shared<const BrokenLine>(
                                          BrokenLine{Label(), false, {Term{Rational(1), BushVectorRef{0, 0}}}}));
        lambda_max_ = thickgeo::lambda_max(bush_);
    }

    const Bush& bush() const { return bush_; }
    const Rational& lambda_max() const { return lambda_max_; }

    std::shared_ptr<const BrokenLine> line(const Label& label) {
        if (auto hit = lookup(lines_, label.bits())) return hit;
        if (label.size() > bush_.depth()) {
            throw DepthError("label of length " + std::to_string(label.size()) + " needs bush depth " +
                             std::to_string(label.size()) + ", have " + std::to_string(bush_.depth()));
        }
        auto parent = line(label.parent());
        auto made = std::make_shared<const BrokenLine>(child_line(bush_, *parent, label.bit(label.size() - 1)));
        return insert(lines_, label.bits(), std::move(made));
    }

    std::shared_ptr<const BrokenLine> intermediate(const Label& label) {
        if (auto hit = lookup(intermediates_, label.bits())) return hit;
        auto made = std::make_shared<const BrokenLine>(intermediate_line(bush_, *line(label)));
        return insert(intermediates_, label.bits(), std::move(made));
    }

    std::shared_ptr<const VertexList> vertices(const Label& label) { return cached_vertices(label, false); }
    std::shared_ptr<const VertexList> intermediate_vertices(const Label& label) { return cached_vertices(label, true); }

private:
    template <class Map>
    typename Map::mapped_type lookup(const Map& map, const std::string& key) {
        std::lock_guard lock(mutex_);
        auto it = map.find(key);
        return it == map.end() ? nullptr : it->second;
    }

    template <class Map>
    typename Map::mapped_type insert(Map& map, const std::string& key, typename Map::mapped_type value) {
        std::lock_guard lock(mutex_);
        auto [it, inserted] = map.emplace(key, std::move(value));
        return it->second;
    }

    std::shared_ptr<const VertexList> cached_vertices(const Label& label, bool inter) {
        const std::string key = (inter ? "I:" : "L:") + label.bits();
        {
            std::lock_guard lock(mutex_);
            auto it = lru_index_.find(key);
            if (it != lru_index_.end()) {
                lru_.splice(lru_.begin(), lru_, it->second);
                return it->second->second;
            }
        }
        auto source = inter ? intermediate(label) : line(label);
        auto made = std::make_shared<const VertexList>(thickgeo::vertices(bush_, *source));
        std::lock_guard lock(mutex_);
        auto it = lru_index_.find(key);
        if (it != lru_index_.end()) return it->second->second;
        lru_.emplace_front(key, made);
        lru_index_[key] = lru_.begin();
        while (lru_.size() > capacity_) {
            lru_index_.erase(lru_.back().first);
            lru_.pop_back();
        }
        return made;
    }

    Bush bush_;
    std::size_t capacity_;
    Rational lambda_max_;
    std::mutex mutex_;
    std::map<std::string, std::shared_ptr<const BrokenLine>> lines_;
    std::map<std::string, std::shared_ptr<const BrokenLine>> intermediates_;
    using LruEntry = std::pair<std::string, std::shared_ptr<const VertexList>>;
    std::list<LruEntry> lru_;
    std::unordered_map<std::string, std::list<LruEntry>::iterator> lru_index_;
};

struct GapDeviation {
    std::size_t gap = 0;   // index of the intermediate-line segment
    Rational start;        // arclength of its left vertex
    Rational length;
    Rational midpoint;     // arclength of the new vertices u and v
    Vector u;              // vertex of child (label, 0)
    Vector v;              // vertex of child (label, 1)
    Rational deviation;    // ||u - v||
    Rational lower_bound;  // length · ε / 2
};

struct DeviationReport {
    Label label;
    Rational epsilon;
    std::vector<GapDeviation> gaps;
    Rational total;
    Rational selected_length;
    bool empty_selection = false;

    /// total >= (ε/2)·(selected length)
    bool meets_bound() const { return total >= epsilon / 2 * selected_length; }
};

/// Deviation between the two children of `label`, measured at the new vertex inside
/// each selected segment of the intermediate line (all segments when `selection` is empty).
inline DeviationReport sibling_deviation(LineCache& cache, const Label& label,
                                         const std::optional<std::vector<std::size_t>>& selection = std::nullopt) {
    const Bush& b = cache.bush();
    if (label.size() + 1 > b.depth()) {
        throw DepthError("sibling deviation of label of length " + std::to_string(label.size()) +
                         " needs bush depth " + std::to_string(label.size() + 1));
    }
    auto mid = cache.intermediate(label);
    auto mid_arcs = arclengths(*mid);
    auto left = cache.vertices(label.child(0));
    auto right = cache.vertices(label.child(1));

    std::vector<std::size_t> chosen;
    if (selection) {
        chosen = *selection;
        std::sort(chosen.begin(), chosen.end());
        chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
        for (std::size_t g : chosen) {
            if (g >= mid->terms.size()) {
                throw IndexError("gap " + std::to_string(g) + " out of range (intermediate line has " +
                                 std::to_string(mid->terms.size()) + " segments)");
            }
        }
    } else {
        chosen.resize(mid->terms.size());
        std::iota(chosen.begin(), chosen.end(), std::size_t{0});
    }

    DeviationReport report;
    report.label = label;
    report.epsilon = b.epsilon;
    report.empty_selection = chosen.empty();
    for (std::size_t g : chosen) {
        GapDeviation d;
        d.gap = g;
        d.start = mid_arcs[g];
        d.length = mid->terms[g].coefficient;
        d.midpoint = d.start + d.length / 2;
        // every intermediate segment becomes exactly two child segments
        if (left->arclengths[2 * g + 1] != d.midpoint || right->arclengths[2 * g + 1] != d.midpoint) {
            throw Error("child vertices are misaligned with the intermediate line");
        }
        d.u = left->points[2 * g + 1];
        d.v = right->points[2 * g + 1];
        d.deviation = exact_distance(b.space, d.u, d.v);
        d.lower_bound = d.length * b.epsilon / 2;
        report.total += d.deviation;
        report.selected_length += d.length;
        report.gaps.push_back(std::move(d));
    }
    return report;
}

inline DeviationReport sibling_deviation(const Bush& b, const Label& label,
                                         const std::optional<std::vector<std::size_t>>& selection = std::nullopt) {
    LineCache cache(b);
    return sibling_deviation(cache, label, selection);
}

} // namespace thickgeo
