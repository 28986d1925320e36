#pragma once

#include "thickgeo/thickgeo.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace tg_test {

inline thickgeo::Rational Q(const char* text) { return thickgeo::parse_rational(text); }

inline thickgeo::Vector V(std::initializer_list<const char*> coords) {
    std::vector<thickgeo::Rational> out;
    for (const char* c : coords) out.push_back(thickgeo::parse_rational(c));
    return thickgeo::Vector::from_dense(out);
}

inline std::vector<thickgeo::Rational> Qs(std::initializer_list<const char*> values) {
    std::vector<thickgeo::Rational> out;
    for (const char* c : values) out.push_back(thickgeo::parse_rational(c));
    return out;
}

// Every label of the given length, lexicographic.
inline std::vector<thickgeo::Label> labels_of_length(std::size_t n) {
    std::vector<thickgeo::Label> out;
    for (std::size_t code = 0; code < (std::size_t{1} << n); ++code) {
        std::string bits;
        for (std::size_t i = 0; i < n; ++i) bits.push_back(((code >> (n - 1 - i)) & 1) ? '1' : '0');
        out.push_back(thickgeo::Label::parse(bits));
    }
    return out;
}

} // namespace tg_test

namespace tg_test {

// Reference broken lines on the dyadic bush, built from the step-function formula
// with dense coordinates and no library code.
struct DenseTerm {
    thickgeo::Rational length;
    std::size_t level;
    std::size_t index;
};

inline std::vector<thickgeo::Rational> dyadic_vector(std::size_t N, std::size_t n, std::size_t j) {
    std::vector<thickgeo::Rational> out(std::size_t{1} << N, thickgeo::Rational(0));
    std::size_t width = std::size_t{1} << (N - n);
    for (std::size_t i = j * width; i < (j + 1) * width; ++i) out[i] = thickgeo::Rational(1UL << n);
    return out;
}

inline std::vector<DenseTerm> reference_terms(const std::string& bits) {
    std::vector<DenseTerm> terms{{thickgeo::Rational(1), 0, 0}};
    for (char bit : bits) {
        std::vector<DenseTerm> next;
        for (const auto& t : terms) {
            for (std::size_t j : {2 * t.index, 2 * t.index + 1}) {
                DenseTerm up{t.length / 4, t.level, t.index};
                DenseTerm down{t.length / 4, t.level + 1, j};
                if (bit == '0') {
                    next.push_back(up);
                    next.push_back(down);
                } else {
                    next.push_back(down);
                    next.push_back(up);
                }
            }
        }
        terms = std::move(next);
    }
    return terms;
}

struct DenseVertices {
    std::vector<thickgeo::Rational> arclengths;
    std::vector<std::vector<thickgeo::Rational>> points;
};

inline DenseVertices reference_vertices(std::size_t N, const std::string& bits) {
    DenseVertices out;
    thickgeo::Rational s(0);
    std::vector<thickgeo::Rational> p(std::size_t{1} << N, thickgeo::Rational(0));
    out.arclengths.push_back(s);
    out.points.push_back(p);
    for (const auto& t : reference_terms(bits)) {
        auto x = dyadic_vector(N, t.level, t.index);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += t.length * x[i];
        s += t.length;
        out.arclengths.push_back(s);
        out.points.push_back(p);
    }
    return out;
}

// Uniform-weight l1 distance on 2^N points.
inline thickgeo::Rational dense_l1(const std::vector<thickgeo::Rational>& a, const std::vector<thickgeo::Rational>& b) {
    thickgeo::Rational total(0);
    for (std::size_t i = 0; i < a.size(); ++i) total += abs(a[i] - b[i]);
    return total / static_cast<unsigned long>(a.size());
}

} // namespace tg_test

#include <random>

namespace tg_test {

// Random pasted geodesic: up to `max_pieces` branches with prefixes of length <= max_prefix
// and depth <= max_depth, glued at randomly chosen common vertices with equal points.
inline thickgeo::PastedGeodesic random_pasted(thickgeo::LineCache& cache, std::mt19937_64& rng, std::size_t max_pieces,
                                              std::size_t max_prefix, std::size_t max_depth) {
    using namespace thickgeo;
    auto random_spec = [&] {
        std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_prefix)(rng);
        std::string bits;
        for (std::size_t i = 0; i < len; ++i) bits.push_back(std::uniform_int_distribution<int>(0, 1)(rng) ? '1' : '0');
        std::size_t depth = std::uniform_int_distribution<std::size_t>(std::max<std::size_t>(len, 1), max_depth)(rng);
        return BranchSpec{Label::parse(bits), depth};
    };
    std::size_t want = std::uniform_int_distribution<std::size_t>(1, max_pieces)(rng);
    std::vector<BranchSpec> pieces{random_spec()};
    std::vector<Rational> breaks{Rational(0)};
    while (pieces.size() < want) {
        BranchSpec next = random_spec();
        auto left = cache.vertices(pieces.back().label_at(pieces.back().depth));
        auto right = cache.vertices(next.label_at(next.depth));
        std::vector<Rational> candidates;
        for (std::size_t i = 0; i < left->size(); ++i) {
            const Rational& s = left->arclengths[i];
            if (s <= breaks.back() || s >= 1) continue;
            auto j = right->find(s);
            if (j && right->points[*j] == left->points[i]) candidates.push_back(s);
        }
        if (candidates.empty()) break;
        breaks.push_back(candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)]);
        pieces.push_back(next);
    }
    breaks.push_back(Rational(1));
    return paste(cache, breaks, pieces);
}

// Up to `max_points` arclengths, each a random dyadic rational or a vertex of g.
inline std::vector<thickgeo::Rational> random_challenge(thickgeo::LineCache& cache, const thickgeo::PastedGeodesic& g,
                                                        std::mt19937_64& rng, std::size_t max_points) {
    using namespace thickgeo;
    std::size_t n = std::uniform_int_distribution<std::size_t>(0, max_points)(rng);
    auto verts = pasted_vertices(cache, g);
    std::vector<Rational> t;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) {
            t.push_back(verts.arclengths[std::uniform_int_distribution<std::size_t>(0, verts.size() - 1)(rng)]);
        } else {
            Rational r(std::uniform_int_distribution<long>(0, 1L << 14)(rng), 1L << 14);
            r.canonicalize();
            t.push_back(r);
        }
    }
    return t;
}

} // namespace tg_test
