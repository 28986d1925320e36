#pragma once

#include "thickgeo/errors.hpp"
#include "thickgeo/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace thickgeo {

/// Coordinate vector of fixed dimension with exact rational entries.
///
/// Storage is sparse: only nonzero coordinates are kept, sorted by index.
class Vector {
public:
    struct Entry {
        std::size_t index;
        Rational value;
        bool operator==(const Entry&) const = default;
    };

    Vector() = default;
    explicit Vector(std::size_t dimension) : dimension_(dimension) {}

    static Vector from_dense(const std::vector<Rational>& coords) {
        Vector v(coords.size());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] != 0) v.entries_.push_back({i, coords[i]});
        }
        return v;
    }

    std::size_t dimension() const { return dimension_; }
    const std::vector<Entry>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    Rational operator[](std::size_t i) const {
        auto it = find(i);
        return (it != entries_.end() && it->index == i) ? it->value : Rational(0);
    }

    void set(std::size_t i, const Rational& value) {
        if (i >= dimension_) throw InputError("coordinate index " + std::to_string(i) + " out of range");
        auto it = find(i);
        bool present = it != entries_.end() && it->index == i;
        if (value == 0) {
            if (present) entries_.erase(it);
        } else if (present) {
            it->value = value;
        } else {
            entries_.insert(it, {i, value});
        }
    }

    std::vector<Rational> dense() const {
        std::vector<Rational> out(dimension_);
        for (const auto& e : entries_) out[e.index] = e.value;
        return out;
    }

    /// this += scale * other
    Vector& add_scaled(const Rational& scale, const Vector& other) {
        require_same_dimension(other);
        if (scale == 0 || other.entries_.empty()) return *this;
        std::vector<Entry> merged;
        merged.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->index < b->index)) {
                merged.push_back(std::move(*a++));
            } else if (a == entries_.end() || b->index < a->index) {
                merged.push_back({b->index, Rational(scale * b->value)});
                ++b;
            } else {
                Rational sum = a->value + scale * b->value;
                if (sum != 0) merged.push_back({a->index, std::move(sum)});
                ++a;
                ++b;
            }
        }
        entries_ = std::move(merged);
        return *this;
    }

    Vector& operator+=(const Vector& other) { return add_scaled(Rational(1), other); }
    Vector& operator-=(const Vector& other) { return add_scaled(Rational(-1), other); }

    Vector& operator*=(const Rational& scale) {
        if (scale == 0) {
            entries_.clear();
        } else {
            for (auto& e : entries_) e.value *= scale;
        }
        return *this;
    }

    friend Vector operator+(Vector a, const Vector& b) { return a += b; }
    friend Vector operator-(Vector a, const Vector& b) { return a -= b; }
    friend Vector operator-(Vector a) { return a *= Rational(-1); }
    friend Vector operator*(const Rational& s, Vector v) { return v *= s; }
    friend Vector operator*(Vector v, const Rational& s) { return v *= s; }

    bool operator==(const Vector& other) const = default;

    void require_same_dimension(const Vector& other) const {
        if (other.dimension_ != dimension_) {
            throw InputError("dimension mismatch: " + std::to_string(dimension_) + " vs " +
                             std::to_string(other.dimension_));
        }
    }

private:
    std::vector<Entry>::iterator find(std::size_t i) {
        return std::lower_bound(entries_.begin(), entries_.end(), i,
                                [](const Entry& e, std::size_t idx) { return e.index < idx; });
    }
    std::vector<Entry>::const_iterator find(std::size_t i) const {
        return std::lower_bound(entries_.begin(), entries_.end(), i,
                                [](const Entry& e, std::size_t idx) { return e.index < idx; });
    }

    std::size_t dimension_ = 0;
    std::vector<Entry> entries_;
};

} // namespace thickgeo
