#pragma once

#include "thickgeo/rational.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace thickgeo::lp {

/// Sign tests used by the pivoting rules; exact for rationals.
template <class Scalar>
struct Tolerance {
    static bool negative(const Scalar& x) { return x < 0; }
    static bool positive(const Scalar& x) { return x > 0; }
    static bool zero(const Scalar& x) { return x == 0; }
};

template <>
struct Tolerance<double> {
    static constexpr double eps = 1e-11;
    static bool negative(double x) { return x < -eps; }
    static bool positive(double x) { return x > eps; }
    static bool zero(double x) { return std::abs(x) <= eps; }
};

/// minimize c.x  subject to  A x = b,  x >= 0.  A is dense row-major.
template <class Scalar>
struct Problem {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Scalar> a;
    std::vector<Scalar> b;
    std::vector<Scalar> c;

    Problem() = default;
    Problem(std::size_t m, std::size_t n) : rows(m), cols(n), a(m * n, Scalar(0)), b(m, Scalar(0)), c(n, Scalar(0)) {}

    Scalar& at(std::size_t r, std::size_t col) { return a[r * cols + col]; }
    const Scalar& at(std::size_t r, std::size_t col) const { return a[r * cols + col]; }
};

enum class Status { optimal, infeasible, unbounded, pivot_limit };

template <class Scalar>
struct Solution {
    Status status = Status::infeasible;
    Scalar objective = Scalar(0);
    std::vector<Scalar> x;
    std::size_t pivots = 0;
};

namespace detail {

template <class Scalar>
class Tableau {
public:
    using Tol = Tolerance<Scalar>;

    Tableau(const Problem<Scalar>& p) : m_(p.rows), n_(p.cols) {
        // Rows with a ready-made unit column (after making b >= 0) start with it as basic;
        // the rest get an artificial variable.
        std::vector<Scalar> a = p.a;
        std::vector<Scalar> b = p.b;
        for (std::size_t i = 0; i < m_; ++i) {
            if (Tol::negative(b[i])) {
                b[i] = -b[i];
                for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] = -a[i * n_ + j];
            }
        }
        basis_.assign(m_, npos);
        for (std::size_t j = 0; j < n_; ++j) {
            std::optional<std::size_t> unit_row;
            bool unit = true;
            for (std::size_t i = 0; i < m_ && unit; ++i) {
                const Scalar& v = a[i * n_ + j];
                if (Tol::zero(v)) continue;
                if (v == Scalar(1) && !unit_row) unit_row = i;
                else unit = false;
            }
            if (unit && unit_row && basis_[*unit_row] == npos) basis_[*unit_row] = j;
        }
        artificial_count_ = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] == npos) basis_[i] = n_ + artificial_count_++;
        }
        width_ = n_ + artificial_count_ + 1;
        t_.assign(m_ * width_, Scalar(0));
        std::size_t next_art = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) cell(i, j) = a[i * n_ + j];
            if (basis_[i] >= n_) cell(i, n_ + next_art++) = Scalar(1);
            cell(i, width_ - 1) = b[i];
        }
        active_.assign(m_, true);
    }

    Status run_phase_one(std::size_t& pivots, std::size_t max_pivots) {
        if (artificial_count_ == 0) return Status::optimal;
        std::vector<Scalar> cost(n_ + artificial_count_, Scalar(0));
        for (std::size_t k = 0; k < artificial_count_; ++k) cost[n_ + k] = Scalar(1);
        load_objective(cost);
        Status s = iterate(n_ + artificial_count_, pivots, max_pivots);
        if (s != Status::optimal) return s;
        if (Tol::positive(-obj_.back())) return Status::infeasible;
        // Drive zero-level artificials out of the basis; drop redundant rows.
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i] || basis_[i] < n_) continue;
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < n_ && !col; ++j) {
                if (!Tol::zero(cell(i, j))) col = j;
            }
            if (col) {
                pivot(i, *col);
                ++pivots;
            } else {
                active_[i] = false;
            }
        }
        return Status::optimal;
    }

    Status run_phase_two(const std::vector<Scalar>& c, std::size_t& pivots, std::size_t max_pivots) {
        std::vector<Scalar> cost(n_ + artificial_count_, Scalar(0));
        for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
        load_objective(cost);
        return iterate(n_, pivots, max_pivots);
    }

    Scalar objective() const { return -obj_.back(); }

    std::vector<Scalar> primal() const {
        std::vector<Scalar> x(n_, Scalar(0));
        for (std::size_t i = 0; i < m_; ++i) {
            if (active_[i] && basis_[i] < n_) x[basis_[i]] = cell(i, width_ - 1);
        }
        return x;
    }

private:
    static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

    Scalar& cell(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    const Scalar& cell(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

    void load_objective(const std::vector<Scalar>& cost) {
        obj_.assign(width_, Scalar(0));
        for (std::size_t j = 0; j + 1 < width_; ++j) obj_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i]) continue;
            const Scalar& cb = cost[basis_[i]];
            if (Tol::zero(cb)) continue;
            for (std::size_t j = 0; j < width_; ++j) obj_[j] -= cb * cell(i, j);
        }
    }

    void pivot(std::size_t r, std::size_t col) {
        Scalar inv = Scalar(1) / cell(r, col);
        for (std::size_t j = 0; j < width_; ++j) cell(r, j) *= inv;
        cell(r, col) = Scalar(1);
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || !active_[i]) continue;
            Scalar f = cell(i, col);
            if (Tol::zero(f)) continue;
            for (std::size_t j = 0; j < width_; ++j) cell(i, j) -= f * cell(r, j);
            cell(i, col) = Scalar(0);
        }
        Scalar f = obj_[col];
        if (!Tol::zero(f)) {
            for (std::size_t j = 0; j < width_; ++j) obj_[j] -= f * cell(r, j);
            obj_[col] = Scalar(0);
        }
        basis_[r] = col;
    }

    // Bland's rule: lowest-index improving column, lowest-index basic variable on ratio ties.
    Status iterate(std::size_t allowed_cols, std::size_t& pivots, std::size_t max_pivots) {
        while (true) {
            std::optional<std::size_t> entering;
            for (std::size_t j = 0; j < allowed_cols; ++j) {
                if (Tol::negative(obj_[j])) {
                    entering = j;
                    break;
                }
            }
            if (!entering) return Status::optimal;
            std::optional<std::size_t> leaving;
            Scalar best_ratio(0);
            for (std::size_t i = 0; i < m_; ++i) {
                if (!active_[i] || !Tol::positive(cell(i, *entering))) continue;
                Scalar ratio = cell(i, width_ - 1) / cell(i, *entering);
                if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (!leaving) return Status::unbounded;
            if (pivots >= max_pivots) return Status::pivot_limit;
            pivot(*leaving, *entering);
            ++pivots;
        }
    }

    std::size_t m_;
    std::size_t n_;
    std::size_t artificial_count_ = 0;
    std::size_t width_ = 0;
    std::vector<Scalar> t_;
    std::vector<Scalar> obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

} // namespace detail

/// Two-phase dense simplex with Bland's anti-cycling rule.
template <class Scalar>
Solution<Scalar> minimize(const Problem<Scalar>& problem, std::size_t max_pivots = 200000) {
    Solution<Scalar> out;
    detail::Tableau<Scalar> tableau(problem);
    out.status = tableau.run_phase_one(out.pivots, max_pivots);
    if (out.status != Status::optimal) return out;
    out.status = tableau.run_phase_two(problem.c, out.pivots, max_pivots);
    if (out.status != Status::optimal) return out;
    out.objective = tableau.objective();
    out.x = tableau.primal();
    return out;
}

} // namespace thickgeo::lp
