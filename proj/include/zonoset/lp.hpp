#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace zonoset::lp {

/// min objective^T x  s.t.  A x = b,  x >= 0.
struct LpProblem {
    Vec objective;
    Matrix A;
    Vec b;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    Vec x;
    double value = 0.0;
};

struct SimplexOptions {
    double feasibility_tol = 1e-8;
    double pivot_tol = 1e-11;
    /// Dantzig pricing switches to Bland's rule after this many pivots times
    /// (rows + cols).
    std::size_t bland_after_factor = 5;
    /// Hard pivot budget times (rows + cols); exceeding it throws.
    std::size_t budget_factor = 200;
};

/// Raised when the pivot budget is exhausted.
class cycling_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Dense tableau: rows 0..m-1 are constraints, last column is the rhs.
class Tableau {
public:
    Tableau(std::size_t m, std::size_t cols) : m_(m), cols_(cols), t_((m + 1) * (cols + 1), 0.0), basis_(m) {}

    double& at(std::size_t r, std::size_t c) { return t_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return t_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    double& cost(std::size_t c) { return at(m_, c); }
    std::size_t rows() const { return m_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t r, std::size_t c) {
        const double inv = 1.0 / at(r, c);
        for (std::size_t j = 0; j <= cols_; ++j) at(r, j) *= inv;
        at(r, c) = 1.0;
        for (std::size_t i = 0; i <= m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        basis_[r] = c;
    }

    void drop_row(std::size_t r) {
        t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r * (cols_ + 1)),
                 t_.begin() + static_cast<std::ptrdiff_t>((r + 1) * (cols_ + 1)));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
    }

    /// Runs simplex iterations minimising the cost row over columns where
    /// allowed[c] holds. Returns false when unbounded.
    bool optimise(const std::vector<bool>& allowed, const SimplexOptions& opt) {
        const std::size_t scale = m_ + cols_;
        const std::size_t bland_after = opt.bland_after_factor * scale;
        const std::size_t budget = opt.budget_factor * scale;
        for (std::size_t iter = 0;; ++iter) {
            if (iter > budget) throw cycling_error("simplex: pivot budget exhausted");
            const bool bland = iter >= bland_after;
            std::size_t enter = cols_;
            double best = -opt.pivot_tol;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (!allowed[c]) continue;
                const double rc = cost(c);
                if (rc < best) {
                    enter = c;
                    if (bland) break;
                    best = rc;
                }
            }
            if (enter == cols_) return true;

            std::size_t leave = m_;
            double ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                const double a = at(r, enter);
                if (a <= opt.pivot_tol) continue;
                const double q = rhs(r) / a;
                if (q < ratio - 1e-15 || (q <= ratio + 1e-15 && leave < m_ && basis_[r] < basis_[leave])) {
                    ratio = q;
                    leave = r;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

private:
    std::size_t m_, cols_;
    std::vector<double> t_;
    std::vector<std::size_t> basis_;
};

}  // namespace detail

/// Two-phase dense simplex.
inline LpResult solve(const LpProblem& prob, const SimplexOptions& opt = {}) {
    const std::size_t m = prob.A.rows();
    const std::size_t n = prob.objective.size();
    if (prob.b.size() != m) throw std::invalid_argument("lp::solve: rhs length differs from row count");
    if (m > 0 && prob.A.cols() != n) throw std::invalid_argument("lp::solve: objective length differs from columns");

    // columns: n structural, m artificial
    detail::Tableau T(m, n + m);
    for (std::size_t r = 0; r < m; ++r) {
        const double sign = prob.b[r] < 0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < n; ++c) T.at(r, c) = sign * prob.A(r, c);
        T.at(r, n + r) = 1.0;
        T.rhs(r) = sign * prob.b[r];
        T.basis()[r] = n + r;
    }

    // phase 1: minimise the sum of artificials
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) T.cost(c) -= T.at(r, c);
        T.cost(n + m) -= T.rhs(r);
    }
    std::vector<bool> allowed(n + m, true);
    T.optimise(allowed, opt);
    if (-T.cost(n + m) > opt.feasibility_tol) return {LpStatus::infeasible, {}, 0.0};

    // drive artificials out of the basis; drop redundant rows
    for (std::size_t r = 0; r < T.rows();) {
        if (T.basis()[r] < n) {
            ++r;
            continue;
        }
        std::size_t c = 0;
        while (c < n && std::abs(T.at(r, c)) <= opt.pivot_tol) ++c;
        if (c < n) {
            T.pivot(r, c);
            ++r;
        } else {
            T.drop_row(r);
        }
    }

    // phase 2
    for (std::size_t c = 0; c <= n + m; ++c) T.cost(c) = 0.0;
    for (std::size_t c = 0; c < n; ++c) T.cost(c) = prob.objective[c];
    for (std::size_t r = 0; r < T.rows(); ++r) {
        const std::size_t bc = T.basis()[r];
        const double f = T.cost(bc);
        if (f == 0.0) continue;
        for (std::size_t c = 0; c <= n + m; ++c) T.cost(c) -= f * T.at(r, c);
    }
    for (std::size_t c = n; c < n + m; ++c) allowed[c] = false;
    if (!T.optimise(allowed, opt)) return {LpStatus::unbounded, {}, 0.0};

    LpResult res;
    res.status = LpStatus::optimal;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < T.rows(); ++r)
        if (T.basis()[r] < n) res.x[T.basis()[r]] = std::max(0.0, T.rhs(r));
    for (std::size_t c = 0; c < n; ++c) res.value += prob.objective[c] * res.x[c];
    return res;
}

/// Convex weights beta with sum(beta_i * points_i) = v, when they exist.
inline std::optional<Vec> convex_combination(std::span<const double> v, std::span<const Vec> points,
                                             const SimplexOptions& opt = {}) {
    const std::size_t n = v.size();
    const std::size_t k = points.size();
    if (k == 0) return std::nullopt;
    LpProblem prob;
    prob.objective.assign(k, 0.0);
    prob.A = Matrix(n + 1, k);
    prob.b.assign(n + 1, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
        if (points[j].size() != n) throw std::invalid_argument("in_convex_hull: dimension mismatch");
        for (std::size_t d = 0; d < n; ++d) prob.A(d, j) = points[j][d];
        prob.A(n, j) = 1.0;
    }
    for (std::size_t d = 0; d < n; ++d) prob.b[d] = v[d];
    auto res = solve(prob, opt);
    if (res.status != LpStatus::optimal) return std::nullopt;
    return std::move(res.x);
}

/// True iff v is a convex combination of `points` (phase-1 feasibility).
inline bool in_convex_hull(std::span<const double> v, std::span<const Vec> points, const SimplexOptions& opt = {}) {
    return convex_combination(v, points, opt).has_value();
}

}  // namespace zonoset::lp
