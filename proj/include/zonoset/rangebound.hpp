#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "expr.hpp"
#include "interval.hpp"
#include "taylor.hpp"

namespace zonoset {

enum class BoundMethod { ia_box, tm_box, pz };

inline std::string_view to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::ia_box: return "ia-box";
        case BoundMethod::tm_box: return "tm-box";
        case BoundMethod::pz: return "pz";
    }
    return "?";
}

struct BoundConfig {
    unsigned taylor_order = 6;
    unsigned degree_cap = 8;
    unsigned split_depth = 4;
    BoundMethod method = BoundMethod::pz;
    /// Widen every intermediate interval by a relative 1e-12.
    bool epsilon_inflation = false;
    unsigned enumeration_cap = default_enumeration_cap;

    void check() const {
        if (taylor_order < 1) throw std::invalid_argument("BoundConfig: taylor_order must be >= 1");
        if (degree_cap < 1 || degree_cap > monomial::max_exponent)
            throw std::invalid_argument("BoundConfig: degree_cap must lie in 1.." +
                                        std::to_string(monomial::max_exponent));
    }
};

inline constexpr double inflation_rel = 1e-12;

// ---------------------------------------------------------------------------
// Interval baseline
// ---------------------------------------------------------------------------

/// Natural interval extension of e over the box (box[0] is x1).
inline Interval eval_interval(const Expr& e, std::span<const Interval> box, bool inflate_each = false) {
    using Op = Expr::Op;
    auto rec = [&](const Expr& a) { return eval_interval(a, box, inflate_each); };
    Interval r;
    switch (e.op) {
        case Op::variable:
            if (e.index > box.size()) throw std::invalid_argument("eval_interval: variable x" + std::to_string(e.index) + " unbound");
            r = box[e.index - 1];
            break;
        case Op::constant: r = Interval{e.value}; break;
        case Op::neg: r = -rec(e.args[0]); break;
        case Op::add:
            r = Interval{0.0};
            for (const auto& a : e.args) r = r + rec(a);
            break;
        case Op::sub: r = rec(e.args[0]) - rec(e.args[1]); break;
        case Op::mul:
            r = Interval{1.0};
            for (const auto& a : e.args) r = r * rec(a);
            break;
        case Op::pow: r = pow(rec(e.args[0]), e.exponent); break;
        case Op::div_const: r = (1.0 / e.value) * rec(e.args[0]); break;
        case Op::sin: r = sin(rec(e.args[0])); break;
        case Op::cos: r = cos(rec(e.args[0])); break;
        case Op::exp: r = exp(rec(e.args[0])); break;
    }
    return inflate_each && !e.is_constant() ? inflate(r, inflation_rel) : r;
}

// ---------------------------------------------------------------------------
// Taylor-form composition
// ---------------------------------------------------------------------------

/// One scalar form per coordinate of S, over S's own factors.
inline std::vector<TaylorForm> coordinate_forms(const ZPolytope& S) {
    TaylorForm::check_factor_count(S.num_factors);
    std::vector<TaylorForm> coords;
    coords.reserve(S.dim);
    for (std::size_t d = 0; d < S.dim; ++d) {
        std::unordered_map<std::uint64_t, double> acc;
        for (std::size_t i = 0; i < S.generators.size(); ++i) {
            std::uint64_t key = 0;
            for (auto k : S.exponents[i]) key += monomial::unit(k - 1);
            acc[key] += S.generators[i][d];
        }
        TaylorForm t = TaylorForm::make_constant(S.center[d], S.num_factors);
        t.assign_terms(acc);
        coords.push_back(std::move(t));
    }
    return coords;
}

/// Substitutes the coordinate forms into e.
inline TaylorForm compose(const Expr& e, std::span<const TaylorForm> coords, const BoundConfig& cfg,
                          std::size_t num_factors) {
    using Op = Expr::Op;
    if (e.is_constant()) return TaylorForm::make_constant(evaluate(e, std::span<const double>{}), num_factors);

    auto rec = [&](const Expr& a) { return compose(a, coords, cfg, num_factors); };
    const unsigned cap = cfg.degree_cap;
    TaylorForm r;
    switch (e.op) {
        case Op::variable:
            if (e.index > coords.size()) throw std::invalid_argument("compose: variable x" + std::to_string(e.index) + " unbound");
            return coords[e.index - 1];
        case Op::constant: return TaylorForm::make_constant(e.value, num_factors);
        case Op::neg: r = scale(-1.0, rec(e.args[0])); break;
        case Op::add:
            r = rec(e.args[0]);
            for (std::size_t i = 1; i < e.args.size(); ++i) r = add(r, rec(e.args[i]));
            break;
        case Op::sub: r = add(rec(e.args[0]), scale(-1.0, rec(e.args[1]))); break;
        case Op::mul:
            r = rec(e.args[0]);
            for (std::size_t i = 1; i < e.args.size(); ++i) {
                const Expr& a = e.args[i];
                r = a.is_constant() ? scale(evaluate(a, std::span<const double>{}), std::move(r))
                                    : multiply(r, rec(a), cap);
            }
            break;
        case Op::pow: r = int_pow(rec(e.args[0]), e.exponent, cap); break;
        case Op::div_const: r = scale(1.0 / e.value, rec(e.args[0])); break;
        case Op::sin: r = tf_transcendental(Transcendental::sin, rec(e.args[0]), cfg.taylor_order, cap); break;
        case Op::cos: r = tf_transcendental(Transcendental::cos, rec(e.args[0]), cfg.taylor_order, cap); break;
        case Op::exp: r = tf_transcendental(Transcendental::exp, rec(e.args[0]), cfg.taylor_order, cap); break;
    }
    if (cfg.epsilon_inflation) {
        const double pad = inflation_rel * tf_bound(r).mag();
        r.remainder = r.remainder + Interval{-pad, pad};
    }
    return r;
}

// ---------------------------------------------------------------------------
// Domain splitting
// ---------------------------------------------------------------------------

namespace detail {

/// Factor with the largest odd-exponent coefficient mass; falls back to the
/// largest overall mass. Returns num_factors when nothing depends on a factor.
inline std::size_t split_factor(const TaylorForm& t) {
    auto mass = odd_coefficient_mass(t);
    auto best = std::max_element(mass.begin(), mass.end());
    if (best != mass.end() && *best > 0.0) return static_cast<std::size_t>(best - mass.begin());
    std::fill(mass.begin(), mass.end(), 0.0);
    for (const auto& term : t.terms)
        for (std::size_t k = 0; k < t.num_factors; ++k)
            if (monomial::exponent(term.key, k) > 0) mass[k] += std::abs(term.coeff);
    best = std::max_element(mass.begin(), mass.end());
    if (best != mass.end() && *best > 0.0) return static_cast<std::size_t>(best - mass.begin());
    return t.num_factors;
}

template <class Build>
Interval refine(Build& build, const std::vector<TaylorForm>& coords, std::size_t num_factors, unsigned depth) {
    const TaylorForm t = build(std::span<const TaylorForm>(coords));
    const Interval own = tf_bound(t);
    if (depth == 0) return own;
    const std::size_t k = split_factor(t);
    if (k >= num_factors) return own;

    Interval merged;
    for (int side = 0; side < 2; ++side) {
        const double shift = side == 0 ? -0.5 : 0.5;
        std::vector<TaylorForm> sub;
        sub.reserve(coords.size());
        for (const auto& c : coords) sub.push_back(substitute_affine(c, k, shift, 0.5));
        const Interval b = refine(build, sub, num_factors, depth - 1);
        merged = side == 0 ? b : hull(merged, b);
    }
    // both are enclosures of the same range; keep the tighter parts
    const double lo = std::max(own.lo, merged.lo), hi = std::min(own.hi, merged.hi);
    return lo <= hi ? Interval{lo, hi} : own;
}

}  // namespace detail

/// Bisects the factor with the largest odd-exponent impact, rebuilding the
/// composition on each half, down to cfg.split_depth levels. The result is
/// intersected with the unsplit bound at every level, so it never widens.
template <class Build>
Interval split_refine(Build&& build, const std::vector<TaylorForm>& coords, const BoundConfig& cfg) {
    const std::size_t p = coords.empty() ? 0 : coords.front().num_factors;
    return detail::refine(build, coords, p, cfg.split_depth);
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

namespace detail {

inline ZPolytope box_as_zonotope(std::span<const Interval> box) {
    ZPolytope B;
    B.dim = box.size();
    B.num_factors = box.size();
    B.center.resize(box.size());
    for (std::size_t d = 0; d < box.size(); ++d) {
        B.center[d] = box[d].mid();
        Vec g(box.size(), 0.0);
        g[d] = box[d].rad();
        B.generators.push_back(std::move(g));
        B.exponents.push_back(IndexList{static_cast<IndexList::value_type>(d + 1)});
    }
    return B;
}

inline Interval bound_pz(const Expr& f, const ZPolytope& S, const BoundConfig& cfg) {
    const auto coords = coordinate_forms(S);
    const std::size_t p = S.num_factors;
    auto build = [&](std::span<const TaylorForm> c) { return compose(f, c, cfg, p); };
    return split_refine(build, coords, cfg);
}

}  // namespace detail

/// Interval containing f over S.
///  ia-box: interval arithmetic over the interval hull of S.
///  tm-box: Taylor forms over the interval hull, one factor per coordinate.
///  pz:     Taylor forms over S's own factors.
inline Interval bound(const Expr& f, const ZPolytope& S, const BoundConfig& cfg = {}) {
    cfg.check();
    if (f.max_variable() > S.dim)
        throw std::invalid_argument("bound: expression uses x" + std::to_string(f.max_variable()) +
                                    " but the set has dimension " + std::to_string(S.dim));
    if (f.is_constant()) {
        const double v = evaluate(f, std::span<const double>{});
        return Interval{v};
    }
    switch (cfg.method) {
        case BoundMethod::ia_box: {
            const auto box = interval_hull(S, cfg.enumeration_cap);
            return eval_interval(f, box, cfg.epsilon_inflation);
        }
        case BoundMethod::tm_box: {
            const auto box = interval_hull(S, cfg.enumeration_cap);
            return detail::bound_pz(f, detail::box_as_zonotope(box), cfg);
        }
        case BoundMethod::pz: return detail::bound_pz(f, S, cfg);
    }
    throw std::logic_error("bound: unknown method");
}

}  // namespace zonoset
