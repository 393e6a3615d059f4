#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "lp.hpp"
#include "setops.hpp"

namespace zonoset {

enum class VertexOrdering { input, greedy_nearest };

inline constexpr double default_dedup_tol = 1e-9;

namespace detail {

inline double distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline bool lex_less(const Vec& a, const Vec& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); }

// cross product of (a - o) and (b - o)
inline double cross(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Greedy nearest-neighbour chain starting at the lexicographically smallest
/// vertex; ties go to the earlier input position.
inline std::vector<Vec> greedy_nearest_order(const std::vector<Vec>& pts) {
    const std::size_t q = pts.size();
    std::vector<bool> used(q, false);
    std::size_t cur = 0;
    for (std::size_t i = 1; i < q; ++i)
        if (lex_less(pts[i], pts[cur])) cur = i;
    std::vector<Vec> out;
    out.reserve(q);
    for (std::size_t step = 0; step < q; ++step) {
        used[cur] = true;
        out.push_back(pts[cur]);
        std::size_t next = q;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < q; ++i) {
            if (used[i]) continue;
            const double d = distance(pts[cur], pts[i]);
            if (d < best) {
                best = d;
                next = i;
            }
        }
        cur = next;
    }
    return out;
}

}  // namespace detail

/// Keeps the first occurrence of every point and drops points within `tol`
/// (Euclidean) of an already kept one. Order-stable.
inline std::vector<Vec> dedup_points(std::span<const Vec> points, double tol = default_dedup_tol) {
    std::vector<Vec> kept;
    if (points.empty()) return kept;
    const std::size_t n = points.front().size();
    // hash on the first (up to) three coordinates with cell size > tol, so a
    // near-duplicate always sits in a neighbouring cell
    const std::size_t hashed = std::min<std::size_t>(n, 3);
    const double cell = tol > 0 ? 2.0 * tol : 1e-300;
    auto key_of = [&](const Vec& p, const std::int64_t* off) {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t d = 0; d < hashed; ++d) {
            const auto c = static_cast<std::int64_t>(std::floor(p[d] / cell)) + (off ? off[d] : 0);
            h = (h ^ static_cast<std::uint64_t>(c)) * 1099511628211ull;
        }
        return h;
    };
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> grid;
    std::size_t neighbours = 1;
    for (std::size_t d = 0; d < hashed; ++d) neighbours *= 3;

    for (const auto& p : points) {
        if (p.size() != n) throw std::invalid_argument("dedup_points: dimension mismatch");
        bool dup = false;
        for (std::size_t code = 0; code < neighbours && !dup; ++code) {
            std::int64_t off[3] = {0, 0, 0};
            std::size_t c = code;
            for (std::size_t d = 0; d < hashed; ++d, c /= 3) off[d] = static_cast<std::int64_t>(c % 3) - 1;
            auto it = grid.find(key_of(p, off));
            if (it == grid.end()) continue;
            for (auto idx : it->second)
                if (detail::distance(kept[idx], p) <= tol) {
                    dup = true;
                    break;
                }
        }
        if (dup) continue;
        grid[key_of(p, nullptr)].push_back(kept.size());
        kept.push_back(p);
    }
    return kept;
}

/// Andrew's monotone chain. Returns the hull vertices counterclockwise,
/// starting at the lexicographically smallest one; collinear and duplicate
/// points are dropped. A point is treated as collinear when its distance to
/// the chord of its neighbours is at most `collinear_tol`.
inline std::vector<Vec> hull_2d(std::span<const Vec> points, double collinear_tol = 0.0) {
    std::vector<Vec> pts(points.begin(), points.end());
    for (const auto& p : pts)
        if (p.size() != 2) throw std::invalid_argument("hull_2d: points must be two-dimensional");
    std::sort(pts.begin(), pts.end(), detail::lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;

    auto turns_left = [collinear_tol](const Vec& o, const Vec& a, const Vec& b) {
        const double cr = detail::cross(o, a, b);
        if (collinear_tol <= 0.0) return cr > 0.0;
        return cr > collinear_tol * detail::distance(o, b);
    };
    std::vector<Vec> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && !turns_left(h[k - 2], h[k - 1], p)) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && !turns_left(h[k - 2], h[k - 1], pts[i])) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

/// Pairwise convex-hull reduction of the vertex points into a single
/// Z-representation (a binary tree of hulls, odd leftovers carried up).
inline ZPolytope v_to_z(const VPolytope& P, VertexOrdering ordering = VertexOrdering::input) {
    if (P.vertices.empty()) throw std::invalid_argument("v_to_z: empty vertex list");
    for (const auto& v : P.vertices)
        if (v.size() != P.dim) throw std::invalid_argument("v_to_z: vertex dimension mismatch");

    const auto& ordered = ordering == VertexOrdering::greedy_nearest ? detail::greedy_nearest_order(P.vertices)
                                                                     : P.vertices;
    std::vector<ZPolytope> level;
    level.reserve(ordered.size());
    for (const auto& v : ordered) level.push_back(ZPolytope::point(v));

    while (level.size() > 1) {
        std::vector<ZPolytope> next;
        next.reserve((level.size() + 1) / 2);
        std::size_t i = 0;
        for (; i + 1 < level.size(); i += 2) next.push_back(convex_hull(level[i], level[i + 1]));
        if (i < level.size()) next.push_back(std::move(level[i]));
        level = std::move(next);
    }
    return std::move(level.front());
}

/// Images of all 2^p hypercube vertices, in vertex-code order.
inline std::vector<Vec> hypercube_images(const ZPolytope& P, unsigned cap = default_enumeration_cap) {
    detail::check_cap(P.num_factors, cap);
    const auto masks = detail::factor_masks(P);
    const std::size_t count = std::size_t{1} << P.num_factors;
    std::vector<Vec> out(count, Vec(P.dim));
    parallel_chunks(count, [&](std::size_t b, std::size_t e) {
        for (std::size_t v = b; v < e; ++v) detail::vertex_image(P, masks, v, out[v].data());
    });
    return out;
}

/// Removes points that are convex combinations of the others. Input must be
/// free of duplicates.
inline std::vector<Vec> remove_redundant(std::vector<Vec> pts, double tol = default_dedup_tol) {
    if (pts.size() <= 1) return pts;
    const std::size_t n = pts.front().size();
    if (n == 1) {
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), detail::lex_less);
        std::vector<Vec> out{*lo};
        if (detail::distance(*lo, *hi) > tol) out.push_back(*hi);
        return out;
    }
    if (n == 2) return hull_2d(pts, tol);

    // general dimension: drop one candidate at a time if the remaining points
    // still express it
    std::vector<Vec> kept = std::move(pts);
    for (std::size_t i = 0; i < kept.size();) {
        std::vector<Vec> others;
        others.reserve(kept.size() - 1);
        for (std::size_t j = 0; j < kept.size(); ++j)
            if (j != i) others.push_back(kept[j]);
        if (lp::in_convex_hull(kept[i], others))
            kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
        else
            ++i;
    }
    return kept;
}

/// Vertex representation of (the convex hull of) P: evaluate P at every
/// hypercube vertex, drop near-duplicates, then drop redundant points.
inline VPolytope z_to_v(const ZPolytope& P, double tol = default_dedup_tol, unsigned cap = default_enumeration_cap) {
    auto candidates = dedup_points(hypercube_images(P, cap), tol);
    std::sort(candidates.begin(), candidates.end(), detail::lex_less);
    VPolytope out;
    out.dim = P.dim;
    out.vertices = remove_redundant(std::move(candidates), tol);
    return out;
}

}  // namespace zonoset
