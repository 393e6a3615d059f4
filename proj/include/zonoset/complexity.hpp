#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace zonoset::complexity {

/// Raised when a count does not fit into 64 bits.
class overflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

using count_t = std::uint64_t;

namespace detail {

inline count_t checked_add(count_t a, count_t b) {
    count_t r;
    if (__builtin_add_overflow(a, b, &r)) throw overflow("complexity: 64-bit overflow in addition");
    return r;
}

inline count_t checked_mul(count_t a, count_t b) {
    count_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw overflow("complexity: 64-bit overflow in multiplication");
    return r;
}

inline void require_positive(std::int64_t v, const char* what) {
    if (v < 1) throw std::invalid_argument(std::string("complexity: ") + what + " must be >= 1");
}

}  // namespace detail

/// C(r, z); zero when z < 0 or z > r.
inline count_t binomial(std::int64_t r, std::int64_t z) {
    if (z < 0 || r < 0 || z > r) return 0;
    if (z > r - z) z = r - z;
    count_t acc = 1;
    for (std::int64_t i = 1; i <= z; ++i) {
        // acc * (r - z + i) / i is exact at each step; divide first by the gcd
        // to postpone overflow
        const count_t num = static_cast<count_t>(r - z + i);
        const count_t den = static_cast<count_t>(i);
        const count_t g1 = std::gcd(acc, den);
        const count_t a = acc / g1, d = den / g1;
        acc = detail::checked_mul(a, num / d);
    }
    return acc;
}

/// Values stored by a vertex representation: n * q.
inline count_t rep_size_v(std::int64_t n, std::int64_t q) {
    detail::require_positive(n, "n");
    detail::require_positive(q, "q");
    return detail::checked_mul(static_cast<count_t>(n), static_cast<count_t>(q));
}

/// Values stored by a halfspace representation: (n + 1) * facets.
inline count_t rep_size_h(std::int64_t n, std::int64_t facets) {
    detail::require_positive(n, "n");
    detail::require_positive(facets, "facets");
    return detail::checked_mul(static_cast<count_t>(n + 1), static_cast<count_t>(facets));
}

/// Vertices of an n-dimensional zonotope with m generators in general
/// position: 2 * sum_{i=0}^{min(n,m)-1} C(m-1, i).
inline count_t zonotope_vertex_count(std::int64_t n, std::int64_t m) {
    detail::require_positive(n, "n");
    detail::require_positive(m, "m");
    count_t s = 0;
    for (std::int64_t i = 0; i < std::min(n, m); ++i) s = detail::checked_add(s, binomial(m - 1, i));
    return detail::checked_mul(2, s);
}

enum class BoundKind { exact, upper, lower };

inline std::string_view to_string(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "exact";
        case BoundKind::upper: return "upper";
        case BoundKind::lower: return "lower";
    }
    return "?";
}

enum class Case { zono_point, zono_zono };

inline std::string_view to_string(Case c) { return c == Case::zono_point ? "zono-point" : "zono-zono"; }

/// Representation sizes of one polytope instance. For zono-point rows only
/// `m` is used; zono-zono rows use `m` and `m2`.
struct ComplexityRow {
    Case kind = Case::zono_point;
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::optional<std::int64_t> m2;
    count_t n_v = 0;
    count_t n_h = 0;
    count_t n_z = 0;
    BoundKind v_kind = BoundKind::upper;
    BoundKind h_kind = BoundKind::upper;
    BoundKind z_kind = BoundKind::exact;

    friend bool operator==(const ComplexityRow&, const ComplexityRow&) = default;
};

/// conv(zonotope with m generators, point) in R^n.
inline ComplexityRow zono_point_complexity(std::int64_t n, std::int64_t m) {
    if (n < 2) throw std::invalid_argument("complexity: n must be >= 2");
    detail::require_positive(m, "m");
    using detail::checked_add;
    using detail::checked_mul;
    ComplexityRow r;
    r.kind = Case::zono_point;
    r.n = n;
    r.m = m;
    const auto un = static_cast<count_t>(n), um = static_cast<count_t>(m);
    r.n_v = checked_mul(un, checked_add(zonotope_vertex_count(n, m), 1));
    // 2 C(m, n-1) - 1 + 2 C(m, n-2), clamped at zero for m < n - 2
    const count_t facets = checked_add(checked_mul(2, binomial(m, n - 1)), checked_mul(2, binomial(m, n - 2)));
    r.n_h = facets == 0 ? 0 : checked_mul(un + 1, facets - 1);
    // 2n + 2mn + 3m + 1
    r.n_z = checked_add(checked_add(checked_mul(2, un), checked_mul(2, checked_mul(um, un))), checked_add(checked_mul(3, um), 1));
    r.v_kind = BoundKind::upper;
    r.h_kind = BoundKind::upper;
    r.z_kind = BoundKind::exact;
    return r;
}

/// conv(zonotope with m1 generators, zonotope with m2 generators) in R^n.
inline ComplexityRow zono_zono_complexity(std::int64_t n, std::int64_t m1, std::int64_t m2) {
    if (n < 2) throw std::invalid_argument("complexity: n must be >= 2");
    detail::require_positive(m1, "m1");
    detail::require_positive(m2, "m2");
    using detail::checked_add;
    using detail::checked_mul;
    ComplexityRow r;
    r.kind = Case::zono_zono;
    r.n = n;
    r.m = m1;
    r.m2 = m2;
    const auto un = static_cast<count_t>(n);
    const std::int64_t mmin = std::min(m1, m2);
    r.n_v = checked_mul(un, zonotope_vertex_count(n, mmin));
    r.n_h = checked_mul(checked_mul(2, binomial(mmin, n - 1)), un + 1);
    // 2n(m1 + m2 + 1) + 3m1 + 3m2 + 1
    const auto sum = static_cast<count_t>(m1) + static_cast<count_t>(m2);
    r.n_z = checked_add(checked_mul(checked_mul(2, un), sum + 1), checked_add(checked_mul(3, sum), 1));
    r.v_kind = BoundKind::lower;
    r.h_kind = BoundKind::lower;
    r.z_kind = BoundKind::exact;
    return r;
}

/// Size of the v_to_z result for q vertices when the pairing tree is
/// perfect with depth k = ceil(log2 q); an upper bound otherwise.
inline SizeStats alg1_size_predictor(std::uint64_t q, std::size_t dim = 0) {
    if (q < 1) throw std::invalid_argument("alg1_size_predictor: q must be >= 1");
    unsigned k = 0;
    while ((std::uint64_t{1} << k) < q) ++k;
    if (k > 30) throw overflow("alg1_size_predictor: tree too deep");
    const count_t four_k = count_t{1} << (2 * k);
    SizeStats s;
    s.p = (std::size_t{1} << k) - 1;
    s.h = (four_k - 1) / 3;
    // mu = 4^k (k/6 + 1/9) - 1/9 = (4^k (3k + 2) - 2) / 18
    const count_t num = detail::checked_mul(four_k, 3 * k + 2) - 2;
    if (num % 18 != 0) throw std::logic_error("alg1_size_predictor: non-integral index count");
    s.mu = num / 18;
    s.n_z = dim * (s.h + 1) + s.mu;
    return s;
}

/// Inclusive integer range; empty when first > last.
struct Range {
    std::int64_t first = 1;
    std::int64_t last = 0;

    static Range single(std::int64_t v) { return {v, v}; }
    bool empty() const { return first > last; }
};

/// Rows for every parameter combination, n outermost then m (then m2).
/// zono-point ignores `m2`.
inline std::vector<ComplexityRow> emit_table(Case kind, Range n, Range m, Range m2 = {}) {
    std::vector<ComplexityRow> rows;
    if (n.empty() || m.empty() || (kind == Case::zono_zono && m2.empty())) return rows;
    for (auto nn = n.first; nn <= n.last; ++nn)
        for (auto mm = m.first; mm <= m.last; ++mm) {
            if (kind == Case::zono_point) {
                rows.push_back(zono_point_complexity(nn, mm));
                continue;
            }
            for (auto mm2 = m2.first; mm2 <= m2.last; ++mm2) rows.push_back(zono_zono_complexity(nn, mm, mm2));
        }
    return rows;
}

inline std::string csv_header(Case kind) {
    return kind == Case::zono_point ? "case,n,m,n_v,n_h,n_z,bound_kind" : "case,n,m1,m2,n_v,n_h,n_z,bound_kind";
}

/// bound_kind lists the kinds of n_v, n_h and n_z separated by '/'.
inline std::string to_csv(const ComplexityRow& r) {
    std::string s(to_string(r.kind));
    s += ',' + std::to_string(r.n) + ',' + std::to_string(r.m);
    if (r.kind == Case::zono_zono) s += ',' + std::to_string(r.m2.value_or(0));
    s += ',' + std::to_string(r.n_v) + ',' + std::to_string(r.n_h) + ',' + std::to_string(r.n_z) + ',';
    s += std::string(to_string(r.v_kind)) + '/' + std::string(to_string(r.h_kind)) + '/' +
         std::string(to_string(r.z_kind));
    return s;
}

}  // namespace zonoset::complexity
