#pragma once

#include <stdexcept>
#include <vector>

#include "core.hpp"

namespace zonoset {

/// Generators plus their index lists, already expressed in some shared factor
/// numbering.
struct GeneratorBlock {
    std::vector<Vec> generators;
    std::vector<IndexList> exponents;

    static GeneratorBlock of(const ZPolytope& P) { return {P.generators, P.exponents}; }
};

/// <c, [G1, G2], (E1, E2)> over `num_factors` factors.
inline ZPolytope merge_concat(Vec center, const GeneratorBlock& first, const GeneratorBlock& second,
                              std::size_t num_factors) {
    const std::size_t n = center.size();
    ZPolytope out;
    out.dim = n;
    out.num_factors = num_factors;
    out.center = std::move(center);
    out.generators.reserve(first.generators.size() + second.generators.size());
    out.exponents.reserve(out.generators.capacity());
    for (const auto* block : {&first, &second}) {
        if (block->generators.size() != block->exponents.size())
            throw std::invalid_argument("merge_concat: generator and index-list counts differ");
        for (std::size_t i = 0; i < block->generators.size(); ++i) {
            if (block->generators[i].size() != n) throw std::invalid_argument("merge_concat: dimension mismatch");
            out.generators.push_back(block->generators[i]);
            out.exponents.push_back(block->exponents[i]);
        }
    }
    return out;
}

/// M * P = <Mc, MG, E>.
inline ZPolytope linear_map(const Matrix& M, const ZPolytope& P) {
    if (M.cols() != P.dim)
        throw std::invalid_argument("linear_map: matrix has " + std::to_string(M.cols()) +
                                    " columns, set dimension is " + std::to_string(P.dim));
    ZPolytope out;
    out.dim = M.rows();
    out.num_factors = P.num_factors;
    out.center = M.apply(P.center);
    out.generators.reserve(P.generators.size());
    for (const auto& g : P.generators) out.generators.push_back(M.apply(g));
    out.exponents = P.exponents;
    return out;
}

namespace detail {

inline void require_same_dim(const ZPolytope& a, const ZPolytope& b, const char* op) {
    if (a.dim != b.dim)
        throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim) + " vs " +
                                    std::to_string(b.dim) + ")");
}

inline GeneratorBlock shifted_block(const ZPolytope& P, IndexList::value_type shift) {
    GeneratorBlock b{P.generators, {}};
    b.exponents.reserve(P.exponents.size());
    for (const auto& e : P.exponents) b.exponents.push_back(e.shifted(shift));
    return b;
}

}  // namespace detail

/// P1 (+) P2: factors of P2 are renumbered after those of P1.
inline ZPolytope minkowski_sum(const ZPolytope& P1, const ZPolytope& P2) {
    detail::require_same_dim(P1, P2, "minkowski_sum");
    Vec c(P1.dim);
    for (std::size_t d = 0; d < P1.dim; ++d) c[d] = P1.center[d] + P2.center[d];
    const auto shift = static_cast<IndexList::value_type>(P1.num_factors);
    return merge_concat(std::move(c), GeneratorBlock::of(P1), detail::shifted_block(P2, shift),
                        P1.num_factors + P2.num_factors);
}

/// conv(P1, P2) with one new factor p = p1 + p2 + 1 playing the role of the
/// interpolation parameter:
///   <(c1+c2)/2, [(c1-c2), G1, G1, G2, -G2]/2, ((p), E1, E1^p, E2', E2'^p)>
/// where E2' is E2 shifted by p1 and ^p appends p to each list.
/// No simplification is applied, so p, h and mu grow exactly as
/// p1+p2+1, 2h1+2h2+1 and 2mu1+2mu2+h1+h2+1.
inline ZPolytope convex_hull(const ZPolytope& P1, const ZPolytope& P2) {
    detail::require_same_dim(P1, P2, "convex_hull");
    const std::size_t n = P1.dim;
    const auto shift = static_cast<IndexList::value_type>(P1.num_factors);
    const auto p = static_cast<IndexList::value_type>(P1.num_factors + P2.num_factors + 1);

    Vec c(n), half_diff(n);
    for (std::size_t d = 0; d < n; ++d) {
        c[d] = 0.5 * (P1.center[d] + P2.center[d]);
        half_diff[d] = 0.5 * (P1.center[d] - P2.center[d]);
    }

    GeneratorBlock first, second;
    first.generators.push_back(std::move(half_diff));
    first.exponents.push_back(IndexList{p});

    auto halved = [n](const Vec& g, double sign) {
        Vec h(n);
        for (std::size_t d = 0; d < n; ++d) h[d] = sign * 0.5 * g[d];
        return h;
    };
    for (std::size_t i = 0; i < P1.generators.size(); ++i) {
        first.generators.push_back(halved(P1.generators[i], 1.0));
        first.exponents.push_back(P1.exponents[i]);
    }
    for (std::size_t i = 0; i < P1.generators.size(); ++i) {
        first.generators.push_back(halved(P1.generators[i], 1.0));
        first.exponents.push_back(P1.exponents[i].appended(p));
    }
    for (std::size_t i = 0; i < P2.generators.size(); ++i) {
        second.generators.push_back(halved(P2.generators[i], 1.0));
        second.exponents.push_back(P2.exponents[i].shifted(shift));
    }
    for (std::size_t i = 0; i < P2.generators.size(); ++i) {
        second.generators.push_back(halved(P2.generators[i], -1.0));
        second.exponents.push_back(P2.exponents[i].shifted(shift).appended(p));
    }
    return merge_concat(std::move(c), first, second, p);
}

}  // namespace zonoset
