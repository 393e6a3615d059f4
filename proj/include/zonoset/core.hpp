#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "parallel.hpp"

namespace zonoset {

using Vec = std::vector<double>;

/// Thrown when an operation would enumerate more than 2^cap hypercube vertices.
class cap_exceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

inline constexpr unsigned default_enumeration_cap = 20;

// ---------------------------------------------------------------------------
// Dense row-major matrix, only as much as linear maps and file I/O need.
// ---------------------------------------------------------------------------
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vec apply(std::span<const double> x) const {
        if (x.size() != cols_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Vec y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix: dimension mismatch in product");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        return c;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Set representations
// ---------------------------------------------------------------------------

/// Polytope given as the convex hull of q vertices in R^dim.
struct VPolytope {
    std::size_t dim = 0;
    std::vector<Vec> vertices;

    friend bool operator==(const VPolytope&, const VPolytope&) = default;
};

/// Factor indices (1-based) whose product forms the variable part of one
/// generator. Canonical form is strictly increasing; validate() reports
/// anything else.
class IndexList {
public:
    using value_type = std::uint32_t;

    IndexList() = default;
    IndexList(std::initializer_list<value_type> idx) : idx_(idx) {}
    explicit IndexList(std::vector<value_type> idx) : idx_(std::move(idx)) {}

    std::size_t size() const { return idx_.size(); }
    bool empty() const { return idx_.empty(); }
    value_type operator[](std::size_t i) const { return idx_[i]; }
    auto begin() const { return idx_.begin(); }
    auto end() const { return idx_.end(); }
    const std::vector<value_type>& values() const { return idx_; }

    bool is_canonical() const {
        if (idx_.empty() || idx_.front() == 0) return false;
        return std::adjacent_find(idx_.begin(), idx_.end(),
                                  [](value_type a, value_type b) { return a >= b; }) == idx_.end();
    }

    /// Copy with every index increased by `shift`.
    IndexList shifted(value_type shift) const {
        IndexList out = *this;
        for (auto& i : out.idx_) i += shift;
        return out;
    }

    /// Copy with `k` appended; k must exceed every stored index.
    IndexList appended(value_type k) const {
        IndexList out = *this;
        out.idx_.push_back(k);
        return out;
    }

    friend auto operator<=>(const IndexList&, const IndexList&) = default;
    friend bool operator==(const IndexList&, const IndexList&) = default;

private:
    std::vector<value_type> idx_;
};

/// Z-representation <c, G, E>: c + sum_i (prod_{k in E_i} alpha_k) G_i with
/// alpha in [-1,1]^p. Generators are stored as columns.
struct ZPolytope {
    std::size_t dim = 0;
    std::size_t num_factors = 0;
    Vec center;
    std::vector<Vec> generators;
    std::vector<IndexList> exponents;

    std::size_t num_generators() const { return generators.size(); }

    /// mu: total count of stored factor indices.
    std::size_t num_indices() const {
        std::size_t mu = 0;
        for (const auto& e : exponents) mu += e.size();
        return mu;
    }

    /// The point <v, [], ()>.
    static ZPolytope point(Vec v) {
        ZPolytope z;
        z.dim = v.size();
        z.center = std::move(v);
        return z;
    }

    /// Builds a validated set. Generators with an empty index list are
    /// constants and are folded into the center.
    static ZPolytope make(Vec center, std::vector<Vec> generators, std::vector<IndexList> exponents,
                          std::size_t num_factors);

    friend bool operator==(const ZPolytope&, const ZPolytope&) = default;
};

/// Sparse polynomial zonotope with nonnegative integer exponents. The
/// constant term lives in `center`; terms are kept merged with pairwise
/// distinct, nonzero exponent vectors.
struct PolyZonotope {
    using Exponent = std::vector<std::uint32_t>;

    struct Term {
        Vec coeff;
        Exponent exponent;
        friend bool operator==(const Term&, const Term&) = default;
    };

    std::size_t dim = 0;
    std::size_t num_factors = 0;
    Vec center;
    std::vector<Term> terms;

    /// Merges equal exponents, folds zero exponents into the center and
    /// sorts terms by exponent.
    void canonicalize();

    friend bool operator==(const PolyZonotope&, const PolyZonotope&) = default;
};

struct SizeStats {
    std::size_t p = 0;
    std::size_t h = 0;
    std::size_t mu = 0;
    std::size_t n_z = 0;

    friend bool operator==(const SizeStats&, const SizeStats&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Every violated ZPolytope invariant, one description each.
inline std::vector<std::string> validate(const ZPolytope& P) {
    std::vector<std::string> out;
    if (P.dim == 0) out.emplace_back("dimension must be positive");
    if (P.center.size() != P.dim)
        out.push_back("center has length " + std::to_string(P.center.size()) + ", expected " +
                      std::to_string(P.dim));
    if (P.generators.size() != P.exponents.size())
        out.push_back("generator count " + std::to_string(P.generators.size()) +
                      " differs from index-list count " + std::to_string(P.exponents.size()));
    for (std::size_t i = 0; i < P.generators.size(); ++i)
        if (P.generators[i].size() != P.dim)
            out.push_back("generator " + std::to_string(i + 1) + " has length " +
                          std::to_string(P.generators[i].size()));
    for (std::size_t i = 0; i < P.exponents.size(); ++i) {
        const auto& e = P.exponents[i];
        const std::string tag = "index list " + std::to_string(i + 1);
        if (e.empty()) {
            out.push_back(tag + " is empty");
            continue;
        }
        std::vector<IndexList::value_type> sorted(e.begin(), e.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            out.push_back(tag + " repeats a factor index");
        else if (!e.is_canonical() && sorted.front() != 0)
            out.push_back(tag + " is not strictly increasing");
        for (auto k : e)
            if (k == 0 || k > P.num_factors) {
                out.push_back(tag + " has index " + std::to_string(k) + " outside 1.." +
                              std::to_string(P.num_factors));
                break;
            }
    }
    return out;
}

inline ZPolytope ZPolytope::make(Vec center, std::vector<Vec> generators, std::vector<IndexList> exponents,
                                 std::size_t num_factors) {
    if (generators.size() != exponents.size())
        throw std::invalid_argument("ZPolytope: generator and index-list counts differ");
    ZPolytope z;
    z.dim = center.size();
    z.num_factors = num_factors;
    z.center = std::move(center);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (exponents[i].empty()) {
            if (generators[i].size() != z.dim) throw std::invalid_argument("ZPolytope: generator length");
            for (std::size_t d = 0; d < z.dim; ++d) z.center[d] += generators[i][d];
            continue;
        }
        z.generators.push_back(std::move(generators[i]));
        z.exponents.push_back(std::move(exponents[i]));
    }
    if (auto v = validate(z); !v.empty()) throw std::invalid_argument("ZPolytope: " + v.front());
    return z;
}

inline SizeStats size_stats(const ZPolytope& P) {
    SizeStats s;
    s.p = P.num_factors;
    s.h = P.num_generators();
    s.mu = P.num_indices();
    s.n_z = P.dim * (s.h + 1) + s.mu;
    return s;
}

/// Point of P for the factor assignment alpha. Entries outside [-1,1] are
/// rejected unless allow_outside is set.
inline Vec evaluate(const ZPolytope& P, std::span<const double> alpha, bool allow_outside = false) {
    if (alpha.size() != P.num_factors)
        throw std::invalid_argument("evaluate: expected " + std::to_string(P.num_factors) + " factors, got " +
                                    std::to_string(alpha.size()));
    if (!allow_outside)
        for (double a : alpha)
            if (!(a >= -1.0 && a <= 1.0)) throw std::out_of_range("evaluate: factor value outside [-1,1]");
    Vec x = P.center;
    for (std::size_t i = 0; i < P.generators.size(); ++i) {
        double m = 1.0;
        for (auto k : P.exponents[i]) m *= alpha[k - 1];
        const auto& g = P.generators[i];
        for (std::size_t d = 0; d < P.dim; ++d) x[d] += m * g[d];
    }
    return x;
}

inline Vec evaluate_pz(const PolyZonotope& Q, std::span<const double> alpha, bool allow_outside = false) {
    if (alpha.size() != Q.num_factors)
        throw std::invalid_argument("evaluate_pz: expected " + std::to_string(Q.num_factors) + " factors");
    if (!allow_outside)
        for (double a : alpha)
            if (!(a >= -1.0 && a <= 1.0)) throw std::out_of_range("evaluate_pz: factor value outside [-1,1]");
    Vec x = Q.center;
    for (const auto& t : Q.terms) {
        double m = 1.0;
        for (std::size_t k = 0; k < t.exponent.size(); ++k)
            for (std::uint32_t e = 0; e < t.exponent[k]; ++e) m *= alpha[k];
        for (std::size_t d = 0; d < Q.dim; ++d) x[d] += m * t.coeff[d];
    }
    return x;
}

inline void PolyZonotope::canonicalize() {
    std::map<Exponent, Vec> merged;
    for (auto& t : terms) {
        if (std::all_of(t.exponent.begin(), t.exponent.end(), [](std::uint32_t e) { return e == 0; })) {
            for (std::size_t d = 0; d < dim; ++d) center[d] += t.coeff[d];
            continue;
        }
        auto [it, fresh] = merged.try_emplace(t.exponent, t.coeff);
        if (!fresh)
            for (std::size_t d = 0; d < dim; ++d) it->second[d] += t.coeff[d];
    }
    terms.clear();
    terms.reserve(merged.size());
    for (auto& [e, c] : merged) terms.push_back({std::move(c), e});
}

/// The same set as a general polynomial zonotope (exponents 0/1).
inline PolyZonotope lift_to_pz(const ZPolytope& P) {
    PolyZonotope Q;
    Q.dim = P.dim;
    Q.num_factors = P.num_factors;
    Q.center = P.center;
    Q.terms.reserve(P.generators.size());
    for (std::size_t i = 0; i < P.generators.size(); ++i) {
        PolyZonotope::Exponent e(P.num_factors, 0);
        for (auto k : P.exponents[i]) e[k - 1] = 1;
        Q.terms.push_back({P.generators[i], std::move(e)});
    }
    return Q;
}

struct RegularizeResult {
    ZPolytope set;
    /// factor_map[k-1] is the new 1-based index of old factor k, or 0 when
    /// factor k no longer occurs.
    std::vector<std::uint32_t> factor_map;

    /// Factor assignment for `set` equivalent to `alpha` for the input.
    Vec map_alpha(std::span<const double> alpha) const {
        Vec out(set.num_factors, 0.0);
        for (std::size_t k = 0; k < factor_map.size() && k < alpha.size(); ++k)
            if (factor_map[k] != 0) out[factor_map[k] - 1] = alpha[k];
        return out;
    }
};

inline constexpr double zero_generator_tol = 1e-12;

/// Merges generators with identical variable parts, drops zero generators
/// and renumbers the factors still in use.
inline RegularizeResult regularize(const ZPolytope& P) {
    std::map<IndexList, std::size_t> slot;
    std::vector<Vec> gens;
    std::vector<IndexList> exps;
    for (std::size_t i = 0; i < P.generators.size(); ++i) {
        auto [it, fresh] = slot.try_emplace(P.exponents[i], gens.size());
        if (fresh) {
            gens.push_back(P.generators[i]);
            exps.push_back(P.exponents[i]);
        } else {
            auto& g = gens[it->second];
            for (std::size_t d = 0; d < P.dim; ++d) g[d] += P.generators[i][d];
        }
    }

    RegularizeResult r;
    r.set.dim = P.dim;
    r.set.center = P.center;
    std::vector<bool> used(P.num_factors, false);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const bool zero = std::all_of(gens[i].begin(), gens[i].end(),
                                      [](double v) { return std::abs(v) <= zero_generator_tol; });
        if (zero) continue;
        for (auto k : exps[i]) used[k - 1] = true;
        r.set.generators.push_back(std::move(gens[i]));
        r.set.exponents.push_back(std::move(exps[i]));
    }

    r.factor_map.assign(P.num_factors, 0);
    std::uint32_t next = 0;
    for (std::size_t k = 0; k < P.num_factors; ++k)
        if (used[k]) r.factor_map[k] = ++next;
    r.set.num_factors = next;
    for (auto& e : r.set.exponents) {
        std::vector<IndexList::value_type> idx(e.begin(), e.end());
        for (auto& k : idx) k = r.factor_map[k - 1];
        e = IndexList(std::move(idx));
    }
    return r;
}

namespace detail {

inline void check_cap(std::size_t p, unsigned cap) {
    if (p > cap || p > 62)
        throw cap_exceeded("hypercube enumeration over " + std::to_string(p) + " factors exceeds the cap of " +
                           std::to_string(cap));
}

/// Bit masks of the factors in each index list (bit k-1 for factor k).
inline std::vector<std::uint64_t> factor_masks(const ZPolytope& P) {
    std::vector<std::uint64_t> masks;
    masks.reserve(P.exponents.size());
    for (const auto& e : P.exponents) {
        std::uint64_t m = 0;
        for (auto k : e) m |= std::uint64_t{1} << (k - 1);
        masks.push_back(m);
    }
    return masks;
}

/// Point of P at the hypercube vertex where alpha_k = -1 iff bit k-1 of
/// `negative` is set.
inline void vertex_image(const ZPolytope& P, std::span<const std::uint64_t> masks, std::uint64_t negative,
                         double* out) {
    for (std::size_t d = 0; d < P.dim; ++d) out[d] = P.center[d];
    for (std::size_t i = 0; i < masks.size(); ++i) {
        const double s = (std::popcount(masks[i] & negative) & 1) ? -1.0 : 1.0;
        const auto& g = P.generators[i];
        for (std::size_t d = 0; d < P.dim; ++d) out[d] += s * g[d];
    }
}

/// Factor assignment (+1/-1 entries) encoded by `negative`.
inline Vec vertex_alpha(std::size_t p, std::uint64_t negative) {
    Vec a(p);
    for (std::size_t k = 0; k < p; ++k) a[k] = ((negative >> k) & 1) ? -1.0 : 1.0;
    return a;
}

}  // namespace detail

/// Smallest axis-aligned box containing P. Each coordinate is multilinear in
/// the factors, so its extremes sit on hypercube vertices.
inline std::vector<Interval> interval_hull(const ZPolytope& P, unsigned cap = default_enumeration_cap) {
    detail::check_cap(P.num_factors, cap);
    const auto masks = detail::factor_masks(P);
    const std::size_t count = std::size_t{1} << P.num_factors;
    const std::size_t n = P.dim;

    struct Partial {
        Vec lo, hi;
    };
    // fixed slot count keeps the reduction order independent of the threads
    std::vector<Partial> slots(std::min<std::size_t>(count, 64));

    const std::size_t step = (count + slots.size() - 1) / slots.size();
    parallel_chunks(
        slots.size(),
        [&](std::size_t b, std::size_t e) {
            Vec x(n);
            for (std::size_t s = b; s < e; ++s) {
                Partial acc{Vec(n, std::numeric_limits<double>::infinity()),
                            Vec(n, -std::numeric_limits<double>::infinity())};
                const std::size_t lo = s * step, hi = std::min(count, lo + step);
                for (std::size_t v = lo; v < hi; ++v) {
                    detail::vertex_image(P, masks, v, x.data());
                    for (std::size_t d = 0; d < n; ++d) {
                        acc.lo[d] = std::min(acc.lo[d], x[d]);
                        acc.hi[d] = std::max(acc.hi[d], x[d]);
                    }
                }
                slots[s] = std::move(acc);
            }
        },
        1);

    std::vector<Interval> box(n, Interval{std::numeric_limits<double>::infinity(),
                                          -std::numeric_limits<double>::infinity()});
    for (const auto& s : slots) {
        for (std::size_t d = 0; d < n; ++d) box[d] = Interval{std::min(box[d].lo, s.lo[d]), std::max(box[d].hi, s.hi[d])};
    }
    return box;
}

}  // namespace zonoset
