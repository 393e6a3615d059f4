#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "core.hpp"
#include "interval.hpp"

namespace zonoset {

/// Packed monomial: exponent of factor k (0-based) in bits [4k, 4k+4).
/// Products of monomials are sums of keys as long as no exponent exceeds 15,
/// which the degree cap guarantees.
namespace monomial {

inline constexpr unsigned bits = 4;
inline constexpr unsigned max_factors = 64 / bits;
inline constexpr unsigned max_exponent = (1u << bits) - 1;
inline constexpr std::uint64_t low_bits = 0x1111111111111111ull;

inline unsigned exponent(std::uint64_t key, std::size_t k) {
    return static_cast<unsigned>((key >> (bits * k)) & max_exponent);
}

inline std::uint64_t unit(std::size_t k) { return std::uint64_t{1} << (bits * k); }

inline unsigned degree(std::uint64_t key) {
    unsigned d = 0;
    for (; key != 0; key >>= bits) d += static_cast<unsigned>(key & max_exponent);
    return d;
}

/// Range of the monomial over [-1,1]^p: [0,1] when every exponent is even,
/// [-1,1] otherwise.
inline Interval range(std::uint64_t key) {
    return (key & low_bits) == 0 ? Interval{0.0, 1.0} : Interval{-1.0, 1.0};
}

}  // namespace monomial

/// Scalar polynomial in the factors plus an interval remainder enclosing
/// everything the polynomial does not capture.
struct TaylorForm {
    struct Term {
        std::uint64_t key;
        double coeff;
        friend bool operator==(const Term&, const Term&) = default;
    };

    std::size_t num_factors = 0;
    double constant = 0.0;
    std::vector<Term> terms;  // sorted by key, nonzero keys only
    Interval remainder{0.0, 0.0};

    static TaylorForm make_constant(double c, std::size_t p) {
        check_factor_count(p);
        TaylorForm t;
        t.num_factors = p;
        t.constant = c;
        return t;
    }

    /// Scalar polynomial zonotope as a form with the given remainder.
    static TaylorForm from_pz(const PolyZonotope& Q, Interval rem = Interval{0.0, 0.0}) {
        if (Q.dim != 1) throw std::invalid_argument("TaylorForm: polynomial zonotope must be one-dimensional");
        check_factor_count(Q.num_factors);
        TaylorForm t = make_constant(Q.center[0], Q.num_factors);
        std::unordered_map<std::uint64_t, double> acc;
        for (const auto& term : Q.terms) {
            std::uint64_t key = 0;
            for (std::size_t k = 0; k < term.exponent.size(); ++k) {
                if (term.exponent[k] > monomial::max_exponent)
                    throw std::invalid_argument("TaylorForm: exponent above " + std::to_string(monomial::max_exponent));
                key += static_cast<std::uint64_t>(term.exponent[k]) << (monomial::bits * k);
            }
            if (key == 0)
                t.constant += term.coeff[0];
            else
                acc[key] += term.coeff[0];
        }
        t.assign_terms(acc);
        t.remainder = rem;
        return t;
    }

    /// The polynomial part as a one-dimensional polynomial zonotope.
    PolyZonotope poly() const {
        PolyZonotope Q;
        Q.dim = 1;
        Q.num_factors = num_factors;
        Q.center = {constant};
        for (const auto& t : terms) {
            PolyZonotope::Exponent e(num_factors);
            for (std::size_t k = 0; k < num_factors; ++k) e[k] = monomial::exponent(t.key, k);
            Q.terms.push_back({{t.coeff}, std::move(e)});
        }
        return Q;
    }

    bool is_constant() const { return terms.empty() && remainder.lo == 0.0 && remainder.hi == 0.0; }

    /// Polynomial value at alpha (remainder excluded).
    double eval_poly(std::span<const double> alpha) const {
        double s = constant;
        for (const auto& t : terms) {
            double m = t.coeff;
            for (std::size_t k = 0; k < num_factors; ++k)
                for (unsigned e = monomial::exponent(t.key, k); e > 0; --e) m *= alpha[k];
            s += m;
        }
        return s;
    }

    void assign_terms(const std::unordered_map<std::uint64_t, double>& acc) {
        terms.clear();
        terms.reserve(acc.size());
        for (const auto& [k, c] : acc)
            if (c != 0.0) terms.push_back({k, c});
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    }

    static void check_factor_count(std::size_t p) {
        if (p > monomial::max_factors)
            throw std::invalid_argument("TaylorForm: at most " + std::to_string(monomial::max_factors) +
                                        " factors supported");
    }
};

namespace detail {

inline void require_same_factors(const TaylorForm& a, const TaylorForm& b) {
    if (a.num_factors != b.num_factors)
        throw std::invalid_argument("TaylorForm: factor-count mismatch (" + std::to_string(a.num_factors) + " vs " +
                                    std::to_string(b.num_factors) + ")");
}

inline void check_cap(unsigned cap) {
    if (cap > monomial::max_exponent)
        throw std::invalid_argument("TaylorForm: degree cap above " + std::to_string(monomial::max_exponent));
}

/// Range of the polynomial part only.
inline Interval poly_range(const TaylorForm& t) {
    double lo = t.constant, hi = t.constant;
    for (const auto& term : t.terms) {
        const Interval r = term.coeff * monomial::range(term.key);
        lo += r.lo;
        hi += r.hi;
    }
    return {lo, hi};
}

}  // namespace detail

/// Enclosure of t over the factor box: constant + sum of coefficient times
/// monomial range + remainder.
inline Interval tf_bound(const TaylorForm& t) { return detail::poly_range(t) + t.remainder; }

inline TaylorForm add(const TaylorForm& a, const TaylorForm& b) {
    detail::require_same_factors(a, b);
    TaylorForm out;
    out.num_factors = a.num_factors;
    out.constant = a.constant + b.constant;
    out.remainder = a.remainder + b.remainder;
    out.terms.reserve(a.terms.size() + b.terms.size());
    auto i = a.terms.begin(), j = b.terms.begin();
    while (i != a.terms.end() || j != b.terms.end()) {
        if (j == b.terms.end() || (i != a.terms.end() && i->key < j->key)) {
            out.terms.push_back(*i++);
        } else if (i == a.terms.end() || j->key < i->key) {
            out.terms.push_back(*j++);
        } else {
            const double c = i->coeff + j->coeff;
            if (c != 0.0) out.terms.push_back({i->key, c});
            ++i;
            ++j;
        }
    }
    return out;
}

inline TaylorForm add_constant(TaylorForm a, double c) {
    a.constant += c;
    return a;
}

inline TaylorForm scale(double k, TaylorForm a) {
    if (k == 0.0) return TaylorForm::make_constant(0.0, a.num_factors);
    a.constant *= k;
    for (auto& t : a.terms) t.coeff *= k;
    a.remainder = k * a.remainder;
    return a;
}

/// Product; monomials of total degree above `cap` and all cross terms
/// involving remainders go into the remainder of the result.
inline TaylorForm multiply(const TaylorForm& a, const TaylorForm& b, unsigned cap) {
    detail::require_same_factors(a, b);
    detail::check_cap(cap);
    TaylorForm out;
    out.num_factors = a.num_factors;
    out.constant = a.constant * b.constant;

    std::unordered_map<std::uint64_t, double> acc;
    acc.reserve(a.terms.size() * (b.terms.size() + 1) + b.terms.size());
    double absorbed_lo = 0.0, absorbed_hi = 0.0;
    auto put = [&](std::uint64_t key, unsigned deg, double c) {
        if (c == 0.0) return;
        if (deg > cap) {
            const Interval r = c * monomial::range(key);
            absorbed_lo += r.lo;
            absorbed_hi += r.hi;
            return;
        }
        acc[key] += c;
    };

    std::vector<unsigned> deg_b(b.terms.size());
    for (std::size_t j = 0; j < b.terms.size(); ++j) deg_b[j] = monomial::degree(b.terms[j].key);
    for (const auto& ta : a.terms) put(ta.key, monomial::degree(ta.key), ta.coeff * b.constant);
    for (std::size_t j = 0; j < b.terms.size(); ++j) put(b.terms[j].key, deg_b[j], a.constant * b.terms[j].coeff);
    for (const auto& ta : a.terms) {
        const unsigned da = monomial::degree(ta.key);
        for (std::size_t j = 0; j < b.terms.size(); ++j) {
            const unsigned d = da + deg_b[j];
            if (d > cap) {
                // key may not be representable; only its parity matters
                const bool all_even = ((ta.key ^ b.terms[j].key) & monomial::low_bits) == 0;
                const Interval r = (ta.coeff * b.terms[j].coeff) * (all_even ? Interval{0.0, 1.0} : Interval{-1.0, 1.0});
                absorbed_lo += r.lo;
                absorbed_hi += r.hi;
                continue;
            }
            put(ta.key + b.terms[j].key, d, ta.coeff * b.terms[j].coeff);
        }
    }
    out.assign_terms(acc);

    const Interval pa = detail::poly_range(a), pb = detail::poly_range(b);
    out.remainder = Interval{absorbed_lo, absorbed_hi} + pa * b.remainder + pb * a.remainder + a.remainder * b.remainder;
    return out;
}

inline TaylorForm int_pow(const TaylorForm& a, unsigned k, unsigned cap) {
    if (k == 0) return TaylorForm::make_constant(1.0, a.num_factors);
    TaylorForm r = a;
    for (unsigned i = 1; i < k; ++i) r = multiply(r, a, cap);
    return r;
}

enum class Transcendental { sin, cos, exp };

/// Order-k Taylor expansion of g(u) around the midpoint m0 of u's bound, with
/// Lagrange remainder M r^(k+1)/(k+1)!, r the bound's radius.
inline TaylorForm tf_transcendental(Transcendental kind, const TaylorForm& u, unsigned order, unsigned cap) {
    if (order < 1) throw std::invalid_argument("tf_transcendental: order must be >= 1");
    const Interval b = tf_bound(u);
    const double m0 = b.mid();
    const double r = b.rad();

    auto derivative = [&](unsigned j) {
        switch (kind) {
            case Transcendental::sin:
                switch (j % 4) {
                    case 0: return std::sin(m0);
                    case 1: return std::cos(m0);
                    case 2: return -std::sin(m0);
                    default: return -std::cos(m0);
                }
            case Transcendental::cos:
                switch (j % 4) {
                    case 0: return std::cos(m0);
                    case 1: return -std::sin(m0);
                    case 2: return -std::cos(m0);
                    default: return std::sin(m0);
                }
            case Transcendental::exp: return std::exp(m0);
        }
        return 0.0;
    };

    TaylorForm out = TaylorForm::make_constant(derivative(0), u.num_factors);
    if (r == 0.0) return out;

    const TaylorForm w = add_constant(u, -m0);
    TaylorForm wj = w;
    double factorial = 1.0;
    for (unsigned j = 1; j <= order; ++j) {
        factorial *= j;
        if (j > 1) wj = multiply(wj, w, cap);
        out = add(out, scale(derivative(j) / factorial, wj));
    }
    const double M = kind == Transcendental::exp ? std::exp(b.hi) : 1.0;
    const double B = M * std::pow(r, order + 1) / (factorial * (order + 1));
    out.remainder = out.remainder + Interval{-B, B};
    return out;
}

/// Replaces factor k (0-based) by shift + slope * beta, expanding every
/// power binomially. The remainder is unaffected.
inline TaylorForm substitute_affine(const TaylorForm& t, std::size_t k, double shift, double slope) {
    std::unordered_map<std::uint64_t, double> acc;
    double constant = t.constant;
    const std::uint64_t unit = monomial::unit(k);
    for (const auto& term : t.terms) {
        const unsigned e = monomial::exponent(term.key, k);
        if (e == 0) {
            acc[term.key] += term.coeff;
            continue;
        }
        const std::uint64_t base = term.key - e * unit;
        // (shift + slope*beta)^e = sum_j C(e,j) shift^(e-j) slope^j beta^j
        double binom = 1.0;
        for (unsigned j = 0; j <= e; ++j) {
            if (j > 0) binom = binom * (e - j + 1) / j;
            const double c = term.coeff * binom * std::pow(shift, e - j) * std::pow(slope, j);
            const std::uint64_t key = base + j * unit;
            if (key == 0)
                constant += c;
            else
                acc[key] += c;
        }
    }
    TaylorForm out;
    out.num_factors = t.num_factors;
    out.constant = constant;
    out.assign_terms(acc);
    out.remainder = t.remainder;
    return out;
}

/// Per-factor sum of |coeff| over terms where that factor has an odd
/// exponent.
inline std::vector<double> odd_coefficient_mass(const TaylorForm& t) {
    std::vector<double> mass(t.num_factors, 0.0);
    for (const auto& term : t.terms)
        for (std::size_t k = 0; k < t.num_factors; ++k)
            if (monomial::exponent(term.key, k) % 2 == 1) mass[k] += std::abs(term.coeff);
    return mass;
}

}  // namespace zonoset
