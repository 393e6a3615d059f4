#pragma once

// Fixtures and independent oracles shared by the unit tests and the
// acceptance runner.

#include <zonoset/zonoset.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sys/wait.h>
#include <string>
#include <vector>

namespace zonoset::testing {

inline ZPolytope example1() {
    return ZPolytope::make({-0.5, 0}, {{1.5, -0.5}, {-0.5, -2}, {-0.5, 0.5}}, {{1}, {2}, {1, 2}}, 2);
}

inline ZPolytope example2() {
    return ZPolytope::make({-0.5, 0}, {{-0.5, 0.5}, {-0.5, -2}, {1.5, -0.5}}, {{1}, {2}, {1, 2}}, 2);
}

inline ZPolytope example4() {
    return ZPolytope::make({0, -0.5}, {{1, -0.5}, {0, 1.5}, {1, -0.5}}, {{1}, {2}, {1, 2}}, 2);
}

inline VPolytope hexagon() { return {2, {{0, 5}, {3, 6}, {4, 5}, {5, 1}, {2, 0}, {0, 2}}}; }

/// -(x1 - 1.5)^2 - (x2 - 1)^2 + 4 cos(x1) sin(x2)
inline Expr example4_function() {
    const Expr x1 = Expr::var(1), x2 = Expr::var(2);
    return Expr::nary(Expr::Op::add, {-pow(x1 - Expr::constant(1.5), 2), -pow(x2 - Expr::constant(1), 2),
                                      Expr::constant(4) * (cos(x1) * sin(x2))});
}

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t uniform_int(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline Vec random_alpha(Rng& rng, std::size_t p) {
    Vec a(p);
    for (auto& x : a) x = uniform(rng);
    return a;
}

/// Random valid set with dim n, p factors and h generators. Index lists are
/// random nonempty subsets of 1..p (repeats across generators allowed).
inline ZPolytope random_zpoly(Rng& rng, std::size_t n, std::size_t p, std::size_t h, double scale = 1.0) {
    ZPolytope P;
    P.dim = n;
    P.num_factors = p;
    P.center.resize(n);
    for (auto& c : P.center) c = uniform(rng, -scale, scale);
    if (p == 0) return P;
    for (std::size_t i = 0; i < h; ++i) {
        Vec g(n);
        for (auto& x : g) x = uniform(rng, -scale, scale);
        std::vector<IndexList::value_type> idx;
        while (idx.empty())
            for (std::size_t k = 1; k <= p; ++k)
                if (uniform(rng, 0, 1) < 0.4) idx.push_back(static_cast<IndexList::value_type>(k));
        P.generators.push_back(std::move(g));
        P.exponents.emplace_back(std::move(idx));
    }
    return P;
}

/// q points in convex position on a random ellipse. Angles are stratified
/// with jitter, so neighbours are at least 0.4 * 2pi / q apart.
inline std::vector<Vec> random_convex_polygon(Rng& rng, std::size_t q) {
    const double step = 2.0 * M_PI / static_cast<double>(q), offset = uniform(rng, 0.0, 2.0 * M_PI);
    const double rx = uniform(rng, 1, 4), ry = uniform(rng, 1, 4), cx = uniform(rng, -3, 3), cy = uniform(rng, -3, 3);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < q; ++i) {
        const double a = offset + step * (static_cast<double>(i) + uniform(rng, 0.0, 0.6));
        pts.push_back({cx + rx * std::cos(a), cy + ry * std::sin(a)});
    }
    return pts;
}

inline double dist(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

/// Every point of `a` has a partner in `b` within tol and vice versa, and the
/// sizes agree.
inline bool same_point_set(const std::vector<Vec>& a, const std::vector<Vec>& b, double tol) {
    if (a.size() != b.size()) return false;
    auto covered = [tol](const std::vector<Vec>& x, const std::vector<Vec>& y) {
        return std::all_of(x.begin(), x.end(), [&](const Vec& p) {
            return std::any_of(y.begin(), y.end(), [&](const Vec& q) { return dist(p, q) <= tol; });
        });
    };
    return covered(a, b) && covered(b, a);
}

inline double cross3(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// O(n^3) hull oracle for points in general position: (i, j) is a hull edge
/// when every other point lies strictly to its left.
inline std::vector<Vec> brute_force_hull(const std::vector<Vec>& pts) {
    std::vector<bool> vertex(pts.size(), false);
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            bool edge = true;
            for (std::size_t k = 0; k < pts.size() && edge; ++k)
                if (k != i && k != j && cross3(pts[i], pts[j], pts[k]) <= 0) edge = false;
            if (edge) vertex[i] = vertex[j] = true;
        }
    std::vector<Vec> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (vertex[i]) out.push_back(pts[i]);
    return out;
}

/// Outward edge normals (unit length) and offsets of a counterclockwise
/// polygon with at least three vertices.
struct Halfplanes {
    std::vector<std::array<double, 3>> rows;  // u0, u1, d with u.x <= d

    explicit Halfplanes(const std::vector<Vec>& ccw) {
        for (std::size_t i = 0; i < ccw.size(); ++i) {
            const Vec& a = ccw[i];
            const Vec& b = ccw[(i + 1) % ccw.size()];
            const double ex = b[0] - a[0], ey = b[1] - a[1];
            const double len = std::hypot(ex, ey);
            const double ux = ey / len, uy = -ex / len;
            rows.push_back({ux, uy, ux * a[0] + uy * a[1]});
        }
    }

    /// Largest violation u.x - d over all edges.
    double excess(const double* x) const {
        double worst = -1e300;
        for (const auto& r : rows) worst = std::max(worst, r[0] * x[0] + r[1] * x[1] - r[2]);
        return worst;
    }
};

inline std::string read_text(const std::string& path) {
    std::string s;
    if (FILE* f = std::fopen(path.c_str(), "rb")) {
        char buf[4096];
        std::size_t n;
        while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
        std::fclose(f);
    }
    return s;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

/// Runs a shell command and captures its standard output.
inline RunResult run_command(const std::string& cmd) {
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

/// Random expression tree over x1..xn using every supported node kind.
inline Expr random_expr(Rng& rng, std::uint32_t n, unsigned depth) {
    using Op = Expr::Op;
    if (depth == 0 || uniform(rng, 0, 1) < 0.2) {
        if (uniform(rng, 0, 1) < 0.7) return Expr::var(static_cast<std::uint32_t>(uniform_int(rng, 1, n)));
        return Expr::constant(std::round(uniform(rng, -2, 2) * 4) / 4);
    }
    switch (uniform_int(rng, 0, 8)) {
        case 0: return random_expr(rng, n, depth - 1) + random_expr(rng, n, depth - 1);
        case 1: return random_expr(rng, n, depth - 1) - random_expr(rng, n, depth - 1);
        case 2: return random_expr(rng, n, depth - 1) * random_expr(rng, n, depth - 1);
        case 3: return pow(random_expr(rng, n, depth - 1), static_cast<unsigned>(uniform_int(rng, 2, 3)));
        case 4: return -random_expr(rng, n, depth - 1);
        case 5: return random_expr(rng, n, depth - 1) / (uniform(rng, 0, 1) < 0.5 ? 2.0 : -3.0);
        case 6: return sin(random_expr(rng, n, depth - 1));
        case 7: return cos(random_expr(rng, n, depth - 1));
        default: return Expr::unary(Op::exp, random_expr(rng, n, depth - 1) / 2.0);
    }
}

}  // namespace zonoset::testing
