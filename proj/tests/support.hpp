#pragma once

// Test-side oracles and generators. Nothing here calls into the library's
// arithmetic: expansions are built from geometric series, q-binomials from the
// Pascal recursion, Euler forms from adjacency matrices.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <qlink/qcoef.hpp>
#include <qlink/quiver.hpp>

namespace qlink::testing
{

// Truncated Laurent series sum_{e <= order} c_e s^e, stored sparsely.
using Expansion = std::map<std::int64_t, mpz_class>;

inline Expansion prune(Expansion x)
{
    for (auto it = x.begin(); it != x.end();) {
        it = (it->second == 0) ? x.erase(it) : std::next(it);
    }
    return x;
}

inline Expansion mul(const Expansion &a, const Expansion &b, std::int64_t order)
{
    Expansion out;
    for (const auto &[ea, ca] : a) {
        for (const auto &[eb, cb] : b) {
            if (ea + eb <= order) {
                out[ea + eb] += ca * cb;
            }
        }
    }
    return prune(out);
}

inline Expansion add(Expansion a, const Expansion &b)
{
    for (const auto &[e, c] : b) {
        a[e] += c;
    }
    return prune(a);
}

// 1 / (1 - s^step) = 1 + s^step + s^{2 step} + ...
inline Expansion geometric(std::int64_t step, std::int64_t order)
{
    Expansion out;
    for (std::int64_t e = 0; e <= order; e += step) {
        out[e] = 1;
    }
    return out;
}

// (-s)^chi / prod_i prod_{m <= d_i} (1 - s^{2m}), expanded to `order`.
inline Expansion expected_A(std::int64_t chi, const std::vector<std::int64_t> &d, std::int64_t order)
{
    const std::int64_t budget = order - chi;
    if (budget < 0) {
        return {};
    }
    Expansion p{{0, 1}};
    for (auto n : d) {
        for (std::int64_t m = 1; m <= n; ++m) {
            p = mul(p, geometric(2 * m, budget), budget);
        }
    }
    Expansion out;
    const int sign = (chi % 2 == 0) ? 1 : -1;
    for (const auto &[e, c] : p) {
        out[e + chi] = sign * c;
    }
    return out;
}

inline Expansion expand(const QHalfRational &x, std::int64_t order)
{
    Expansion out;
    for (const auto &t : laurent_expand(x, order)) {
        out[t.exponent] = t.coefficient;
    }
    return out;
}

// Gaussian binomial in q = s^2 via [n,m] = [n-1,m-1] + q^m [n-1,m]; index is
// the s-exponent.
inline std::vector<mpz_class> pascal_qbinomial(int n, int m)
{
    std::vector<std::vector<std::vector<mpz_class>>> t(n + 1);
    for (int i = 0; i <= n; ++i) {
        t[i].resize(i + 1);
        for (int j = 0; j <= i; ++j) {
            if (j == 0 || j == i) {
                t[i][j] = {1};
                continue;
            }
            const auto &a = t[i - 1][j - 1];
            const auto &b = t[i - 1][j];
            std::vector<mpz_class> c(std::max(a.size(), b.size() + 2 * j), 0);
            for (std::size_t k = 0; k < a.size(); ++k) {
                c[k] += a[k];
            }
            for (std::size_t k = 0; k < b.size(); ++k) {
                c[k + 2 * j] += b[k];
            }
            t[i][j] = c;
        }
    }
    return t[n][m];
}

// Euler form from the adjacency matrix: sum_i a_i b_i - sum_{ij} C_ij a_j b_i.
inline std::int64_t euler_via_matrix(const Matrix &c, const std::vector<std::int64_t> &a,
                                     const std::vector<std::int64_t> &b)
{
    std::int64_t out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += a[i] * b[i];
        for (std::size_t j = 0; j < a.size(); ++j) {
            out -= c[i][j] * a[j] * b[i];
        }
    }
    return out;
}

struct RandomQuiver {
    Quiver quiver;
    TwoCyclePointer tc; // valid only when generated with a two-cycle
    VertexPairPointer pair;
};

// Quiver on 2..max_vertices vertices "0", "1", ... with at most max_arrows
// arrows (loops and parallel arrows allowed). With `twocycle`, arrows c, d
// between a random pair come first.
inline RandomQuiver random_quiver(std::mt19937_64 &rng, bool twocycle, int max_vertices = 4, int max_arrows = 6,
                                  bool symmetric = false)
{
    std::uniform_int_distribution<int> nv(2, max_vertices);
    const int n = nv(rng);
    std::vector<VertexId> vs;
    for (int i = 0; i < n; ++i) {
        vs.push_back(std::to_string(i));
    }
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int a = pick(rng);
    int b = pick(rng);
    while (b == a) {
        b = pick(rng);
    }
    std::vector<Arrow> arrows;
    int label = 0;
    auto fresh = [&] { return "x" + std::to_string(label++); };
    RandomQuiver out;
    out.pair = {vs[a], vs[b]};
    if (twocycle) {
        arrows.push_back({"c", vs[a], vs[b]});
        arrows.push_back({"d", vs[b], vs[a]});
        out.tc = {"c", "d", vs[a], vs[b]};
    }
    std::uniform_int_distribution<int> extra(0, max_arrows - static_cast<int>(arrows.size()));
    const int m = extra(rng);
    while (static_cast<int>(arrows.size()) < static_cast<int>(twocycle ? 2 : 0) + m) {
        const int s = pick(rng);
        const int t = pick(rng);
        if (symmetric && s != t) {
            if (static_cast<int>(arrows.size()) + 2 > max_arrows) {
                break;
            }
            arrows.push_back({fresh(), vs[s], vs[t]});
            arrows.push_back({fresh(), vs[t], vs[s]});
        } else {
            arrows.push_back({fresh(), vs[s], vs[t]});
        }
    }
    out.quiver = Quiver("r", vs, arrows);
    return out;
}

inline std::vector<std::int64_t> random_dim(std::mt19937_64 &rng, std::size_t n, int max_entry = 4)
{
    std::uniform_int_distribution<int> dist(0, max_entry);
    std::vector<std::int64_t> out(n);
    for (auto &x : out) {
        x = dist(rng);
    }
    return out;
}

} // namespace qlink::testing
