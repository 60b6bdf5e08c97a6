#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <qlink/errors.hpp>
#include <qlink/qcoef.hpp>
#include <qlink/quiver.hpp>

namespace qlink
{

/// Finite window onto a formal series in the x-variables: the points d with
/// sum_i weight_i * d_i <= bound.
struct TruncationPolicy {
    std::map<VertexId, std::int64_t> weights;
    std::int64_t bound = 0;

    // Weight 1 on every vertex.
    static TruncationPolicy uniform(const Quiver &q, std::int64_t bound)
    {
        TruncationPolicy p;
        p.bound = bound;
        for (const auto &v : q.vertices()) {
            p.weights[v] = 1;
        }
        return p;
    }

    // Dense weights in vertex order; checks totality and positivity.
    std::vector<std::int64_t> dense_weights(const Quiver &q) const
    {
        if (bound < 0) {
            throw domain_error("truncation bound must be non-negative");
        }
        std::vector<std::int64_t> w;
        w.reserve(q.vertex_count());
        for (const auto &v : q.vertices()) {
            const auto it = weights.find(v);
            if (it == weights.end()) {
                throw domain_error("truncation policy has no weight for vertex '" + v + "'");
            }
            if (it->second <= 0) {
                throw domain_error("truncation weight of vertex '" + v + "' must be positive");
            }
            w.push_back(it->second);
        }
        if (weights.size() != q.vertex_count()) {
            throw domain_error("truncation policy names vertices outside the quiver");
        }
        return w;
    }

    std::int64_t weight_of(std::span<const std::int64_t> w, std::span<const std::int64_t> d) const
    {
        std::int64_t out = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            out += w[i] * d[i];
        }
        return out;
    }

    friend bool operator==(const TruncationPolicy &, const TruncationPolicy &) = default;
};

/// All points of the truncation region, lexicographically ascending in the
/// quiver's vertex order.
inline std::vector<DenseDim> region(const Quiver &q, const TruncationPolicy &policy)
{
    const auto w = policy.dense_weights(q);
    std::vector<DenseDim> out;
    DenseDim cur(q.vertex_count(), 0);
    // Depth-first with ascending entries yields lexicographic order.
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
        if (i == cur.size()) {
            out.push_back(cur);
            return;
        }
        for (std::int64_t n = 0; n * w[i] <= left; ++n) {
            cur[i] = n;
            rec(i + 1, left - n * w[i]);
        }
        cur[i] = 0;
    };
    rec(0, policy.bound);
    return out;
}

/// Truncated generating series: a total map from the truncation region to
/// coefficients.
class MotivicSeries
{
public:
    using Coefficients = std::map<DenseDim, QHalfRational>;

    MotivicSeries(Quiver quiver, TruncationPolicy policy, Coefficients coeffs)
        : m_quiver(std::move(quiver)), m_policy(std::move(policy)), m_coeffs(std::move(coeffs))
    {
        const auto w = m_policy.dense_weights(m_quiver);
        for (const auto &[d, c] : m_coeffs) {
            if (d.size() != m_quiver.vertex_count() || m_policy.weight_of(w, d) > m_policy.bound) {
                throw domain_error("series key outside the truncation region");
            }
        }
        if (m_coeffs.size() != region(m_quiver, m_policy).size()) {
            throw domain_error("series is not total on its truncation region");
        }
    }

    const Quiver &quiver() const noexcept
    {
        return m_quiver;
    }
    const TruncationPolicy &policy() const noexcept
    {
        return m_policy;
    }
    const Coefficients &coefficients() const noexcept
    {
        return m_coeffs;
    }
    std::size_t size() const noexcept
    {
        return m_coeffs.size();
    }

    const QHalfRational &at(const DimVector &d) const
    {
        return at(m_quiver.dense(d));
    }

    const QHalfRational &at(const DenseDim &d) const
    {
        const auto it = m_coeffs.find(d);
        if (it == m_coeffs.end()) {
            throw domain_error("dimension vector outside the truncation region");
        }
        return it->second;
    }

    // One line per region point: "<v:n,...>\t<coefficient>".
    std::string dump() const
    {
        std::string out;
        for (const auto &[d, c] : m_coeffs) {
            out += render(m_quiver, m_quiver.sparse(d));
            out += '\t';
            out += c.to_string();
            out += '\n';
        }
        return out;
    }

    friend MotivicSeries operator+(const MotivicSeries &a, const MotivicSeries &b)
    {
        require_comparable(a, b);
        Coefficients out = a.m_coeffs;
        for (auto &[d, c] : out) {
            c += b.m_coeffs.at(d);
        }
        return MotivicSeries(a.m_quiver, a.m_policy, std::move(out));
    }

    static void require_comparable(const MotivicSeries &a, const MotivicSeries &b)
    {
        if (a.m_quiver.vertices() != b.m_quiver.vertices()) {
            throw incomparable_error("series live on different vertex sets");
        }
        if (!(a.m_policy == b.m_policy)) {
            throw incomparable_error("series have different truncation policies");
        }
    }

private:
    Quiver m_quiver;
    TruncationPolicy m_policy;
    Coefficients m_coeffs;
};

struct Mismatch {
    DimVector at;
    QHalfRational lhs;
    QHalfRational rhs;
};

// Outcome of an identity check; holds unless a mismatch was recorded.
struct Verdict {
    std::optional<Mismatch> mismatch;

    bool holds() const noexcept
    {
        return !mismatch.has_value();
    }
    explicit operator bool() const noexcept
    {
        return holds();
    }

    // Keeps the first mismatch only.
    void record(const DimVector &at, const QHalfRational &lhs, const QHalfRational &rhs)
    {
        if (!mismatch && !(lhs == rhs)) {
            mismatch = Mismatch{at, lhs, rhs};
        }
    }
};

// Called once per checked index, in deterministic order.
using CheckObserver = std::function<void(const DimVector &at, const QHalfRational &lhs, const QHalfRational &rhs)>;

namespace detail
{

inline LaurentPoly poch_product(std::span<const std::int64_t> d)
{
    LaurentPoly out(1);
    for (auto n : d) {
        if (n > 0) {
            out *= poch_poly(n);
        }
    }
    return out;
}

inline void notify(const CheckObserver &obs, const DimVector &at, const QHalfRational &lhs, const QHalfRational &rhs)
{
    if (obs) {
        obs(at, lhs, rhs);
    }
}

} // namespace detail

/// Coefficient of x^d in the motivic generating series of q:
/// (-s)^chi(d,d) / prod_i (q;q)_{d_i}.
inline QHalfRational coefficient_A(const Quiver &q, std::span<const std::int64_t> d)
{
    const std::int64_t chi = euler_form(q, d, d);
    return QHalfRational(LaurentPoly::monomial(chi % 2 == 0 ? 1 : -1, chi), detail::poch_product(d));
}

inline QHalfRational coefficient_A(const Quiver &q, const DimVector &d)
{
    return coefficient_A(q, q.dense(d));
}

inline MotivicSeries series_A(const Quiver &q, const TruncationPolicy &policy)
{
    MotivicSeries::Coefficients coeffs;
    for (auto &d : region(q, policy)) {
        QHalfRational c = coefficient_A(q, d);
        coeffs.emplace(std::move(d), std::move(c));
    }
    return MotivicSeries(q, policy, std::move(coeffs));
}

// Coefficient of y^d in the adjacency-matrix series, written in s standing for
// t: (-s)^{sum_ij C_ij d_i d_j} / prod_i (1-s^2)...(1-s^{2 d_i}).
inline QHalfRational coefficient_P_EKL(const Quiver &q, std::span<const std::int64_t> d)
{
    std::int64_t e = 0;
    for (const auto &[s, t] : q.arrow_ends()) {
        e += d[s] * d[t];
    }
    return QHalfRational(LaurentPoly::monomial(e % 2 == 0 ? 1 : -1, e), detail::poch_product(d));
}

/// The adjacency-matrix series. Intended for symmetric quivers; callers
/// should warn when is_symmetric(q) is false.
inline MotivicSeries series_P_EKL(const Quiver &q, const TruncationPolicy &policy)
{
    MotivicSeries::Coefficients coeffs;
    for (auto &d : region(q, policy)) {
        QHalfRational c = coefficient_P_EKL(q, d);
        coeffs.emplace(std::move(d), std::move(c));
    }
    return MotivicSeries(q, policy, std::move(coeffs));
}

/// Compares A_Q(x, q) with P^Q(q^{-1/2} x, q^{-1/2}) coefficient by
/// coefficient. Requires a symmetric quiver.
inline Verdict check_lemma21(const Quiver &q, const TruncationPolicy &policy, const CheckObserver &obs = {})
{
    if (!is_symmetric(q)) {
        throw precondition_error("the A and P series are only compared on symmetric quivers");
    }
    Verdict verdict;
    for (const auto &d : region(q, policy)) {
        std::int64_t size = 0;
        for (auto n : d) {
            size += n;
        }
        const QHalfRational lhs = coefficient_A(q, d);
        const QHalfRational rhs = coefficient_P_EKL(q, d).reflected().shifted(-size);
        const DimVector at = q.sparse(d);
        verdict.record(at, lhs, rhs);
        detail::notify(obs, at, lhs, rhs);
    }
    return verdict;
}

/// Substitutes x_v -> s^{s_shift} x^image into a series and re-truncates on
/// the target quiver. The remaining source vertices must be target vertices.
/// Every target coefficient is assembled from its full preimage; if part of
/// that preimage lies outside the source region a coverage_error is thrown.
inline MotivicSeries substitute_vertex(const MotivicSeries &series, const VertexId &v, const DimVector &image,
                                       std::int64_t s_shift, const Quiver &target, const TruncationPolicy &policy)
{
    const Quiver &source = series.quiver();
    const auto vi = source.index_of(v);
    if (!vi) {
        throw domain_error("substituted vertex '" + v + "' is not in the source quiver");
    }
    // Map each source vertex other than v to its target index.
    std::vector<std::optional<std::size_t>> embed(source.vertex_count());
    std::vector<bool> covered(target.vertex_count(), false);
    for (std::size_t i = 0; i < source.vertex_count(); ++i) {
        if (i == *vi) {
            continue;
        }
        const auto t = target.index_of(source.vertices()[i]);
        if (!t) {
            throw domain_error("source vertex '" + source.vertices()[i] + "' does not embed into the target quiver");
        }
        embed[i] = t;
        covered[*t] = true;
    }
    const DenseDim img = target.dense(image);
    if (std::all_of(img.begin(), img.end(), [](std::int64_t n) { return n == 0; })) {
        throw coverage_error("substitution image is zero; preimages are infinite");
    }
    const auto src_w = series.policy().dense_weights(source);

    MotivicSeries::Coefficients out;
    for (auto &dt : region(target, policy)) {
        QHalfRational acc;
        for (std::int64_t k = 0;; ++k) {
            // Remainder after removing k copies of the image.
            DenseDim rest(dt.size());
            bool fits = true;
            for (std::size_t j = 0; j < dt.size(); ++j) {
                rest[j] = dt[j] - k * img[j];
                if (rest[j] < 0) {
                    fits = false;
                    break;
                }
            }
            if (!fits) {
                break;
            }
            bool supported = true;
            for (std::size_t j = 0; j < rest.size(); ++j) {
                if (rest[j] != 0 && !covered[j]) {
                    supported = false;
                    break;
                }
            }
            if (supported) {
                DenseDim ds(source.vertex_count(), 0);
                for (std::size_t i = 0; i < ds.size(); ++i) {
                    ds[i] = (i == *vi) ? k : rest[*embed[i]];
                }
                if (series.policy().weight_of(src_w, ds) > series.policy().bound) {
                    throw coverage_error("source truncation too small to determine the coefficient at "
                                         + render(target, target.sparse(dt)));
                }
                const QHalfRational &c = series.at(ds);
                if (!c.is_zero()) {
                    acc += c.shifted(k * s_shift);
                }
            }
        }
        out.emplace(std::move(dt), std::move(acc));
    }
    return MotivicSeries(target, policy, std::move(out));
}

/// Renames vertex keys (old -> new) onto an isomorphic target quiver.
inline MotivicSeries relabel(const MotivicSeries &series, const std::map<VertexId, VertexId> &renaming,
                             const Quiver &target)
{
    TruncationPolicy policy;
    policy.bound = series.policy().bound;
    for (const auto &[v, w] : series.policy().weights) {
        policy.weights[renaming.at(v)] = w;
    }
    MotivicSeries::Coefficients out;
    for (const auto &[d, c] : series.coefficients()) {
        DimVector moved;
        const DimVector from = series.quiver().sparse(d);
        for (const auto &[v, n] : from.entries()) {
            moved.set(renaming.at(v), n);
        }
        out.emplace(target.dense(moved), c);
    }
    return MotivicSeries(target, policy, std::move(out));
}

/// Pointwise canonical equality; the first mismatch in key order is reported.
inline Verdict series_eq(const MotivicSeries &a, const MotivicSeries &b, const CheckObserver &obs = {})
{
    MotivicSeries::require_comparable(a, b);
    Verdict verdict;
    for (const auto &[d, lhs] : a.coefficients()) {
        const QHalfRational &rhs = b.at(d);
        const DimVector at = a.quiver().sparse(d);
        verdict.record(at, lhs, rhs);
        detail::notify(obs, at, lhs, rhs);
    }
    return verdict;
}

} // namespace qlink
