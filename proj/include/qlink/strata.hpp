#pragma once

#include <algorithm>
#include <cstdint>

#include <qlink/errors.hpp>
#include <qlink/mutations.hpp>
#include <qlink/qcoef.hpp>
#include <qlink/quiver.hpp>
#include <qlink/series.hpp>

namespace qlink
{

/// Rank stratum of the representation space at d: the arrow d of the
/// two-cycle has rank `ell`.
struct StratumIndex {
    DimVector d;
    std::int64_t ell = 0;
};

/// Extends a policy on the source quiver to the quiver of a mutation result.
/// The created vertex gets weight w_v0 + w_v1, so that substituting it by
/// e_v0 + e_v1 preserves the weighted degree.
inline TruncationPolicy lifted_policy(const MutationResult &res, const TruncationPolicy &policy)
{
    const auto w = policy.dense_weights(res.source);
    TruncationPolicy out = policy;
    if (res.new_vertex) {
        out.weights[*res.new_vertex] = w[*res.source.index_of(res.pair.v0)] + w[*res.source.index_of(res.pair.v1)];
    }
    return out;
}

namespace detail
{

inline void require_stratum(const MutationResult &res, const StratumIndex &idx)
{
    const DenseDim d = res.source.dense(idx.d);
    const auto top = std::min(d[*res.source.index_of(res.pair.v0)], d[*res.source.index_of(res.pair.v1)]);
    if (idx.ell < 0 || idx.ell > top) {
        throw precondition_error("stratum rank " + std::to_string(idx.ell) + " outside 0.." + std::to_string(top));
    }
}

} // namespace detail

/// Codimension d_v0 * d_v1 - (d_v0 + d_v1 - ell) * ell of the stratum.
inline std::int64_t stratum_codim(const Quiver &q, const TwoCyclePointer &tc, const StratumIndex &idx)
{
    validate(q, tc);
    const std::int64_t a = idx.d[tc.v0];
    const std::int64_t b = idx.d[tc.v1];
    if (idx.ell < 0 || idx.ell > std::min(a, b)) {
        throw precondition_error("stratum rank " + std::to_string(idx.ell) + " outside 0.."
                                 + std::to_string(std::min(a, b)));
    }
    return a * b - (a + b - idx.ell) * idx.ell;
}

/// Shifted Poincare series of a stratum: the A-coefficient of the unlinked
/// quiver at the fibre element with star entry ell.
inline QHalfRational stratum_series(const MutationResult &unlinked, const StratumIndex &idx)
{
    detail::require_unlink(unlinked);
    detail::require_stratum(unlinked, idx);
    const auto fibre = fibre_u(unlinked, unlinked.source.dense(idx.d));
    return coefficient_A(unlinked.quiver, fibre[static_cast<std::size_t>(idx.ell)]);
}

inline QHalfRational stratum_series(const Quiver &q, const TwoCyclePointer &tc, const StratumIndex &idx)
{
    return stratum_series(unlink(q, tc), idx);
}

namespace detail
{

inline void require_series_on(const MotivicSeries &a, const Quiver &q)
{
    if (a.quiver().vertices() != q.vertices()) {
        throw incomparable_error("series is not on the vertices of quiver '" + q.name() + "'");
    }
}

} // namespace detail

/// Each coefficient of `a_q`, a series on q, against the sum of A_{Q^U} over
/// the fibre of u above its index.
inline Verdict check_unlinking_identity(const Quiver &q, const TwoCyclePointer &tc, const MotivicSeries &a_q,
                                        const CheckObserver &obs = {})
{
    detail::require_series_on(a_q, q);
    const MutationResult res = unlink(q, tc);
    Verdict verdict;
    for (const auto &[d, lhs] : a_q.coefficients()) {
        QHalfRational rhs;
        for (const auto &e : fibre_u(res, d)) {
            rhs += coefficient_A(res.quiver, e);
        }
        const DimVector at = q.sparse(d);
        verdict.record(at, lhs, rhs);
        detail::notify(obs, at, lhs, rhs);
    }
    return verdict;
}

/// A_Q(d) against the sum of A_{Q^U} over the fibre of u above d, for every d
/// in the region of q.
inline Verdict check_unlinking_identity(const Quiver &q, const TwoCyclePointer &tc, const TruncationPolicy &policy,
                                        const CheckObserver &obs = {})
{
    return check_unlinking_identity(q, tc, series_A(q, policy), obs);
}

/// Series form of the same identity: A_{Q^U} with x_star -> x_v0 x_v1 equals
/// A_Q on the region.
inline Verdict check_unlinking_identity_by_substitution(const Quiver &q, const TwoCyclePointer &tc,
                                                        const TruncationPolicy &policy, const CheckObserver &obs = {})
{
    const MutationResult res = unlink(q, tc);
    const MotivicSeries upstairs = series_A(res.quiver, lifted_policy(res, policy));
    const MotivicSeries pulled = substitute_vertex(upstairs, *res.new_vertex, DimVector{{tc.v0, 1}, {tc.v1, 1}}, 0, q,
                                                   policy);
    return series_eq(series_A(q, policy), pulled, obs);
}

enum class IdealSide { right, left };

/// Graded dimension of the p-th ideal of the filtration: the strata with
/// ell <= d_v1 - p (right ideals) or ell <= d_v0 - p (left ideals). Zero when
/// the range is empty.
inline QHalfRational ideal_filtration_series(const MutationResult &unlinked, const DimVector &d, std::int64_t p,
                                             IdealSide side)
{
    detail::require_unlink(unlinked);
    if (p < 0) {
        throw precondition_error("filtration index must be non-negative");
    }
    const DenseDim dd = unlinked.source.dense(d);
    const std::int64_t a = dd[*unlinked.source.index_of(unlinked.pair.v0)];
    const std::int64_t b = dd[*unlinked.source.index_of(unlinked.pair.v1)];
    const std::int64_t top = std::min(std::min(a, b), (side == IdealSide::right ? b : a) - p);
    QHalfRational out;
    const auto fibre = fibre_u(unlinked, dd);
    for (std::int64_t ell = 0; ell <= top; ++ell) {
        out += coefficient_A(unlinked.quiver, fibre[static_cast<std::size_t>(ell)]);
    }
    return out;
}

inline QHalfRational ideal_filtration_series(const Quiver &q, const TwoCyclePointer &tc, const DimVector &d,
                                             std::int64_t p, IdealSide side)
{
    return ideal_filtration_series(unlink(q, tc), d, p, side);
}

} // namespace qlink
