#pragma once

#include <algorithm>
#include <cstdint>

#include <qlink/errors.hpp>
#include <qlink/mutations.hpp>
#include <qlink/qcoef.hpp>
#include <qlink/quiver.hpp>
#include <qlink/series.hpp>
#include <qlink/strata.hpp>

namespace qlink
{

/// Dimension vector together with a framing rank k.
struct FramedIndex {
    DimVector d;
    std::int64_t k = 0;
};

/// Equivariant Poincare series 1 / ((q;q)_m (q;q)_{n-m}) of the Grassmannian
/// of rank-m m x n matrices modulo GL_m.
inline QHalfRational grass_series(std::int64_t n, std::int64_t m)
{
    if (n < 0 || m < 0 || m > n) {
        throw domain_error("grass_series: need 0 <= m <= n");
    }
    return QHalfRational(LaurentPoly(1), poch_poly(m) * poch_poly(n - m));
}

/// sum_{m=0}^{n} s^{-m} (-s)^{m^2} grass_series(n, m) vanishes.
inline Verdict check_grass_acyclicity(std::int64_t n)
{
    if (n < 1) {
        throw precondition_error("acyclicity check needs n >= 1");
    }
    QHalfRational sum;
    for (std::int64_t m = 0; m <= n; ++m) {
        sum += (QHalfRational::neg_s_power(m * m) * grass_series(n, m)).shifted(-m);
    }
    Verdict verdict;
    verdict.record({}, sum, QHalfRational());
    return verdict;
}

namespace detail
{

inline void require_twocycle(const MutationResult &res)
{
    if (res.kind != MutationKind::twocycle || !res.distinguished) {
        throw domain_error("expected the result of adding a two-cycle");
    }
}

} // namespace detail

/// Series of the stably k-framed moduli of Q^T at d:
/// (-s)^{chi(d,d) + k^2} / ((q;q)_k prod_i (q;q)_{(d - k(e_v0 + e_v1))_i}),
/// or 0 when d_v0 < k or d_v1 < k.
inline QHalfRational framed_T_series(const MutationResult &qt, std::span<const std::int64_t> d, std::int64_t k)
{
    detail::require_twocycle(qt);
    if (k < 0) {
        throw precondition_error("framing rank must be non-negative");
    }
    const Quiver &q = qt.quiver;
    const std::size_t i0 = *q.index_of(qt.pair.v0);
    const std::size_t i1 = *q.index_of(qt.pair.v1);
    if (d[i0] < k || d[i1] < k) {
        return {};
    }
    DenseDim rest(d.begin(), d.end());
    rest[i0] -= k;
    rest[i1] -= k;
    const std::int64_t e = euler_form(q, d, d) + k * k;
    return QHalfRational(LaurentPoly::monomial(e % 2 == 0 ? 1 : -1, e), poch_poly(k) * detail::poch_product(rest));
}

inline QHalfRational framed_T_series(const MutationResult &qt, const FramedIndex &idx)
{
    detail::require_twocycle(qt);
    return framed_T_series(qt, qt.quiver.dense(idx.d), idx.k);
}

/// Series of the k-framed moduli of Q^TU at e, framed at star:
/// (-s)^{chi(e,e) + k^2} grass_series(e_star, k) prod_{i != star} 1/(q;q)_{e_i},
/// or 0 when k > e_star. `qtu` is the unlinking of Q^T at its two-cycle.
inline QHalfRational framed_TU_series(const MutationResult &qtu, std::span<const std::int64_t> e, std::int64_t k)
{
    const auto idx = detail::unlink_indices(qtu);
    if (k < 0) {
        throw precondition_error("framing rank must be non-negative");
    }
    const std::int64_t n = e[idx.star];
    if (k > n) {
        return {};
    }
    DenseDim rest(e.begin(), e.end());
    rest[idx.star] = 0;
    const std::int64_t x = euler_form(qtu.quiver, e, e) + k * k;
    return QHalfRational(LaurentPoly::monomial(x % 2 == 0 ? 1 : -1, x),
                         poch_poly(k) * poch_poly(n - k) * detail::poch_product(rest));
}

inline QHalfRational framed_TU_series(const MutationResult &qtu, const DimVector &e, std::int64_t k)
{
    detail::require_unlink(qtu);
    return framed_TU_series(qtu, qtu.quiver.dense(e), k);
}

/// Q^T and its unlinking at the added two-cycle.
struct FramedPair {
    MutationResult qt;
    MutationResult qtu;
};

inline FramedPair framed_pair(const Quiver &q, const VertexPairPointer &p)
{
    MutationResult qt = add_twocycle(q, p);
    MutationResult qtu = unlink(qt.quiver, *qt.distinguished);
    return {std::move(qt), std::move(qtu)};
}

/// framed_T_series(d, k) against the sum of framed_TU_series over the fibre
/// of u above d.
inline Verdict check_framed_decomposition(const MutationResult &qt, const MutationResult &qtu, const FramedIndex &idx,
                                          const CheckObserver &obs = {})
{
    detail::require_twocycle(qt);
    detail::require_unlink(qtu);
    if (!(qtu.source == qt.quiver)) {
        throw domain_error("unlinked quiver does not come from the two-cycle quiver");
    }
    const bool same_pair = (qtu.pair.v0 == qt.pair.v0 && qtu.pair.v1 == qt.pair.v1)
                           || (qtu.pair.v0 == qt.pair.v1 && qtu.pair.v1 == qt.pair.v0);
    if (!same_pair) {
        throw domain_error("unlinked at a two-cycle outside the framed pair");
    }
    const DenseDim d = qt.quiver.dense(idx.d);
    QHalfRational rhs;
    for (const auto &e : fibre_u(qtu, d)) {
        rhs += framed_TU_series(qtu, e, idx.k);
    }
    const QHalfRational lhs = framed_T_series(qt, d, idx.k);
    Verdict verdict;
    verdict.record(idx.d, lhs, rhs);
    detail::notify(obs, idx.d, lhs, rhs);
    return verdict;
}

/// Euler characteristic sum_k s^{-k} framed_TU_series(e, k) of the complex at
/// e.
inline QHalfRational complex_euler(const MutationResult &qtu, std::span<const std::int64_t> e)
{
    const auto idx = detail::unlink_indices(qtu);
    QHalfRational out;
    for (std::int64_t k = 0; k <= e[idx.star]; ++k) {
        out += framed_TU_series(qtu, e, k).shifted(-k);
    }
    return out;
}

/// The complex is acyclic when e_star > 0 and computes A_base(d) at e = (d, 0).
/// `base` is the quiver before the two-cycle was added; its vertices are the
/// leading vertices of qtu.
inline Verdict check_complex_euler(const MutationResult &qtu, const DimVector &e, const Quiver &base,
                                   const CheckObserver &obs = {})
{
    const auto idx = detail::unlink_indices(qtu);
    const auto &vs = qtu.quiver.vertices();
    if (base.vertex_count() + 1 != vs.size() || !std::equal(base.vertices().begin(), base.vertices().end(), vs.begin())) {
        throw domain_error("base quiver does not match the unlinked quiver");
    }
    const DenseDim dense = qtu.quiver.dense(e);
    const QHalfRational lhs = complex_euler(qtu, dense);
    QHalfRational rhs;
    if (dense[idx.star] == 0) {
        rhs = coefficient_A(base, std::span<const std::int64_t>(dense).first(base.vertex_count()));
    }
    Verdict verdict;
    verdict.record(e, lhs, rhs);
    detail::notify(obs, e, lhs, rhs);
    return verdict;
}

/// check_complex_euler over the whole region of Q^TU under the lifted policy.
inline Verdict check_complex_euler(const Quiver &q, const VertexPairPointer &p, const TruncationPolicy &policy,
                                   const CheckObserver &obs = {})
{
    const FramedPair fp = framed_pair(q, p);
    Verdict verdict;
    for (const auto &e : region(fp.qtu.quiver, lifted_policy(fp.qtu, policy))) {
        const Verdict v = check_complex_euler(fp.qtu, fp.qtu.quiver.sparse(e), q, obs);
        if (!v.holds() && verdict.holds()) {
            verdict = v;
        }
    }
    return verdict;
}

/// A_{Q^L} with x_square -> s^{-1} x_v0 x_v1 against `a_q`, a series on q.
inline Verdict check_linking_identity(const Quiver &q, const VertexPairPointer &p, const MotivicSeries &a_q,
                                      const CheckObserver &obs = {})
{
    detail::require_series_on(a_q, q);
    const MutationResult res = link(q, p);
    const MotivicSeries upstairs = series_A(res.quiver, lifted_policy(res, a_q.policy()));
    const MotivicSeries pulled = substitute_vertex(upstairs, *res.new_vertex, DimVector{{p.v0, 1}, {p.v1, 1}}, -1, q,
                                                   a_q.policy());
    return series_eq(pulled, a_q, obs);
}

/// A_{Q^L} with x_square -> s^{-1} x_v0 x_v1 equals A_Q on the region.
inline Verdict check_linking_identity(const Quiver &q, const VertexPairPointer &p, const TruncationPolicy &policy,
                                      const CheckObserver &obs = {})
{
    return check_linking_identity(q, p, series_A(q, policy), obs);
}

/// The linking left-hand side at d assembled from framed series:
/// sum_k s^{-k} sum_{e in fibre(d)} framed_TU_series(e, k).
inline QHalfRational linking_lhs_via_framed(const FramedPair &fp, std::span<const std::int64_t> d)
{
    QHalfRational out;
    for (const auto &e : fibre_u(fp.qtu, d)) {
        out += complex_euler(fp.qtu, e);
    }
    return out;
}

/// Second route to the linking identity through the framed decomposition
/// and the complex Euler characteristics.
inline Verdict check_linking_identity_via_framed(const Quiver &q, const VertexPairPointer &p,
                                                 const TruncationPolicy &policy, const CheckObserver &obs = {})
{
    const FramedPair fp = framed_pair(q, p);
    Verdict verdict;
    for (const auto &d : region(q, policy)) {
        const QHalfRational lhs = linking_lhs_via_framed(fp, d);
        const QHalfRational rhs = coefficient_A(q, d);
        const DimVector at = q.sparse(d);
        verdict.record(at, lhs, rhs);
        detail::notify(obs, at, lhs, rhs);
    }
    return verdict;
}

} // namespace qlink
