#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <qlink/strata.hpp>

#include "support.hpp"

using namespace qlink;

namespace
{

const QHalfRational one_minus_q(LaurentPoly(0, {1, 0, -1}));

Quiver intro()
{
    return Quiver("intro", {"0", "1"}, {{"a", "0", "0"}, {"c", "0", "1"}, {"d", "1", "0"}});
}

const TwoCyclePointer cd{"c", "d", "0", "1"};
const DimVector d11{{"0", 1}, {"1", 1}};

} // namespace

TEST_CASE("stratum codimension")
{
    CHECK(stratum_codim(intro(), cd, {d11, 1}) == 0);
    CHECK(stratum_codim(intro(), cd, {d11, 0}) == 1);
    CHECK(stratum_codim(intro(), cd, {DimVector{{"0", 3}, {"1", 2}}, 0}) == 6);
    CHECK(stratum_codim(intro(), cd, {DimVector{{"0", 3}, {"1", 2}}, 2}) == 0);
    CHECK_THROWS_AS(stratum_codim(intro(), cd, {d11, 2}), precondition_error);
    CHECK_THROWS_AS(stratum_codim(intro(), cd, {d11, -1}), precondition_error);
    CHECK_THROWS_AS(stratum_codim(intro(), TwoCyclePointer{"d", "c", "0", "1"}, {d11, 0}), precondition_error);
}

TEST_CASE("stratum series examples")
{
    CHECK(stratum_series(intro(), cd, {d11, 0}) == QHalfRational::monomial(-1, 1) / (one_minus_q * one_minus_q));
    CHECK(stratum_series(intro(), cd, {d11, 1}) == QHalfRational::monomial(-1, -1) / one_minus_q);
    CHECK(stratum_series(intro(), cd, {DimVector{}, 0}) == QHalfRational(1));
    CHECK_THROWS_AS(stratum_series(intro(), cd, {DimVector{{"0", 1}}, 1}), precondition_error);
    CHECK_THROWS_AS(stratum_series(add_twocycle(intro(), {"0", "1"}), {d11, 0}), domain_error);
}

TEST_CASE("unlinking identity by hand")
{
    const QHalfRational lhs = coefficient_A(intro(), d11);
    CHECK(lhs == QHalfRational::monomial(-1, -1) / (one_minus_q * one_minus_q));
    CHECK(lhs == stratum_series(intro(), cd, {d11, 0}) + stratum_series(intro(), cd, {d11, 1}));

    const auto policy = TruncationPolicy::uniform(intro(), 6);
    CHECK(check_unlinking_identity(intro(), cd, policy).holds());
    CHECK(check_unlinking_identity_by_substitution(intro(), cd, policy).holds());
    CHECK(check_unlinking_identity(intro(), cd, TruncationPolicy::uniform(intro(), 0)).holds());
}

TEST_CASE("unlinking identity reports the first mismatch")
{
    const auto policy = TruncationPolicy::uniform(intro(), 3);
    MotivicSeries::Coefficients c = series_A(intro(), policy).coefficients();
    c[DenseDim{1, 2}] += QHalfRational(1);
    c[DenseDim{2, 1}] += QHalfRational(1);
    const Verdict v = check_unlinking_identity(intro(), cd, MotivicSeries(intro(), policy, c));
    REQUIRE_FALSE(v.holds());
    CHECK(v.mismatch->at == DimVector{{"0", 1}, {"1", 2}});
    CHECK(v.mismatch->lhs - v.mismatch->rhs == QHalfRational(1));

    const Quiver other("o", {"x", "y"}, {});
    CHECK_THROWS_AS(check_unlinking_identity(intro(), cd, series_A(other, TruncationPolicy::uniform(other, 2))),
                    incomparable_error);
}

TEST_CASE("unlinking identity with non-uniform weights")
{
    TruncationPolicy policy{{{"0", 2}, {"1", 1}}, 7};
    CHECK(check_unlinking_identity(intro(), cd, policy).holds());
    CHECK(check_unlinking_identity_by_substitution(intro(), cd, policy).holds());
}

TEST_CASE("ideal filtration examples")
{
    const MutationResult res = unlink(intro(), cd);
    const DimVector d{{"0", 2}, {"1", 3}};
    CHECK(ideal_filtration_series(res, d, 0, IdealSide::right) == coefficient_A(intro(), d));
    CHECK(ideal_filtration_series(res, d, 0, IdealSide::left) == coefficient_A(intro(), d));
    CHECK(ideal_filtration_series(res, d, 4, IdealSide::right).is_zero());
    CHECK(ideal_filtration_series(res, d, 3, IdealSide::left).is_zero());
    CHECK(ideal_filtration_series(intro(), cd, d11, 1, IdealSide::right)
          == QHalfRational::monomial(-1, 1) / (one_minus_q * one_minus_q));
    CHECK_THROWS_AS(ideal_filtration_series(res, d, -1, IdealSide::right), precondition_error);
}

TEST_CASE("strata properties on random quivers")
{
    using namespace qlink::testing;
    std::mt19937_64 rng(77);
    for (int i = 0; i < 200; ++i) {
        const auto rq = random_quiver(rng, true);
        const Quiver &q = rq.quiver;
        const MutationResult res = unlink(q, rq.tc);
        const std::size_t v0 = *q.index_of(rq.tc.v0);
        const std::size_t v1 = *q.index_of(rq.tc.v1);
        const DenseDim d = random_dim(rng, q.vertex_count(), 3);
        const DimVector ds = q.sparse(d);
        const std::int64_t chi = euler_form(q, d, d);
        INFO("case " << i);

        for (const auto &e : fibre_u(res, d)) {
            const std::int64_t ell = e.back();
            const std::int64_t codim = stratum_codim(q, rq.tc, {ds, ell});
            CHECK(codim == e[v0] * e[v1]);
            CHECK(2 * codim == euler_form(res.quiver, e, e) - chi);

            const QHalfRational normalised = stratum_series(res, {ds, ell}) * QHalfRational::neg_s_power(-chi);
            for (const auto &t : laurent_expand(normalised, 40)) {
                CHECK(t.exponent % 2 == 0);
                CHECK(t.coefficient > 0);
            }
        }

        for (const auto side : {IdealSide::right, IdealSide::left}) {
            const std::int64_t edge = side == IdealSide::right ? d[v1] : d[v0];
            const std::int64_t top = std::min(d[v0], d[v1]);
            for (std::int64_t p = 0; p <= edge + 1; ++p) {
                const QHalfRational here = ideal_filtration_series(res, ds, p, side);
                const QHalfRational next = ideal_filtration_series(res, ds, p + 1, side);
                const std::int64_t ell = edge - p;
                const QHalfRational expected = (ell >= 0 && ell <= top) ? stratum_series(res, {ds, ell})
                                                                        : QHalfRational();
                CHECK(here - next == expected);
                // Monotone in p after normalisation.
                const auto a = testing::expand(here * QHalfRational::neg_s_power(-chi), 30);
                const auto b = testing::expand(next * QHalfRational::neg_s_power(-chi), 30);
                for (const auto &[e, c] : b) {
                    const auto it = a.find(e);
                    CHECK((it != a.end() && it->second >= c));
                }
            }
        }
    }
}

TEST_CASE("unlinking identity on random quivers")
{
    using namespace qlink::testing;
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 10; ++i) {
        const auto rq = random_quiver(rng, true);
        const auto policy = TruncationPolicy::uniform(rq.quiver, 4);
        CHECK(check_unlinking_identity(rq.quiver, rq.tc, policy).holds());
        CHECK(check_unlinking_identity_by_substitution(rq.quiver, rq.tc, policy).holds());
    }
}
