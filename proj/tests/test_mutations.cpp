#include <algorithm>
#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include <qlink/mutations.hpp>

#include "support.hpp"

using namespace qlink;

namespace
{

Quiver intro()
{
    return Quiver("intro", {"0", "1"}, {{"a", "0", "0"}, {"c", "0", "1"}, {"d", "1", "0"}});
}

Quiver loop_pair()
{
    return Quiver("lp", {"0", "1"}, {{"a", "0", "0"}});
}

const TwoCyclePointer cd{"c", "d", "0", "1"};

std::set<std::tuple<std::string, std::string, std::string>> arrow_set(const Quiver &q)
{
    std::set<std::tuple<std::string, std::string, std::string>> out;
    for (const auto &a : q.arrows()) {
        out.emplace(a.label, a.source, a.target);
    }
    return out;
}

// The closed-form adjacency matrix of the unlinked quiver.
Matrix expected_unlinked_adjacency(const Matrix &c, std::size_t v0, std::size_t v1)
{
    const std::size_t n = c.size();
    Matrix out(n + 1, std::vector<std::int64_t>(n + 1, 0));
    auto in_pair = [&](std::size_t i) { return i == v0 || i == v1; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i][j] = c[i][j] - (((i == v0 && j == v1) || (i == v1 && j == v0)) ? 1 : 0);
        }
        out[i][n] = c[i][v0] + c[i][v1] - (in_pair(i) ? 1 : 0);
        out[n][i] = c[v0][i] + c[v1][i] - (in_pair(i) ? 1 : 0);
    }
    out[n][n] = c[v0][v0] + c[v0][v1] + c[v1][v0] + c[v1][v1] - 1;
    return out;
}

} // namespace

TEST_CASE("unlinking the introductory quiver")
{
    const MutationResult res = unlink(intro(), cd);
    CHECK(res.kind == MutationKind::unlink);
    CHECK(res.new_vertex == "star");
    CHECK(res.quiver.vertices() == std::vector<VertexId>{"0", "1", "star"});
    CHECK(arrow_set(res.quiver) == arrow_set(Quiver("x", {"0", "1", "star"},
                                                    {{"a", "0", "0"},
                                                     {"a_star", "0", "star"},
                                                     {"a^star", "star", "0"},
                                                     {"a^star_star", "star", "star"},
                                                     {"c^star_star", "star", "star"}})));
    CHECK(res.label_map_text() == "a -> a,a^star,a_star,a^star_star\nc -> c^star_star\nd ->\n");
    CHECK_FALSE(res.distinguished.has_value());
}

TEST_CASE("unlinking a bare two-cycle")
{
    const Quiver q("T", {"0", "1"}, {{"c", "0", "1"}, {"d", "1", "0"}});
    const MutationResult res = unlink(q, cd);
    CHECK(res.quiver.arrows() == std::vector<Arrow>{{"c^star_star", "star", "star"}});
}

TEST_CASE("unlinking the two-cycle quiver of the loop example")
{
    const MutationResult qt = add_twocycle(loop_pair(), {"0", "1"});
    const MutationResult qtu = unlink(qt.quiver, *qt.distinguished);
    CHECK(arrow_set(qtu.quiver) == arrow_set(unlink(intro(), cd).quiver));
}

TEST_CASE("unlink rejects invalid pointers")
{
    CHECK_THROWS_AS(unlink(intro(), TwoCyclePointer{"c", "d", "1", "0"}), precondition_error);
    CHECK_THROWS_AS(unlink(intro(), TwoCyclePointer{"a", "d", "0", "0"}), precondition_error);
    CHECK_THROWS_AS(unlink(loop_pair(), cd), precondition_error);
}

TEST_CASE("unlink arrow clauses with vertices outside the pair")
{
    const Quiver q("Q", {"0", "1", "2"},
                   {{"c", "0", "1"}, {"d", "1", "0"}, {"x", "2", "0"}, {"y", "1", "2"}, {"z", "2", "2"}});
    const MutationResult res = unlink(q, cd);
    CHECK(res.label_map_text() == "c -> c^star_star\nd ->\nx -> x,x_star\ny -> y,y^star\nz -> z\n");
    CHECK(*res.quiver.find_arrow("x_star") == Arrow{"x_star", "2", "star"});
    CHECK(*res.quiver.find_arrow("y^star") == Arrow{"y^star", "star", "2"});
}

TEST_CASE("fresh names avoid existing vertices and labels")
{
    const Quiver q("Q", {"0", "1", "star"}, {{"c", "0", "1"}, {"d", "1", "0"}});
    CHECK(unlink(q, cd).new_vertex == "star2");
    // "c^star_star" as an existing label forces the next name.
    const Quiver r("R", {"0", "1", "2"}, {{"c", "0", "1"}, {"d", "1", "0"}, {"c^star_star", "2", "2"}});
    const MutationResult res = unlink(r, cd);
    CHECK(res.new_vertex == "star2");
    CHECK(res.quiver.find_arrow("c^star2_star2") != nullptr);
    // Iterating: "star" is free as a vertex but c^star_star is taken, and
    // star2 is a vertex, so the third name is used.
    const MutationResult twice = unlink(add_twocycle(res.quiver, {"0", "1"}).quiver, {"c", "d", "0", "1"});
    CHECK(twice.new_vertex == "star3");
}

TEST_CASE("linking examples")
{
    const MutationResult res = link(loop_pair(), {"0", "1"});
    CHECK(res.kind == MutationKind::link);
    CHECK(res.new_vertex == "square");
    CHECK(arrow_set(res.quiver) == arrow_set(Quiver("x", {"0", "1", "square"},
                                                    {{"alpha_square", "0", "1"},
                                                     {"beta_square", "1", "0"},
                                                     {"a", "0", "0"},
                                                     {"a_square", "0", "square"},
                                                     {"a^square", "square", "0"},
                                                     {"a^square_square", "square", "square"}})));
    REQUIRE(res.distinguished.has_value());
    CHECK(*res.distinguished == TwoCyclePointer{"beta_square", "alpha_square", "1", "0"});
    CHECK_NOTHROW(validate(res.quiver, *res.distinguished));

    const Quiver bare("B", {"0", "1"}, {});
    CHECK(link(bare, {"0", "1"}).quiver.arrows()
          == std::vector<Arrow>{{"alpha_square", "0", "1"}, {"beta_square", "1", "0"}});
    CHECK_THROWS_AS(link(bare, {"0", "0"}), precondition_error);
    CHECK_THROWS_AS(link(bare, {"0", "9"}), precondition_error);
}

TEST_CASE("linking then unlinking the loop example")
{
    const MutationResult l = link(loop_pair(), {"0", "1"});
    const MutationResult lu = unlink(l.quiver, *l.distinguished);
    CHECK(arrow_set(lu.quiver) == arrow_set(Quiver("x", {"0", "1", "square", "star"},
                                                   {{"a", "0", "0"},
                                                    {"a_square", "0", "square"},
                                                    {"a^square", "square", "0"},
                                                    {"a^square_square", "square", "square"},
                                                    {"a_star", "0", "star"},
                                                    {"a^star", "star", "0"},
                                                    {"a^star_star", "star", "star"},
                                                    {"a^square_star", "square", "star"},
                                                    {"a_square^star", "star", "square"},
                                                    {"beta_square^star_star", "star", "star"}})));
    CHECK(lu.quiver.arrows().size() == 10u);
}

TEST_CASE("adding two-cycles")
{
    const Quiver bare("B", {"0", "1"}, {});
    const MutationResult t = add_twocycle(bare, {"0", "1"});
    CHECK(t.quiver.arrows() == std::vector<Arrow>{{"c", "0", "1"}, {"d", "1", "0"}});
    CHECK(*t.distinguished == TwoCyclePointer{"c", "d", "0", "1"});
    CHECK_FALSE(t.new_vertex.has_value());
    const MutationResult tt = add_twocycle(t.quiver, {"0", "1"});
    CHECK(*tt.distinguished == TwoCyclePointer{"c_2", "d_2", "0", "1"});
    CHECK(tt.quiver.arrows().size() == 4u);
    CHECK(add_twocycle(loop_pair(), {"0", "1"}).label_map_text() == "a -> a\n");
    CHECK_THROWS_AS(add_twocycle(bare, {"1", "1"}), precondition_error);
}

TEST_CASE("dimension map u and its fibres")
{
    const MutationResult res = unlink(intro(), cd);
    CHECK(dim_map_u(res, DimVector{{"0", 1}, {"1", 1}}) == DimVector{{"0", 1}, {"1", 1}});
    CHECK(dim_map_u(res, DimVector{{"star", 1}}) == DimVector{{"0", 1}, {"1", 1}});
    CHECK(dim_map_u(res, DimVector{{"0", 2}, {"star", 3}}) == DimVector{{"0", 5}, {"1", 3}});
    CHECK_THROWS_AS(dim_map_u(res, DimVector{{"x", 1}}), domain_error);
    CHECK_THROWS_AS(dim_map_u(add_twocycle(loop_pair(), {"0", "1"}), DimVector{}), domain_error);

    CHECK(fibre_u(res, DimVector{}) == std::vector<DimVector>{DimVector{}});
    CHECK(fibre_u(res, DimVector{{"0", 1}, {"1", 1}})
          == std::vector<DimVector>{DimVector{{"0", 1}, {"1", 1}}, DimVector{{"star", 1}}});
    CHECK(fibre_u(res, DimVector{{"0", 2}, {"1", 1}})
          == std::vector<DimVector>{DimVector{{"0", 2}, {"1", 1}}, DimVector{{"0", 1}, {"star", 1}}});
}

TEST_CASE("unlinking properties on random quivers")
{
    using namespace qlink::testing;
    std::mt19937_64 rng(31337);
    for (int i = 0; i < 1000; ++i) {
        const auto rq = random_quiver(rng, true, 4, 6, i % 2 == 0);
        const Quiver &q = rq.quiver;
        const MutationResult res = unlink(q, rq.tc);
        const std::size_t v0 = *q.index_of(rq.tc.v0);
        const std::size_t v1 = *q.index_of(rq.tc.v1);
        INFO("case " << i);

        CHECK(adjacency_matrix(res.quiver) == expected_unlinked_adjacency(adjacency_matrix(q), v0, v1));

        const auto e = random_dim(rng, res.quiver.vertex_count());
        const auto f = random_dim(rng, res.quiver.vertex_count());
        const DenseDim ue = dim_map_u(res, e);
        const DenseDim uf = dim_map_u(res, f);
        CHECK(euler_form(res.quiver, e, f) - euler_form(q, ue, uf) == e[v0] * f[v1] + e[v1] * f[v0]);
        CHECK(-euler_form(q, ue, ue) == -euler_form(res.quiver, e, e) + 2 * e[v0] * e[v1]);

        if (is_symmetric(q)) {
            CHECK(is_symmetric(res.quiver));
        }
        const auto fibre = fibre_u(res, ue);
        for (const auto &g : fibre) {
            CHECK(dim_map_u(res, g) == ue);
        }
        CHECK(std::count(fibre.begin(), fibre.end(), DenseDim(e.begin(), e.end())) == 1);

        // Every source arrow appears in the label map.
        CHECK(res.label_map.size() == q.arrows().size());
    }
}

TEST_CASE("linking properties on random quivers")
{
    using namespace qlink::testing;
    std::mt19937_64 rng(4242);
    for (int i = 0; i < 1000; ++i) {
        const auto rq = random_quiver(rng, false, 4, 6, i % 2 == 0);
        const Quiver &q = rq.quiver;
        const MutationResult l = link(q, rq.pair);
        if (is_symmetric(q)) {
            CHECK(is_symmetric(l.quiver));
        }
        const MutationResult lu = unlink(l.quiver, *l.distinguished);
        // Arrow counts per original arrow: 1, 3, 3 or 9, plus the loop from beta.
        std::size_t expected = 1;
        for (const auto &a : q.arrows()) {
            const int ends = (a.source == rq.pair.v0 || a.source == rq.pair.v1)
                             + (a.target == rq.pair.v0 || a.target == rq.pair.v1);
            expected += ends == 0 ? 1 : (ends == 1 ? 3 : 9);
        }
        CHECK(lu.quiver.arrows().size() == expected);
        const Arrow *loop = lu.quiver.find_arrow("beta_square^star_star");
        REQUIRE(loop != nullptr);
        CHECK(loop->source == "star");
        CHECK(loop->target == "star");
    }
}
