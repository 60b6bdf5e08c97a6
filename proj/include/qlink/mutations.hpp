#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <qlink/errors.hpp>
#include <qlink/quiver.hpp>

namespace qlink
{

enum class MutationKind { unlink, link, twocycle };

using LabelMap = std::vector<std::pair<ArrowLabel, std::vector<ArrowLabel>>>;

/// Output of one of the three quiver constructions.
///
/// Generated labels: for a source arrow `a` and the new vertex `v`, the copy
/// whose target is redirected to v is `a_v`, the copy whose source is
/// redirected is `a^v`, and the copy with both redirected is `a^v_v`. New
/// vertices are `star`, `star2`, ... (unlink) and `square`, `square2`, ...
/// (link), the first one that is unused and keeps all labels distinct.
struct MutationResult {
    MutationKind kind;
    Quiver source;
    Quiver quiver;
    // The vertices the construction was performed at.
    VertexPairPointer pair;
    // Created vertex; empty for the two-cycle construction.
    std::optional<VertexId> new_vertex;
    // The created two-cycle for link and twocycle results.
    std::optional<TwoCyclePointer> distinguished;
    // Every source arrow with its generated arrows, in source order.
    LabelMap label_map;

    // "<source-label> -> <generated,...>" per line, source order.
    std::string label_map_text() const
    {
        std::string out;
        for (const auto &[src, gen] : label_map) {
            out += src;
            out += " ->";
            for (std::size_t i = 0; i < gen.size(); ++i) {
                out += (i == 0) ? " " : ",";
                out += gen[i];
            }
            out += '\n';
        }
        return out;
    }
};

namespace detail
{

inline std::string nth_name(const std::string &base, int n)
{
    return n == 1 ? base : base + std::to_string(n);
}

inline bool labels_distinct(const std::vector<Arrow> &arrows)
{
    std::unordered_set<ArrowLabel> seen;
    for (const auto &a : arrows) {
        if (!seen.insert(a.label).second) {
            return false;
        }
    }
    return true;
}

struct Decorations {
    std::string to_new;   // a_v
    std::string from_new; // a^v
    std::string both;     // a^v_v
};

inline Decorations decorate(const ArrowLabel &a, const VertexId &v)
{
    return {a + "_" + v, a + "^" + v, a + "^" + v + "_" + v};
}

// Accumulates the generated arrows and the label map.
struct ArrowSink {
    std::vector<Arrow> arrows;
    LabelMap map;

    void emit(const ArrowLabel &source_label, std::vector<Arrow> gen)
    {
        std::vector<ArrowLabel> labels;
        for (auto &g : gen) {
            labels.push_back(g.label);
            arrows.push_back(std::move(g));
        }
        map.emplace_back(source_label, std::move(labels));
    }
};

template <typename Build>
MutationResult with_fresh_vertex(const Quiver &q, const std::string &base, Build build)
{
    for (int n = 1;; ++n) {
        const VertexId v = nth_name(base, n);
        if (q.has_vertex(v)) {
            continue;
        }
        if (auto r = build(v)) {
            return std::move(*r);
        }
    }
}

inline std::vector<VertexId> with_vertex(const Quiver &q, const VertexId &v)
{
    std::vector<VertexId> out = q.vertices();
    out.push_back(v);
    return out;
}

} // namespace detail

/// Unlinking at the two-cycle tc. A vertex star is added; c and d disappear;
/// an arrow a: i -> j other than c, d gets 1, 2, 2 or 4 copies according to
/// how many of i, j lie in {v0, v1}; c leaves the single loop c^star_star.
inline MutationResult unlink(const Quiver &q, const TwoCyclePointer &tc)
{
    validate(q, tc);
    auto in_pair = [&](const VertexId &x) { return x == tc.v0 || x == tc.v1; };
    return detail::with_fresh_vertex(q, "star", [&](const VertexId &v) -> std::optional<MutationResult> {
        detail::ArrowSink sink;
        for (const auto &a : q.arrows()) {
            const auto dec = detail::decorate(a.label, v);
            if (a.label == tc.c) {
                sink.emit(a.label, {{dec.both, v, v}});
            } else if (a.label == tc.d) {
                sink.emit(a.label, {});
            } else if (!in_pair(a.source) && !in_pair(a.target)) {
                sink.emit(a.label, {a});
            } else if (!in_pair(a.source)) {
                sink.emit(a.label, {a, {dec.to_new, a.source, v}});
            } else if (!in_pair(a.target)) {
                sink.emit(a.label, {a, {dec.from_new, v, a.target}});
            } else {
                sink.emit(a.label, {a, {dec.from_new, v, a.target}, {dec.to_new, a.source, v}, {dec.both, v, v}});
            }
        }
        if (!detail::labels_distinct(sink.arrows)) {
            return std::nullopt;
        }
        return MutationResult{MutationKind::unlink,
                              q,
                              Quiver(q.name() + "_U", detail::with_vertex(q, v), std::move(sink.arrows)),
                              {tc.v0, tc.v1},
                              v,
                              std::nullopt,
                              std::move(sink.map)};
    });
}

/// Linking at the vertex pair p. A vertex square and the two-cycle
/// alpha_square: v0 -> v1, beta_square: v1 -> v0 are added, and every arrow
/// touching {v0, v1} gets decorated copies through square.
///
/// The distinguished two-cycle has beta as its `c` arrow, so that unlinking
/// it leaves the loop beta^star_star.
inline MutationResult link(const Quiver &q, const VertexPairPointer &p)
{
    validate(q, p);
    auto in_pair = [&](const VertexId &x) { return x == p.v0 || x == p.v1; };
    return detail::with_fresh_vertex(q, "square", [&](const VertexId &v) -> std::optional<MutationResult> {
        detail::ArrowSink sink;
        const ArrowLabel alpha = "alpha_" + v;
        const ArrowLabel beta = "beta_" + v;
        sink.arrows.push_back({alpha, p.v0, p.v1});
        sink.arrows.push_back({beta, p.v1, p.v0});
        for (const auto &a : q.arrows()) {
            const auto dec = detail::decorate(a.label, v);
            if (!in_pair(a.source) && !in_pair(a.target)) {
                sink.emit(a.label, {a});
            } else if (!in_pair(a.target)) {
                sink.emit(a.label, {a, {dec.from_new, v, a.target}});
            } else if (!in_pair(a.source)) {
                sink.emit(a.label, {a, {dec.to_new, a.source, v}});
            } else {
                sink.emit(a.label, {a, {dec.from_new, v, a.target}, {dec.to_new, a.source, v}, {dec.both, v, v}});
            }
        }
        if (!detail::labels_distinct(sink.arrows)) {
            return std::nullopt;
        }
        return MutationResult{MutationKind::link,
                              q,
                              Quiver(q.name() + "_L", detail::with_vertex(q, v), std::move(sink.arrows)),
                              p,
                              v,
                              TwoCyclePointer{beta, alpha, p.v1, p.v0},
                              std::move(sink.map)};
    });
}

/// Adds the two-cycle c: v0 -> v1, d: v1 -> v0. Labels are `c`/`d`, or
/// `c_2`/`d_2`, `c_3`/`d_3`, ... when taken.
inline MutationResult add_twocycle(const Quiver &q, const VertexPairPointer &p)
{
    validate(q, p);
    for (int n = 1;; ++n) {
        const ArrowLabel c = n == 1 ? "c" : "c_" + std::to_string(n);
        const ArrowLabel d = n == 1 ? "d" : "d_" + std::to_string(n);
        if (q.find_arrow(c) != nullptr || q.find_arrow(d) != nullptr) {
            continue;
        }
        detail::ArrowSink sink;
        for (const auto &a : q.arrows()) {
            sink.emit(a.label, {a});
        }
        sink.arrows.push_back({c, p.v0, p.v1});
        sink.arrows.push_back({d, p.v1, p.v0});
        return MutationResult{MutationKind::twocycle,
                              q,
                              Quiver(q.name() + "_T", q.vertices(), std::move(sink.arrows)),
                              p,
                              std::nullopt,
                              TwoCyclePointer{c, d, p.v0, p.v1},
                              std::move(sink.map)};
    }
}

namespace detail
{

inline void require_unlink(const MutationResult &res)
{
    if (res.kind != MutationKind::unlink || !res.new_vertex) {
        throw domain_error("expected the result of an unlinking");
    }
}

// Indices of v0, v1 in the source and of star in the unlinked quiver.
struct UnlinkIndices {
    std::size_t v0;
    std::size_t v1;
    std::size_t star;
};

inline UnlinkIndices unlink_indices(const MutationResult &res)
{
    require_unlink(res);
    return {*res.source.index_of(res.pair.v0), *res.source.index_of(res.pair.v1),
            *res.quiver.index_of(*res.new_vertex)};
}

} // namespace detail

/// u: dimension vectors of the unlinked quiver -> dimension vectors of the
/// source, adding the star entry onto v0 and v1. Dense form; the unlinked
/// quiver lists the source vertices first, in source order.
inline DenseDim dim_map_u(const MutationResult &res, std::span<const std::int64_t> e)
{
    const auto idx = detail::unlink_indices(res);
    if (e.size() != res.quiver.vertex_count()) {
        throw domain_error("dimension vector is not on the unlinked quiver");
    }
    DenseDim d(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(res.source.vertex_count()));
    d[idx.v0] += e[idx.star];
    d[idx.v1] += e[idx.star];
    return d;
}

inline DimVector dim_map_u(const MutationResult &res, const DimVector &e)
{
    detail::require_unlink(res);
    for (const auto &[v, n] : e.entries()) {
        if (!res.quiver.has_vertex(v)) {
            throw domain_error("vertex '" + v + "' is not in the unlinked quiver");
        }
    }
    return res.source.sparse(dim_map_u(res, res.quiver.dense(e)));
}

/// All e with u(e) = d, ordered by ascending star entry l = 0..min(d_v0, d_v1).
inline std::vector<DenseDim> fibre_u(const MutationResult &res, std::span<const std::int64_t> d)
{
    const auto idx = detail::unlink_indices(res);
    std::vector<DenseDim> out;
    const std::int64_t top = std::min(d[idx.v0], d[idx.v1]);
    for (std::int64_t l = 0; l <= top; ++l) {
        DenseDim e(d.begin(), d.end());
        e.push_back(0);
        e[idx.v0] -= l;
        e[idx.v1] -= l;
        e[idx.star] = l;
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<DimVector> fibre_u(const MutationResult &res, const DimVector &d)
{
    detail::require_unlink(res);
    std::vector<DimVector> out;
    for (const auto &e : fibre_u(res, res.source.dense(d))) {
        out.push_back(res.quiver.sparse(e));
    }
    return out;
}

} // namespace qlink
