#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include <qlink/errors.hpp>

namespace qlink
{

using VertexId = std::string;
using ArrowLabel = std::string;

struct Arrow {
    ArrowLabel label;
    VertexId source;
    VertexId target;

    friend bool operator==(const Arrow &, const Arrow &) = default;
};

// Dimension vector: vertex -> non-negative integer, absent vertices are 0.
// Zero entries are never stored, so equal vectors compare equal regardless of
// how they were built.
class DimVector
{
public:
    DimVector() = default;

    DimVector(std::initializer_list<std::pair<VertexId, std::int64_t>> init)
    {
        for (const auto &[v, n] : init) {
            set(v, n);
        }
    }

    std::int64_t operator[](const VertexId &v) const
    {
        const auto it = m_entries.find(v);
        return it == m_entries.end() ? 0 : it->second;
    }

    void set(const VertexId &v, std::int64_t n)
    {
        if (n < 0) {
            throw invalid_dimension_vector("negative entry at vertex '" + v + "'");
        }
        if (n == 0) {
            m_entries.erase(v);
        } else {
            m_entries[v] = n;
        }
    }

    const std::map<VertexId, std::int64_t> &entries() const noexcept
    {
        return m_entries;
    }

    bool is_zero() const noexcept
    {
        return m_entries.empty();
    }

    // Sum of all entries.
    std::int64_t total() const
    {
        std::int64_t out = 0;
        for (const auto &[v, n] : m_entries) {
            out += n;
        }
        return out;
    }

    friend DimVector operator+(DimVector a, const DimVector &b)
    {
        for (const auto &[v, n] : b.m_entries) {
            a.set(v, a[v] + n);
        }
        return a;
    }

    friend DimVector operator*(std::int64_t k, const DimVector &a)
    {
        if (k < 0) {
            throw invalid_dimension_vector("negative scalar multiple of a dimension vector");
        }
        DimVector out;
        for (const auto &[v, n] : a.m_entries) {
            out.set(v, k * n);
        }
        return out;
    }

    friend bool operator==(const DimVector &, const DimVector &) = default;

private:
    std::map<VertexId, std::int64_t> m_entries;
};

// Dense vertex-ordered representation used internally for hot loops.
using DenseDim = std::vector<std::int64_t>;
using Matrix = std::vector<std::vector<std::int64_t>>;

// Finite quiver with opaque string identifiers. Vertex order fixes the row and
// column order of every matrix and the key order of every series.
class Quiver
{
public:
    Quiver() = default;

    Quiver(std::string name, std::vector<VertexId> vertices, std::vector<Arrow> arrows)
        : m_name(std::move(name)), m_vertices(std::move(vertices)), m_arrows(std::move(arrows))
    {
        for (std::size_t i = 0; i < m_vertices.size(); ++i) {
            if (!m_index.emplace(m_vertices[i], i).second) {
                throw precondition_error("duplicate vertex '" + m_vertices[i] + "'");
            }
        }
        std::unordered_set<ArrowLabel> labels;
        m_ends.reserve(m_arrows.size());
        for (const auto &a : m_arrows) {
            if (!labels.insert(a.label).second) {
                throw precondition_error("duplicate arrow label '" + a.label + "'");
            }
            const auto s = index_of(a.source);
            const auto t = index_of(a.target);
            if (!s || !t) {
                throw precondition_error("arrow '" + a.label + "' uses an unknown vertex");
            }
            m_ends.emplace_back(*s, *t);
        }
    }

    const std::string &name() const noexcept
    {
        return m_name;
    }
    const std::vector<VertexId> &vertices() const noexcept
    {
        return m_vertices;
    }
    const std::vector<Arrow> &arrows() const noexcept
    {
        return m_arrows;
    }
    std::size_t vertex_count() const noexcept
    {
        return m_vertices.size();
    }

    // (source index, target index) of each arrow, in arrow order.
    const std::vector<std::pair<std::size_t, std::size_t>> &arrow_ends() const noexcept
    {
        return m_ends;
    }

    std::optional<std::size_t> index_of(const VertexId &v) const
    {
        const auto it = m_index.find(v);
        if (it == m_index.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    bool has_vertex(const VertexId &v) const
    {
        return m_index.count(v) != 0;
    }

    const Arrow *find_arrow(const ArrowLabel &label) const
    {
        for (const auto &a : m_arrows) {
            if (a.label == label) {
                return &a;
            }
        }
        return nullptr;
    }

    DenseDim dense(const DimVector &d) const
    {
        DenseDim out(m_vertices.size(), 0);
        for (const auto &[v, n] : d.entries()) {
            const auto i = index_of(v);
            if (!i) {
                throw invalid_dimension_vector("vertex '" + v + "' is not in quiver '" + m_name + "'");
            }
            out[*i] = n;
        }
        return out;
    }

    DimVector sparse(std::span<const std::int64_t> d) const
    {
        if (d.size() != m_vertices.size()) {
            throw invalid_dimension_vector("dense dimension vector has the wrong length");
        }
        DimVector out;
        for (std::size_t i = 0; i < d.size(); ++i) {
            out.set(m_vertices[i], d[i]);
        }
        return out;
    }

    friend bool operator==(const Quiver &a, const Quiver &b)
    {
        return a.m_name == b.m_name && a.m_vertices == b.m_vertices && a.m_arrows == b.m_arrows;
    }

private:
    std::string m_name;
    std::vector<VertexId> m_vertices;
    std::vector<Arrow> m_arrows;
    std::unordered_map<VertexId, std::size_t> m_index;
    std::vector<std::pair<std::size_t, std::size_t>> m_ends;
};

// Two-cycle c: v0 -> v1, d: v1 -> v0.
struct TwoCyclePointer {
    ArrowLabel c;
    ArrowLabel d;
    VertexId v0;
    VertexId v1;

    friend bool operator==(const TwoCyclePointer &, const TwoCyclePointer &) = default;
};

struct VertexPairPointer {
    VertexId v0;
    VertexId v1;

    friend bool operator==(const VertexPairPointer &, const VertexPairPointer &) = default;
};

inline void validate(const Quiver &q, const TwoCyclePointer &tc)
{
    if (tc.v0 == tc.v1) {
        throw precondition_error("two-cycle vertices must be distinct");
    }
    if (tc.c == tc.d) {
        throw precondition_error("two-cycle arrows must be distinct");
    }
    const Arrow *c = q.find_arrow(tc.c);
    const Arrow *d = q.find_arrow(tc.d);
    if (c == nullptr) {
        throw precondition_error("'" + tc.c + "' is not an arrow of quiver '" + q.name() + "'");
    }
    if (d == nullptr) {
        throw precondition_error("'" + tc.d + "' is not an arrow of quiver '" + q.name() + "'");
    }
    if (c->source != tc.v0 || c->target != tc.v1) {
        throw precondition_error("arrow '" + tc.c + "' does not go from '" + tc.v0 + "' to '" + tc.v1 + "'");
    }
    if (d->source != tc.v1 || d->target != tc.v0) {
        throw precondition_error("arrow '" + tc.d + "' does not go from '" + tc.v1 + "' to '" + tc.v0 + "'");
    }
}

inline void validate(const Quiver &q, const VertexPairPointer &p)
{
    if (p.v0 == p.v1) {
        throw precondition_error("pair vertices must be distinct");
    }
    for (const auto &v : {p.v0, p.v1}) {
        if (!q.has_vertex(v)) {
            throw precondition_error("'" + v + "' is not a vertex of quiver '" + q.name() + "'");
        }
    }
}

// Pointer to the two-cycle formed by arrows c and d, with v0 = source(c).
inline TwoCyclePointer two_cycle_at(const Quiver &q, const ArrowLabel &c, const ArrowLabel &d)
{
    const Arrow *ac = q.find_arrow(c);
    if (ac == nullptr) {
        throw precondition_error("'" + c + "' is not an arrow of quiver '" + q.name() + "'");
    }
    TwoCyclePointer tc{c, d, ac->source, ac->target};
    validate(q, tc);
    return tc;
}

/// Euler pairing sum_i a_i b_i - sum_{arrows x: i -> j} a_j b_i on dense
/// vectors.
inline std::int64_t euler_form(const Quiver &q, std::span<const std::int64_t> a, std::span<const std::int64_t> b)
{
    std::int64_t out = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out += a[i] * b[i];
    }
    for (const auto &[s, t] : q.arrow_ends()) {
        out -= a[t] * b[s];
    }
    return out;
}

inline std::int64_t euler_form(const Quiver &q, const DimVector &a, const DimVector &b)
{
    return euler_form(q, q.dense(a), q.dense(b));
}

// Dimension of the moduli stack, -chi(d, d).
inline std::int64_t moduli_dim(const Quiver &q, const DimVector &d)
{
    return -euler_form(q, d, d);
}

// Entry (i, j) counts arrows i -> j.
inline Matrix adjacency_matrix(const Quiver &q)
{
    Matrix m(q.vertex_count(), std::vector<std::int64_t>(q.vertex_count(), 0));
    for (const auto &[s, t] : q.arrow_ends()) {
        ++m[s][t];
    }
    return m;
}

inline bool is_symmetric(const Quiver &q)
{
    const Matrix m = adjacency_matrix(q);
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = i + 1; j < m.size(); ++j) {
            if (m[i][j] != m[j][i]) {
                return false;
            }
        }
    }
    return true;
}

// "v:n" pairs over every vertex of q in vertex order, comma-joined.
inline std::string render(const Quiver &q, const DimVector &d)
{
    const DenseDim dense = q.dense(d);
    std::string out;
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += q.vertices()[i];
        out += ':';
        out += std::to_string(dense[i]);
    }
    return out;
}

} // namespace qlink
