#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include <qlink/errors.hpp>
#include <qlink/qcoef.hpp>
#include <qlink/quiver.hpp>

namespace qlink
{

/// A quiver together with the named two-cycles and vertex pairs declared
/// alongside it in a file.
struct QuiverDocument {
    Quiver quiver;
    std::vector<std::pair<std::string, TwoCyclePointer>> twocycles;
    std::vector<std::pair<std::string, VertexPairPointer>> pairs;

    const TwoCyclePointer *find_twocycle(const std::string &name) const
    {
        for (const auto &[n, tc] : twocycles) {
            if (n == name) {
                return &tc;
            }
        }
        return nullptr;
    }

    const VertexPairPointer *find_pair(const std::string &name) const
    {
        for (const auto &[n, p] : pairs) {
            if (n == name) {
                return &p;
            }
        }
        return nullptr;
    }

    friend bool operator==(const QuiverDocument &, const QuiverDocument &) = default;
};

inline bool is_identifier(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (!std::isalnum(c) && ch != '_' && ch != '^' && ch != '.' && ch != '*') {
            return false;
        }
    }
    return true;
}

namespace detail
{

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

inline std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == ' ' || line[i] == '\t') {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') {
            ++i;
        }
        out.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return out;
}

class DocumentParser
{
public:
    QuiverDocument parse(std::string_view text)
    {
        std::size_t lineno = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const std::size_t nl = text.find('\n', pos);
            std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
            ++lineno;
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            handle(lineno, line);
            if (nl == std::string_view::npos) {
                break;
            }
            pos = nl + 1;
        }
        if (!m_name) {
            throw parse_error(lineno, 0, "missing 'quiver <name>' line");
        }
        QuiverDocument doc{Quiver(*m_name, std::move(m_vertices), std::move(m_arrows)), {}, {}};
        for (auto &[name, tc, line] : m_twocycles) {
            try {
                validate(doc.quiver, tc);
            } catch (const precondition_error &e) {
                throw semantic_error(line, 0, e.what());
            }
            doc.twocycles.emplace_back(std::move(name), std::move(tc));
        }
        for (auto &[name, p, line] : m_pairs) {
            doc.pairs.emplace_back(std::move(name), std::move(p));
        }
        return doc;
    }

private:
    void handle(std::size_t lineno, std::string_view line)
    {
        const auto toks = tokenize(line);
        if (toks.empty() || toks.front().text.front() == '#') {
            return;
        }
        const std::string &kw = toks.front().text;
        auto arity = [&](std::size_t n) {
            if (toks.size() != n + 1) {
                const std::size_t col = toks.size() > n + 1 ? toks[n + 1].column : line.size() + 1;
                throw parse_error(lineno, col,
                                  "'" + kw + "' takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
            }
            for (std::size_t i = 1; i < toks.size(); ++i) {
                if (!is_identifier(toks[i].text)) {
                    throw parse_error(lineno, toks[i].column, "invalid identifier '" + toks[i].text + "'");
                }
            }
        };
        if (kw == "quiver") {
            arity(1);
            if (m_name) {
                throw semantic_error(lineno, toks[0].column, "second 'quiver' line");
            }
            m_name = toks[1].text;
            return;
        }
        if (!m_name) {
            throw parse_error(lineno, toks[0].column, "expected 'quiver <name>' before '" + kw + "'");
        }
        if (kw == "vertex") {
            arity(1);
            if (!m_vertex_set.insert(toks[1].text).second) {
                throw semantic_error(lineno, toks[1].column, "duplicate vertex '" + toks[1].text + "'");
            }
            m_vertices.push_back(toks[1].text);
        } else if (kw == "arrow") {
            arity(3);
            if (!m_label_set.insert(toks[1].text).second) {
                throw semantic_error(lineno, toks[1].column, "duplicate arrow label '" + toks[1].text + "'");
            }
            require_vertex(lineno, toks[2]);
            require_vertex(lineno, toks[3]);
            m_arrows.push_back({toks[1].text, toks[2].text, toks[3].text});
        } else if (kw == "twocycle") {
            arity(3);
            require_fresh_pointer(lineno, toks[1]);
            for (const auto *t : {&toks[2], &toks[3]}) {
                if (m_label_set.count(t->text) == 0) {
                    throw semantic_error(lineno, t->column, "unknown arrow '" + t->text + "'");
                }
            }
            const Arrow &c = *std::find_if(m_arrows.begin(), m_arrows.end(),
                                           [&](const Arrow &a) { return a.label == toks[2].text; });
            m_twocycles.push_back({toks[1].text, TwoCyclePointer{toks[2].text, toks[3].text, c.source, c.target}, lineno});
        } else if (kw == "pair") {
            arity(3);
            require_fresh_pointer(lineno, toks[1]);
            require_vertex(lineno, toks[2]);
            require_vertex(lineno, toks[3]);
            if (toks[2].text == toks[3].text) {
                throw semantic_error(lineno, toks[3].column, "pair vertices must be distinct");
            }
            m_pairs.push_back({toks[1].text, VertexPairPointer{toks[2].text, toks[3].text}, lineno});
        } else {
            throw parse_error(lineno, toks[0].column, "unknown keyword '" + kw + "'");
        }
    }

    void require_vertex(std::size_t lineno, const Token &t) const
    {
        if (m_vertex_set.count(t.text) == 0) {
            throw semantic_error(lineno, t.column, "unknown vertex '" + t.text + "'");
        }
    }

    void require_fresh_pointer(std::size_t lineno, const Token &t)
    {
        if (!m_pointer_names.insert(t.text).second) {
            throw semantic_error(lineno, t.column, "duplicate declaration name '" + t.text + "'");
        }
    }

    template <typename P>
    struct Declared {
        std::string name;
        P pointer;
        std::size_t line;
    };

    std::optional<std::string> m_name;
    std::vector<VertexId> m_vertices;
    std::vector<Arrow> m_arrows;
    std::unordered_set<std::string> m_vertex_set;
    std::unordered_set<std::string> m_label_set;
    std::unordered_set<std::string> m_pointer_names;
    std::vector<Declared<TwoCyclePointer>> m_twocycles;
    std::vector<Declared<VertexPairPointer>> m_pairs;
};

} // namespace detail

/// Parses the line format
///
///     # comment
///     quiver <name>
///     vertex <id>
///     arrow <label> <source> <target>
///     twocycle <name> <c> <d>
///     pair <name> <v0> <v1>
///
/// Identifiers match [A-Za-z0-9_^.*]+. Throws parse_error for malformed lines
/// and semantic_error for duplicate or unknown identifiers.
inline QuiverDocument parse_quiver(std::string_view text)
{
    return detail::DocumentParser().parse(text);
}

/// Canonical text: quiver line, vertices, arrows, then declarations, all in
/// stored order.
inline std::string serialize_quiver(const QuiverDocument &doc)
{
    std::string out = "quiver " + doc.quiver.name() + "\n";
    for (const auto &v : doc.quiver.vertices()) {
        out += "vertex " + v + "\n";
    }
    for (const auto &a : doc.quiver.arrows()) {
        out += "arrow " + a.label + " " + a.source + " " + a.target + "\n";
    }
    for (const auto &[name, tc] : doc.twocycles) {
        out += "twocycle " + name + " " + tc.c + " " + tc.d + "\n";
    }
    for (const auto &[name, p] : doc.pairs) {
        out += "pair " + name + " " + p.v0 + " " + p.v1 + "\n";
    }
    return out;
}

inline std::string serialize_quiver(const Quiver &q)
{
    return serialize_quiver(QuiverDocument{q, {}, {}});
}

/// Parses a dimension vector written "v:n,w:m" (the rendering used in
/// reports). Vertices not mentioned are 0.
inline DimVector parse_dim(const Quiver &q, std::string_view text)
{
    DimVector out;
    if (text.empty()) {
        return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                        : comma - pos);
        const std::size_t colon = item.rfind(':');
        if (colon == std::string_view::npos) {
            throw parse_error(0, pos + 1, "expected 'vertex:count'");
        }
        const std::string v(item.substr(0, colon));
        const std::string n(item.substr(colon + 1));
        if (!q.has_vertex(v)) {
            throw invalid_dimension_vector("vertex '" + v + "' is not in quiver '" + q.name() + "'");
        }
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) {
            throw parse_error(0, pos + colon + 2, "expected a non-negative count");
        }
        if (out[v] != 0) {
            throw parse_error(0, pos + 1, "vertex '" + v + "' given twice");
        }
        out.set(v, std::stoll(n));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

/// Reads a series dump ("<v:n,...>\t<coefficient>" per line) back into dense
/// keys on q.
inline std::map<DenseDim, QHalfRational> parse_series_dump(const Quiver &q, std::string_view text)
{
    std::map<DenseDim, QHalfRational> out;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t nl = text.find('\n', pos);
        const std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                                     : nl - pos);
        ++lineno;
        pos = nl == std::string_view::npos ? text.size() : nl + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t tab = line.find('\t');
        if (tab == std::string_view::npos) {
            throw parse_error(lineno, 0, "expected '<dimension vector>\\t<coefficient>'");
        }
        try {
            DenseDim key = q.dense(parse_dim(q, line.substr(0, tab)));
            if (!out.emplace(std::move(key), QHalfRational::parse(line.substr(tab + 1))).second) {
                throw parse_error(0, 1, "dimension vector listed twice");
            }
        } catch (const parse_error &e) {
            throw parse_error(lineno, e.column(), e.what());
        } catch (const invalid_dimension_vector &e) {
            throw parse_error(lineno, 1, e.what());
        }
    }
    return out;
}

} // namespace qlink
