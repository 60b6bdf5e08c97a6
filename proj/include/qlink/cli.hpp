#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qlink/errors.hpp>
#include <qlink/framed.hpp>
#include <qlink/mutations.hpp>
#include <qlink/qcoef.hpp>
#include <qlink/quiver.hpp>
#include <qlink/quiver_io.hpp>
#include <qlink/series.hpp>
#include <qlink/strata.hpp>

namespace qlink::cli
{

enum ExitCode : int { holds = 0, violated = 1, usage = 2 };

// Bad command line or unreadable input, reported with exit code 2.
class usage_error : public error
{
public:
    using error::error;
};

namespace detail
{

inline std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw usage_error("cannot open '" + path + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline QuiverDocument load(const std::string &path)
{
    if (path.empty()) {
        throw usage_error("no quiver file given (use -q FILE)");
    }
    const std::string text = read_file(path);
    try {
        return parse_quiver(text);
    } catch (const parse_error &e) {
        throw parse_error(e.line(), e.column(), path + ": " + std::string(e.what()));
    }
}

// Destination for command output: the -o file when given, else `fallback`.
class Output
{
public:
    Output(const std::string &path, std::ostream &fallback) : m_stream(&fallback)
    {
        if (!path.empty()) {
            m_file = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*m_file) {
                throw usage_error("cannot write '" + path + "'");
            }
            m_stream = m_file.get();
        }
    }

    std::ostream &stream()
    {
        return *m_stream;
    }
    bool to_file() const
    {
        return m_file != nullptr;
    }

private:
    std::unique_ptr<std::ofstream> m_file;
    std::ostream *m_stream;
};

// Streams one report line per checked index and remembers failures.
class Report
{
public:
    Report(std::ostream &out, std::string tag) : m_out(out), m_tag(std::move(tag)) {}

    void line(const std::string &key, const QHalfRational &lhs, const QHalfRational &rhs)
    {
        ++m_count;
        m_out << m_tag << ' ' << key;
        if (lhs == rhs) {
            m_out << " OK\n";
            return;
        }
        ++m_failures;
        m_out << " FAIL lhs=" << lhs << " rhs=" << rhs << '\n';
    }

    CheckObserver observer(const Quiver &q, const std::string &suffix = {})
    {
        return [this, &q, suffix](const DimVector &at, const QHalfRational &lhs, const QHalfRational &rhs) {
            line(render(q, at) + suffix, lhs, rhs);
        };
    }

    int finish(std::ostream &err) const
    {
        if (m_failures == 0) {
            return holds;
        }
        err << m_tag << ": " << m_failures << " of " << m_count << " checks failed\n";
        return violated;
    }

private:
    std::ostream &m_out;
    std::string m_tag;
    std::size_t m_count = 0;
    std::size_t m_failures = 0;
};

struct Common {
    std::string quiver_file;
    std::string output_file;
    std::int64_t max_weight = 6;
    std::int64_t order = 40;
    std::string weights;

    void attach(CLI::App *cmd, bool with_policy)
    {
        cmd->add_option("-q,--quiver", quiver_file, "Quiver file");
        cmd->add_option("-o,--output", output_file, "Write output to FILE instead of standard output");
        if (with_policy) {
            cmd->add_option("--max-weight", max_weight, "Truncation bound (weighted total degree)")
                ->capture_default_str()
                ->check(CLI::NonNegativeNumber);
            cmd->add_option("--weights", weights, "Vertex weights as v:w,... (default 1)");
        }
        cmd->add_option("--order", order, "Highest exponent of Laurent expansions")->capture_default_str();
    }

    TruncationPolicy policy(const Quiver &q) const
    {
        TruncationPolicy p = TruncationPolicy::uniform(q, max_weight);
        if (weights.empty()) {
            return p;
        }
        std::stringstream ss(weights);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.rfind(':');
            if (colon == std::string::npos) {
                throw usage_error("--weights: expected v:w, got '" + item + "'");
            }
            const std::string v = item.substr(0, colon);
            const std::string w = item.substr(colon + 1);
            if (!q.has_vertex(v)) {
                throw usage_error("--weights: unknown vertex '" + v + "'");
            }
            if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos || std::stoll(w) == 0) {
                throw usage_error("--weights: weight of '" + v + "' must be a positive integer");
            }
            p.weights[v] = std::stoll(w);
        }
        return p;
    }
};

struct TwoCycleFlags {
    std::string c;
    std::string d;
    std::string name;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--c", c, "Arrow c: v0 -> v1 of the two-cycle");
        cmd->add_option("--d", d, "Arrow d: v1 -> v0 of the two-cycle");
        cmd->add_option("--twocycle", name, "Two-cycle declared in the quiver file");
    }

    TwoCyclePointer resolve(const QuiverDocument &doc) const
    {
        if (!name.empty()) {
            if (!c.empty() || !d.empty()) {
                throw usage_error("--twocycle cannot be combined with --c/--d");
            }
            const TwoCyclePointer *tc = doc.find_twocycle(name);
            if (tc == nullptr) {
                throw usage_error("no two-cycle named '" + name + "' in the quiver file");
            }
            return *tc;
        }
        if (!c.empty() || !d.empty()) {
            if (c.empty() || d.empty()) {
                throw usage_error("--c and --d must be given together");
            }
            try {
                return two_cycle_at(doc.quiver, c, d);
            } catch (const precondition_error &e) {
                throw usage_error(e.what());
            }
        }
        if (doc.twocycles.size() == 1u) {
            return doc.twocycles.front().second;
        }
        throw usage_error("choose a two-cycle with --c/--d or --twocycle");
    }
};

struct PairFlags {
    std::string v0;
    std::string v1;
    std::string name;

    void attach(CLI::App *cmd)
    {
        cmd->add_option("--v0", v0, "First vertex of the pair");
        cmd->add_option("--v1", v1, "Second vertex of the pair");
        cmd->add_option("--pair", name, "Vertex pair declared in the quiver file");
    }

    VertexPairPointer resolve(const QuiverDocument &doc) const
    {
        VertexPairPointer p;
        if (!name.empty()) {
            if (!v0.empty() || !v1.empty()) {
                throw usage_error("--pair cannot be combined with --v0/--v1");
            }
            const VertexPairPointer *found = doc.find_pair(name);
            if (found == nullptr) {
                throw usage_error("no pair named '" + name + "' in the quiver file");
            }
            p = *found;
        } else if (!v0.empty() || !v1.empty()) {
            if (v0.empty() || v1.empty()) {
                throw usage_error("--v0 and --v1 must be given together");
            }
            p = {v0, v1};
        } else if (doc.pairs.size() == 1u) {
            p = doc.pairs.front().second;
        } else {
            throw usage_error("choose a vertex pair with --v0/--v1 or --pair");
        }
        try {
            validate(doc.quiver, p);
        } catch (const precondition_error &e) {
            throw usage_error(e.what());
        }
        return p;
    }
};

inline std::optional<MotivicSeries> supplied_series(const std::string &path, const Quiver &q,
                                                    const TruncationPolicy &policy)
{
    if (path.empty()) {
        return std::nullopt;
    }
    try {
        return MotivicSeries(q, policy, parse_series_dump(q, read_file(path)));
    } catch (const parse_error &e) {
        throw parse_error(e.line(), e.column(), path + ": " + std::string(e.what()));
    } catch (const domain_error &e) {
        throw usage_error(path + ": " + e.what());
    }
}

inline void write_mutation(const MutationResult &res, const std::string &decl, Output &dest, std::ostream &out)
{
    QuiverDocument doc{res.quiver, {}, {}};
    if (res.distinguished) {
        doc.twocycles.emplace_back(decl, *res.distinguished);
    }
    const std::string map = res.label_map_text();
    if (dest.to_file()) {
        out << map;
    } else {
        std::istringstream lines(map);
        for (std::string l; std::getline(lines, l);) {
            out << "# " << l << '\n';
        }
    }
    dest.stream() << serialize_quiver(doc);
}

} // namespace detail

/// Runs the command line `args` (without the program name). Reports go to
/// `out` (or the -o file), diagnostics to `err`. Returns 0 when the command
/// succeeded or the identity holds, 1 when an identity is violated and 2 for
/// usage or input errors.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    using detail::Common;
    using detail::Output;
    using detail::Report;

    CLI::App app{"Quiver linking and unlinking: constructions and generating-series identities", "qlink"};
    app.require_subcommand(1);
    std::function<int()> action;

    // show
    Common show_opts;
    std::string show_dim;
    auto *show = app.add_subcommand("show", "Print a quiver with its adjacency matrix");
    show_opts.attach(show, false);
    show->add_option("--dim", show_dim, "Also print Euler form and moduli dimension at v:n,...");
    show->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(show_opts.quiver_file);
            const Quiver &q = doc.quiver;
            Output dest(show_opts.output_file, out);
            std::ostream &os = dest.stream();
            os << serialize_quiver(doc);
            os << "# symmetric " << (is_symmetric(q) ? "yes" : "no") << '\n';
            os << "# adjacency\n";
            for (const auto &row : adjacency_matrix(q)) {
                os << '#';
                for (auto n : row) {
                    os << ' ' << n;
                }
                os << '\n';
            }
            if (!show_dim.empty()) {
                const DimVector d = parse_dim(q, show_dim);
                os << "# chi " << euler_form(q, d, d) << '\n';
                os << "# moduli_dim " << moduli_dim(q, d) << '\n';
            }
            return int(holds);
        };
    });

    // unlink / link / twocycle
    Common unlink_opts;
    detail::TwoCycleFlags unlink_tc;
    auto *unlink_cmd = app.add_subcommand("unlink", "Unlink a quiver at a two-cycle");
    unlink_opts.attach(unlink_cmd, false);
    unlink_tc.attach(unlink_cmd);
    unlink_cmd->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(unlink_opts.quiver_file);
            const MutationResult res = unlink(doc.quiver, unlink_tc.resolve(doc));
            Output dest(unlink_opts.output_file, out);
            detail::write_mutation(res, "", dest, out);
            return int(holds);
        };
    });

    Common link_opts;
    detail::PairFlags link_pair;
    auto *link_cmd = app.add_subcommand("link", "Link a quiver at a pair of vertices");
    link_opts.attach(link_cmd, false);
    link_pair.attach(link_cmd);
    link_cmd->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(link_opts.quiver_file);
            const MutationResult res = link(doc.quiver, link_pair.resolve(doc));
            Output dest(link_opts.output_file, out);
            detail::write_mutation(res, "linked", dest, out);
            return int(holds);
        };
    });

    Common twocycle_opts;
    detail::PairFlags twocycle_pair;
    auto *twocycle_cmd = app.add_subcommand("twocycle", "Add a two-cycle between a pair of vertices");
    twocycle_opts.attach(twocycle_cmd, false);
    twocycle_pair.attach(twocycle_cmd);
    twocycle_cmd->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(twocycle_opts.quiver_file);
            const MutationResult res = add_twocycle(doc.quiver, twocycle_pair.resolve(doc));
            Output dest(twocycle_opts.output_file, out);
            detail::write_mutation(res, "added", dest, out);
            return int(holds);
        };
    });

    // series
    Common series_opts;
    std::string series_kind = "A";
    auto *series_cmd = app.add_subcommand("series", "Dump a truncated generating series");
    series_opts.attach(series_cmd, true);
    series_cmd->add_option("--kind", series_kind, "A (motivic series) or P (adjacency-matrix series)")
        ->capture_default_str()
        ->check(CLI::IsMember({"A", "P"}));
    series_cmd->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(series_opts.quiver_file);
            const Quiver &q = doc.quiver;
            const TruncationPolicy policy = series_opts.policy(q);
            if (series_kind == "P" && !is_symmetric(q)) {
                err << "warning: quiver '" << q.name() << "' is not symmetric\n";
            }
            const MotivicSeries s = series_kind == "A" ? series_A(q, policy) : series_P_EKL(q, policy);
            Output dest(series_opts.output_file, out);
            dest.stream() << s.dump();
            return int(holds);
        };
    });

    // expand
    Common expand_opts;
    std::string expand_coef;
    std::string expand_dim;
    auto *expand_cmd = app.add_subcommand("expand", "Laurent expansion of a coefficient around s = 0");
    expand_opts.attach(expand_cmd, false);
    expand_cmd->add_option("--coef", expand_coef, "Coefficient in canonical rendering");
    expand_cmd->add_option("--dim", expand_dim, "Expand the A-series coefficient of the quiver at v:n,...");
    expand_cmd->callback([&] {
        action = [&] {
            QHalfRational x;
            if (!expand_coef.empty() && !expand_dim.empty()) {
                throw usage_error("give either --coef or --dim, not both");
            }
            if (!expand_coef.empty()) {
                x = QHalfRational::parse(expand_coef);
            } else if (!expand_dim.empty()) {
                const QuiverDocument doc = detail::load(expand_opts.quiver_file);
                x = coefficient_A(doc.quiver, parse_dim(doc.quiver, expand_dim));
            } else {
                throw usage_error("expand needs --coef or -q FILE --dim D");
            }
            Output dest(expand_opts.output_file, out);
            for (const auto &t : laurent_expand(x, expand_opts.order)) {
                dest.stream() << t.exponent << '\t' << t.coefficient.get_str() << '\n';
            }
            return int(holds);
        };
    });

    // verify
    auto *verify = app.add_subcommand("verify", "Check an identity coefficient by coefficient");
    verify->require_subcommand(1);

    Common vu_opts;
    detail::TwoCycleFlags vu_tc;
    std::string vu_series;
    auto *vu = verify->add_subcommand("unlink", "A_Q against the fibre sums of the unlinked quiver");
    vu_opts.attach(vu, true);
    vu_tc.attach(vu);
    vu->add_option("--series", vu_series, "Use this series dump as the A_Q side");
    vu->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(vu_opts.quiver_file);
            const Quiver &q = doc.quiver;
            const TwoCyclePointer tc = vu_tc.resolve(doc);
            const TruncationPolicy policy = vu_opts.policy(q);
            const auto supplied = detail::supplied_series(vu_series, q, policy);
            Output dest(vu_opts.output_file, out);
            Report report(dest.stream(), "UNLINK");
            check_unlinking_identity(q, tc, supplied ? *supplied : series_A(q, policy), report.observer(q));
            return report.finish(err);
        };
    });

    Common vl_opts;
    detail::PairFlags vl_pair;
    std::string vl_series;
    auto *vl = verify->add_subcommand("link", "Substituted A_{Q^L} against A_Q");
    vl_opts.attach(vl, true);
    vl_pair.attach(vl);
    vl->add_option("--series", vl_series, "Use this series dump as the A_Q side");
    vl->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(vl_opts.quiver_file);
            const Quiver &q = doc.quiver;
            const VertexPairPointer p = vl_pair.resolve(doc);
            const TruncationPolicy policy = vl_opts.policy(q);
            const auto supplied = detail::supplied_series(vl_series, q, policy);
            Output dest(vl_opts.output_file, out);
            Report report(dest.stream(), "LINK");
            check_linking_identity(q, p, supplied ? *supplied : series_A(q, policy), report.observer(q));
            return report.finish(err);
        };
    });

    Common v21_opts;
    auto *v21 = verify->add_subcommand("lemma21", "A_Q against the reflected adjacency-matrix series");
    v21_opts.attach(v21, true);
    v21->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(v21_opts.quiver_file);
            const Quiver &q = doc.quiver;
            if (!is_symmetric(q)) {
                throw usage_error("quiver '" + q.name() + "' is not symmetric");
            }
            const TruncationPolicy policy = v21_opts.policy(q);
            Output dest(v21_opts.output_file, out);
            Report report(dest.stream(), "LEMMA21");
            check_lemma21(q, policy, report.observer(q));
            return report.finish(err);
        };
    });

    Common vf_opts;
    detail::TwoCycleFlags vf_tc;
    auto *vf = verify->add_subcommand("filtration", "Telescoping of the ideal filtration series");
    vf_opts.attach(vf, true);
    vf_tc.attach(vf);
    vf->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(vf_opts.quiver_file);
            const Quiver &q = doc.quiver;
            const TwoCyclePointer tc = vf_tc.resolve(doc);
            const MutationResult res = unlink(q, tc);
            Output dest(vf_opts.output_file, out);
            Report report(dest.stream(), "FILTRATION");
            for (const auto &dense : region(q, vf_opts.policy(q))) {
                const DimVector d = q.sparse(dense);
                const std::string key = render(q, d);
                const std::int64_t top = std::min(d[tc.v0], d[tc.v1]);
                report.line(key + " p=0", ideal_filtration_series(res, d, 0, IdealSide::right), coefficient_A(q, d));
                for (const auto side : {IdealSide::right, IdealSide::left}) {
                    const std::int64_t edge = side == IdealSide::right ? d[tc.v1] : d[tc.v0];
                    const char *name = side == IdealSide::right ? " right" : " left";
                    for (std::int64_t p = 0; p <= edge; ++p) {
                        const QHalfRational piece = ideal_filtration_series(res, d, p, side)
                                                    - ideal_filtration_series(res, d, p + 1, side);
                        const std::int64_t ell = edge - p;
                        const QHalfRational expected = ell <= top ? stratum_series(res, {d, ell}) : QHalfRational();
                        report.line(key + name + " p=" + std::to_string(p), piece, expected);
                    }
                }
            }
            return report.finish(err);
        };
    });

    Common vfr_opts;
    detail::PairFlags vfr_pair;
    std::int64_t max_k = 4;
    auto *vfr = verify->add_subcommand("framed", "Framed series of Q^T against fibre sums over Q^TU");
    vfr_opts.attach(vfr, true);
    vfr_pair.attach(vfr);
    vfr->add_option("--max-k", max_k, "Largest framing rank")->capture_default_str()->check(CLI::NonNegativeNumber);
    vfr->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(vfr_opts.quiver_file);
            const Quiver &q = doc.quiver;
            const FramedPair fp = framed_pair(q, vfr_pair.resolve(doc));
            Output dest(vfr_opts.output_file, out);
            Report report(dest.stream(), "FRAMED");
            for (const auto &d : region(q, vfr_opts.policy(q))) {
                for (std::int64_t k = 0; k <= max_k; ++k) {
                    check_framed_decomposition(fp.qt, fp.qtu, {q.sparse(d), k},
                                               report.observer(fp.qt.quiver, " k=" + std::to_string(k)));
                }
            }
            return report.finish(err);
        };
    });

    Common ve_opts;
    detail::PairFlags ve_pair;
    auto *ve = verify->add_subcommand("euler", "Euler characteristics of the Grassmannian complexes over Q^TU");
    ve_opts.attach(ve, true);
    ve_pair.attach(ve);
    ve->callback([&] {
        action = [&] {
            const QuiverDocument doc = detail::load(ve_opts.quiver_file);
            const Quiver &q = doc.quiver;
            const FramedPair fp = framed_pair(q, ve_pair.resolve(doc));
            Output dest(ve_opts.output_file, out);
            Report report(dest.stream(), "EULER");
            for (const auto &e : region(fp.qtu.quiver, lifted_policy(fp.qtu, ve_opts.policy(q)))) {
                check_complex_euler(fp.qtu, fp.qtu.quiver.sparse(e), q, report.observer(fp.qtu.quiver));
            }
            return report.finish(err);
        };
    });

    Common va_opts;
    std::int64_t acyc_n = 15;
    auto *va = verify->add_subcommand("acyclicity", "Euler characteristic of the Grassmannian complex for n = 1..N");
    va_opts.attach(va, false);
    va->add_option("--n", acyc_n, "Largest n")->capture_default_str()->check(CLI::PositiveNumber);
    va->callback([&] {
        action = [&] {
            Output dest(va_opts.output_file, out);
            Report report(dest.stream(), "ACYC");
            for (std::int64_t n = 1; n <= acyc_n; ++n) {
                const Verdict v = check_grass_acyclicity(n);
                const QHalfRational lhs = v.holds() ? QHalfRational() : v.mismatch->lhs;
                report.line("n=" + std::to_string(n), lhs, QHalfRational());
            }
            return report.finish(err);
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::Success &e) {
        app.exit(e, out, err);
        return holds;
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        return action ? action() : int(usage);
    } catch (const parse_error &e) {
        err << "error: " << e.what() << '\n';
    } catch (const error &e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
    }
    return usage;
}

} // namespace qlink::cli
