#pragma once

#include <cctype>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <qlink/errors.hpp>
#include <qlink/laurent.hpp>

namespace qlink
{

/// Element of the field Q(s), s^2 = q, kept as a reduced fraction of integer
/// Laurent polynomials.
///
/// Canonical form: the denominator has lowest exponent 0 and a positive
/// constant term, numerator and denominator share no polynomial factor, and
/// the integer contents of numerator and denominator are coprime (so the
/// denominator is primitive whenever the value has an integral
/// representative). Equal values have identical canonical forms.
class QHalfRational
{
public:
    QHalfRational() : m_den(1) {}

    QHalfRational(long n) : m_num(n), m_den(1) {}

    explicit QHalfRational(LaurentPoly num) : m_num(std::move(num)), m_den(1)
    {
        canonicalize();
    }

    QHalfRational(LaurentPoly num, LaurentPoly den) : m_num(std::move(num)), m_den(std::move(den))
    {
        canonicalize();
    }

    // c * s^e.
    static QHalfRational monomial(Integer c, Exponent e)
    {
        return QHalfRational(LaurentPoly(std::move(c), e));
    }

    // (-s)^e.
    static QHalfRational neg_s_power(Exponent e)
    {
        return monomial((e % 2 == 0) ? 1 : -1, e);
    }

    const LaurentPoly &num() const noexcept
    {
        return m_num;
    }
    const LaurentPoly &den() const noexcept
    {
        return m_den;
    }

    bool is_zero() const noexcept
    {
        return m_num.is_zero();
    }

    // True when the value is a Laurent polynomial.
    bool is_polynomial() const
    {
        return m_den.is_constant(1);
    }

    QHalfRational operator-() const
    {
        QHalfRational out;
        out.m_num = -m_num;
        out.m_den = m_den;
        return out;
    }

    friend QHalfRational operator+(const QHalfRational &a, const QHalfRational &b)
    {
        if (a.is_zero()) {
            return b;
        }
        if (b.is_zero()) {
            return a;
        }
        if (a.m_den == b.m_den) {
            return QHalfRational(a.m_num + b.m_num, a.m_den);
        }
        return QHalfRational(a.m_num * b.m_den + b.m_num * a.m_den, a.m_den * b.m_den);
    }

    friend QHalfRational operator-(const QHalfRational &a, const QHalfRational &b)
    {
        return a + (-b);
    }

    friend QHalfRational operator*(const QHalfRational &a, const QHalfRational &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        return QHalfRational(a.m_num * b.m_num, a.m_den * b.m_den);
    }

    friend QHalfRational operator/(const QHalfRational &a, const QHalfRational &b)
    {
        return a * b.inverse();
    }

    QHalfRational &operator+=(const QHalfRational &o)
    {
        return *this = *this + o;
    }
    QHalfRational &operator-=(const QHalfRational &o)
    {
        return *this = *this - o;
    }
    QHalfRational &operator*=(const QHalfRational &o)
    {
        return *this = *this * o;
    }

    QHalfRational inverse() const
    {
        if (is_zero()) {
            throw arithmetic_error("inversion of zero");
        }
        return QHalfRational(m_den, m_num);
    }

    QHalfRational pow(std::int64_t e) const
    {
        if (e < 0) {
            if (is_zero()) {
                throw arithmetic_error("negative power of zero");
            }
            return inverse().pow(-e);
        }
        QHalfRational result(1);
        QHalfRational base = *this;
        while (e > 0) {
            if (e & 1) {
                result *= base;
            }
            e >>= 1;
            if (e > 0) {
                base *= base;
            }
        }
        return result;
    }

    // Substitute s -> s^{-1}.
    QHalfRational reflected() const
    {
        return QHalfRational(m_num.reflected(), m_den.reflected());
    }

    // Multiply by s^k (no re-reduction needed).
    QHalfRational shifted(Exponent k) const
    {
        QHalfRational out = *this;
        out.m_num = out.m_num.shifted(k);
        return out;
    }

    friend bool operator==(const QHalfRational &a, const QHalfRational &b)
    {
        return a.m_num == b.m_num && a.m_den == b.m_den;
    }

    // "(<num>)/(<den>)", or just "<num>" when the denominator is 1.
    std::string to_string() const
    {
        if (is_polynomial()) {
            return m_num.to_string();
        }
        return "(" + m_num.to_string() + ")/(" + m_den.to_string() + ")";
    }

    friend std::ostream &operator<<(std::ostream &os, const QHalfRational &x)
    {
        return os << x.to_string();
    }

    // Inverse of to_string(). Accepts any term order and repeated exponents.
    static QHalfRational parse(std::string_view text);

private:
    void canonicalize()
    {
        if (m_den.is_zero()) {
            throw arithmetic_error("zero denominator");
        }
        if (m_num.is_zero()) {
            m_den = LaurentPoly(1);
            return;
        }
        const Exponent shift = m_den.low();
        m_num = m_num.shifted(-shift);
        m_den = m_den.shifted(-shift);
        if (!m_den.is_monomial()) {
            const detail::Dense g = detail::gcd(detail::to_dense(m_num), detail::to_dense(m_den));
            if (g.size() > 1u) {
                m_num = detail::from_dense(m_num.low(), detail::divide_exact(detail::to_dense(m_num), g));
                m_den = detail::from_dense(0, detail::divide_exact(detail::to_dense(m_den), g));
            }
        }
        Integer c = gcd(m_num.content(), m_den.content());
        if (m_den.lowest_coeff() < 0) {
            c = -c;
        }
        if (c != 1) {
            m_num = m_num.divided_exactly(c);
            m_den = m_den.divided_exactly(c);
        }
    }

    LaurentPoly m_num;
    LaurentPoly m_den;
};

/// q-Pochhammer symbol (q;q)_n = (1 - s^2)(1 - s^4)...(1 - s^{2n}) as a polynomial.
inline LaurentPoly poch_poly(std::int64_t n)
{
    if (n < 0) {
        throw domain_error("poch: negative argument");
    }
    LaurentPoly out(1);
    for (std::int64_t i = 1; i <= n; ++i) {
        out *= LaurentPoly(1) - LaurentPoly::monomial(1, 2 * i);
    }
    return out;
}

inline QHalfRational poch(std::int64_t n)
{
    return QHalfRational(poch_poly(n));
}

// Gaussian binomial [n, m] in q = s^2.
inline QHalfRational gaussian_binomial(std::int64_t n, std::int64_t m)
{
    if (n < 0 || m < 0 || m > n) {
        throw domain_error("gaussian_binomial: need 0 <= m <= n");
    }
    const detail::Dense q = detail::divide_exact(poch_poly(n).coeffs(), (poch_poly(m) * poch_poly(n - m)).coeffs());
    return QHalfRational(LaurentPoly(0, q));
}

struct ExpansionTerm {
    Exponent exponent;
    Integer coefficient;

    friend bool operator==(const ExpansionTerm &, const ExpansionTerm &) = default;
};

/// Laurent expansion of x around s = 0: every nonzero term with exponent at
/// most `order`, ascending. Throws arithmetic_error when a coefficient is not
/// an integer (the denominator's constant term must divide each step).
inline std::vector<ExpansionTerm> laurent_expand(const QHalfRational &x, Exponent order)
{
    std::vector<ExpansionTerm> out;
    const LaurentPoly &num = x.num();
    const LaurentPoly &den = x.den();
    if (num.is_zero() || order < num.low()) {
        return out;
    }
    const auto &d = den.coeffs();
    const Integer &d0 = d.front();
    const auto count = static_cast<std::size_t>(order - num.low() + 1);
    std::vector<Integer> q(count);
    for (std::size_t n = 0; n < count; ++n) {
        Integer acc = num.coeff(num.low() + static_cast<Exponent>(n));
        const std::size_t kmax = std::min(n, d.size() - 1u);
        for (std::size_t k = 1; k <= kmax; ++k) {
            mpz_submul(acc.get_mpz_t(), d[k].get_mpz_t(), q[n - k].get_mpz_t());
        }
        if (!mpz_divisible_p(acc.get_mpz_t(), d0.get_mpz_t())) {
            throw arithmetic_error("laurent_expand: non-integral coefficient");
        }
        mpz_divexact(q[n].get_mpz_t(), acc.get_mpz_t(), d0.get_mpz_t());
        if (q[n] != 0) {
            out.push_back({num.low() + static_cast<Exponent>(n), q[n]});
        }
    }
    return out;
}

namespace detail
{

class RenderingParser
{
public:
    explicit RenderingParser(std::string_view text) : m_text(text) {}

    QHalfRational parse()
    {
        skip_ws();
        QHalfRational out;
        if (peek() == '(') {
            ++m_pos;
            LaurentPoly num = poly();
            expect(')');
            skip_ws();
            if (at_end()) {
                out = QHalfRational(std::move(num));
            } else {
                expect('/');
                expect('(');
                LaurentPoly den = poly();
                expect(')');
                if (den.is_zero()) {
                    throw parse_error(0, m_pos, "zero denominator");
                }
                out = QHalfRational(std::move(num), std::move(den));
            }
        } else {
            out = QHalfRational(poly());
        }
        skip_ws();
        if (!at_end()) {
            throw parse_error(0, m_pos + 1, "trailing characters in coefficient");
        }
        return out;
    }

private:
    LaurentPoly poly()
    {
        LaurentPoly out;
        skip_ws();
        if (peek() == '0' && !term_follows_zero()) {
            ++m_pos;
            return out;
        }
        out += term();
        while (true) {
            skip_ws();
            if (peek() != '+') {
                break;
            }
            ++m_pos;
            out += term();
        }
        return out;
    }

    // "0" alone is the zero polynomial; "0*s^3" is a (zero) term.
    bool term_follows_zero() const
    {
        std::size_t p = m_pos + 1;
        while (p < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[p]))) {
            ++p;
        }
        return p < m_text.size() && (m_text[p] == '*' || std::isdigit(static_cast<unsigned char>(m_text[p])));
    }

    LaurentPoly term()
    {
        skip_ws();
        Integer c(integer(), 10);
        skip_ws();
        expect('*');
        expect('s');
        expect('^');
        skip_ws();
        const std::string e = integer();
        return LaurentPoly::monomial(std::move(c), std::stoll(e));
    }

    std::string integer()
    {
        std::string out;
        if (peek() == '-' || peek() == '+') {
            out += m_text[m_pos++];
        }
        while (!at_end() && std::isdigit(static_cast<unsigned char>(m_text[m_pos]))) {
            out += m_text[m_pos++];
        }
        if (out.empty() || out == "-" || out == "+") {
            throw parse_error(0, m_pos + 1, "expected an integer");
        }
        if (out.front() == '+') {
            out.erase(0, 1);
        }
        return out;
    }

    void expect(char c)
    {
        skip_ws();
        if (peek() != c) {
            throw parse_error(0, m_pos + 1, std::string("expected '") + c + "'");
        }
        ++m_pos;
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(m_text[m_pos]))) {
            ++m_pos;
        }
    }

    char peek() const
    {
        return at_end() ? '\0' : m_text[m_pos];
    }

    bool at_end() const
    {
        return m_pos >= m_text.size();
    }

    std::string_view m_text;
    std::size_t m_pos = 0;
};

} // namespace detail

inline QHalfRational QHalfRational::parse(std::string_view text)
{
    return detail::RenderingParser(text).parse();
}

} // namespace qlink
