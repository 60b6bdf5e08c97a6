#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include <qlink/errors.hpp>

namespace qlink
{

using Integer = mpz_class;
using Exponent = std::int64_t;

// Laurent polynomial in the formal variable s with arbitrary precision integer
// coefficients. Stored densely from the lowest nonzero exponent upwards; the
// zero polynomial has no coefficients.
class LaurentPoly
{
public:
    LaurentPoly() = default;

    // The monomial c * s^e.
    explicit LaurentPoly(Integer c, Exponent e = 0)
    {
        if (c != 0) {
            m_low = e;
            m_coeffs.push_back(std::move(c));
        }
    }

    LaurentPoly(long c) : LaurentPoly(Integer(c), 0) {}

    // Coefficients of s^low, s^(low+1), ...
    LaurentPoly(Exponent low, std::vector<Integer> coeffs) : m_low(low), m_coeffs(std::move(coeffs))
    {
        trim();
    }

    LaurentPoly(Exponent low, std::initializer_list<long> coeffs) : m_low(low)
    {
        m_coeffs.reserve(coeffs.size());
        for (long c : coeffs) {
            m_coeffs.emplace_back(c);
        }
        trim();
    }

    static LaurentPoly monomial(Integer c, Exponent e)
    {
        return LaurentPoly(std::move(c), e);
    }

    bool is_zero() const noexcept
    {
        return m_coeffs.empty();
    }

    // Lowest and highest exponents with a nonzero coefficient. Both are 0 for
    // the zero polynomial.
    Exponent low() const noexcept
    {
        return m_low;
    }
    Exponent high() const noexcept
    {
        return m_coeffs.empty() ? m_low : m_low + static_cast<Exponent>(m_coeffs.size()) - 1;
    }

    // Number of stored coefficients, high() - low() + 1 (0 for zero).
    std::size_t span() const noexcept
    {
        return m_coeffs.size();
    }

    const std::vector<Integer> &coeffs() const noexcept
    {
        return m_coeffs;
    }

    Integer coeff(Exponent e) const
    {
        if (is_zero() || e < low() || e > high()) {
            return 0;
        }
        return m_coeffs[static_cast<std::size_t>(e - m_low)];
    }

    const Integer &lowest_coeff() const
    {
        return m_coeffs.front();
    }
    const Integer &leading_coeff() const
    {
        return m_coeffs.back();
    }

    bool is_monomial() const noexcept
    {
        return m_coeffs.size() == 1u;
    }

    bool is_constant(long c) const
    {
        if (c == 0) {
            return is_zero();
        }
        return m_coeffs.size() == 1u && m_low == 0 && m_coeffs.front() == c;
    }

    // gcd of the coefficients, always >= 0.
    Integer content() const
    {
        Integer g = 0;
        for (const auto &c : m_coeffs) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g == 1) {
                break;
            }
        }
        return g;
    }

    // Multiply by s^k.
    LaurentPoly shifted(Exponent k) const
    {
        LaurentPoly out = *this;
        if (!out.is_zero()) {
            out.m_low += k;
        }
        return out;
    }

    // Substitute s -> s^{-1}.
    LaurentPoly reflected() const
    {
        if (is_zero()) {
            return {};
        }
        std::vector<Integer> c(m_coeffs.rbegin(), m_coeffs.rend());
        return LaurentPoly(-high(), std::move(c));
    }

    // Divide every coefficient by the integer d, which must divide all of them.
    LaurentPoly divided_exactly(const Integer &d) const
    {
        LaurentPoly out = *this;
        for (auto &c : out.m_coeffs) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
        }
        return out;
    }

    bool only_even_exponents() const
    {
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            if (m_coeffs[i] != 0 && ((m_low + static_cast<Exponent>(i)) % 2 != 0)) {
                return false;
            }
        }
        return true;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly out = *this;
        for (auto &c : out.m_coeffs) {
            c = -c;
        }
        return out;
    }

    LaurentPoly &operator+=(const LaurentPoly &other)
    {
        add_scaled(other, 1);
        return *this;
    }
    LaurentPoly &operator-=(const LaurentPoly &other)
    {
        add_scaled(other, -1);
        return *this;
    }

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly &b)
    {
        a += b;
        return a;
    }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly &b)
    {
        a -= b;
        return a;
    }

    friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<Integer> out(a.m_coeffs.size() + b.m_coeffs.size() - 1u);
        for (std::size_t i = 0; i < a.m_coeffs.size(); ++i) {
            if (a.m_coeffs[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.m_coeffs.size(); ++j) {
                mpz_addmul(out[i + j].get_mpz_t(), a.m_coeffs[i].get_mpz_t(), b.m_coeffs[j].get_mpz_t());
            }
        }
        return LaurentPoly(a.m_low + b.m_low, std::move(out));
    }

    LaurentPoly &operator*=(const LaurentPoly &other)
    {
        *this = *this * other;
        return *this;
    }

    friend bool operator==(const LaurentPoly &a, const LaurentPoly &b)
    {
        return a.m_low == b.m_low && a.m_coeffs == b.m_coeffs;
    }

    // Canonical rendering: "c*s^e" terms in ascending e joined by " + ", or "0".
    std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::string out;
        for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
            if (m_coeffs[i] == 0) {
                continue;
            }
            if (!out.empty()) {
                out += " + ";
            }
            out += m_coeffs[i].get_str();
            out += "*s^";
            out += std::to_string(m_low + static_cast<Exponent>(i));
        }
        return out;
    }

private:
    void add_scaled(const LaurentPoly &other, int sign)
    {
        if (other.is_zero()) {
            return;
        }
        if (is_zero()) {
            *this = sign > 0 ? other : -other;
            return;
        }
        const Exponent lo = std::min(low(), other.low());
        const Exponent hi = std::max(high(), other.high());
        if (lo < m_low) {
            m_coeffs.insert(m_coeffs.begin(), static_cast<std::size_t>(m_low - lo), Integer(0));
            m_low = lo;
        }
        m_coeffs.resize(static_cast<std::size_t>(hi - lo + 1));
        const auto offset = static_cast<std::size_t>(other.m_low - m_low);
        for (std::size_t j = 0; j < other.m_coeffs.size(); ++j) {
            if (sign > 0) {
                m_coeffs[offset + j] += other.m_coeffs[j];
            } else {
                m_coeffs[offset + j] -= other.m_coeffs[j];
            }
        }
        trim();
    }

    void trim()
    {
        while (!m_coeffs.empty() && m_coeffs.back() == 0) {
            m_coeffs.pop_back();
        }
        std::size_t lead = 0;
        while (lead < m_coeffs.size() && m_coeffs[lead] == 0) {
            ++lead;
        }
        if (lead == m_coeffs.size()) {
            m_coeffs.clear();
            m_low = 0;
            return;
        }
        if (lead > 0) {
            m_coeffs.erase(m_coeffs.begin(), m_coeffs.begin() + static_cast<std::ptrdiff_t>(lead));
            m_low += static_cast<Exponent>(lead);
        }
    }

    Exponent m_low = 0;
    std::vector<Integer> m_coeffs;
};

namespace detail
{

// Dense ordinary polynomials (index = degree, no trailing zeros) used by the
// gcd routines. Laurent polynomials are moved to low() == 0 before entering.
using Dense = std::vector<Integer>;

inline void trim(Dense &p)
{
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

inline Integer content(const Dense &p)
{
    Integer g = 0;
    for (const auto &c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) {
            break;
        }
    }
    return g;
}

inline void make_primitive(Dense &p)
{
    if (p.empty()) {
        return;
    }
    Integer g = content(p);
    if (p.back() < 0) {
        g = -g;
    }
    if (g != 1) {
        for (auto &c : p) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        }
    }
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed in place on a.
inline void pseudo_remainder(Dense &a, const Dense &b)
{
    const std::size_t db = b.size() - 1u;
    const Integer &lb = b.back();
    while (!a.empty() && a.size() - 1u >= db) {
        const Integer la = a.back();
        const std::size_t shift = a.size() - 1u - db;
        for (auto &c : a) {
            c *= lb;
        }
        for (std::size_t j = 0; j <= db; ++j) {
            mpz_submul(a[shift + j].get_mpz_t(), la.get_mpz_t(), b[j].get_mpz_t());
        }
        trim(a);
    }
}

// Primitive gcd over Z[s] (equivalently, gcd over Q[s] normalised to a
// primitive integer polynomial with positive leading coefficient).
inline Dense gcd(Dense a, Dense b)
{
    trim(a);
    trim(b);
    if (a.empty()) {
        make_primitive(b);
        return b;
    }
    if (b.empty()) {
        make_primitive(a);
        return a;
    }
    make_primitive(a);
    make_primitive(b);
    if (a.size() < b.size()) {
        std::swap(a, b);
    }
    while (!b.empty()) {
        if (b.size() == 1u) {
            return Dense{Integer(1)};
        }
        pseudo_remainder(a, b);
        make_primitive(a);
        std::swap(a, b);
    }
    make_primitive(a);
    return a;
}

// Exact division a / b in Z[s]; throws if the division leaves a remainder.
inline Dense divide_exact(Dense a, const Dense &b)
{
    if (b.empty()) {
        throw arithmetic_error("polynomial division by zero");
    }
    trim(a);
    if (a.empty()) {
        return {};
    }
    if (a.size() < b.size()) {
        throw arithmetic_error("inexact polynomial division");
    }
    const std::size_t db = b.size() - 1u;
    Dense q(a.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer &top = a[k + db];
        if (top == 0) {
            continue;
        }
        if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) {
            throw arithmetic_error("inexact polynomial division");
        }
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), b.back().get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) {
            mpz_submul(a[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
        }
    }
    trim(a);
    if (!a.empty()) {
        throw arithmetic_error("inexact polynomial division");
    }
    trim(q);
    return q;
}

inline Dense to_dense(const LaurentPoly &p)
{
    return p.coeffs();
}

inline LaurentPoly from_dense(Exponent low, Dense d)
{
    return LaurentPoly(low, std::move(d));
}

} // namespace detail

} // namespace qlink
