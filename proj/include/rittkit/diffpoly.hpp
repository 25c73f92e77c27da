#pragma once

// Sparse differential polynomials over Q.

#include "rittkit/derivative.hpp"
#include "rittkit/rational.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rittkit {

/// Power product of derivatives, kept sorted by the structural derivative
/// order with strictly positive exponents.
class Monomial {
public:
    using Factor = std::pair<Derivative, std::uint32_t>;

    Monomial() = default;

    static Monomial of(Derivative v, std::uint32_t e = 1)
    {
        Monomial m;
        if (e > 0) m.factors_.emplace_back(std::move(v), e);
        return m;
    }

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }

    std::uint32_t degree(const Derivative& v) const
    {
        auto it = find(v);
        return it == factors_.end() ? 0 : it->second;
    }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (const auto& [v, e] : factors_) d += e;
        return d;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b)
    {
        Monomial r;
        r.factors_.reserve(a.factors_.size() + b.factors_.size());
        auto i = a.factors_.begin();
        auto j = b.factors_.begin();
        while (i != a.factors_.end() && j != b.factors_.end()) {
            if (i->first < j->first) r.factors_.push_back(*i++);
            else if (j->first < i->first) r.factors_.push_back(*j++);
            else {
                r.factors_.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        r.factors_.insert(r.factors_.end(), i, a.factors_.end());
        r.factors_.insert(r.factors_.end(), j, b.factors_.end());
        return r;
    }

    /// Same monomial with the exponent of v replaced by e (0 removes v).
    Monomial with_degree(const Derivative& v, std::uint32_t e) const
    {
        Monomial r;
        bool placed = false;
        for (const auto& f : factors_) {
            if (!placed && !(f.first < v)) {
                if (e > 0) r.factors_.emplace_back(v, e);
                placed = true;
                if (f.first == v) continue;
            }
            r.factors_.push_back(f);
        }
        if (!placed && e > 0) r.factors_.emplace_back(v, e);
        return r;
    }

    bool divides(const Monomial& other) const
    {
        for (const auto& [v, e] : factors_)
            if (other.degree(v) < e) return false;
        return true;
    }

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;

private:
    std::vector<Factor>::const_iterator find(const Derivative& v) const
    {
        auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                                   [](const Factor& f, const Derivative& d) { return f.first < d; });
        return (it != factors_.end() && it->first == v) ? it : factors_.end();
    }

    std::vector<Factor> factors_;
};

/// Element of Q{Y}: finite map monomial -> nonzero rational.
class DiffPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    DiffPoly() = default;
    DiffPoly(long c) { add_term(Monomial{}, Rational(c)); }
    DiffPoly(const Rational& c) { add_term(Monomial{}, c); }

    static DiffPoly constant(const Rational& c) { return DiffPoly(c); }

    static DiffPoly variable(const Derivative& v, std::uint32_t e = 1)
    {
        DiffPoly p;
        p.add_term(Monomial::of(v, e), Rational(1));
        return p;
    }

    static DiffPoly term(const Monomial& m, const Rational& c)
    {
        DiffPoly p;
        p.add_term(m, c);
        return p;
    }

    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const noexcept
    {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational constant_value() const
    {
        auto it = terms_.find(Monomial{});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// Adds c*m in place, keeping the no-zero-coefficient invariant.
    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    std::set<Derivative> derivatives() const
    {
        std::set<Derivative> out;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.factors()) out.insert(v);
        return out;
    }

    std::uint32_t degree(const Derivative& v) const
    {
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree(v));
        return d;
    }

    unsigned total_degree() const
    {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    unsigned max_order() const
    {
        unsigned o = 0;
        for (const auto& [m, c] : terms_)
            for (const auto& [v, e] : m.factors()) o = std::max(o, v.order());
        return o;
    }

    /// Coefficient of v^d when viewed as a polynomial in v.
    DiffPoly coefficient(const Derivative& v, std::uint32_t d) const
    {
        DiffPoly r;
        for (const auto& [m, c] : terms_)
            if (m.degree(v) == d) r.terms_.emplace(m.with_degree(v, 0), c);
        return r;
    }

    /// Partial derivative with respect to the algebraic variable v.
    DiffPoly partial(const Derivative& v) const
    {
        DiffPoly r;
        for (const auto& [m, c] : terms_) {
            auto e = m.degree(v);
            if (e == 0) continue;
            r.add_term(m.with_degree(v, e - 1), c * e);
        }
        return r;
    }

    DiffPoly operator-() const
    {
        DiffPoly r = *this;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    DiffPoly& operator+=(const DiffPoly& g)
    {
        for (const auto& [m, c] : g.terms_) add_term(m, c);
        return *this;
    }

    DiffPoly& operator-=(const DiffPoly& g)
    {
        for (const auto& [m, c] : g.terms_) add_term(m, -c);
        return *this;
    }

    DiffPoly& operator*=(const Rational& q)
    {
        if (q == 0) terms_.clear();
        else
            for (auto& [m, c] : terms_) c *= q;
        return *this;
    }

    friend DiffPoly operator+(DiffPoly f, const DiffPoly& g) { return f += g; }
    friend DiffPoly operator-(DiffPoly f, const DiffPoly& g) { return f -= g; }
    friend DiffPoly operator*(DiffPoly f, const Rational& q) { return f *= q; }
    friend DiffPoly operator*(const Rational& q, DiffPoly f) { return f *= q; }

    friend DiffPoly operator*(const DiffPoly& f, const DiffPoly& g)
    {
        if (f.is_zero() || g.is_zero()) return {};
        DiffPoly r;
        for (const auto& [mf, cf] : f.terms_)
            for (const auto& [mg, cg] : g.terms_) r.add_term(mf * mg, cf * cg);
        return r;
    }

    DiffPoly& operator*=(const DiffPoly& g) { return *this = *this * g; }

    /// Multiplies every term by the monomial m.
    DiffPoly shifted(const Monomial& m) const
    {
        DiffPoly r;
        for (const auto& [t, c] : terms_) r.terms_.emplace(t * m, c);
        return r;
    }

    bool operator==(const DiffPoly&) const = default;
    auto operator<=>(const DiffPoly& o) const { return terms_ <=> o.terms_; }

private:
    TermMap terms_;
};

inline DiffPoly pow(const DiffPoly& f, unsigned e)
{
    DiffPoly result(1);
    DiffPoly base = f;
    while (e > 0) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

/// delta_k applied to a monomial, by the Leibniz rule.
inline DiffPoly differentiate(const Monomial& m, std::size_t k)
{
    DiffPoly r;
    for (const auto& [v, e] : m.factors()) {
        Monomial rest = m.with_degree(v, e - 1);
        r.add_term(rest * Monomial::of(v.derive(k)), Rational(e));
    }
    return r;
}

/// delta_k f. Throws std::out_of_range when k >= m.
inline DiffPoly differentiate(const DiffPoly& f, std::size_t k, std::size_t m)
{
    if (k >= m) throw std::out_of_range("derivation index out of range");
    DiffPoly r;
    for (const auto& [mono, c] : f.terms()) {
        for (const auto& [v, e] : mono.factors()) {
            Monomial rest = mono.with_degree(v, e - 1);
            r.add_term(rest * Monomial::of(v.derive(k)), c * e);
        }
    }
    return r;
}

/// theta f for theta = delta_1^e_1 ... delta_m^e_m.
inline DiffPoly apply_theta(const DiffPoly& f, const MultiIndex& e)
{
    DiffPoly r = f;
    for (std::size_t k = 0; k < e.size(); ++k)
        for (std::uint32_t i = 0; i < e[k]; ++i) r = differentiate(r, k, e.size());
    return r;
}

/// C^(i) = { theta f : ord theta <= i, f in C }, duplicates removed, in
/// input order then by increasing operator order.
inline std::vector<DiffPoly> prolong(const std::vector<DiffPoly>& C, unsigned i, std::size_t m)
{
    std::vector<DiffPoly> out;
    std::set<DiffPoly> seen;
    for (const auto& f : C) {
        for (const auto& theta : multi_indices_up_to(m, i)) {
            DiffPoly g = apply_theta(f, theta);
            if (seen.insert(g).second) out.push_back(std::move(g));
        }
    }
    return out;
}

} // namespace rittkit
