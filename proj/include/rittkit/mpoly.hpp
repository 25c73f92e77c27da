#pragma once

// Commutative polynomials over Q in finitely many indexed variables with
// dense exponent vectors, ordered lexicographically (variable 0 most
// significant). Used by factorization and resultants.

#include "rittkit/ranking.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace rittkit {

using Exponents = std::vector<int>;

class MPoly {
public:
    using TermMap = std::map<Exponents, Rational, std::greater<Exponents>>;

    explicit MPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MPoly constant(std::size_t nvars, const Rational& c)
    {
        MPoly p(nvars);
        p.add_term(Exponents(nvars, 0), c);
        return p;
    }

    static MPoly variable(std::size_t nvars, std::size_t i)
    {
        Exponents e(nvars, 0);
        e.at(i) = 1;
        MPoly p(nvars);
        p.add_term(e, Rational(1));
        return p;
    }

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && is_one(terms_.begin()->first));
    }

    void add_term(const Exponents& e, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::pair<const Exponents, Rational>& leading() const { return *terms_.begin(); }

    int degree(std::size_t var) const
    {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    int total_degree() const
    {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    bool involves(std::size_t var) const { return degree(var) > 0; }

    /// Coefficients c_0..c_d with *this = sum c_k var^k.
    std::vector<MPoly> as_univariate(std::size_t var) const
    {
        std::vector<MPoly> out(static_cast<std::size_t>(degree(var)) + 1, MPoly(nvars_));
        for (const auto& [e, c] : terms_) {
            Exponents f = e;
            f[var] = 0;
            out[static_cast<std::size_t>(e[var])].add_term(f, c);
        }
        return out;
    }

    MPoly operator-() const
    {
        MPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    MPoly& operator+=(const MPoly& g)
    {
        for (const auto& [e, c] : g.terms_) add_term(e, c);
        return *this;
    }

    MPoly& operator-=(const MPoly& g)
    {
        for (const auto& [e, c] : g.terms_) add_term(e, -c);
        return *this;
    }

    MPoly& operator*=(const Rational& q)
    {
        if (q == 0) terms_.clear();
        else
            for (auto& [e, c] : terms_) c *= q;
        return *this;
    }

    friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Rational& q) { return a *= q; }

    friend MPoly operator*(const MPoly& a, const MPoly& b)
    {
        MPoly r(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e(ea.size());
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    MPoly& operator*=(const MPoly& b) { return *this = *this * b; }

    /// Exact quotient a / b, or nullopt when b does not divide a.
    friend std::optional<MPoly> exact_divide(MPoly a, const MPoly& b)
    {
        if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
        MPoly q(a.nvars_);
        const auto& [lb, cb] = b.leading();
        while (!a.is_zero()) {
            const auto [la, ca] = a.leading();
            Exponents e(la.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = la[i] - lb[i];
                if (e[i] < 0) return std::nullopt;
            }
            Rational c = ca / cb;
            q.add_term(e, c);
            for (const auto& [eb, cbb] : b.terms_) {
                Exponents f(eb.size());
                for (std::size_t i = 0; i < f.size(); ++i) f[i] = eb[i] + e[i];
                a.add_term(f, -c * cbb);
            }
        }
        return q;
    }

    bool operator==(const MPoly&) const = default;

private:
    static bool is_one(const Exponents& e)
    {
        for (int x : e)
            if (x != 0) return false;
        return true;
    }

    std::size_t nvars_;
    TermMap terms_;
};

inline MPoly pow(const MPoly& f, unsigned e)
{
    MPoly r = MPoly::constant(f.nvars(), Rational(1));
    for (unsigned i = 0; i < e; ++i) r *= f;
    return r;
}

/// Integral, primitive, positive leading coefficient; returns the content.
inline Rational make_primitive(MPoly& f)
{
    if (f.is_zero()) return Rational(0);
    Integer g = 0, l = 1;
    for (const auto& [e, c] : f.terms()) {
        g = gcd(g, Integer(c.get_num()));
        l = lcm(l, Integer(c.get_den()));
    }
    Rational content = make_rational(g, l);
    if (f.leading().second < 0) content = -content;
    f *= Rational(1) / content;
    return content;
}

/// Resultant of a and b with respect to var, by fraction-free elimination on
/// the Sylvester matrix.
inline MPoly resultant(const MPoly& a, const MPoly& b, std::size_t var)
{
    const std::size_t nv = a.nvars();
    auto ca = a.as_univariate(var);
    auto cb = b.as_univariate(var);
    const std::size_t da = ca.size() - 1, db = cb.size() - 1;
    if (a.is_zero() || b.is_zero()) return MPoly(nv);
    if (da == 0 && db == 0) return MPoly::constant(nv, Rational(1));
    if (da == 0) return pow(ca[0], static_cast<unsigned>(db));
    if (db == 0) return pow(cb[0], static_cast<unsigned>(da));
    const std::size_t n = da + db;
    std::vector<std::vector<MPoly>> M(n, std::vector<MPoly>(n, MPoly(nv)));
    for (std::size_t r = 0; r < db; ++r)
        for (std::size_t k = 0; k <= da; ++k) M[r][r + k] = ca[da - k];
    for (std::size_t r = 0; r < da; ++r)
        for (std::size_t k = 0; k <= db; ++k) M[db + r][r + k] = cb[db - k];
    // Bareiss
    MPoly prev = MPoly::constant(nv, Rational(1));
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && M[p][k].is_zero()) ++p;
            if (p == n) return MPoly(nv);
            std::swap(M[k], M[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MPoly num = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                auto q = exact_divide(num, prev);
                if (!q) throw std::logic_error("Bareiss division failed");
                M[i][j] = std::move(*q);
            }
            M[i][k] = MPoly(nv);
        }
        prev = M[k][k];
    }
    MPoly det = M[n - 1][n - 1];
    return negate ? -det : det;
}

/// Variables of f ordered by decreasing rank; index 0 is the highest.
inline std::vector<Derivative> frame_of(const std::vector<DiffPoly>& polys, const Ranking& R)
{
    std::set<Derivative> vars;
    for (const auto& f : polys)
        for (const auto& v : f.derivatives()) vars.insert(v);
    return sorted_descending(vars, R);
}

inline MPoly to_mpoly(const DiffPoly& f, const std::vector<Derivative>& vars)
{
    MPoly p(vars.size());
    for (const auto& [mono, c] : f.terms()) {
        Exponents e(vars.size(), 0);
        for (const auto& [v, d] : mono.factors()) {
            auto it = std::find(vars.begin(), vars.end(), v);
            if (it == vars.end()) throw std::invalid_argument("polynomial uses a variable outside the frame");
            e[static_cast<std::size_t>(it - vars.begin())] = static_cast<int>(d);
        }
        p.add_term(e, c);
    }
    return p;
}

inline DiffPoly from_mpoly(const MPoly& p, const std::vector<Derivative>& vars)
{
    DiffPoly f;
    for (const auto& [e, c] : p.terms()) {
        Monomial m;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0) m = m * Monomial::of(vars.at(i), static_cast<std::uint32_t>(e[i]));
        f.add_term(m, c);
    }
    return f;
}

} // namespace rittkit
