#pragma once

// Rankings on derivatives and the notions they induce: leaders, ranks,
// initials, separants, rank-set comparison and the ranking-lex term order.

#include "rittkit/diffpoly.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rittkit {

class Ranking {
public:
    enum class Kind { orderly, elimination, weighted };

    /// Order of theta, then indeterminate index, then reverse-lex multi-index.
    static Ranking orderly() { return Ranking(Kind::orderly); }

    /// `highest_first` lists every indeterminate index exactly once; derivatives
    /// of earlier entries outrank all derivatives of later entries.
    static Ranking elimination(const std::vector<std::uint32_t>& highest_first)
    {
        Ranking r(Kind::elimination);
        const auto n = highest_first.size();
        r.block_.assign(n, n);
        for (std::size_t pos = 0; pos < n; ++pos) {
            auto j = highest_first[pos];
            if (j >= n || r.block_[j] != n) throw std::invalid_argument("elimination order must be a permutation of the indeterminates");
            r.block_[j] = static_cast<std::uint32_t>(n - 1 - pos);
        }
        return r;
    }

    /// Rows are applied lexicographically to (e_1..e_m, [j==1]..[j==n]); ties
    /// fall back to the orderly ranking.
    static Ranking weighted(std::vector<std::vector<long>> matrix, std::size_t m, std::size_t n)
    {
        for (const auto& row : matrix)
            if (row.size() != m + n) throw std::invalid_argument("weight rows must have m + n entries");
        for (std::size_t k = 0; k < m; ++k) {
            for (const auto& row : matrix) {
                if (row[k] == 0) continue;
                if (row[k] < 0) throw std::invalid_argument("weight matrix violates u <= delta u");
                break;
            }
        }
        Ranking r(Kind::weighted);
        r.matrix_ = std::move(matrix);
        r.m_ = m;
        return r;
    }

    Kind kind() const noexcept { return kind_; }
    const std::vector<std::vector<long>>& matrix() const noexcept { return matrix_; }

    /// Indeterminate indices, highest block first (elimination rankings only).
    std::vector<std::uint32_t> elimination_order() const
    {
        std::vector<std::uint32_t> order(block_.size());
        for (std::uint32_t j = 0; j < block_.size(); ++j) order[block_.size() - 1 - block_[j]] = j;
        return order;
    }

    std::strong_ordering compare(const Derivative& u, const Derivative& v) const
    {
        switch (kind_) {
        case Kind::orderly:
            return compare_orderly(u, v);
        case Kind::elimination:
            if (auto c = block_.at(u.indet) <=> block_.at(v.indet); c != 0) return c;
            if (auto c = u.order() <=> v.order(); c != 0) return c;
            return compare_revlex(u.op, v.op);
        case Kind::weighted:
            for (const auto& row : matrix_) {
                long wu = row[m_ + u.indet], wv = row[m_ + v.indet];
                for (std::size_t k = 0; k < m_; ++k) {
                    wu += row[k] * static_cast<long>(u.op[k]);
                    wv += row[k] * static_cast<long>(v.op[k]);
                }
                if (auto c = wu <=> wv; c != 0) return c;
            }
            return compare_orderly(u, v);
        }
        return std::strong_ordering::equal;
    }

    bool less(const Derivative& u, const Derivative& v) const { return compare(u, v) < 0; }

    bool operator==(const Ranking&) const = default;

private:
    explicit Ranking(Kind k) : kind_(k) {}

    static std::strong_ordering compare_revlex(const MultiIndex& a, const MultiIndex& b)
    {
        for (std::size_t k = a.size(); k-- > 0;)
            if (auto c = a[k] <=> b[k]; c != 0) return c;
        return std::strong_ordering::equal;
    }

    static std::strong_ordering compare_orderly(const Derivative& u, const Derivative& v)
    {
        if (auto c = u.order() <=> v.order(); c != 0) return c;
        if (auto c = u.indet <=> v.indet; c != 0) return c;
        return compare_revlex(u.op, v.op);
    }

    Kind kind_;
    std::vector<std::uint32_t> block_;
    std::vector<std::vector<long>> matrix_;
    std::size_t m_ = 0;
};

inline std::strong_ordering cmp_deriv(const Derivative& u, const Derivative& v, const Ranking& R)
{
    return R.compare(u, v);
}

/// Derivatives sorted from highest to lowest rank.
template <typename Range>
std::vector<Derivative> sorted_descending(const Range& vars, const Ranking& R)
{
    std::vector<Derivative> out(vars.begin(), vars.end());
    std::sort(out.begin(), out.end(), [&](const Derivative& a, const Derivative& b) { return R.less(b, a); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// u^d.
struct Rank {
    Derivative leader;
    std::uint32_t degree = 1;

    bool operator==(const Rank&) const = default;
};

inline std::strong_ordering cmp_ranks(const Rank& a, const Rank& b, const Ranking& R)
{
    if (auto c = R.compare(a.leader, b.leader); c != 0) return c;
    return a.degree <=> b.degree;
}

/// A < B iff the least element of the symmetric difference lies in A.
inline std::strong_ordering cmp_rank_sets(std::vector<Rank> A, std::vector<Rank> B, const Ranking& R)
{
    auto lt = [&](const Rank& a, const Rank& b) { return cmp_ranks(a, b, R) < 0; };
    std::sort(A.begin(), A.end(), lt);
    std::sort(B.begin(), B.end(), lt);
    A.erase(std::unique(A.begin(), A.end()), A.end());
    B.erase(std::unique(B.begin(), B.end()), B.end());
    std::size_t i = 0, j = 0;
    while (i < A.size() && j < B.size()) {
        auto c = cmp_ranks(A[i], B[j], R);
        if (c == 0) {
            ++i;
            ++j;
            continue;
        }
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    if (i < A.size()) return std::strong_ordering::less;
    if (j < B.size()) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

/// Ranking-induced lexicographic order on power products.
inline std::strong_ordering cmp_monomials(const Monomial& a, const Monomial& b, const Ranking& R)
{
    auto desc = [&](const Monomial& m) {
        auto f = m.factors();
        std::sort(f.begin(), f.end(), [&](const auto& x, const auto& y) { return R.less(y.first, x.first); });
        return f;
    };
    auto fa = desc(a), fb = desc(b);
    std::size_t i = 0;
    for (; i < fa.size() && i < fb.size(); ++i) {
        if (auto c = R.compare(fa[i].first, fb[i].first); c != 0) return c;
        if (auto c = fa[i].second <=> fb[i].second; c != 0) return c;
    }
    if (i < fa.size()) return std::strong_ordering::greater;
    if (i < fb.size()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
}

/// Terms of f from the ranking-lex greatest down.
inline std::vector<std::pair<Monomial, Rational>> sorted_terms(const DiffPoly& f, const Ranking& R)
{
    std::vector<std::pair<Monomial, Rational>> out(f.terms().begin(), f.terms().end());
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return cmp_monomials(x.first, y.first, R) > 0; });
    return out;
}

/// Structural total order on polynomials: terms compared from the
/// ranking-lex greatest down, monomial first, then coefficient.
inline std::strong_ordering cmp_polys(const DiffPoly& f, const DiffPoly& g, const Ranking& R)
{
    auto a = sorted_terms(f, R), b = sorted_terms(g, R);
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
        if (auto c = cmp_monomials(a[i].first, b[i].first, R); c != 0) return c;
        if (a[i].second != b[i].second) return a[i].second < b[i].second ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return a.size() <=> b.size();
}

inline std::pair<Monomial, Rational> leading_term(const DiffPoly& f, const Ranking& R)
{
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has no leading term");
    auto best = f.terms().begin();
    for (auto it = std::next(best); it != f.terms().end(); ++it)
        if (cmp_monomials(it->first, best->first, R) > 0) best = it;
    return *best;
}

inline std::optional<Derivative> leader(const DiffPoly& f, const Ranking& R)
{
    std::optional<Derivative> best;
    for (const auto& [m, c] : f.terms())
        for (const auto& [v, e] : m.factors())
            if (!best || R.less(*best, v)) best = v;
    return best;
}

struct LeadData {
    Derivative leader;
    Rank rank;
    DiffPoly initial;
    DiffPoly separant;
};

/// Leader, rank, initial and separant. Throws std::domain_error for constants.
inline LeadData lead_data(const DiffPoly& f, const Ranking& R)
{
    auto u = leader(f, R);
    if (!u) throw std::domain_error("a constant has no leader");
    auto d = f.degree(*u);
    return LeadData{*u, Rank{*u, d}, f.coefficient(*u, d), f.partial(*u)};
}

inline Rank rank_of(const DiffPoly& f, const Ranking& R)
{
    auto u = leader(f, R);
    if (!u) throw std::domain_error("a constant has no rank");
    return Rank{*u, f.degree(*u)};
}

/// f = content * fprim with fprim integral, primitive and with a positive
/// ranking-lex leading coefficient. Throws std::invalid_argument for f = 0.
inline std::pair<Rational, DiffPoly> primitive_part(const DiffPoly& f, const Ranking& R = Ranking::orderly())
{
    if (f.is_zero()) throw std::invalid_argument("primitive part of the zero polynomial");
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& [m, c] : f.terms()) {
        num_gcd = gcd(num_gcd, Integer(c.get_num()));
        den_lcm = lcm(den_lcm, Integer(c.get_den()));
    }
    Rational content = make_rational(num_gcd, den_lcm);
    if (leading_term(f, R).second < 0) content = -content;
    DiffPoly prim = f;
    prim *= Rational(1) / content;
    return {content, prim};
}

inline DiffPoly normalized(const DiffPoly& f, const Ranking& R = Ranking::orderly())
{
    if (f.is_zero()) return f;
    return primitive_part(f, R).second;
}

} // namespace rittkit
