#pragma once

// Independent oracles and random generators shared by the unit tests and
// the acceptance binary. Nothing here calls the code it checks, except to
// build inputs.

#include "rittkit.hpp"

#include <compare>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using namespace rittkit;

inline int sign(std::strong_ordering c) { return c < 0 ? -1 : c > 0 ? 1 : 0; }

inline DiffPoly random_poly(std::mt19937& rng, const std::vector<Derivative>& pool, int max_terms, int max_deg, int coef = 3)
{
    std::uniform_int_distribution<int> nterms(1, max_terms), pick(0, static_cast<int>(pool.size()) - 1),
        deg(0, max_deg), c(-coef, coef), nfac(0, 2);
    DiffPoly f;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        Monomial m;
        int budget = max_deg;
        for (int k = nfac(rng); k > 0 && budget > 0; --k) {
            int e = std::min(budget, std::max(1, deg(rng)));
            m = m * Monomial::of(pool[pick(rng)], static_cast<std::uint32_t>(e));
            budget -= e;
        }
        int cc = c(rng);
        if (cc == 0) cc = 1;
        f.add_term(m, Rational(cc));
    }
    return f;
}

inline DiffPoly random_nonconstant(std::mt19937& rng, const std::vector<Derivative>& pool, int max_terms, int max_deg)
{
    for (;;) {
        auto f = random_poly(rng, pool, max_terms, max_deg);
        if (!f.is_constant()) return f;
    }
}

/// Highest derivative under R, from the definition.
inline Derivative top(const DiffPoly& f, const Ranking& R)
{
    auto vars = f.derivatives();
    Derivative best = *vars.begin();
    for (const auto& v : vars)
        if (R.compare(v, best) > 0) best = v;
    return best;
}

/// Reducedness from the definition: theta = 1 bounds the degree, any other
/// theta gives a linear derivative whose leader must be absent.
inline bool reduced(const DiffPoly& f, const DiffPoly& g, const Ranking& R)
{
    auto u = top(g, R);
    std::uint32_t d = 0;
    for (const auto& [m, c] : g.terms()) d = std::max(d, m.degree(u));
    for (const auto& [m, c] : f.terms()) {
        for (const auto& [v, e] : m.factors()) {
            if (v.indet != u.indet) continue;
            bool above = true, proper = false;
            for (std::size_t k = 0; k < v.op.size(); ++k) {
                if (v.op[k] < u.op[k]) above = false;
                if (v.op[k] > u.op[k]) proper = true;
            }
            if (above && proper) return false;
            if (v == u && e >= d) return false;
        }
    }
    return true;
}

inline bool autoreduced(const std::vector<DiffPoly>& A, const Ranking& R)
{
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i].is_constant()) return false;
        for (std::size_t j = 0; j < A.size(); ++j)
            if (i != j && !reduced(A[i], A[j], R)) return false;
    }
    return true;
}

struct SimpleRank {
    Derivative u;
    std::uint32_t d;
};

inline SimpleRank srank(const DiffPoly& f, const Ranking& R)
{
    auto u = top(f, R);
    std::uint32_t d = 0;
    for (const auto& [m, c] : f.terms()) d = std::max(d, m.degree(u));
    return {u, d};
}

inline int cmp_rank(const SimpleRank& a, const SimpleRank& b, const Ranking& R)
{
    if (auto c = R.compare(a.u, b.u); c != 0) return c < 0 ? -1 : 1;
    return a.d < b.d ? -1 : a.d > b.d ? 1 : 0;
}

/// -1 when the least element of the symmetric difference lies in A.
inline int cmp_rank_set(const std::vector<SimpleRank>& A, const std::vector<SimpleRank>& B, const Ranking& R)
{
    auto in = [&](const SimpleRank& x, const std::vector<SimpleRank>& S) {
        for (const auto& s : S)
            if (cmp_rank(x, s, R) == 0) return true;
        return false;
    };
    std::vector<std::pair<SimpleRank, int>> diff;
    for (const auto& a : A)
        if (!in(a, B)) diff.push_back({a, -1});
    for (const auto& b : B)
        if (!in(b, A)) diff.push_back({b, 1});
    if (diff.empty()) return 0;
    auto best = diff.front();
    for (const auto& x : diff)
        if (cmp_rank(x.first, best.first, R) < 0) best = x;
    return best.second;
}

/// Least rank set among autoreduced subsets, by enumeration.
inline std::vector<SimpleRank> minimal_rank_set(const std::vector<DiffPoly>& X, const Ranking& R)
{
    std::vector<DiffPoly> nc;
    for (const auto& f : X)
        if (!f.is_constant()) nc.push_back(f);
    std::vector<SimpleRank> best;
    bool have = false;
    for (unsigned mask = 1; mask < (1u << nc.size()); ++mask) {
        std::vector<DiffPoly> sub;
        for (std::size_t i = 0; i < nc.size(); ++i)
            if (mask & (1u << i)) sub.push_back(nc[i]);
        if (!autoreduced(sub, R)) continue;
        std::vector<SimpleRank> rs;
        for (const auto& f : sub) rs.push_back(srank(f, R));
        if (!have || cmp_rank_set(rs, best, R) < 0) {
            best = rs;
            have = true;
        }
    }
    return best;
}

// ---- truncated-degree linear algebra membership -------------------------

using Mono = std::vector<int>;

inline std::map<Mono, Rational> coeffs(const MPoly& p)
{
    std::map<Mono, Rational> out;
    for (const auto& [e, c] : p.terms()) out[e] = c;
    return out;
}

inline std::vector<Mono> monomials_up_to(std::size_t n, int D)
{
    std::vector<Mono> out;
    Mono cur(n, 0);
    auto rec = [&](auto& self, std::size_t i, int left) -> void {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = e;
            self(self, i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(rec, 0, D);
    return out;
}

/// f in span{ m * g : deg(m * g) <= D } by exact Gaussian elimination.
inline bool in_truncated_span(const MPoly& f, const std::vector<MPoly>& G, int D)
{
    const std::size_t n = f.nvars();
    std::vector<std::map<Mono, Rational>> rows;
    for (const auto& g : G) {
        int dg = g.total_degree();
        if (dg > D) continue;
        for (const auto& m : monomials_up_to(n, D - dg)) {
            MPoly mono(n);
            mono.add_term(m, Rational(1));
            rows.push_back(coeffs(mono * g));
        }
    }
    // Echelon form keyed by pivot monomial.
    std::map<Mono, std::map<Mono, Rational>> pivots;
    auto reduce = [&](std::map<Mono, Rational> r) {
        for (;;) {
            if (r.empty()) return r;
            auto lead = r.rbegin()->first;
            auto it = pivots.find(lead);
            if (it == pivots.end()) return r;
            Rational c = r.rbegin()->second / it->second.rbegin()->second;
            for (const auto& [m, v] : it->second) {
                r[m] -= c * v;
                if (r[m] == 0) r.erase(m);
            }
        }
    };
    for (auto& r : rows) {
        auto red = reduce(std::move(r));
        if (!red.empty()) pivots[red.rbegin()->first] = std::move(red);
    }
    return reduce(coeffs(f)).empty();
}

// ---- irreducibility by substitution and Kronecker's divisor search -------

inline std::vector<Integer> divisors(Integer v)
{
    v = abs(v);
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= v; ++d) {
        if (v % d == 0) {
            out.push_back(d);
            out.push_back(-d);
            if (d * d != v) {
                out.push_back(v / d);
                out.push_back(-(v / d));
            }
        }
    }
    return out;
}

/// Coefficients low to high.
using UPoly = std::vector<Rational>;

inline Rational eval(const UPoly& p, const Rational& x)
{
    Rational r = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
    return r;
}

inline std::optional<UPoly> exact_quotient(UPoly a, const UPoly& b)
{
    while (!b.empty() && b.back() == 0) return std::nullopt;
    if (a.size() < b.size()) return std::nullopt;
    UPoly q(a.size() - b.size() + 1);
    for (std::size_t i = q.size(); i-- > 0;) {
        q[i] = a[i + b.size() - 1] / b.back();
        for (std::size_t k = 0; k < b.size(); ++k) a[i + k] -= q[i] * b[k];
    }
    for (const auto& c : a)
        if (c != 0) return std::nullopt;
    return q;
}

/// Lagrange interpolation through (x_i, y_i).
inline UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    UPoly res(xs.size(), Rational(0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        UPoly basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < xs.size(); ++j) {
            if (j == i) continue;
            UPoly next(basis.size() + 1, Rational(0));
            for (std::size_t k = 0; k < basis.size(); ++k) {
                next[k + 1] += basis[k];
                next[k] -= xs[j] * basis[k];
            }
            basis = next;
            denom *= xs[i] - xs[j];
        }
        for (std::size_t k = 0; k < basis.size(); ++k) res[k] += ys[i] * basis[k] / denom;
    }
    return res;
}

/// Kronecker: p (integer coefficients) has no factor of degree 1..deg/2.
inline bool univariate_irreducible(const UPoly& p)
{
    const int n = static_cast<int>(p.size()) - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    for (int k = 1; k <= n / 2; ++k) {
        std::vector<Rational> xs;
        std::vector<std::vector<Integer>> divs;
        for (int x = 0; static_cast<int>(xs.size()) < k + 1; x = x <= 0 ? 1 - x : -x) {
            Rational v = eval(p, Rational(x));
            if (v == 0) return false;
            xs.push_back(Rational(x));
            divs.push_back(divisors(Integer(v.get_num())));
        }
        std::vector<std::size_t> idx(k + 1, 0);
        for (;;) {
            std::vector<Rational> ys;
            for (int i = 0; i <= k; ++i) ys.push_back(Rational(divs[i][idx[i]]));
            auto cand = interpolate(xs, ys);
            while (!cand.empty() && cand.back() == 0) cand.pop_back();
            if (static_cast<int>(cand.size()) - 1 >= 1) {
                bool integral = true;
                for (const auto& c : cand)
                    if (c.get_den() != 1) integral = false;
                if (integral && exact_quotient(p, cand)) return false;
            }
            std::size_t pos = 0;
            while (pos <= static_cast<std::size_t>(k) && ++idx[pos] == divs[pos].size()) idx[pos++] = 0;
            if (pos > static_cast<std::size_t>(k)) break;
        }
    }
    return true;
}

/// Certifies irreducibility over Q of a multivariate g by finding a
/// substitution x_i = a_i t + b_i preserving the total degree whose image is
/// irreducible. False means "not certified".
inline bool certify_irreducible(const MPoly& g, std::mt19937& rng, int attempts = 40)
{
    const std::size_t n = g.nvars();
    const int D = g.total_degree();
    if (D <= 0) return false;
    std::uniform_int_distribution<int> small(-3, 3);
    for (int a = 0; a < attempts; ++a) {
        std::vector<Rational> A(n), B(n);
        for (std::size_t i = 0; i < n; ++i) {
            A[i] = small(rng);
            B[i] = small(rng);
        }
        UPoly img(static_cast<std::size_t>(D) + 1, Rational(0));
        for (const auto& [e, c] : g.terms()) {
            UPoly term{c};
            for (std::size_t i = 0; i < n; ++i) {
                for (int k = 0; k < e[i]; ++k) {
                    UPoly next(term.size() + 1, Rational(0));
                    for (std::size_t j = 0; j < term.size(); ++j) {
                        next[j + 1] += A[i] * term[j];
                        next[j] += B[i] * term[j];
                    }
                    term = next;
                }
            }
            for (std::size_t j = 0; j < term.size(); ++j) img[j] += term[j];
        }
        if (img.back() == 0) continue;
        Integer l = 1;
        for (const auto& c : img) l = lcm(l, Integer(c.get_den()));
        for (auto& c : img) c *= l;
        if (univariate_irreducible(img)) return true;
    }
    return false;
}

} // namespace oracle
