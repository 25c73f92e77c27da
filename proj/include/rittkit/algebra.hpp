#pragma once

// Commutative Groebner bases over Q in finitely many derivatives.
//
// Public bases are reduced and use the lexicographic order induced by the
// ranking (the highest-ranked derivative is the most significant variable).
// Elimination steps run under a block order with graded reverse
// lexicographic blocks and are converted back to lex by recomputation.

#include "rittkit/mpoly.hpp"

#include <algorithm>
#include <list>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace rittkit {

namespace gb {

/// Block order: consecutive blocks compared in turn, grevlex inside each.
/// All-ones blocks give lex.
struct MonomialOrder {
    std::vector<std::size_t> blocks;

    static MonomialOrder lex(std::size_t n) { return {std::vector<std::size_t>(n, 1)}; }

    static MonomialOrder elimination(std::size_t first, std::size_t rest)
    {
        MonomialOrder o;
        if (first > 0) o.blocks.push_back(first);
        if (rest > 0) o.blocks.push_back(rest);
        return o;
    }

    static MonomialOrder grevlex(std::size_t n) { return {{n}}; }

    int compare(const Exponents& a, const Exponents& b) const
    {
        std::size_t start = 0;
        for (auto s : blocks) {
            int da = 0, db = 0;
            for (std::size_t i = start; i < start + s; ++i) {
                da += a[i];
                db += b[i];
            }
            if (da != db) return da < db ? -1 : 1;
            for (std::size_t i = start + s; i-- > start;)
                if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
            start += s;
        }
        return 0;
    }
};

struct Term {
    Exponents e;
    Rational c;
};

/// Terms sorted strictly descending under the ring order.
using Poly = std::vector<Term>;

struct Ring {
    std::size_t nvars;
    MonomialOrder order;

    bool greater(const Exponents& a, const Exponents& b) const { return order.compare(a, b) > 0; }

    void sort(Poly& p) const
    {
        std::sort(p.begin(), p.end(), [&](const Term& x, const Term& y) { return greater(x.e, y.e); });
    }

    Poly from_mpoly(const MPoly& f) const
    {
        Poly p;
        for (const auto& [e, c] : f.terms()) p.push_back({e, c});
        sort(p);
        return p;
    }

    MPoly to_mpoly(const Poly& p) const
    {
        MPoly f(nvars);
        for (const auto& t : p) f.add_term(t.e, t.c);
        return f;
    }

    /// a - c * x^shift * b
    Poly sub_mul(const Poly& a, const Rational& c, const Exponents& shift, const Poly& b) const
    {
        Poly out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        Exponents tmp(nvars);
        while (i < a.size() || j < b.size()) {
            if (j < b.size()) {
                for (std::size_t k = 0; k < nvars; ++k) tmp[k] = b[j].e[k] + shift[k];
            }
            int cmp;
            if (i == a.size()) cmp = -1;
            else if (j == b.size()) cmp = 1;
            else cmp = order.compare(a[i].e, tmp);
            if (cmp > 0) out.push_back(a[i++]);
            else if (cmp < 0) {
                out.push_back({tmp, -c * b[j].c});
                ++j;
            } else {
                Rational v = a[i].c - c * b[j].c;
                if (v != 0) out.push_back({a[i].e, v});
                ++i;
                ++j;
            }
        }
        return out;
    }

    static void make_monic(Poly& p)
    {
        if (p.empty()) return;
        Rational inv = 1 / p.front().c;
        for (auto& t : p) t.c *= inv;
    }

    static bool divides(const Exponents& a, const Exponents& b)
    {
        for (std::size_t k = 0; k < a.size(); ++k)
            if (a[k] > b[k]) return false;
        return true;
    }

    static Exponents quotient(const Exponents& b, const Exponents& a)
    {
        Exponents q(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) q[k] = b[k] - a[k];
        return q;
    }

    static Exponents lcm(const Exponents& a, const Exponents& b)
    {
        Exponents l(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) l[k] = std::max(a[k], b[k]);
        return l;
    }

    /// Fully reduced normal form of f modulo monic G.
    Poly normal_form(Poly f, const std::vector<Poly>& G) const
    {
        Poly rem;
        while (!f.empty()) {
            bool reduced = false;
            for (const auto& g : G) {
                if (g.empty() || !divides(g.front().e, f.front().e)) continue;
                Rational c = f.front().c / g.front().c;
                f = sub_mul(f, c, quotient(f.front().e, g.front().e), g);
                reduced = true;
                break;
            }
            if (!reduced) {
                rem.push_back(f.front());
                f.erase(f.begin());
            }
        }
        return rem;
    }

    Poly s_poly(const Poly& f, const Poly& g) const
    {
        Exponents l = lcm(f.front().e, g.front().e);
        Poly a = sub_mul({}, Rational(-1) / f.front().c, quotient(l, f.front().e), f);
        return sub_mul(a, 1 / g.front().c, quotient(l, g.front().e), g);
    }

    /// Buchberger with the coprime and chain criteria; returns a reduced,
    /// monic basis sorted by descending leading monomial.
    std::vector<Poly> groebner(std::vector<Poly> input) const
    {
        std::vector<Poly> G;
        for (auto& f : input) {
            if (f.empty()) continue;
            make_monic(f);
            G.push_back(std::move(f));
        }
        if (G.empty()) return {};
        for (const auto& g : G) {
            if (is_unit(g)) return {unit_poly()};
        }
        std::set<std::pair<std::size_t, std::size_t>> pairs;
        for (std::size_t j = 0; j < G.size(); ++j)
            for (std::size_t i = 0; i < j; ++i) pairs.emplace(i, j);
        auto total = [](const Exponents& e) {
            int s = 0;
            for (int x : e) s += x;
            return s;
        };
        while (!pairs.empty()) {
            auto best = pairs.begin();
            Exponents best_lcm = lcm(G[best->first].front().e, G[best->second].front().e);
            for (auto it = std::next(pairs.begin()); it != pairs.end(); ++it) {
                Exponents l = lcm(G[it->first].front().e, G[it->second].front().e);
                int tl = total(l), tb = total(best_lcm);
                if (tl < tb || (tl == tb && order.compare(l, best_lcm) < 0)) {
                    best = it;
                    best_lcm = l;
                }
            }
            auto [i, j] = *best;
            pairs.erase(best);
            const auto& li = G[i].front().e;
            const auto& lj = G[j].front().e;
            bool coprime = true;
            for (std::size_t k = 0; k < nvars; ++k)
                if (li[k] > 0 && lj[k] > 0) coprime = false;
            if (coprime) continue;
            bool chain = false;
            for (std::size_t k = 0; k < G.size() && !chain; ++k) {
                if (k == i || k == j || !divides(G[k].front().e, best_lcm)) continue;
                auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
                if (!pairs.count(key(i, k)) && !pairs.count(key(j, k))) chain = true;
            }
            if (chain) continue;
            Poly h = normal_form(s_poly(G[i], G[j]), G);
            if (h.empty()) continue;
            make_monic(h);
            if (is_unit(h)) return {unit_poly()};
            G.push_back(std::move(h));
            for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.emplace(k, G.size() - 1);
        }
        return reduce_basis(std::move(G));
    }

    std::vector<Poly> reduce_basis(std::vector<Poly> G) const
    {
        std::sort(G.begin(), G.end(), [&](const Poly& a, const Poly& b) { return greater(b.front().e, a.front().e); });
        std::vector<Poly> minimal;
        for (auto& g : G) {
            bool redundant = false;
            for (const auto& h : minimal)
                if (divides(h.front().e, g.front().e)) redundant = true;
            if (!redundant) minimal.push_back(std::move(g));
        }
        std::vector<Poly> out;
        for (std::size_t i = 0; i < minimal.size(); ++i) {
            std::vector<Poly> others;
            for (std::size_t k = 0; k < minimal.size(); ++k)
                if (k != i) others.push_back(minimal[k]);
            Poly lead{minimal[i].front()};
            Poly tail(minimal[i].begin() + 1, minimal[i].end());
            Poly r = normal_form(tail, others);
            lead.insert(lead.end(), r.begin(), r.end());
            make_monic(lead);
            out.push_back(std::move(lead));
        }
        std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) { return greater(a.front().e, b.front().e); });
        return out;
    }

    bool is_unit(const Poly& g) const
    {
        if (g.size() != 1) return false;
        for (int x : g.front().e)
            if (x != 0) return false;
        return true;
    }

    Poly unit_poly() const { return {Term{Exponents(nvars, 0), Rational(1)}}; }
};

} // namespace gb

/// Finitely many derivatives, highest rank first.
struct VarFrame {
    std::vector<Derivative> vars;

    static VarFrame of(const std::vector<DiffPoly>& polys, const Ranking& R) { return VarFrame{frame_of(polys, R)}; }

    std::size_t size() const noexcept { return vars.size(); }

    bool contains(const DiffPoly& f) const
    {
        for (const auto& v : f.derivatives())
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) return false;
        return true;
    }

    /// Union of two frames, ordered by R.
    static VarFrame merge(const VarFrame& a, const VarFrame& b, const Ranking& R)
    {
        std::vector<Derivative> all = a.vars;
        all.insert(all.end(), b.vars.begin(), b.vars.end());
        return VarFrame{sorted_descending(all, R)};
    }

    bool operator==(const VarFrame&) const = default;
};

/// Reduced lex Groebner basis of an ideal of Q[frame].
class AlgBasis {
public:
    AlgBasis() = default;

    AlgBasis(VarFrame frame, std::vector<gb::Poly> gens) : frame_(std::move(frame)), gens_(std::move(gens)) {}

    const VarFrame& frame() const noexcept { return frame_; }
    const std::vector<gb::Poly>& raw() const noexcept { return gens_; }
    gb::Ring ring() const { return gb::Ring{frame_.size(), gb::MonomialOrder::lex(frame_.size())}; }

    bool is_zero_ideal() const noexcept { return gens_.empty(); }
    bool is_unit() const { return gens_.size() == 1 && ring().is_unit(gens_.front()); }

    /// Generators as primitive integral polynomials, leading monomial descending.
    std::vector<DiffPoly> polys() const
    {
        std::vector<DiffPoly> out;
        auto rg = ring();
        for (const auto& g : gens_) {
            MPoly p = rg.to_mpoly(g);
            make_primitive(p);
            out.push_back(from_mpoly(p, frame_.vars));
        }
        return out;
    }

    /// Same ideal over a larger frame; a lex basis stays a lex basis.
    AlgBasis extended(const VarFrame& bigger) const
    {
        std::vector<gb::Poly> gens;
        auto rg = ring();
        gb::Ring big{bigger.size(), gb::MonomialOrder::lex(bigger.size())};
        for (const auto& g : gens_) gens.push_back(big.from_mpoly(to_mpoly(from_mpoly(rg.to_mpoly(g), frame_.vars), bigger.vars)));
        return AlgBasis(bigger, std::move(gens));
    }

private:
    VarFrame frame_;
    std::vector<gb::Poly> gens_;
};

namespace detail {

inline gb::Poly lift(const DiffPoly& f, const std::vector<Derivative>& vars, const gb::Ring& ring)
{
    return ring.from_mpoly(to_mpoly(f, vars));
}

/// Reduced basis under `ring` of polynomials over the variable list `vars`
/// (which starts with `aux` auxiliary variables), then the part free of the
/// auxiliaries, recomputed in lex over `frame`.
inline AlgBasis eliminate_aux(const std::vector<gb::Poly>& input, std::size_t aux, const VarFrame& frame)
{
    const std::size_t n = frame.size();
    gb::Ring elim{aux + n, gb::MonomialOrder::elimination(aux, n)};
    auto G = elim.groebner(input);
    gb::Ring target{n, gb::MonomialOrder::lex(n)};
    std::vector<gb::Poly> kept;
    for (const auto& g : G) {
        bool free = true;
        for (const auto& t : g) {
            for (std::size_t k = 0; k < aux; ++k)
                if (t.e[k] != 0) free = false;
        }
        if (!free) continue;
        gb::Poly h;
        for (const auto& t : g) h.push_back({Exponents(t.e.begin() + static_cast<long>(aux), t.e.end()), t.c});
        target.sort(h);
        kept.push_back(std::move(h));
    }
    return AlgBasis(frame, target.groebner(std::move(kept)));
}

inline std::vector<Derivative> with_aux(const VarFrame& frame, std::size_t aux)
{
    std::vector<Derivative> vars;
    for (std::size_t k = 0; k < aux; ++k) vars.push_back(Derivative({}, static_cast<std::uint32_t>(0xFFFFFF00u + k)));
    vars.insert(vars.end(), frame.vars.begin(), frame.vars.end());
    return vars;
}

inline gb::Poly shift_in(const gb::Poly& p, std::size_t aux, const std::vector<int>& aux_exps = {})
{
    gb::Poly out;
    for (const auto& t : p) {
        Exponents e(aux, 0);
        for (std::size_t k = 0; k < aux_exps.size(); ++k) e[k] = aux_exps[k];
        e.insert(e.end(), t.e.begin(), t.e.end());
        out.push_back({std::move(e), t.c});
    }
    return out;
}

} // namespace detail

/// Reduced lex basis of (F) in Q[frame]. Empty F gives the zero ideal.
inline AlgBasis groebner(const std::vector<DiffPoly>& F, const VarFrame& frame)
{
    gb::Ring ring{frame.size(), gb::MonomialOrder::lex(frame.size())};
    std::vector<gb::Poly> input;
    for (const auto& f : F) {
        if (!frame.contains(f)) throw std::invalid_argument("polynomial outside the variable frame");
        input.push_back(detail::lift(f, frame.vars, ring));
    }
    return AlgBasis(frame, ring.groebner(std::move(input)));
}

/// Normal form of f modulo B. Throws std::invalid_argument on frame mismatch.
inline DiffPoly nf(const DiffPoly& f, const AlgBasis& B)
{
    if (!B.frame().contains(f)) throw std::invalid_argument("polynomial outside the basis frame");
    auto ring = B.ring();
    auto r = ring.normal_form(detail::lift(f, B.frame().vars, ring), B.raw());
    return from_mpoly(ring.to_mpoly(r), B.frame().vars);
}

inline bool member(const DiffPoly& f, const AlgBasis& B) { return nf(f, B).is_zero(); }

/// (B):h^infinity via B + (1 - z h) and elimination of z.
inline AlgBasis saturate(const AlgBasis& B, const DiffPoly& h)
{
    if (h.is_zero()) throw std::invalid_argument("saturation by zero");
    if (h.is_constant() || B.is_unit() || B.is_zero_ideal()) return B;
    const auto& frame = B.frame();
    auto vars = detail::with_aux(frame, 1);
    gb::Ring ring{vars.size(), gb::MonomialOrder::elimination(1, frame.size())};
    std::vector<gb::Poly> input;
    for (const auto& g : B.raw()) input.push_back(ring.from_mpoly(ring.to_mpoly(detail::shift_in(g, 1))));
    DiffPoly zh = DiffPoly::variable(vars[0]) * h;
    input.push_back(detail::lift(DiffPoly(1) - zh, vars, ring));
    return detail::eliminate_aux(input, 1, frame);
}

/// B1 ∩ B2 via t*B1 + (1 - t)*B2 and elimination of t.
inline AlgBasis intersect(const AlgBasis& B1, const AlgBasis& B2)
{
    if (!(B1.frame() == B2.frame())) throw std::invalid_argument("intersection of bases over different frames");
    const auto& frame = B1.frame();
    if (B1.is_unit()) return B2;
    if (B2.is_unit()) return B1;
    if (B1.is_zero_ideal() || B2.is_zero_ideal()) return AlgBasis(frame, {});
    auto vars = detail::with_aux(frame, 1);
    gb::Ring ring{vars.size(), gb::MonomialOrder::elimination(1, frame.size())};
    std::vector<gb::Poly> input;
    for (const auto& g : B1.raw()) {
        auto p = detail::shift_in(g, 1, {1});
        ring.sort(p);
        input.push_back(std::move(p));
    }
    for (const auto& g : B2.raw()) {
        auto p = detail::shift_in(g, 1, {0});
        auto tp = detail::shift_in(g, 1, {1});
        for (auto& t : tp) t.c = -t.c;
        MPoly sum = ring.to_mpoly(p) + ring.to_mpoly(tp);
        input.push_back(ring.from_mpoly(sum));
    }
    return detail::eliminate_aux(input, 1, frame);
}

/// f in sqrt(B) iff 1 in B + (1 - z f).
inline bool radical_member(const DiffPoly& f, const AlgBasis& B)
{
    if (!B.frame().contains(f)) throw std::invalid_argument("polynomial outside the basis frame");
    if (B.is_unit() || f.is_zero()) return true;
    if (f.is_constant()) return B.is_unit();
    auto vars = detail::with_aux(B.frame(), 1);
    gb::Ring ring{vars.size(), gb::MonomialOrder::grevlex(vars.size())};
    std::vector<gb::Poly> input;
    for (const auto& g : B.raw()) input.push_back(ring.from_mpoly(ring.to_mpoly(detail::shift_in(g, 1))));
    input.push_back(detail::lift(DiffPoly(1) - DiffPoly::variable(vars[0]) * f, vars, ring));
    auto G = ring.groebner(std::move(input));
    return G.size() == 1 && ring.is_unit(G.front());
}

/// Elimination ideal B ∩ Q[frame \ drop], over the remaining frame.
inline AlgBasis elim(const AlgBasis& B, const std::vector<Derivative>& drop)
{
    const auto& frame = B.frame();
    std::vector<Derivative> dropped, kept;
    for (const auto& v : frame.vars) {
        if (std::find(drop.begin(), drop.end(), v) != drop.end()) dropped.push_back(v);
        else kept.push_back(v);
    }
    for (const auto& v : drop)
        if (std::find(frame.vars.begin(), frame.vars.end(), v) == frame.vars.end())
            throw std::invalid_argument("eliminated variable outside the basis frame");
    if (dropped.empty()) return B;
    std::vector<Derivative> order = dropped;
    order.insert(order.end(), kept.begin(), kept.end());
    gb::Ring ring{order.size(), gb::MonomialOrder::elimination(dropped.size(), kept.size())};
    std::vector<gb::Poly> input;
    for (const auto& g : B.polys()) input.push_back(detail::lift(g, order, ring));
    return detail::eliminate_aux(input, dropped.size(), VarFrame{kept});
}

/// Equality by mutual normal forms.
inline bool ideal_equal(const AlgBasis& B1, const AlgBasis& B2)
{
    if (!(B1.frame() == B2.frame())) throw std::invalid_argument("comparison of bases over different frames");
    for (const auto& g : B1.polys())
        if (!member(g, B2)) return false;
    for (const auto& g : B2.polys())
        if (!member(g, B1)) return false;
    return true;
}

} // namespace rittkit
