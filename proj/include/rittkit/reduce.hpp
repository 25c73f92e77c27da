#pragma once

// Ritt reduction with certificates, autoreduced and characteristic sets,
// Delta-polynomials and coherence.

#include "rittkit/algebra.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rittkit {

/// True iff f is reduced with respect to g: no proper derivative of ld g
/// occurs in f and deg_{ld g} f < deg g. Throws std::domain_error for constant g.
inline bool is_reduced(const DiffPoly& f, const DiffPoly& g, const Ranking& R)
{
    auto rk = rank_of(g, R);
    for (const auto& v : f.derivatives())
        if (v.is_proper_derivative_of(rk.leader)) return false;
    return f.degree(rk.leader) < rk.degree;
}

inline bool is_autoreduced(const std::vector<DiffPoly>& A, const Ranking& R)
{
    for (const auto& f : A)
        if (f.is_constant()) return false;
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            if (i != j && !is_reduced(A[i], A[j], R)) return false;
    return true;
}

class CharSet {
public:
    CharSet() : ranking_(Ranking::orderly()) {}

    /// Elements are normalized and sorted by increasing leader.
    /// Throws std::invalid_argument unless the set is autoreduced.
    CharSet(std::vector<DiffPoly> elements, Ranking R) : ranking_(std::move(R))
    {
        for (auto& f : elements) {
            if (f.is_zero() || f.is_constant()) throw std::invalid_argument("characteristic set elements must be nonconstant");
            f = normalized(f, ranking_);
        }
        if (!is_autoreduced(elements, ranking_)) throw std::invalid_argument("set is not autoreduced");
        std::sort(elements.begin(), elements.end(), [&](const DiffPoly& a, const DiffPoly& b) {
            return ranking_.less(*leader(a, ranking_), *leader(b, ranking_));
        });
        elements_ = std::move(elements);
        for (const auto& f : elements_) lead_.push_back(lead_data(f, ranking_));
    }

    /// The unit ideal signal.
    static CharSet unit(Ranking R)
    {
        CharSet c;
        c.ranking_ = std::move(R);
        c.unit_ = true;
        return c;
    }

    bool is_unit() const noexcept { return unit_; }
    bool empty() const noexcept { return elements_.empty(); }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<DiffPoly>& elements() const noexcept { return elements_; }
    const DiffPoly& operator[](std::size_t i) const { return elements_.at(i); }
    const Ranking& ranking() const noexcept { return ranking_; }
    const std::vector<LeadData>& lead() const noexcept { return lead_; }

    std::vector<Rank> ranks() const
    {
        std::vector<Rank> r;
        for (const auto& d : lead_) r.push_back(d.rank);
        return r;
    }

    std::vector<Derivative> leaders() const
    {
        std::vector<Derivative> r;
        for (const auto& d : lead_) r.push_back(d.leader);
        return r;
    }

    /// Number of derivations, read off the leaders (0 for an empty set).
    std::size_t m() const { return lead_.empty() ? 0 : lead_.front().leader.op.size(); }

    bool operator==(const CharSet& o) const { return unit_ == o.unit_ && elements_ == o.elements_; }

private:
    std::vector<DiffPoly> elements_;
    Ranking ranking_;
    std::vector<LeadData> lead_;
    bool unit_ = false;
};

/// Product of all initials and separants.
inline DiffPoly H_product(const CharSet& C)
{
    DiffPoly h(1);
    for (const auto& d : C.lead()) h = h * d.initial * d.separant;
    return h;
}

/// Nonconstant initials and separants, normalized and deduplicated.
inline std::vector<DiffPoly> H_factors(const CharSet& C)
{
    std::vector<DiffPoly> out;
    for (const auto& d : C.lead()) {
        for (const auto* p : {&d.initial, &d.separant}) {
            if (p->is_constant()) continue;
            auto q = normalized(*p, C.ranking());
            if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
        }
    }
    return out;
}

struct MultiplierFactor {
    std::size_t element;
    bool separant;
    unsigned power;

    bool operator==(const MultiplierFactor&) const = default;
};

struct QuotientTerm {
    std::size_t element;
    MultiIndex theta;
    DiffPoly quotient;
};

/// multiplier * f = sum quotient * theta C[element] + remainder.
struct ReductionCertificate {
    DiffPoly multiplier{1};
    std::vector<MultiplierFactor> factors;
    std::vector<QuotientTerm> quotients;
    DiffPoly remainder;
    unsigned max_order = 0;

    DiffPoly combination(const CharSet& C) const
    {
        DiffPoly s;
        for (const auto& q : quotients) s += q.quotient * apply_theta(C[q.element], q.theta);
        return s;
    }

    bool verify(const DiffPoly& f, const CharSet& C) const { return multiplier * f - combination(C) - remainder == DiffPoly(); }
};

namespace detail {

class Reducer {
public:
    Reducer(const DiffPoly& f, const CharSet& C) : C_(C) { cert_.remainder = f; }

    void partial()
    {
        const auto& R = C_.ranking();
        for (;;) {
            auto vars = sorted_descending(cert_.remainder.derivatives(), R);
            std::optional<std::pair<Derivative, std::size_t>> hit;
            for (const auto& v : vars) {
                for (std::size_t i = 0; i < C_.size() && !hit; ++i)
                    if (v.is_proper_derivative_of(C_.lead()[i].leader)) hit = {v, i};
                if (hit) break;
            }
            if (!hit) return;
            auto [v, i] = *hit;
            auto theta = *v.operator_from(C_.lead()[i].leader);
            step(apply_theta(C_[i], theta), v, 1, C_.lead()[i].separant, i, theta, true);
        }
    }

    void algebraic()
    {
        for (std::size_t i = C_.size(); i-- > 0;) {
            const auto& d = C_.lead()[i];
            step(C_[i], d.leader, d.rank.degree, d.initial, i, MultiIndex(C_.m(), 0), false);
        }
    }

    ReductionCertificate take() { return std::move(cert_); }

private:
    // Pseudo-division of the remainder by T in v; T has degree d in v with
    // leading coefficient I.
    void step(const DiffPoly& T, const Derivative& v, unsigned d, const DiffPoly& I, std::size_t elem, const MultiIndex& theta, bool sep)
    {
        auto& r = cert_.remainder;
        if (r.degree(v) < d) return;
        DiffPoly q;
        unsigned k = 0;
        while (r.degree(v) >= d) {
            auto e = r.degree(v);
            DiffPoly lc = r.coefficient(v, e);
            DiffPoly mono = e > d ? DiffPoly::variable(v, e - d) : DiffPoly(1);
            r = I * r - lc * mono * T;
            q = I * q + lc * mono;
            ++k;
        }
        DiffPoly Ik = pow(I, k);
        cert_.multiplier = cert_.multiplier * Ik;
        for (auto& qt : cert_.quotients) qt.quotient = qt.quotient * Ik;
        auto it = std::find_if(cert_.quotients.begin(), cert_.quotients.end(),
            [&](const QuotientTerm& t) { return t.element == elem && t.theta == theta; });
        if (it == cert_.quotients.end()) cert_.quotients.push_back({elem, theta, q});
        else it->quotient += q;
        auto ft = std::find_if(cert_.factors.begin(), cert_.factors.end(),
            [&](const MultiplierFactor& m) { return m.element == elem && m.separant == sep; });
        if (ft == cert_.factors.end()) cert_.factors.push_back({elem, sep, k});
        else ft->power += k;
        cert_.max_order = std::max(cert_.max_order, order_of(theta));
    }

    const CharSet& C_;
    ReductionCertificate cert_;
};

} // namespace detail

/// Remainder free of proper derivatives of the leaders; multiplier is a
/// product of separants.
inline ReductionCertificate partial_reduce(const DiffPoly& f, const CharSet& C)
{
    detail::Reducer r(f, C);
    r.partial();
    return r.take();
}

/// Remainder reduced with respect to every element of C.
inline ReductionCertificate full_reduce(const DiffPoly& f, const CharSet& C)
{
    detail::Reducer r(f, C);
    r.partial();
    r.algebraic();
    return r.take();
}

/// Greedy lowest-rank selection. Throws std::invalid_argument when X has no
/// nonconstant element; a nonzero constant in X yields CharSet::unit.
inline CharSet char_set(const std::vector<DiffPoly>& X, const Ranking& R)
{
    std::vector<DiffPoly> cands;
    bool has_unit = false;
    for (const auto& f : X) {
        if (f.is_zero()) continue;
        if (f.is_constant()) {
            has_unit = true;
            continue;
        }
        auto g = normalized(f, R);
        if (std::find(cands.begin(), cands.end(), g) == cands.end()) cands.push_back(std::move(g));
    }
    if (cands.empty()) throw std::invalid_argument("no characteristic set of a set of constants");
    if (has_unit) return CharSet::unit(R);
    std::sort(cands.begin(), cands.end(), [&](const DiffPoly& a, const DiffPoly& b) {
        if (auto c = cmp_ranks(rank_of(a, R), rank_of(b, R), R); c != 0) return c < 0;
        return cmp_polys(a, b, R) < 0;
    });
    std::vector<DiffPoly> chosen;
    for (const auto& c : cands) {
        bool ok = true;
        for (const auto& a : chosen)
            if (!is_reduced(c, a, R)) ok = false;
        if (ok) chosen.push_back(c);
    }
    return CharSet(std::move(chosen), R);
}

/// Operators theta_f, theta_g with theta_f(ld f) = theta_g(ld g) the least
/// common derivative, or nullopt for distinct indeterminates or when one
/// leader is a derivative of the other.
inline std::optional<std::pair<MultiIndex, MultiIndex>> delta_operators(const DiffPoly& f, const DiffPoly& g, const Ranking& R)
{
    auto u = *leader(f, R), v = *leader(g, R);
    if (u.indet != v.indet) return std::nullopt;
    if (u.operator_from(v) || v.operator_from(u)) return std::nullopt;
    MultiIndex tf(u.op.size()), tg(u.op.size());
    for (std::size_t k = 0; k < u.op.size(); ++k) {
        auto l = std::max(u.op[k], v.op[k]);
        tf[k] = l - u.op[k];
        tg[k] = l - v.op[k];
    }
    return std::make_pair(tf, tg);
}

/// S_g * theta_f f - S_f * theta_g g.
inline std::optional<DiffPoly> delta_poly(const DiffPoly& f, const DiffPoly& g, const Ranking& R)
{
    auto ops = delta_operators(f, g, R);
    if (!ops) return std::nullopt;
    auto sf = lead_data(f, R).separant, sg = lead_data(g, R).separant;
    return sg * apply_theta(f, ops->first) - sf * apply_theta(g, ops->second);
}

/// Every Delta-polynomial partially reduces into the ideal generated by the
/// derivatives theta C_i ranked below the common derivative, saturated by H_C.
inline bool is_coherent(const CharSet& C)
{
    if (C.is_unit() || C.m() <= 1) return true;
    const auto& R = C.ranking();
    for (std::size_t i = 0; i < C.size(); ++i) {
        for (std::size_t j = i + 1; j < C.size(); ++j) {
            auto ops = delta_operators(C[i], C[j], R);
            if (!ops) continue;
            auto delta = *delta_poly(C[i], C[j], R);
            auto r = partial_reduce(delta, C).remainder;
            if (r.is_zero()) continue;
            Derivative top = C.lead()[i].leader.apply(ops->first);
            std::vector<DiffPoly> gens;
            for (std::size_t k = 0; k < C.size(); ++k) {
                for (const auto& th : multi_indices_up_to(C.m(), top.order())) {
                    auto w = C.lead()[k].leader.apply(th);
                    if (R.less(w, top)) gens.push_back(apply_theta(C[k], th));
                }
            }
            std::vector<DiffPoly> all = gens;
            all.push_back(r);
            auto h = H_product(C);
            all.push_back(h);
            auto frame = VarFrame::of(all, R);
            auto B = saturate(groebner(gens, frame), h);
            if (!member(r, B)) return false;
        }
    }
    return true;
}

} // namespace rittkit
