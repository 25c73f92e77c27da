#pragma once

// Rosenfeld-Groebner decomposition of {F}:M^infinity into regular
// components [C]:H_C^infinity, refined by factor splitting, with membership
// and a sound redundancy test.

#include "rittkit/primes.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace rittkit {

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct TraceStep {
    enum class Kind { vanishes, split } kind;
    DiffPoly poly;
};

struct Component {
    CharSet charset;
    /// Extra inequations; always empty for certified components.
    std::vector<DiffPoly> inequations;
    bool certified_prime = false;
    bool certified_essential = false;
    std::string reason;
    unsigned bound = 0;
    std::vector<TraceStep> provenance;
};

struct Decomposition {
    std::vector<DiffPoly> F;
    std::vector<DiffPoly> M;
    std::vector<Component> components;
    bool unit = false;
};

namespace detail {

inline void add_unique(std::vector<DiffPoly>& v, const DiffPoly& f)
{
    if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
}

inline std::strong_ordering cmp_poly_lists(const std::vector<DiffPoly>& a, const std::vector<DiffPoly>& b, const Ranking& R)
{
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
        if (auto c = cmp_polys(a[i], b[i], R); c != 0) return c;
    return a.size() <=> b.size();
}

/// Highest rank set first, then structural order of the elements.
inline void sort_components(std::vector<Component>& comps, const Ranking& R)
{
    std::stable_sort(comps.begin(), comps.end(), [&](const Component& x, const Component& y) {
        if (auto c = cmp_rank_sets(x.charset.ranks(), y.charset.ranks(), R); c != 0) return c > 0;
        if (auto c = cmp_poly_lists(x.charset.elements(), y.charset.elements(), R); c != 0) return c < 0;
        return cmp_poly_lists(x.inequations, y.inequations, R) < 0;
    });
}

struct Task {
    std::vector<DiffPoly> F;
    std::vector<DiffPoly> M;
    unsigned bound = 0;
    std::vector<TraceStep> trace;
};

constexpr std::size_t max_tasks = 200000;

} // namespace detail

/// Components of {F}:M^infinity before redundancy pruning.
inline Decomposition rg_decompose_raw(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& M, const Ranking& R)
{
    Decomposition D{F, M, {}, false};
    std::vector<DiffPoly> F0, M0;
    for (const auto& f : F)
        if (!f.is_zero()) detail::add_unique(F0, normalized(f, R));
    for (const auto& m : M) {
        if (m.is_zero()) throw std::invalid_argument("zero multiplier");
        if (!m.is_constant()) detail::add_unique(M0, normalized(m, R));
    }
    if (F0.empty()) throw std::invalid_argument("decomposition of the zero ideal");

    std::vector<detail::Task> stack{{F0, M0, 0, {}}};
    std::size_t processed = 0;
    while (!stack.empty()) {
        if (++processed > detail::max_tasks) throw BudgetExhausted("decomposition task budget exhausted");
        auto t = std::move(stack.back());
        stack.pop_back();

        bool dead = false;
        for (const auto& f : t.F)
            if (f.is_constant()) dead = true;
        if (dead) continue;
        auto C = char_set(t.F, R);

        // Vanishing branches for initials and separants not yet known nonzero.
        auto hs = H_factors(C);
        std::vector<DiffPoly> fresh;
        for (const auto& h : hs)
            if (std::find(t.M.begin(), t.M.end(), h) == t.M.end()) fresh.push_back(h);
        if (!fresh.empty()) {
            auto M = t.M;
            for (const auto& h : fresh) {
                auto F1 = t.F;
                detail::add_unique(F1, h);
                auto tr = t.trace;
                tr.push_back({TraceStep::Kind::vanishes, h});
                stack.push_back({F1, M, t.bound, tr});
                M.push_back(h);
            }
            stack.push_back({t.F, M, t.bound, t.trace});
            continue;
        }

        std::vector<DiffPoly> rem;
        unsigned bound = t.bound;
        bool unit = false;
        auto consider = [&](const DiffPoly& p) {
            auto cert = full_reduce(p, C);
            bound = std::max(bound, cert.max_order);
            if (cert.remainder.is_zero()) return;
            if (cert.remainder.is_constant()) unit = true;
            else detail::add_unique(rem, normalized(cert.remainder, R));
        };
        for (const auto& f : t.F)
            if (std::find(C.elements().begin(), C.elements().end(), f) == C.elements().end()) consider(f);
        for (std::size_t i = 0; i < C.size(); ++i) {
            for (std::size_t j = i + 1; j < C.size(); ++j) {
                auto ops = delta_operators(C[i], C[j], R);
                if (!ops) continue;
                bound = std::max({bound, order_of(ops->first), order_of(ops->second)});
                consider(*delta_poly(C[i], C[j], R));
            }
        }
        if (unit) continue;
        if (!rem.empty()) {
            auto F1 = C.elements();
            for (const auto& r : rem) detail::add_unique(F1, r);
            stack.push_back({F1, t.M, bound, t.trace});
            continue;
        }

        // Regular leaf: split by factorization, then certify.
        auto split = find_split(C);
        if (split.element) {
            for (const auto& g : split.live) {
                auto F1 = C.elements();
                F1.erase(F1.begin() + static_cast<long>(*split.element));
                F1.push_back(g);
                auto tr = t.trace;
                tr.push_back({TraceStep::Kind::split, g});
                stack.push_back({F1, t.M, bound, tr});
            }
            continue;
        }
        auto verdict = certify_prime(C);
        if (verdict.kind == PrimalityVerdict::Kind::unit) continue;
        Component comp{C, {}, verdict.is_prime(), false, verdict.reason, bound, t.trace};
        for (const auto& m : t.M) {
            auto r = full_reduce(m, C).remainder;
            if (r.is_zero()) {
                dead = true;
                break;
            }
            if (!comp.certified_prime && !r.is_constant()) {
                auto rn = normalized(r, R);
                if (std::find(hs.begin(), hs.end(), rn) == hs.end()) detail::add_unique(comp.inequations, rn);
            }
        }
        if (dead) continue;
        bool seen = false;
        for (const auto& c : D.components)
            if (c.charset == comp.charset && c.inequations == comp.inequations) seen = true;
        if (!seen) D.components.push_back(std::move(comp));
    }
    for (auto& c : D.components) std::sort(c.inequations.begin(), c.inequations.end(), [&](const DiffPoly& a, const DiffPoly& b) { return cmp_polys(a, b, R) < 0; });
    detail::sort_components(D.components, R);
    D.unit = D.components.empty();
    return D;
}

/// f in [C]:H^infinity (with extra inequations for uncertified components).
inline bool member_component(const DiffPoly& f, const Component& c)
{
    if (f.is_zero()) return true;
    const auto& C = c.charset;
    if (C.is_unit()) return true;
    if (c.certified_prime && c.inequations.empty()) return full_reduce(f, C).remainder.is_zero();
    auto r = partial_reduce(f, C).remainder;
    if (r.is_zero()) return true;
    auto gens = C.m() == 0 ? C.elements() : prolong(C.elements(), c.bound, C.m());
    DiffPoly h = H_product(C);
    for (const auto& m : c.inequations) h = h * m;
    std::vector<DiffPoly> all = gens;
    all.push_back(r);
    all.push_back(h);
    auto B = saturate(groebner(gens, VarFrame::of(all, C.ranking())), h);
    return member(r, B);
}

inline bool member_radical(const DiffPoly& f, const Decomposition& D)
{
    if (f.is_zero() || D.unit) return true;
    for (const auto& c : D.components)
        if (!member_component(f, c)) return false;
    return true;
}

/// Drops Q when another certified prime P = [C]:H^infinity has C in Q and
/// H not in Q; requires Q to be certified prime as well.
inline Decomposition prune_redundant(Decomposition D)
{
    auto& comps = D.components;
    for (std::size_t q = 0; q < comps.size();) {
        bool redundant = false;
        if (comps[q].certified_prime) {
            for (std::size_t p = 0; p < comps.size() && !redundant; ++p) {
                if (p == q || !comps[p].certified_prime) continue;
                bool inside = true;
                for (const auto& e : comps[p].charset.elements())
                    if (!member_component(e, comps[q])) inside = false;
                if (inside && !member_component(H_product(comps[p].charset), comps[q])) redundant = true;
            }
        }
        if (redundant) comps.erase(comps.begin() + static_cast<long>(q));
        else ++q;
    }
    return D;
}

inline Decomposition rg_decompose_saturated(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& M, const Ranking& R)
{
    return prune_redundant(rg_decompose_raw(F, M, R));
}

inline Decomposition rg_decompose(const std::vector<DiffPoly>& F, const Ranking& R)
{
    return rg_decompose_saturated(F, {}, R);
}

struct SplitResult {
    std::vector<CharSet> parts;
    bool complete = true;
};

/// Components of [C]:H_C^infinity; incomplete when some part is uncertified.
inline SplitResult split_component(const CharSet& C)
{
    if (C.is_unit()) return {};
    if (C.empty()) return {{C}, true};
    auto D = rg_decompose_saturated(C.elements(), H_factors(C), C.ranking());
    SplitResult out;
    for (const auto& c : D.components) {
        out.parts.push_back(c.charset);
        if (!c.certified_prime) out.complete = false;
    }
    return out;
}

/// Mutual radical membership of generators.
inline bool equal_radical(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& G, const Ranking& R)
{
    auto DF = rg_decompose(F, R);
    for (const auto& g : G)
        if (!member_radical(g, DF)) return false;
    auto DG = rg_decompose(G, R);
    for (const auto& f : F)
        if (!member_radical(f, DG)) return false;
    return true;
}

} // namespace rittkit
