#pragma once

// Primality of (C):H_C^infinity for autoreduced C, restricted to what can be
// certified by factoring over Q and norms over towers; Unknown otherwise.

#include "rittkit/factor.hpp"
#include "rittkit/reduce.hpp"

#include <string>
#include <vector>

namespace rittkit {

struct PrimalityVerdict {
    enum class Kind { prime, not_prime, unknown, unit };

    Kind kind = Kind::unknown;
    DiffPoly f, g;
    std::string reason;

    static PrimalityVerdict prime() { return {Kind::prime, {}, {}, {}}; }
    static PrimalityVerdict unit() { return {Kind::unit, {}, {}, {}}; }
    static PrimalityVerdict not_prime(DiffPoly f, DiffPoly g) { return {Kind::not_prime, std::move(f), std::move(g), {}}; }
    static PrimalityVerdict unknown(std::string why) { return {Kind::unknown, {}, {}, std::move(why)}; }

    bool is_prime() const noexcept { return kind == Kind::prime; }
};

inline std::string to_string(PrimalityVerdict::Kind k)
{
    switch (k) {
    case PrimalityVerdict::Kind::prime: return "prime";
    case PrimalityVerdict::Kind::not_prime: return "not-prime";
    case PrimalityVerdict::Kind::unknown: return "unknown";
    case PrimalityVerdict::Kind::unit: return "unit";
    }
    return "unknown";
}

/// (C):H^infinity as a lex basis over the derivatives of C and H.
inline AlgBasis saturated_ideal(const CharSet& C)
{
    auto h = H_product(C);
    std::vector<DiffPoly> all = C.elements();
    all.push_back(h);
    auto frame = VarFrame::of(all, C.ranking());
    return saturate(groebner(C.elements(), frame), h);
}

/// One element's factors that vanish on some component: those involving the
/// leader with multiplicity one. Content and repeated factors divide the
/// initial or the separant.
inline std::vector<DiffPoly> live_factors(const DiffPoly& f, const Derivative& u, const Ranking& R)
{
    std::vector<DiffPoly> out;
    for (const auto& [g, k] : factor(f, R).factors)
        if (k == 1 && g.degree(u) > 0) out.push_back(normalized(g, R));
    return out;
}

/// One splitting step. `element` is the lowest element with a nontrivial
/// factorization (or none); `live` lists its live factors.
struct SplitStep {
    std::optional<std::size_t> element;
    std::vector<DiffPoly> live;
};

inline SplitStep find_split(const CharSet& C)
{
    const auto& R = C.ranking();
    for (std::size_t i = 0; i < C.size(); ++i) {
        const auto& d = C.lead()[i];
        if (d.rank.degree == 1 && d.initial.is_constant()) continue;
        auto fac = factor(C[i], R);
        if (fac.factors.size() == 1 && fac.factors.front().second == 1) continue;
        return SplitStep{i, live_factors(C[i], d.leader, R)};
    }
    return SplitStep{};
}

namespace detail {

/// Irreducibility of C[i] over the tower defined by the nonlinear elements
/// below it, by factoring the iterated resultant. Assumes every element is
/// irreducible over Q.
inline bool irreducible_over_tower(const CharSet& C, std::size_t i, const std::vector<std::size_t>& below)
{
    const auto& R = C.ranking();
    auto vars = frame_of(C.elements(), R);
    auto index = [&](const Derivative& v) { return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin()); };
    MPoly N = to_mpoly(C[i], vars);
    for (auto k = below.size(); k-- > 0;) {
        N = resultant(N, to_mpoly(C[below[k]], vars), index(C.lead()[below[k]].leader));
        if (N.is_zero()) return false;
    }
    std::size_t u = index(C.lead()[i].leader);
    unsigned live = 0;
    for (const auto& [g, k] : factor(N).factors) {
        if (!g.involves(u)) continue;
        if (k > 1) return false;
        ++live;
    }
    return live == 1;
}

} // namespace detail

/// Prime, NotPrime with a verified witness, Unit when (C):H^infinity = (1),
/// or Unknown outside the certified scope.
inline PrimalityVerdict certify_prime(const CharSet& C)
{
    if (C.is_unit()) return PrimalityVerdict::unit();
    if (C.empty()) return PrimalityVerdict::prime();
    auto B = saturated_ideal(C);
    if (B.is_unit()) return PrimalityVerdict::unit();

    auto split = find_split(C);
    if (split.element) {
        if (split.live.size() >= 2) {
            DiffPoly f = split.live.front();
            DiffPoly g(1);
            for (std::size_t k = 1; k < split.live.size(); ++k) g = g * split.live[k];
            if (!member(f, B) && !member(g, B) && member(f * g, B)) return PrimalityVerdict::not_prime(f, g);
        }
        return PrimalityVerdict::unknown("element-not-irreducible");
    }

    std::vector<std::size_t> nonlinear;
    for (std::size_t i = 0; i < C.size(); ++i) {
        const auto& d = C.lead()[i];
        if (d.rank.degree == 1) continue;
        if (!nonlinear.empty() && !detail::irreducible_over_tower(C, i, nonlinear))
            return PrimalityVerdict::unknown("irreducibility-over-extension-unverified");
        nonlinear.push_back(i);
    }
    return PrimalityVerdict::prime();
}

} // namespace rittkit
