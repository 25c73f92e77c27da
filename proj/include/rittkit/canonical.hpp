#pragma once

// Generator-independent prime decomposition by recursion on the highest-rank
// components, zero-divisor test, prolongation generators and canonical
// generating sets for a fixed ranking.

#include "rittkit/decompose.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rittkit {

struct Budgets {
    unsigned prolongation = 8;
    unsigned depth = 32;
};

/// Normalized, leader-content free, mutually reduced to a fixpoint.
/// Throws std::domain_error for an uncertified component.
inline CharSet canonical_charset(const Component& c)
{
    if (!c.certified_prime) throw std::domain_error("canonical characteristic set of an uncertified component");
    const auto& R = c.charset.ranking();
    auto elems = c.charset.elements();
    for (;;) {
        bool changed = false;
        for (std::size_t i = 0; i < elems.size(); ++i) {
            std::vector<DiffPoly> others;
            for (std::size_t k = 0; k < elems.size(); ++k)
                if (k != i) others.push_back(elems[k]);
            DiffPoly e = elems[i];
            if (!others.empty()) {
                auto r = full_reduce(e, CharSet(others, R)).remainder;
                if (!r.is_zero() && !r.is_constant() && rank_of(r, R) == rank_of(e, R)) e = r;
            }
            auto u = *leader(e, R);
            DiffPoly kept(1);
            auto fac = factor(e, R);
            for (const auto& [g, k] : fac.factors)
                if (g.degree(u) > 0) kept = kept * pow(g, k);
            e = normalized(kept, R);
            if (!(e == elems[i])) {
                elems[i] = e;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return CharSet(elems, R);
}

/// Components of maximal rank set, with canonical characteristic sets,
/// deduplicated. Throws std::domain_error if any component is uncertified.
inline std::vector<Component> max_rank_components(const Decomposition& D, const Ranking& R)
{
    for (const auto& c : D.components)
        if (!c.certified_prime) throw std::domain_error("uncertified component blocks highest-rank extraction");
    std::vector<Component> out;
    for (const auto& c : D.components) {
        Component k = c;
        k.charset = canonical_charset(c);
        if (!out.empty()) {
            auto cmp = cmp_rank_sets(k.charset.ranks(), out.front().charset.ranks(), R);
            if (cmp < 0) continue;
            if (cmp > 0) out.clear();
        }
        bool dup = false;
        for (const auto& o : out)
            if (o.charset == k.charset) dup = true;
        if (!dup) out.push_back(std::move(k));
    }
    for (auto& c : out) c.certified_essential = true;
    return out;
}

struct TraceEntry {
    enum class Kind { root, colon, with_h } kind;
    unsigned depth;
    std::vector<DiffPoly> F;
    std::vector<DiffPoly> M;
    std::size_t components = 0;
    bool unit = false;
    bool revisited = false;
};

struct CanonicalDecomposition {
    std::vector<DiffPoly> F;
    std::vector<Component> components;
    std::vector<TraceEntry> trace;
    bool unit = false;
};

namespace detail {

inline std::string structural_key(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& M, const Ranking& R)
{
    auto sorted = [&](std::vector<DiffPoly> v) {
        for (auto& f : v) f = normalized(f, R);
        std::sort(v.begin(), v.end(), [&](const DiffPoly& a, const DiffPoly& b) { return cmp_polys(a, b, R) < 0; });
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    auto dump = [&](const std::vector<DiffPoly>& v) {
        std::string s;
        for (const auto& f : v) {
            for (const auto& [m, c] : sorted_terms(f, R)) {
                s += to_string(c);
                for (const auto& [d, e] : m.factors()) {
                    s += '[' + std::to_string(d.indet);
                    for (auto x : d.op) s += ',' + std::to_string(x);
                    s += '^' + std::to_string(e) + ']';
                }
                s += ';';
            }
            s += '|';
        }
        return s;
    };
    return dump(sorted(F)) + "#" + dump(sorted(M));
}

class CanonicalWalker {
public:
    CanonicalWalker(const Ranking& R, unsigned max_depth) : R_(R), max_depth_(max_depth) {}

    void visit(const std::vector<DiffPoly>& F, const std::vector<DiffPoly>& M, unsigned depth, TraceEntry::Kind kind)
    {
        if (depth > max_depth_) throw BudgetExhausted("canonical recursion depth cap exceeded");
        TraceEntry entry{kind, depth, F, M, 0, false, false};
        for (const auto& f : F) {
            if (f.is_constant() && !f.is_zero()) {
                entry.unit = true;
                out_.trace.push_back(entry);
                return;
            }
        }
        auto key = structural_key(F, M, R_);
        if (!seen_.emplace(key, true).second) {
            entry.revisited = true;
            out_.trace.push_back(entry);
            return;
        }
        auto D = rg_decompose_saturated(F, M, R_);
        entry.unit = D.unit;
        entry.components = D.components.size();
        out_.trace.push_back(entry);
        if (D.unit) return;
        bool certified = true;
        for (const auto& c : D.components)
            if (!c.certified_prime) certified = false;
        if (!certified) {
            for (const auto& c : D.components) add(c, false);
            return;
        }
        auto top = max_rank_components(D, R_);
        for (const auto& c : top) add(c, depth == 0);
        for (const auto& c : top) {
            for (const auto& e : c.charset.elements()) {
                auto M1 = M;
                add_unique(M1, e);
                visit(F, M1, depth + 1, TraceEntry::Kind::colon);
            }
            auto F1 = F;
            add_unique(F1, normalized(H_product(c.charset), R_));
            visit(F1, M, depth + 1, TraceEntry::Kind::with_h);
        }
    }

    CanonicalDecomposition take(const std::vector<DiffPoly>& F)
    {
        out_.F = F;
        sort_components(out_.components, R_);
        out_.unit = out_.components.empty();
        return std::move(out_);
    }

private:
    void add(Component c, bool essential)
    {
        c.certified_essential = essential && c.certified_prime;
        for (auto& o : out_.components) {
            if (o.charset == c.charset && o.inequations == c.inequations) {
                o.certified_essential = o.certified_essential || c.certified_essential;
                return;
            }
        }
        out_.components.push_back(std::move(c));
    }

    const Ranking& R_;
    unsigned max_depth_;
    std::map<std::string, bool> seen_;
    CanonicalDecomposition out_;
};

} // namespace detail

inline CanonicalDecomposition canonical_decompose(const std::vector<DiffPoly>& F, const Ranking& R, unsigned max_depth = Budgets{}.depth)
{
    detail::CanonicalWalker walker(R, max_depth);
    walker.visit(F, {}, 0, TraceEntry::Kind::root);
    return walker.take(F);
}

struct ZeroDivisorResult {
    enum class Verdict { no, yes, unknown } verdict;
    std::optional<Component> component;
};

inline std::string to_string(ZeroDivisorResult::Verdict v)
{
    switch (v) {
    case ZeroDivisorResult::Verdict::no: return "no";
    case ZeroDivisorResult::Verdict::yes: return "yes";
    case ZeroDivisorResult::Verdict::unknown: return "unknown";
    }
    return "unknown";
}

inline ZeroDivisorResult zero_divisor(const DiffPoly& f, const CanonicalDecomposition& CD)
{
    using V = ZeroDivisorResult::Verdict;
    if (CD.unit) return {V::unknown, std::nullopt};
    bool all_certified = true, inside_some = false;
    for (const auto& c : CD.components) {
        if (!c.certified_prime) all_certified = false;
        if (member_component(f, c)) {
            if (c.certified_essential) return {V::yes, c};
            inside_some = true;
        }
    }
    if (!inside_some && all_certified) return {V::no, std::nullopt};
    return {V::unknown, std::nullopt};
}

inline ZeroDivisorResult zero_divisor(const DiffPoly& f, const std::vector<DiffPoly>& F, const Ranking& R, unsigned max_depth = Budgets{}.depth)
{
    return zero_divisor(f, canonical_decompose(F, R, max_depth));
}

/// (C^(i)):H_C^infinity over the derivatives it involves.
inline AlgBasis prolongation_ideal(const CharSet& C, unsigned i)
{
    auto gens = C.m() == 0 ? C.elements() : prolong(C.elements(), i, C.m());
    auto h = H_product(C);
    auto all = gens;
    all.push_back(h);
    return saturate(groebner(gens, VarFrame::of(all, C.ranking())), h);
}

inline std::vector<DiffPoly> prolongation_generators(const CharSet& C, unsigned i)
{
    return prolongation_ideal(C, i).polys();
}

struct GeneratorBasis {
    unsigned j = 0;
    std::vector<DiffPoly> basis;
};

/// Least i with H_C not a zero-divisor modulo {F_i}. Throws BudgetExhausted.
inline GeneratorBasis generators_from_charset(const CharSet& C, unsigned budget = Budgets{}.prolongation, unsigned max_depth = Budgets{}.depth)
{
    auto h = H_product(C);
    bool unknown = false;
    for (unsigned i = 0; i <= budget; ++i) {
        auto Fi = prolongation_generators(C, i);
        if (Fi.empty()) continue;
        auto zd = zero_divisor(h, Fi, C.ranking(), max_depth);
        if (zd.verdict == ZeroDivisorResult::Verdict::no) return {i, Fi};
        if (zd.verdict == ZeroDivisorResult::Verdict::unknown) unknown = true;
    }
    throw BudgetExhausted(unknown ? "zero-divisor test undecided up to the prolongation budget" : "prolongation budget exhausted");
}

/// Least j with {B_j} = {F}, where B_j is the reduced lex basis of the
/// intersection of the prolongation ideals of all canonical components.
/// Throws std::domain_error for uncertified components, BudgetExhausted otherwise.
inline GeneratorBasis canonical_generators(const std::vector<DiffPoly>& F, const Ranking& R, unsigned budget = Budgets{}.prolongation, unsigned max_depth = Budgets{}.depth)
{
    auto CD = canonical_decompose(F, R, max_depth);
    if (CD.unit) return {0, {DiffPoly(1)}};
    for (const auto& c : CD.components)
        if (!c.certified_prime) throw std::domain_error("canonical generators need certified prime components");
    for (unsigned j = 0; j <= budget; ++j) {
        std::vector<AlgBasis> parts;
        VarFrame frame;
        for (const auto& c : CD.components) {
            parts.push_back(prolongation_ideal(c.charset, j));
            frame = VarFrame::merge(frame, parts.back().frame(), R);
        }
        AlgBasis I = parts.front().extended(frame);
        for (std::size_t k = 1; k < parts.size(); ++k) I = intersect(I, parts[k].extended(frame));
        auto B = I.polys();
        if (B.empty()) continue;
        if (equal_radical(B, F, R)) return {j, B};
    }
    throw BudgetExhausted("prolongation budget exhausted");
}

} // namespace rittkit
