#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace rittkit;

namespace {

constexpr double max_seconds_per_example = 60.0;
constexpr int certificate_pairs = 1000;
constexpr int groebner_ideals = 200;
constexpr int charset_sets = 200;
constexpr int truncation_degree = 8;

const Context ode({"x"}, {"y", "z"});
const Ranking R = Ranking::orderly();

DiffPoly P(const char* s) { return parse_poly(s, ode); }

std::vector<DiffPoly> Ps(std::initializer_list<const char*> v)
{
    std::vector<DiffPoly> out;
    for (auto s : v) out.push_back(P(s));
    return out;
}

Derivative var(const char* s) { return *P(s).derivatives().begin(); }

std::vector<std::vector<DiffPoly>> charsets(const std::vector<Component>& comps)
{
    std::vector<std::vector<DiffPoly>> out;
    for (const auto& c : comps) out.push_back(c.charset.elements());
    return out;
}

template <class F>
double timed(F&& f)
{
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string serial(const CanonicalDecomposition& D)
{
    Json a = Json::array();
    for (const auto& c : D.components) a.push_back(to_json(c, ode));
    return a.dump();
}

bool ritt_pair(std::string& note)
{
    for (const char* g : {"y'^2-4*y", "y'^2-4*y^3"}) {
        Decomposition D;
        CanonicalDecomposition CD;
        double t = timed([&] {
            D = rg_decompose(Ps({g}), R);
            CD = canonical_decompose(Ps({g}), R);
        });
        auto want = std::vector<std::vector<DiffPoly>>{Ps({g}), Ps({"y"})};
        if (charsets(D.components) != want) return note = std::string("decompose mismatch for ") + g, false;
        if (charsets(CD.components) != want) return note = std::string("canonical mismatch for ") + g, false;
        if (!CD.components[0].certified_essential || CD.components[1].certified_essential)
            return note = std::string("essential flags wrong for ") + g, false;
        if (t >= max_seconds_per_example) return note = "too slow", false;
    }
    return true;
}

bool zero_divisors(std::string& note)
{
    using V = ZeroDivisorResult::Verdict;
    auto a = zero_divisor(P("y'-y"), Ps({"y'^2-y^2"}), R);
    if (a.verdict != V::yes || !a.component || a.component->charset.elements() != Ps({"y'-y"})) return note = "y'-y", false;
    if (zero_divisor(P("y"), Ps({"y'^2-y^2"}), R).verdict != V::no) return note = "y mod y'^2-y^2", false;
    if (zero_divisor(P("y"), Ps({"y'^2-4*y"}), R).verdict != V::unknown) return note = "y mod y'^2-4y", false;
    return true;
}

bool generator_independence(std::string& note)
{
    auto a = serial(canonical_decompose(Ps({"y'^2-4*y"}), R));
    auto b = serial(canonical_decompose(Ps({"y'^2-4*y", "2*y'*y''-4*y'"}), R));
    if (a != b) return note = "parabola generators differ", false;
    auto f = P("y'^2-y^2");
    auto c = serial(canonical_decompose({f}, R));
    auto d = serial(canonical_decompose({f, P("y") * f + differentiate(f, 0, 1)}, R));
    if (c != d) return note = "squares generators differ", false;
    return true;
}

bool prolongation(std::string& note)
{
    CharSet C(Ps({"y'^2-4*y"}), R);
    if (prolongation_generators(C, 1) != Ps({"y''-2", "y'^2-4*y"})) return note = "prolongation_generators", false;
    auto g = generators_from_charset(C, 2);
    if (g.j != 1 || g.basis != Ps({"y''-2", "y'^2-4*y"})) return note = "generators_from_charset", false;
    Component comp{C, {}, true, false, {}, 0, {}};
    for (const auto& f : g.basis)
        if (!member_component(f, comp)) return note = "F_1 outside [C]:H", false;
    for (const char* probe : {"y''-2", "2*y'*y''-4*y'", "y'''", "y'*y'''"})
        if (member_radical(P(probe), rg_decompose(g.basis, R)) != member_component(P(probe), comp)) return note = std::string("probe ") + probe, false;
    if (!equal_radical(g.basis, Ps({"y'^2-4*y", "y''-2"}), R)) return note = "equal_radical", false;
    return true;
}

bool canonical_generator_sets(std::string& note)
{
    auto a = canonical_generators(Ps({"y"}), R);
    if (a.j != 0 || a.basis != Ps({"y"})) return note = "{y}", false;
    auto b = canonical_generators(Ps({"y'^2-y^2"}), R);
    if (b.j != 0 || b.basis != Ps({"y'^2-y^2"})) return note = "{y'^2-y^2}", false;
    auto F = Ps({"y'^2-4*y"});
    auto c = canonical_generators(F, R);
    if (!equal_radical(c.basis, F, R)) return note = "{y'^2-4y} not equal", false;
    auto DF = rg_decompose(F, R), DB = rg_decompose(c.basis, R);
    for (const auto& g : c.basis)
        if (!member_radical(g, DF)) return note = "basis element outside {F}", false;
    for (const auto& f : F)
        if (!member_radical(f, DB)) return note = "generator outside {B}", false;
    return true;
}

bool certificates(std::string& note)
{
    std::mt19937 rng(101);
    std::vector<Derivative> vars;
    for (const char* s : {"y", "y'", "y''", "z", "z'"}) vars.push_back(var(s));
    int done = 0;
    while (done < certificate_pairs) {
        std::vector<DiffPoly> X;
        for (int k = 0; k < 3; ++k) X.push_back(oracle::random_nonconstant(rng, vars, 3, 2));
        auto C = char_set(X, R);
        if (C.is_unit()) continue;
        auto f = oracle::random_poly(rng, vars, 4, 3);
        for (const auto& cert : {partial_reduce(f, C), full_reduce(f, C)}) {
            DiffPoly rhs = cert.remainder;
            for (const auto& q : cert.quotients) rhs = rhs + q.quotient * apply_theta(C[q.element], q.theta);
            if (!(cert.multiplier * f == rhs)) return note = "identity fails at pair " + std::to_string(done), false;
        }
        auto r = full_reduce(f, C).remainder;
        for (const auto& c : C.elements())
            if (!oracle::reduced(r, c, R)) return note = "remainder not reduced at pair " + std::to_string(done), false;
        ++done;
    }
    return true;
}

bool groebner_oracle(std::string& note)
{
    std::mt19937 rng(102);
    std::vector<Derivative> vars{var("y"), var("z"), var("y'")};
    const VarFrame frame{sorted_descending(vars, R)};
    for (int n = 0; n < groebner_ideals; ++n) {
        std::vector<DiffPoly> F;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) F.push_back(oracle::random_nonconstant(rng, vars, 3, 2));
        auto B = groebner(F, frame);
        auto ring = B.ring();
        const auto& G = B.raw();
        for (std::size_t i = 0; i < G.size(); ++i)
            for (std::size_t j = i + 1; j < G.size(); ++j)
                if (!ring.normal_form(ring.s_poly(G[i], G[j]), G).empty()) return note = "S-polynomial at ideal " + std::to_string(n), false;
        std::vector<MPoly> gens;
        for (const auto& f : F) gens.push_back(to_mpoly(f, frame.vars));
        for (const auto& f : F)
            if (!member(f, B)) return note = "generator not a member", false;
        for (const auto& g : B.polys())
            if (!oracle::in_truncated_span(to_mpoly(g, frame.vars), gens, truncation_degree))
                return note = "basis element not in the degree-" + std::to_string(truncation_degree) + " span at ideal " + std::to_string(n), false;
        for (int t = 0; t < 4; ++t) {
            auto f = oracle::random_poly(rng, vars, 3, 2);
            if (t % 2 == 0) f = f * F[0] + oracle::random_poly(rng, vars, 2, 1) * F.back();
            bool span = oracle::in_truncated_span(to_mpoly(f, frame.vars), gens, truncation_degree);
            if (span != member(f, B)) return note = "membership disagrees at ideal " + std::to_string(n), false;
        }
    }
    return true;
}

bool charset_minimality(std::string& note)
{
    std::mt19937 rng(103);
    std::vector<Derivative> vars{var("y"), var("y'"), var("z")};
    for (int n = 0; n < charset_sets; ++n) {
        std::vector<DiffPoly> X;
        int k = 1 + static_cast<int>(rng() % 5);
        for (int i = 0; i < k; ++i) X.push_back(oracle::random_nonconstant(rng, vars, 3, 2));
        auto C = char_set(X, R);
        if (!oracle::autoreduced(C.elements(), R)) return note = "not autoreduced at set " + std::to_string(n), false;
        std::vector<oracle::SimpleRank> got;
        for (const auto& c : C.elements()) got.push_back(oracle::srank(c, R));
        if (oracle::cmp_rank_set(got, oracle::minimal_rank_set(X, R), R) != 0) return note = "rank set not minimal at set " + std::to_string(n), false;
    }
    return true;
}

bool intersection_soundness(std::string& note)
{
    std::vector<std::vector<DiffPoly>> corpus{Ps({"y"}), Ps({"y'^2-4*y"}), Ps({"y'^2-4*y^3"}), Ps({"y'^2-y^2"}), Ps({"y*y'"}),
                                              Ps({"y'^2-4*y", "z'-y"}), Ps({"y'-z", "z'-y"})};
    for (const auto& F : corpus) {
        auto D = rg_decompose(F, R);
        for (const auto& c : D.components)
            for (const auto& f : F)
                if (!member_component(f, c)) return note = "generator outside a component", false;
        std::vector<std::size_t> pick(D.components.size(), 0);
        for (;;) {
            DiffPoly prod(1);
            for (std::size_t k = 0; k < pick.size(); ++k) prod = prod * D.components[k].charset[pick[k]];
            if (!member_radical(prod, D)) return note = "product outside the intersection", false;
            std::size_t k = 0;
            while (k < pick.size() && ++pick[k] == D.components[k].charset.size()) pick[k++] = 0;
            if (k == pick.size()) break;
        }
    }
    return true;
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<bool(std::string&)> check;
    };
    const std::vector<Criterion> criteria{
        {"Ritt example pair decomposes into the stated components with essential flags", ritt_pair},
        {"zero-divisor verdicts yes / no / unknown", zero_divisors},
        {"canonical components independent of the generating set", generator_independence},
        {"prolongation ideal and generators from a characteristic set", prolongation},
        {"canonical generating sets", canonical_generator_sets},
        {"reduction certificates on 1000 random pairs", certificates},
        {"Groebner bases agree with linear algebra on 200 random ideals", groebner_oracle},
        {"characteristic sets minimal on 200 random sets", charset_minimality},
        {"intersection soundness over the corpus", intersection_soundness},
    };
    int failures = 0, n = 0;
    for (const auto& c : criteria) {
        ++n;
        std::string note;
        bool ok = false;
        double t = 0;
        try {
            t = timed([&] { ok = c.check(note); });
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        std::printf("[%s] %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", n, c.name, t, note.empty() ? "" : " - ", note.c_str());
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
