#include "support.hpp"

#include <gtest/gtest.h>

using namespace rittkit;

namespace {

const Context ode({"x"}, {"y"});
const Ranking R = Ranking::orderly();

DiffPoly P(const char* s) { return parse_poly(s, ode); }

std::vector<DiffPoly> Ps(std::initializer_list<const char*> v)
{
    std::vector<DiffPoly> out;
    for (auto s : v) out.push_back(P(s));
    return out;
}

struct Flat {
    std::vector<DiffPoly> charset;
    bool essential;
    bool operator==(const Flat&) const = default;
};

std::vector<Flat> flat(const CanonicalDecomposition& D)
{
    std::vector<Flat> out;
    for (const auto& c : D.components) out.push_back({c.charset.elements(), c.certified_essential});
    return out;
}

std::string serial(const CanonicalDecomposition& D)
{
    Json a = Json::array();
    for (const auto& c : D.components) a.push_back(to_json(c, ode));
    return a.dump();
}

Component comp(std::vector<DiffPoly> e) { return Component{CharSet(std::move(e), R), {}, true, false, {}, 0, {}}; }

} // namespace

TEST(Canonical, CharsetNormalization)
{
    EXPECT_EQ(canonical_charset(comp(Ps({"2*y'^2-8*y"}))).elements(), Ps({"y'^2-4*y"}));
    EXPECT_EQ(canonical_charset(comp(Ps({"y'-y"}))).elements(), Ps({"y'-y"}));
    EXPECT_EQ(canonical_charset(comp(Ps({"y'^2-4*y+0*y''"}))).elements(), Ps({"y'^2-4*y"}));
    auto u = comp(Ps({"y"}));
    u.certified_prime = false;
    EXPECT_THROW(canonical_charset(u), std::domain_error);
}

TEST(Canonical, MaxRankComponents)
{
    auto a = max_rank_components(rg_decompose(Ps({"y'^2-4*y"}), R), R);
    ASSERT_EQ(a.size(), 1u);
    EXPECT_EQ(a[0].charset.elements(), Ps({"y'^2-4*y"}));
    EXPECT_EQ(max_rank_components(rg_decompose(Ps({"y'^2-y^2"}), R), R).size(), 2u);
    EXPECT_EQ(max_rank_components(rg_decompose(Ps({"y"}), R), R).size(), 1u);
}

TEST(Canonical, DecomposeExamples)
{
    EXPECT_EQ(flat(canonical_decompose(Ps({"y'^2-4*y"}), R)), (std::vector<Flat>{{Ps({"y'^2-4*y"}), true}, {Ps({"y"}), false}}));
    EXPECT_EQ(flat(canonical_decompose(Ps({"y'^2-4*y^3"}), R)), (std::vector<Flat>{{Ps({"y'^2-4*y^3"}), true}, {Ps({"y"}), false}}));
    EXPECT_EQ(flat(canonical_decompose(Ps({"y"}), R)), (std::vector<Flat>{{Ps({"y"}), true}}));
    EXPECT_THROW(canonical_decompose(Ps({"y'^2-4*y"}), R, 0), BudgetExhausted);
}

TEST(Canonical, ZeroDivisorExamples)
{
    using V = ZeroDivisorResult::Verdict;
    auto yes = zero_divisor(P("y'-y"), Ps({"y'^2-y^2"}), R);
    EXPECT_EQ(yes.verdict, V::yes);
    ASSERT_TRUE(yes.component);
    EXPECT_EQ(yes.component->charset.elements(), Ps({"y'-y"}));
    EXPECT_EQ(zero_divisor(P("y"), Ps({"y'^2-y^2"}), R).verdict, V::no);
    EXPECT_EQ(zero_divisor(P("y"), Ps({"y'^2-4*y"}), R).verdict, V::unknown);
}

TEST(Canonical, ProlongationGenerators)
{
    auto C = [](std::vector<DiffPoly> e) { return CharSet(std::move(e), R); };
    EXPECT_EQ(prolongation_generators(C(Ps({"y"})), 0), Ps({"y"}));
    EXPECT_EQ(prolongation_generators(C(Ps({"y'^2-4*y"})), 1), Ps({"y''-2", "y'^2-4*y"}));
    EXPECT_EQ(prolongation_generators(C(Ps({"y'-y"})), 1), Ps({"y''-y", "y'-y"}));
    auto g = generators_from_charset(C(Ps({"y'^2-4*y"})), 2);
    EXPECT_EQ(g.j, 1u);
    EXPECT_EQ(g.basis, Ps({"y''-2", "y'^2-4*y"}));
    EXPECT_EQ(generators_from_charset(C(Ps({"y'-y"})), 1).j, 0u);
    EXPECT_EQ(generators_from_charset(C(Ps({"y"})), 0).basis, Ps({"y"}));
    EXPECT_THROW(generators_from_charset(C(Ps({"y'^2-4*y"})), 0), BudgetExhausted);
}

TEST(Canonical, CanonicalGenerators)
{
    auto a = canonical_generators(Ps({"y"}), R);
    EXPECT_EQ(a.j, 0u);
    EXPECT_EQ(a.basis, Ps({"y"}));
    auto b = canonical_generators(Ps({"y'^2-y^2"}), R);
    EXPECT_EQ(b.j, 0u);
    EXPECT_EQ(b.basis, Ps({"y'^2-y^2"}));
    auto c = canonical_generators(Ps({"y'^2-4*y"}), R);
    EXPECT_TRUE(equal_radical(c.basis, Ps({"y'^2-4*y"}), R));
}

TEST(Canonical, GeneratorIndependence)
{
    std::mt19937 rng(61);
    std::vector<Derivative> vars;
    for (const char* s : {"y", "y'"}) vars.push_back(*P(s).derivatives().begin());
    for (const auto& F : {Ps({"y'^2-4*y"}), Ps({"y'^2-y^2"}), Ps({"y"}), Ps({"y'^2-4*y^3"})}) {
        auto base = serial(canonical_decompose(F, R));
        for (int round = 0; round < 3; ++round) {
            auto G = F;
            auto f = F[0];
            auto df = differentiate(f, 0, 1);
            G.push_back(df);
            G.push_back(oracle::random_poly(rng, vars, 2, 1) * f + oracle::random_poly(rng, vars, 2, 1) * df);
            EXPECT_EQ(base, serial(canonical_decompose(G, R)));
        }
    }
}

TEST(Canonical, StrictGrowthAlongTrace)
{
    for (const auto& F : {Ps({"y'^2-4*y"}), Ps({"y'^2-y^2"}), Ps({"y'^2-4*y^3"})}) {
        auto CD = canonical_decompose(F, R);
        for (const auto& t : CD.trace) {
            if (t.kind == TraceEntry::Kind::root || t.revisited) continue;
            auto pF = t.F, pM = t.M;
            if (t.kind == TraceEntry::Kind::with_h) pF.pop_back();
            else pM.pop_back();
            auto parent = rg_decompose_saturated(pF, pM, R);
            bool grows = false;
            if (t.kind == TraceEntry::Kind::with_h) {
                grows = !member_radical(t.F.back(), parent);
            } else {
                auto child = rg_decompose_saturated(t.F, t.M, R);
                grows = child.unit && !parent.unit;
                std::vector<std::size_t> pick(child.components.size(), 0);
                while (!child.unit && !grows) {
                    DiffPoly prod(1);
                    for (std::size_t k = 0; k < pick.size(); ++k) prod = prod * child.components[k].charset[pick[k]];
                    if (!member_radical(prod, parent)) grows = true;
                    std::size_t k = 0;
                    while (k < pick.size() && ++pick[k] == child.components[k].charset.size()) pick[k++] = 0;
                    if (k == pick.size()) break;
                }
            }
            EXPECT_TRUE(grows);
        }
    }
}

TEST(Canonical, ZeroDivisorNoIsSound)
{
    std::mt19937 rng(62);
    std::vector<Derivative> vars;
    for (const char* s : {"y", "y'", "y''"}) vars.push_back(*P(s).derivatives().begin());
    auto F = Ps({"y'^2-y^2"});
    auto D = rg_decompose(F, R);
    for (const char* s : {"y", "y''+y", "y'", "y'^2+1"}) {
        auto f = P(s);
        ASSERT_EQ(zero_divisor(f, F, R).verdict, ZeroDivisorResult::Verdict::no) << s;
        for (int i = 0; i < 100; ++i) {
            auto g = oracle::random_poly(rng, vars, 3, 2);
            if (i % 3 == 0) g = g * (P("y'-y"));
            ASSERT_TRUE(!member_radical(g * f, D) || member_radical(g, D));
        }
    }
}
