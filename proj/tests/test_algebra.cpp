#include "support.hpp"

#include <gtest/gtest.h>

using namespace rittkit;

namespace {

const Context ctx({"t"}, {"x", "y", "z"});
const Ranking R = Ranking::orderly();

DiffPoly P(const char* s) { return parse_poly(s, ctx); }

AlgBasis GB(std::vector<DiffPoly> F, std::vector<DiffPoly> extra = {})
{
    auto all = F;
    all.insert(all.end(), extra.begin(), extra.end());
    return groebner(F, VarFrame::of(all, R));
}

std::vector<DiffPoly> Ps(std::initializer_list<const char*> v)
{
    std::vector<DiffPoly> out;
    for (auto s : v) out.push_back(P(s));
    return out;
}

} // namespace

TEST(Algebra, GroebnerExamples)
{
    EXPECT_EQ(GB(Ps({"x-1", "x^2-1"})).polys(), Ps({"x-1"}));
    EXPECT_EQ(GB(Ps({"y'^2-4*y", "y''-2"})).polys(), Ps({"y''-2", "y'^2-4*y"}));
    EXPECT_TRUE(GB({}, Ps({"y"})).is_zero_ideal());
    EXPECT_TRUE(GB(Ps({"y", "y-1"})).is_unit());
}

TEST(Algebra, NormalFormExamples)
{
    EXPECT_EQ(nf(P("x^2-1"), GB(Ps({"x-1"}))), DiffPoly());
    EXPECT_EQ(nf(P("y''"), GB(Ps({"y''-2", "y'^2-4*y"}))), DiffPoly(2));
    EXPECT_EQ(nf(P("y"), GB({}, Ps({"y"}))), P("y"));
    EXPECT_THROW(nf(P("z"), GB(Ps({"y"}))), std::invalid_argument);
}

TEST(Algebra, SaturateExamples)
{
    auto a = saturate(GB(Ps({"y*y'"})), P("y"));
    EXPECT_TRUE(ideal_equal(a, GB(Ps({"y'"}), Ps({"y"}))));
    auto b = saturate(GB(Ps({"y'^2-4*y", "2*y'*y''-4*y'"})), P("2*y'"));
    EXPECT_EQ(b.polys(), Ps({"y''-2", "y'^2-4*y"}));
    auto B = GB(Ps({"y'^2-4*y"}));
    EXPECT_TRUE(ideal_equal(saturate(B, DiffPoly(1)), B));
    EXPECT_THROW(saturate(B, DiffPoly()), std::invalid_argument);
}

TEST(Algebra, IntersectExamples)
{
    auto f = Ps({"y", "y'^2-4*y"});
    auto frame = VarFrame::of(f, R);
    auto A = groebner({f[0]}, frame), B = groebner({f[1]}, frame);
    auto I = intersect(A, B);
    EXPECT_TRUE(ideal_equal(I, groebner({P("y*y'^2-4*y^2")}, frame)));
    EXPECT_TRUE(ideal_equal(intersect(B, B), B));
    EXPECT_TRUE(ideal_equal(intersect(B, groebner({DiffPoly(1)}, frame)), B));
}

TEST(Algebra, RadicalMemberExamples)
{
    EXPECT_TRUE(radical_member(P("y"), GB(Ps({"y^2"}))));
    EXPECT_FALSE(radical_member(P("y"), GB(Ps({"y'^2-4*y"}))));
    EXPECT_TRUE(radical_member(DiffPoly(1), GB({DiffPoly(1)}, Ps({"y"}))));
    EXPECT_FALSE(radical_member(DiffPoly(1), GB(Ps({"y"}))));
}

TEST(Algebra, ElimAndEquality)
{
    auto B = GB(Ps({"z*y-1", "y^2"}));
    EXPECT_TRUE(elim(B, {*P("z").derivatives().begin()}).is_unit());
    auto C = GB(Ps({"x-z", "y-z^2"}));
    auto E = elim(C, {*P("z").derivatives().begin()});
    EXPECT_TRUE(ideal_equal(E, GB(Ps({"y-x^2"}))));
    EXPECT_TRUE(ideal_equal(elim(C, {}), C));
    EXPECT_TRUE(ideal_equal(GB(Ps({"x-1"})), GB(Ps({"2*x-2"}))));
    EXPECT_FALSE(ideal_equal(GB(Ps({"x-1"})), GB(Ps({"x+1"}))));
}

TEST(Algebra, RandomIdealsAgainstLinearAlgebra)
{
    std::mt19937 rng(31);
    std::vector<Derivative> vars;
    for (const char* s : {"x", "y", "z"}) vars.push_back(*P(s).derivatives().begin());
    const VarFrame frame{sorted_descending(vars, R)};
    for (int round = 0; round < 60; ++round) {
        std::vector<DiffPoly> F;
        int k = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < k; ++i) F.push_back(oracle::random_nonconstant(rng, vars, 3, 2));
        auto B = groebner(F, frame);
        auto ring = B.ring();
        for (std::size_t i = 0; i < B.raw().size(); ++i)
            for (std::size_t j = i + 1; j < B.raw().size(); ++j)
                ASSERT_TRUE(ring.normal_form(ring.s_poly(B.raw()[i], B.raw()[j]), B.raw()).empty());
        for (const auto& f : F) ASSERT_TRUE(member(f, B));
        std::vector<MPoly> G;
        for (const auto& f : F) G.push_back(to_mpoly(f, frame.vars));
        for (int trial = 0; trial < 5; ++trial) {
            auto f = oracle::random_poly(rng, vars, 3, 3);
            ASSERT_TRUE(!oracle::in_truncated_span(to_mpoly(f, frame.vars), G, 4) || member(f, B));
            auto c = oracle::random_poly(rng, vars, 2, 1);
            DiffPoly comb = f * F[0] + c * F.back();
            ASSERT_TRUE(member(comb, B));
            ASSERT_TRUE(oracle::in_truncated_span(to_mpoly(comb, frame.vars), G, 5));
        }
    }
}

TEST(Algebra, SaturationIsIdempotentAndContainsInput)
{
    std::mt19937 rng(32);
    std::vector<Derivative> vars;
    for (const char* s : {"x", "y"}) vars.push_back(*P(s).derivatives().begin());
    const VarFrame frame{sorted_descending(vars, R)};
    for (int round = 0; round < 40; ++round) {
        std::vector<DiffPoly> F{oracle::random_nonconstant(rng, vars, 3, 2), oracle::random_nonconstant(rng, vars, 3, 2)};
        auto h = oracle::random_nonconstant(rng, vars, 2, 1);
        auto B = groebner(F, frame);
        auto S = saturate(B, h);
        for (const auto& f : F) ASSERT_TRUE(member(f, S));
        ASSERT_TRUE(ideal_equal(saturate(S, h), S));
        for (const auto& g : S.polys()) ASSERT_TRUE(member(h * h * h * g, B) || radical_member(h * g, B));
    }
}

TEST(Algebra, IntersectionMembership)
{
    std::mt19937 rng(33);
    std::vector<Derivative> vars;
    for (const char* s : {"x", "y"}) vars.push_back(*P(s).derivatives().begin());
    const VarFrame frame{sorted_descending(vars, R)};
    for (int round = 0; round < 40; ++round) {
        auto f = oracle::random_nonconstant(rng, vars, 3, 2);
        auto g = oracle::random_nonconstant(rng, vars, 3, 2);
        auto A = groebner({f}, frame), B = groebner({g}, frame);
        auto I = intersect(A, B);
        ASSERT_TRUE(member(f * g, I));
        for (const auto& p : I.polys()) {
            ASSERT_TRUE(member(p, A));
            ASSERT_TRUE(member(p, B));
        }
    }
}
