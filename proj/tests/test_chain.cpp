#include <gtest/gtest.h>

#include <chrono>

#include "liaison/chain.hpp"

using namespace liaison;

namespace {

const BaseRing F = BaseRing::prime_field();

Poly P(const char* s) { return parse_poly(F, s); }

CurveFamily curve(std::initializer_list<const char*> gens) {
    std::vector<Poly> g;
    for (auto s : gens) g.push_back(P(s));
    return validate_curve(Ideal(F, g));
}
CurveFamily line() { return curve({"Y", "Z"}); }
CurveFamily cubic() { return curve({"X*Z-Y^2", "Y*W-Z^2", "X*W-Y*Z"}); }
CurveFamily skew() { return curve({"X*Z", "X*W", "Y*Z", "Y*W"}); }

void expect_chain(const CurveFamily& A, const CurveFamily& B) {
    auto t0 = std::chrono::steady_clock::now();
    auto steps = connect_by_biliaisons(A, B, 4, 32, 1);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_FALSE(steps.empty());
    EXPECT_EQ(replay_chain(A, steps, 16, 7), B.ideal());
    for (const auto& s : steps) EXPECT_EQ(validate_curve(s.to).degree(), validate_curve(s.from).degree() + s.h * s.d());
    std::cerr << steps.size() << " steps in " << secs << " s\n";
}

}  // namespace

TEST(ConnectByBiliaisons, SameCurveIsEmpty) { EXPECT_TRUE(connect_by_biliaisons(skew(), skew(), 4, 16, 1).empty()); }

TEST(ConnectByBiliaisons, LineToTwistedCubic) { expect_chain(line(), cubic()); }

TEST(ConnectByBiliaisons, SkewLinesToTrivialBiliaison) {
    CurveFamily B = trivial_biliaison(skew(), P("X*Z+Y*W"), P("X"), 1).first;
    expect_chain(skew(), B);
}

TEST(ConnectByBiliaisons, DifferentClassesRejected) {
    try {
        connect_by_biliaisons(skew(), cubic(), 4, 16, 1);
        FAIL();
    } catch (const ConnectError& e) {
        EXPECT_EQ(e.kind, ConnectError::Kind::NotEquivalent);
    }
}

TEST(ConnectByBiliaisons, SurfaceVanishingOnSpecialFiber) {
    // psi = ((Z, e), (-Y, 0), (gamma, 1)) : R(-2) + R(-1) -> R(-1)^2 + R(-1) over the dual numbers;
    // the common block has determinant e*Y, which vanishes on the special fiber.
    const BaseRing D = BaseRing::dual_numbers();
    auto Pd = [&](const char* s) { return parse_poly(D, s); };
    FreeModule Pi({2, 1}), T({1, 1}), L({1});
    GradedMap phi(D, Pi, T);
    phi(0, 0) = Pd("Z");
    phi(1, 0) = Pd("-Y");
    phi(0, 1) = Pd("e");
    auto split = [&](const char* gamma) {
        GradedMap alpha(D, Pi, L);
        alpha(0, 0) = Pd(gamma);
        alpha(0, 1) = Pd("1");
        return detail::SplitResolution{GradedMap(D, FreeModule{}, T), phi, alpha};
    };
    auto a = split("X"), g = split("W");
    auto ra = detail::realize(a), rg = detail::realize(g);
    ASSERT_TRUE(ra && rg);
    EXPECT_TRUE(ra->image(2).fiber().is_zero());
    EXPECT_FALSE(ra->C.ideal() == rg->C.ideal());
    detail::Connector k(4, 11);
    auto moves = k.connect(a, g);
    // both one-row moves (to and from the general row w) pass through a general surface
    ASSERT_EQ(moves.size(), 10u);
    EXPECT_EQ(moves.front().from.ideal(), ra->C.ideal());
    EXPECT_EQ(moves.back().to.ideal(), rg->C.ideal());
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (i > 0) EXPECT_EQ(moves[i].from.ideal(), moves[i - 1].to.ideal());
        EXPECT_EQ(check_elementary_biliaison(moves[i].from, moves[i].to, moves[i].Q, moves[i].h, 16, i).decision,
                  Decision::Yes);
    }
}
