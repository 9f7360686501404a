#include "netid/error.hpp"
#include "netid/model.hpp"
#include "support/support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace netid;
using netid::testing::poly;

namespace {

bool has_rule(const ValidationReport& rep, const std::string& rule)
{
    return std::any_of(rep.violations.begin(), rep.violations.end(), [&](const Violation& v) { return v.rule == rule; });
}

// (z + 1) / (z + 2): feedthrough 1.
TransferFunction biproper()
{
    return TransferFunction(poly({1, 1}), poly({1, 2}));
}

// Two nodes in a loop with the given bound modules; modules not declared
// strictly proper.
ConcreteModel two_node_loop(const TransferFunction& g12, const TransferFunction& g21, bool lambda_diagonal)
{
    auto m = NetworkModelSet::zeros(2, 1, 0);
    m.lambda_diagonal = lambda_diagonal;
    const int a = m.parametrize(Block::G, 0, 1);
    const int b = m.parametrize(Block::G, 1, 0);
    m.set_known(Block::R, 0, 0, 1);
    return ConcreteModel{m, {{a, g12}, {b, g21}}, std::nullopt};
}

} // namespace

TEST(ValidateModelSet, Example1Passes)
{
    const auto rep = validate_model_set(netid::testing::example1());
    EXPECT_TRUE(rep.passed);
    EXPECT_TRUE(rep.violations.empty());
}

TEST(ValidateModelSet, DiagonalMustBeZero)
{
    auto m = netid::testing::example1();
    m.parametrize(Block::G, 0, 0);
    const auto rep = validate_model_set(m);
    EXPECT_FALSE(rep.passed);
    ASSERT_TRUE(has_rule(rep, "diagonal entries 0"));
    EXPECT_EQ(rep.violations.front().location, "G(1,1)");
}

TEST(ValidateModelSet, SharedParameterRejected)
{
    auto m = netid::testing::example1();
    m.G(3, 0) = Parametrized{1}; // same id as G32
    const auto rep = validate_model_set(m);
    EXPECT_FALSE(rep.passed);
    EXPECT_TRUE(has_rule(rep, "no common parameters"));
}

TEST(ValidateModelSet, OtherStructuralRules)
{
    auto m = NetworkModelSet::zeros(2, 0, 3);
    EXPECT_TRUE(has_rule(validate_model_set(m), rules::kNoiseRank));

    m = NetworkModelSet::zeros(2, 1, 0);
    m.set_known(Block::R, 0, 0, TransferFunction(poly({1, 0, 0}), poly({1, 1})));
    EXPECT_TRUE(has_rule(validate_model_set(m), rules::kProper));

    m = NetworkModelSet::zeros(2, 0, 0);
    m.strictly_proper = true;
    m.set_known(Block::G, 0, 1, biproper());
    EXPECT_TRUE(has_rule(validate_model_set(m), rules::kStrictlyProper));

    m = NetworkModelSet::zeros(2, 0, 1);
    EXPECT_TRUE(has_rule(validate_model_set(m), rules::kMonicH)); // H11 = 0

    m = NetworkModelSet::zeros(0, 0, 0);
    EXPECT_TRUE(has_rule(validate_model_set(m), rules::kShape));
}

TEST(ValidateModelSet, BuildersAlwaysPass)
{
    std::mt19937_64 rng(5);
    for (int k = 0; k < 200; ++k)
        ASSERT_TRUE(validate_model_set(netid::testing::random_model_set(rng)).passed);
    EXPECT_TRUE(validate_model_set(netid::testing::loop_example()).passed);
}

TEST(AlgebraicLoops, StrictlyProperHasNone)
{
    const auto c = random_instantiate(netid::testing::loop_example(), 3);
    EXPECT_TRUE(detect_algebraic_loops(c).empty());
}

TEST(AlgebraicLoops, FeedthroughLoopDetected)
{
    const auto loops = detect_algebraic_loops(two_node_loop(biproper(), biproper(), true));
    ASSERT_EQ(loops.size(), 1u);
    EXPECT_EQ(loops[0], (std::vector<std::size_t>{0, 1, 0}));
}

TEST(AlgebraicLoops, ZeroFeedthroughBreaksLoop)
{
    const TransferFunction g12(Polynomial(1), poly({1, 2}));
    EXPECT_TRUE(detect_algebraic_loops(two_node_loop(g12, biproper(), true)).empty());
}

TEST(AlgebraicLoops, EachCycleReportedOnce)
{
    // 1 -> 2 -> 3 -> 1 plus 1 <-> 2.
    auto m = NetworkModelSet::zeros(3, 0, 0);
    m.set_known(Block::G, 1, 0, 1);
    m.set_known(Block::G, 2, 1, 1);
    m.set_known(Block::G, 0, 2, 1);
    m.set_known(Block::G, 0, 1, make_rational(1, 2));
    const auto loops = detect_algebraic_loops(ConcreteModel{m, {}, std::nullopt});
    ASSERT_EQ(loops.size(), 2u);
    EXPECT_EQ(loops[0], (std::vector<std::size_t>{0, 1, 0}));
    EXPECT_EQ(loops[1], (std::vector<std::size_t>{0, 1, 2, 0}));
}

TEST(Prop1Gate, StrictlyProperPasses)
{
    EXPECT_TRUE(check_prop1_conditions(netid::testing::example1()).passed);
}

TEST(Prop1Gate, AlgebraicLoopFails)
{
    const auto c = two_node_loop(biproper(), biproper(), true);
    const auto rep = check_prop1_conditions(c.base, &c);
    EXPECT_FALSE(rep.passed);
    EXPECT_TRUE(has_rule(rep, "no algebraic loops"));
    EXPECT_FALSE(has_rule(rep, rules::kLambdaDiagonal));
}

TEST(Prop1Gate, NonDiagonalLambdaFails)
{
    const TransferFunction g12(Polynomial(1), poly({1, 2}));
    const auto c = two_node_loop(g12, biproper(), false);
    const auto rep = check_prop1_conditions(c.base, &c);
    EXPECT_FALSE(rep.passed);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].rule, "Λ diagonal");
}

TEST(Prop1Gate, NeedsConcreteModelWithoutStrictness)
{
    const auto c = two_node_loop(biproper(), biproper(), true);
    EXPECT_THROW(check_prop1_conditions(c.base), MissingConcreteModel);
}

TEST(ValidateConcrete, BindingsAndLambda)
{
    auto c = random_instantiate(netid::testing::loop_example(), 1);
    EXPECT_TRUE(validate_concrete_model(c).passed);

    auto missing = c;
    missing.bindings.erase(1);
    EXPECT_TRUE(has_rule(validate_concrete_model(missing), rules::kBound));

    auto improper = c;
    improper.bindings[1] = TransferFunction(poly({1, 0}), Polynomial(1));
    EXPECT_TRUE(has_rule(validate_concrete_model(improper), rules::kProper));

    auto feedthrough = c;
    feedthrough.bindings[1] = biproper();
    EXPECT_TRUE(has_rule(validate_concrete_model(feedthrough), rules::kStrictlyProper));

    auto lam = c;
    lam.lambda = Matrix<Rational>{{Rational(2)}};
    EXPECT_TRUE(validate_concrete_model(lam).passed);
    lam.lambda = Matrix<Rational>{{Rational(-1)}};
    EXPECT_TRUE(has_rule(validate_concrete_model(lam), rules::kLambdaPd));
}

TEST(ValidateConcrete, LambdaPositiveDefinite)
{
    auto m = NetworkModelSet::zeros(2, 0, 2);
    m.set_known(Block::H, 0, 0, 1);
    m.set_known(Block::H, 1, 1, 1);
    ConcreteModel c{m, {}, Matrix<Rational>{{2, 1}, {1, 2}}};
    EXPECT_TRUE(validate_concrete_model(c).passed);
    c.lambda = Matrix<Rational>{{1, 2}, {2, 1}}; // det < 0
    EXPECT_TRUE(has_rule(validate_concrete_model(c), rules::kLambdaPd));
    c.lambda = Matrix<Rational>{{2, 1}, {0, 2}};
    EXPECT_TRUE(has_rule(validate_concrete_model(c), rules::kLambdaPd));
    m.lambda_diagonal = true;
    c = ConcreteModel{m, {}, Matrix<Rational>{{2, 1}, {1, 2}}};
    EXPECT_TRUE(has_rule(validate_concrete_model(c), rules::kLambdaDiagonal));
}

TEST(ValidateConcrete, WellPosedness)
{
    auto m = NetworkModelSet::zeros(2, 0, 0);
    m.set_known(Block::G, 0, 1, 1);
    m.set_known(Block::G, 1, 0, 1);
    EXPECT_TRUE(has_rule(validate_concrete_model(ConcreteModel{m, {}, std::nullopt}), rules::kWellPosed));
}

TEST(ValidateConcrete, VanishingPrincipalMinorIsWarningOnly)
{
    // I - G(inf) = [[1,-1,-1],[-1,1,0],[-1,0,1]]: det = -1, but the {1,2}
    // principal block is singular, so entry (3,3) of the inverse is 0.
    auto m = NetworkModelSet::zeros(3, 0, 0);
    m.set_known(Block::G, 0, 1, 1);
    m.set_known(Block::G, 1, 0, 1);
    m.set_known(Block::G, 0, 2, 1);
    m.set_known(Block::G, 2, 0, 1);
    const auto rep = validate_concrete_model(ConcreteModel{m, {}, std::nullopt});
    EXPECT_TRUE(rep.passed);
    ASSERT_EQ(rep.warnings.size(), 1u);
    EXPECT_EQ(rep.warnings[0].rule, rules::kPrincipalMinors);
}

TEST(ValidateConcrete, MonicNoiseModel)
{
    auto m = NetworkModelSet::zeros(2, 0, 1);
    const int id = m.parametrize(Block::H, 0, 0);
    ConcreteModel c{m, {{id, TransferFunction(Polynomial(1), poly({1, 3}))}}, std::nullopt};
    EXPECT_TRUE(has_rule(validate_concrete_model(c), rules::kMonicH));
    c.bindings[id] = TransferFunction(poly({1, 5}), poly({1, 3}));
    EXPECT_TRUE(validate_concrete_model(c).passed);
}

TEST(RandomInstantiate, NoParameters)
{
    auto m = NetworkModelSet::zeros(3, 1, 0);
    m.set_known(Block::R, 0, 0, 1);
    EXPECT_TRUE(random_instantiate(m, 1).bindings.empty());
}

TEST(RandomInstantiate, DeterministicAndVaried)
{
    const auto m = netid::testing::example1();
    const auto c1 = random_instantiate(m, 1);
    ASSERT_EQ(c1.bindings.size(), 4u);
    for (const auto& [id, tf] : c1.bindings) {
        EXPECT_TRUE(tf.is_strictly_proper());
        EXPECT_EQ(tf.den().degree(), 1);
        EXPECT_FALSE(tf.is_zero());
        for (const auto& c : tf.num().coeffs())
            EXPECT_LE(abs(c), kSampleBound);
    }
    EXPECT_EQ(random_instantiate(m, 1).bindings, c1.bindings);
    EXPECT_NE(random_instantiate(m, 2).bindings, c1.bindings);
}

TEST(RandomInstantiate, HigherOrder)
{
    const auto c = random_instantiate(netid::testing::example1(), 4, 3);
    for (const auto& [id, tf] : c.bindings) {
        EXPECT_TRUE(tf.is_strictly_proper());
        EXPECT_LE(tf.den().degree(), 3);
    }
    EXPECT_THROW(random_instantiate(netid::testing::example1(), 4, 0), InvalidInput);
}

TEST(RandomInstantiate, StrictlyProperSetsAreWellPosed)
{
    std::mt19937_64 rng(11);
    for (int k = 0; k < 100; ++k) {
        const auto m = netid::testing::random_model_set(rng);
        const auto c = random_instantiate(m, static_cast<std::uint64_t>(k));
        ASSERT_TRUE(validate_concrete_model(c).passed);
        const auto g = c.g();
        for (std::size_t r = 0; r < m.L; ++r)
            for (std::size_t col = 0; col < m.L; ++col)
                ASSERT_EQ(g(r, col).feedthrough(), 0); // I - G(inf) = I
    }
}

TEST(RandomInstantiate, Errors)
{
    auto bad = netid::testing::example1();
    bad.parametrize(Block::G, 1, 1);
    EXPECT_THROW(random_instantiate(bad, 1), InvalidInput);

    // Fixed feedthrough loop with unit gains: every draw is ill-posed.
    auto m = NetworkModelSet::zeros(3, 0, 0);
    m.set_known(Block::G, 0, 1, 1);
    m.set_known(Block::G, 1, 0, 1);
    m.parametrize(Block::G, 2, 0);
    EXPECT_THROW(random_instantiate(m, 1), InstantiationFailed);
}

TEST(Determinant, Small)
{
    EXPECT_EQ(determinant(Matrix<Rational>{{1, 2}, {3, 4}}), -2);
    EXPECT_EQ(determinant(Matrix<Rational>{{0, 1}, {1, 0}}), -1);
    EXPECT_EQ(determinant(Matrix<Rational>{{1, 2}, {2, 4}}), 0);
    EXPECT_EQ(determinant(Matrix<Rational>()), 1);
}
