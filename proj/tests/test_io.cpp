#include "netid/error.hpp"
#include "netid/io.hpp"
#include "support/support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace netid;
using netid::testing::fixture_path;

namespace {

void expect_same(const NetworkModelSet& a, const NetworkModelSet& b)
{
    EXPECT_EQ(a.L, b.L);
    EXPECT_EQ(a.K, b.K);
    EXPECT_EQ(a.p, b.p);
    EXPECT_EQ(a.strictly_proper, b.strictly_proper);
    EXPECT_EQ(a.lambda_diagonal, b.lambda_diagonal);
    EXPECT_EQ(a.G, b.G);
    EXPECT_EQ(a.R, b.R);
    EXPECT_EQ(a.H, b.H);
}

json minimal()
{
    return parse_json(R"({"L": 2, "K": 1, "p": 0, "G": [], "R": []})");
}

} // namespace

TEST(ModelSetJson, FixturesMatchBuilders)
{
    expect_same(load_model_set(fixture_path("example1.json")), netid::testing::example1());
    expect_same(load_model_set(fixture_path("loop.json")), netid::testing::loop_example());
}

TEST(ModelSetJson, ParameterIdsFollowBlockOrder)
{
    const auto m = model_set_from_json(parse_json(R"({
        "L": 2, "K": 1, "p": 1,
        "H": [{"row": 1, "col": 1, "spec": "param"}],
        "R": [{"row": 2, "col": 1, "spec": "param"}],
        "G": [{"row": 2, "col": 1, "spec": "param"}]
    })"));
    EXPECT_EQ(std::get<Parametrized>(m.G(1, 0)).id, 1);
    EXPECT_EQ(std::get<Parametrized>(m.R(1, 0)).id, 2);
    EXPECT_EQ(std::get<Parametrized>(m.H(0, 0)).id, 3);
    EXPECT_FALSE(m.strictly_proper);
}

TEST(ModelSetJson, RoundTrip)
{
    std::mt19937_64 rng(4);
    for (int k = 0; k < 100; ++k) {
        const auto m = netid::testing::random_model_set(rng);
        const std::string text = model_set_to_json(m).dump(2);
        const auto back = model_set_from_json(parse_json(text));
        ASSERT_EQ(model_set_to_json(back).dump(2), text);
        // The builder numbers parameters in block order, like the reader.
        ASSERT_TRUE(back.G == m.G && back.R == m.R && back.H == m.H);
    }
}

TEST(ModelSetJson, Errors)
{
    auto bad = minimal();
    bad["G"] = parse_json(R"([{"row": 3, "col": 1, "spec": "param"}])");
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad["G"] = parse_json(R"([{"row": 1, "col": 2, "spec": "param"}, {"row": 1, "col": 2, "spec": "param"}])");
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad["G"] = parse_json(R"([{"row": 1, "col": 2, "spec": "fixed"}])");
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad["R"] = parse_json(R"([{"row": 1, "col": 1, "spec": {"known": {"num": [1], "den": ["1"]}}}])");
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad["R"] = parse_json(R"([{"row": 1, "col": 1, "spec": {"known": {"num": ["1"], "den": []}}}])");
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad.erase("L");
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad["K"] = -1;
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    bad = minimal();
    bad["strictly_proper"] = "yes";
    EXPECT_THROW(model_set_from_json(bad), InvalidInput);

    EXPECT_THROW(model_set_from_json(parse_json("[]")), InvalidInput);
    EXPECT_THROW(load_model_set(fixture_path("missing.json")), InvalidInput);
}

TEST(ParseJson, ReportsByteOffset)
{
    const std::string text = R"({"L": 4, "K": )";
    try {
        parse_json(text);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.byte(), text.size() + 1);
        EXPECT_NE(std::string(e.what()).find("byte"), std::string::npos);
    }
}

TEST(ConcreteModelJson, Fixture)
{
    const auto base = load_model_set(fixture_path("loop.json"));
    const auto c = load_concrete_model(base, fixture_path("g21zero.json"));
    ASSERT_EQ(c.bindings.size(), 2u);
    EXPECT_EQ(c.bindings.at(1), TransferFunction(Polynomial(make_rational(1, 2)), Polynomial::monomial(1)));
    EXPECT_TRUE(c.bindings.at(2).is_zero());
    ASSERT_TRUE(c.lambda.has_value());
    EXPECT_EQ((*c.lambda)(0, 0), 1);
    EXPECT_TRUE(validate_concrete_model(c).passed);
}

TEST(ConcreteModelJson, RoundTripAndErrors)
{
    const auto base = netid::testing::example1();
    const auto c = random_instantiate(base, 9);
    const std::string text = concrete_model_to_json(c).dump();
    const auto back = concrete_model_from_json(base, parse_json(text));
    EXPECT_EQ(back.bindings, c.bindings);
    EXPECT_EQ(concrete_model_to_json(back).dump(), text);

    EXPECT_THROW(concrete_model_from_json(base, parse_json(R"({"bindings": {"x": {"num": [], "den": ["1"]}}})")), InvalidInput);
    EXPECT_THROW(concrete_model_from_json(base, parse_json(R"({})")), InvalidInput);
    EXPECT_THROW(concrete_model_from_json(base, parse_json(R"({"bindings": {}, "lambda": [["1", "0"]]})")), InvalidInput);
    EXPECT_THROW(concrete_model_from_json(base, parse_json(R"({"bindings": {}, "lambda": [[1]]})")), InvalidInput);
}
