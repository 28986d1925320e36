#include "support.hpp"

#include "thickgeo/io.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace thickgeo;
using tg_test::Q;

TEST(Io, BushRoundTrips) {
    std::vector<Bush> bushes = {dyadic_bush(1), dyadic_bush(3), rademacher_bush(4)};
    for (std::uint64_t seed = 1; seed <= 10; ++seed) bushes.push_back(split_bush(SplitBushOptions{3, 3, 0, seed}));
    for (const auto& b : bushes) {
        io::Json j = io::bush_to_json(b);
        EXPECT_EQ(io::bush_from(io::Json::parse(j.dump())), b);
    }
}

TEST(Io, LargeBushesUseSparseVectors) {
    Bush b = dyadic_bush(9);
    io::Json j = io::bush_to_json(b);
    ASSERT_TRUE(j["levels"][9][0].is_object());
    EXPECT_EQ(j["levels"][9][0]["sparse"].size(), 1u);
    EXPECT_EQ(io::bush_from(j), b);
}

TEST(Io, AcceptsUnitWeightAtLevelZero) {
    io::Json j = io::bush_to_json(dyadic_bush(1));
    j["weights"][0] = io::Json::array({"1"});
    EXPECT_EQ(io::bush_from(j), dyadic_bush(1));
}

TEST(Io, MalformedBushDocuments) {
    io::Json base = io::bush_to_json(dyadic_bush(2));
    {
        io::Json j = base;
        j.erase("epsilon");
        EXPECT_THROW(io::bush_from(j), InputError);
    }
    {
        io::Json j = base;
        j["partitions"][2] = io::Json::array({io::Json::array({0, 1}), io::Json::array({1, 2})});
        EXPECT_THROW(io::bush_from(j), StructuralError);
    }
    {
        io::Json j = base;
        j["levels"][1][0] = io::Json::array({"1", "2"});
        EXPECT_THROW(io::bush_from(j), InputError);
    }
    {
        io::Json j = base;
        j["epsilon"] = "one";
        EXPECT_THROW(io::bush_from(j), InputError);
    }
    {
        io::Json j = base;
        j["space"]["norm"] = "l7";
        EXPECT_THROW(io::bush_from(j), InputError);
    }
}

TEST(Io, ChallengeAndResponseRoundTrip) {
    LineCache cache(dyadic_bush(4));
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = tg_test::random_pasted(cache, rng, 3, 2, 3);
        auto t = tg_test::random_challenge(cache, g, rng, 3);
        io::Challenge c{g, t};
        io::Json cj = io::Json::parse(io::challenge_to_json(c).dump());
        auto back = io::challenge_from(cj);
        EXPECT_EQ(back.geodesic, g);
        EXPECT_EQ(back.t, t);

        ChallengeResponse r;
        try {
            r = challenge_respond(cache, g, t);
        } catch (const BudgetError&) {
            continue;
        }
        io::Json rj = io::Json::parse(io::response_to_json(r).dump());
        EXPECT_EQ(io::geodesic_from(rj["geodesic_tilde"]), r.g_tilde);
        auto w = io::witness_from(rj["witness"]);
        EXPECT_EQ(w.q, r.witness.q);
        EXPECT_EQ(w.s, r.witness.s);
        EXPECT_EQ(w.deviation_total, r.witness.deviation_total);
        EXPECT_EQ(w.gaps.size(), r.witness.gaps.size());
    }
}

TEST(Io, VertexTableRoundTrips) {
    LineCache cache(dyadic_bush(3));
    for (const auto& label : tg_test::labels_of_length(2)) {
        auto v = cache.vertices(label);
        std::string text = io::vertex_table(*v, "label=" + label.bits(), io::NumberFormat::rational);
        auto back = io::parse_vertex_table(text);
        EXPECT_EQ(back.arclengths, v->arclengths);
        EXPECT_EQ(back.points, v->points);
        EXPECT_EQ(text.rfind("# label=", 0), 0u);
    }
}

TEST(Io, DecimalFormatting) {
    EXPECT_EQ(io::format_number(Rational(1, 3), io::NumberFormat::decimal), "0.333333333333");
    EXPECT_EQ(io::format_number(Rational(1, 3), io::NumberFormat::rational), "1/3");
    EXPECT_THROW(io::parse_number_format("hex"), InputError);
}

TEST(Io, ReportsHaveStableKeyOrder) {
    auto r = validate_bush(dyadic_bush(2));
    io::Json a = io::bush_report_to_json(r);
    io::Json b = io::bush_report_to_json(validate_bush(dyadic_bush(2)));
    EXPECT_EQ(a.dump(), b.dump());
    EXPECT_EQ(a.begin().key(), "passed");
}

TEST(Io, MissingFileIsInputError) {
    EXPECT_THROW(io::read_json_file("/nonexistent/bush.json"), InputError);
}
