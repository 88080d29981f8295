#include <gtest/gtest.h>

#include "ubk/serialize.hpp"
#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(Json, Rationals) {
  EXPECT_EQ(to_json(q(-3, 6)), "-1/2");
  EXPECT_EQ(to_json(Rational(4)), "4");
  EXPECT_EQ(rational_from_json(Json("6/8")), q(3, 4));
  EXPECT_EQ(rational_from_json(Json(5)), 5);
  EXPECT_THROW(rational_from_json(Json("1/0")), Error);
  EXPECT_THROW(rational_from_json(Json(0.5)), Error);
}

TEST(Json, SpaceRoundTrip) {
  auto s = fx::skew();
  Json j = to_json(s);
  EXPECT_EQ(j["k_bound"], "5/4");
  auto back = space_from_json(j);
  EXPECT_EQ(back.labels, s.labels);
  EXPECT_EQ(back.k_bound, s.k_bound);
  EXPECT_EQ(back.ball, s.ball);
  EXPECT_EQ(dump(to_json(back)), dump(j));
}

TEST(Json, SparseGenerators) {
  Json j = Json::parse(R"({"labels": ["a", "b", "c"], "k_bound": "1",
                           "ball": [{"a": "1"}, {"b": "1", "c": "1"}, [0, 1, -1]]})");
  auto s = space_from_json(j);
  EXPECT_TRUE(s.ball.same_body(fx::space({"a", "b", "c"}, {{1, 0, 0}, {0, 1, 1}, {0, 1, -1}}).ball));
  EXPECT_THROW(space_from_json(Json::parse(R"({"labels": ["a"], "ball": [{"z": "1"}]})")), Error);
  EXPECT_THROW(space_from_json(Json::parse(R"({"labels": ["a"], "ball": [["1", "2"]]})")), Error);
}

TEST(Json, MorphismRoundTrip) {
  auto m = make_morphism(fx::skew(), l1_space({"x", "y"}), {{"1", "y"}, {"2", "x"}});
  auto back = morphism_from_json(to_json(m));
  EXPECT_EQ(back.map, m.map);
  EXPECT_EQ(dump(to_json(back)), dump(to_json(m)));
}

TEST(Json, ChainRoundTrip) {
  Chain c = build_generic_chain({2, 2, 4}, 1, 0, 11);
  Json j = to_json(c);
  Chain back = chain_from_json(j);
  ASSERT_EQ(back.stages.size(), c.stages.size());
  for (std::size_t n = 0; n < c.stages.size(); ++n) {
    EXPECT_EQ(back.stages[n].labels, c.stages[n].labels);
    EXPECT_TRUE(back.stages[n].ball.same_body(c.stages[n].ball));
  }
  EXPECT_EQ(check_chain(back), "");
  EXPECT_EQ(dump(to_json(back)), dump(j));
  EXPECT_EQ(j["inclusions"].size(), c.stages.size() - 1);
}

TEST(Json, TranscriptRoundTrip) {
  Chain x = build_generic_chain({2, 2, 4}, 1, 0, 7);
  Chain y = build_generic_chain({2, 2, 4}, 1, 0, 13);
  auto out = back_and_forth_exact(x, y, 2);
  Json j = to_json(out.transcript);
  Chain x2 = chain_from_json(to_json(x)), y2 = chain_from_json(to_json(y));
  auto t = transcript_from_json(j, x2, y2);
  EXPECT_EQ(check_transcript(t, x2, y2), "");
  EXPECT_EQ(dump(to_json(t)), dump(j));
}

TEST(Json, Determinism) {
  auto a = dump(to_json(build_generic_chain({2, 2, 4}, 1, 0, 3)));
  auto b = dump(to_json(build_generic_chain({2, 2, 4}, 1, 0, 3)));
  EXPECT_EQ(a, b);
}
