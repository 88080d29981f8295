#include <gtest/gtest.h>

#include "ubk/backforth.hpp"
#include "fixtures.hpp"

using namespace ubk;
using fx::q;

namespace {

Chain one_stage(const BasedSpace& s, Rational k = 1) {
  Chain c = trivial_chain(k);
  grow_chain(c, s, {}, "extension", std::nullopt, {});
  return c;
}

// 1-based, with the identity onto l1 distorting by exactly (1, 7/4)
BasedSpace tilted() { return fx::space({"a", "b"}, {{q(3, 4), 1}, {1, 0}, {0, 1}}); }

}  // namespace

TEST(BackForthExact, GrowableChains) {
  ComplexityBound b{2, 2, 4};
  Chain x = build_generic_chain(b, 1, 0, 7);
  Chain y = build_generic_chain(b, 1, 0, 13);
  auto out = back_and_forth_exact(x, y, 3);
  ASSERT_FALSE(out.stuck.has_value());
  EXPECT_EQ(out.transcript.f_list.size(), 3u);
  EXPECT_EQ(out.transcript.g_list.size(), 3u);
  EXPECT_EQ(check_transcript(out.transcript, x, y), "");
  EXPECT_EQ(check_chain(x), "");
  EXPECT_EQ(check_chain(y), "");
}

TEST(BackForthExact, IdenticalFrozenChains) {
  ComplexityBound b{2, 2, 4};
  Chain x = build_generic_chain(b, 1, 0, 5);
  Chain y = x;
  BackForthOptions o;
  o.grow = false;
  auto out = back_and_forth_exact(x, y, 2, o);
  ASSERT_FALSE(out.stuck.has_value()) << out.stuck->reason;
  EXPECT_EQ(check_transcript(out.transcript, x, y, false), "");
  for (const auto& f : out.transcript.f_list)
    for (auto [from, to] : f.label_map()) EXPECT_EQ(from, to);
}

TEST(BackForthExact, FrozenShortChainGetsStuck) {
  Chain x = build_generic_chain({2, 2, 4}, 1, 0, 7);
  Chain y = one_stage(l1_space({"u"}));
  BackForthOptions o;
  o.grow = false;
  auto out = back_and_forth_exact(x, y, 3, o);
  ASSERT_TRUE(out.stuck.has_value());
  EXPECT_EQ(out.stuck->direction, "forth");
  EXPECT_FALSE(out.stuck->domain.empty());
  EXPECT_EQ(check_transcript(out.transcript, x, y, false), "");
}

TEST(BackForthExact, KMismatch) {
  Chain x = trivial_chain(1), y = trivial_chain(2);
  EXPECT_THROW(back_and_forth_exact(x, y, 1), Error);
}

TEST(BackForthEpsilon, TiltedToL1) {
  Chain x = one_stage(tilted());
  Chain y = one_stage(l1_space({"a", "b"}));
  auto f0 = BasedMorphism{x.stages[1], y.stages[1], {0, 1}};
  auto d = distortion(f0);
  EXPECT_EQ(d.lower, 1);
  EXPECT_EQ(d.upper, q(7, 4));
  auto out = back_and_forth_epsilon(x, y, f0, 1, 2);
  EXPECT_EQ(*out.transcript.delta, q(13, 16));
  EXPECT_EQ(out.transcript.f_list.size(), 3u);
  EXPECT_EQ(out.transcript.g_list.size(), 2u);
  EXPECT_EQ(check_transcript(out.transcript, x, y), "");
  for (const auto& di : out.transcript.g_distortion) EXPECT_TRUE(is_epsilon_isometry(di, q(13, 16)));
}

TEST(BackForthEpsilon, ExactStartAndZeroRounds) {
  Chain x = one_stage(fx::diamond({"a", "b"}));
  Chain y = one_stage(fx::diamond({"a", "b"}));
  auto f0 = BasedMorphism{x.stages[1], y.stages[1], {1, 0}};
  auto zero = back_and_forth_epsilon(x, y, f0, q(1, 2), 0);
  EXPECT_EQ(zero.transcript.f_list.size(), 1u);
  EXPECT_TRUE(zero.transcript.g_list.empty());
  auto out = back_and_forth_epsilon(x, y, f0, q(1, 2), 2);
  for (const auto& di : out.transcript.f_distortion) EXPECT_EQ(di, (DistortionInterval{1, 1}));
  for (const auto& di : out.transcript.g_distortion) EXPECT_EQ(di, (DistortionInterval{1, 1}));
  EXPECT_EQ(check_transcript(out.transcript, x, y), "");
}

TEST(BackForthEpsilon, RejectsKAboveOne) {
  Chain x = one_stage(fx::skew(), q(5, 4));
  Chain y = one_stage(l1_space({"a", "b"}, q(5, 4)), q(5, 4));
  EXPECT_THROW(back_and_forth_epsilon(x, y, BasedMorphism{x.stages[1], y.stages[1], {0, 1}}, 1, 1), Error);
}

TEST(EmbedAny, L1Stages) {
  Chain xs = trivial_chain();
  grow_chain(xs, l1_space({"a"}), {}, "extension", std::nullopt, {});
  grow_chain(xs, l1_space({"a", "b"}), {{"a", "stage1:0"}}, "extension", std::nullopt, {});
  grow_chain(xs, l1_space({"a", "b", "c"}), {{"a", "stage1:0"}, {"b", "stage2:0"}}, "extension", std::nullopt, {});
  Chain u = trivial_chain();
  auto r = embed_any(xs, u, q(1, 2));
  ASSERT_EQ(r.maps.size(), 3u);
  for (const auto& d : r.distortion) EXPECT_EQ(d, (DistortionInterval{1, 1}));
  for (std::size_t k = 1; k < r.maps.size(); ++k)
    for (std::size_t i = 0; i < r.maps[k - 1].map.size(); ++i) EXPECT_EQ(r.maps[k].map[i], r.maps[k - 1].map[i]);
}

TEST(EmbedAny, ChainIntoItself) {
  Chain u = build_generic_chain({2, 2, 4}, 1, 3, 1);
  Chain copy = u;
  auto r = embed_any(copy, u, q(1, 2));
  EXPECT_EQ(u.stages.size(), copy.stages.size());
  for (const auto& m : r.maps)
    for (auto [from, to] : m.label_map()) EXPECT_EQ(from, to);
}

TEST(EmbedAny, RenormsSkewChain) {
  Rational k = q(5, 4);
  Chain xs = trivial_chain(k);
  grow_chain(xs, fx::skew(), {}, "extension", std::nullopt, {});
  grow_chain(xs, fx::space({"p", "q", "r"}, {{q(5, 4), q(1, 2), 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, k),
             {{"p", "stage1:0"}, {"q", "stage1:1"}}, "extension", std::nullopt, {});
  Chain u = trivial_chain();
  auto r = embed_any(xs, u, q(1, 2));
  EXPECT_TRUE(r.renormed);
  ASSERT_EQ(r.maps.size(), 2u);
  for (const auto& d : r.distortion) {
    EXPECT_TRUE(is_epsilon_isometry(d, q(1, 2)));
    EXPECT_GE(d.lower, 1);
    EXPECT_LE(d.upper, k);
  }
  EXPECT_EQ(check_chain(u), "");
}
