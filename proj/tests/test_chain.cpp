#include <gtest/gtest.h>

#include "ubk/chain.hpp"
#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(Chain, TrivialStart) {
  Chain c = trivial_chain();
  EXPECT_EQ(c.stages.size(), 1u);
  EXPECT_EQ(c.top().dim(), 0u);
  EXPECT_EQ(check_chain(c), "");
}

TEST(Chain, GrowRenamesAndGlues) {
  Chain c = trivial_chain();
  auto r1 = grow_chain(c, l1_space({"a", "b"}), {}, "extension", std::nullopt, {});
  EXPECT_EQ(r1.stage, 1u);
  EXPECT_EQ(c.top().labels, (std::vector<Label>{"stage1:0", "stage1:1"}));
  EXPECT_TRUE(is_isometry(r1.g).isometry);

  // glue a diamond along stage1:0
  auto y = fx::diamond({"u", "v"});
  auto r2 = grow_chain(c, y, {{"u", "stage1:0"}}, "request", 1, {{"stage1:0", "u"}});
  EXPECT_EQ(c.top().labels, (std::vector<Label>{"stage1:0", "stage1:1", "stage2:0"}));
  EXPECT_EQ(r2.g.label_map(), (std::vector<std::pair<Label, Label>>{{"u", "stage1:0"}, {"v", "stage2:0"}}));
  EXPECT_TRUE(is_isometry(r2.g).isometry);
  EXPECT_TRUE(is_isometry(c.inclusion(1, 2)).isometry);
  EXPECT_TRUE(is_isometry(c.inclusion(0, 2)).isometry);
  EXPECT_EQ(c.log.size(), 2u);
  EXPECT_EQ(check_chain(c), "");
}

TEST(Chain, DuplicateGeneratorsDropped) {
  Chain c = trivial_chain();
  grow_chain(c, l1_space({"a"}), {}, "extension", std::nullopt, {});
  grow_chain(c, l1_space({"a"}), {{"a", "stage1:0"}}, "extension", std::nullopt, {});
  EXPECT_EQ(c.top().dim(), 1u);
  EXPECT_EQ(c.top().ball.generator_count(), 1u);
}

TEST(Chain, RejectsNonIsometricGlue) {
  Chain c = trivial_chain();
  grow_chain(c, fx::diamond({"a", "b"}), {}, "extension", std::nullopt, {});
  // the diagonal of l1 is shorter than the diagonal of the square
  auto y = l1_space({"x", "y", "z"});
  EXPECT_THROW(grow_chain(c, y, {{"x", "stage1:0"}, {"y", "stage1:1"}}, "extension", std::nullopt, {}), Error);
  EXPECT_EQ(c.stages.size(), 2u);
}

TEST(Chain, CheckDetectsBrokenLog) {
  Chain c = trivial_chain();
  grow_chain(c, l1_space({"a"}), {}, "request", 0, {});
  c.log[0].f = {{"ghost", "a"}};
  EXPECT_NE(check_chain(c), "");
}
