#include <gtest/gtest.h>

#include "ubk/suites.hpp"
#include "fixtures.hpp"

using namespace ubk;
using fx::q;

TEST(Suites, RandomSpacesValidate) {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    Rational k = i % 2 ? q(3, 2) : q(1);
    auto s = random_space(rng, 1 + i % 3, 8, k, "v");
    EXPECT_TRUE(validate(s).valid);
    EXPECT_EQ(s.labels.front(), "v1");
    for (const auto& g : s.ball.generators())
      for (const auto& x : g) EXPECT_LE(x.get_den(), 8);
  }
}

TEST(Suites, RandomSpaceReplays) {
  Rng a(9), b(9);
  EXPECT_EQ(random_space(a, 3, 6, q(2)), random_space(b, 3, 6, q(2)));
}

TEST(Suites, SmallRuns) {
  for (const std::string name : {"amalgam", "quotient", "l1sum", "suppression", "extension", "renorm"}) {
    SuiteResult r = run_suite(name, SuiteConfig{4, 11});
    EXPECT_TRUE(r.pass) << name << ": " << r.detail;
    EXPECT_EQ(r.name, name);
    EXPECT_TRUE(r.counterexample.is_null());
  }
}

TEST(Suites, Epsilon) {
  SuiteResult r = run_suite("epsilon");
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Suites, UnknownName) {
  EXPECT_EQ(suite_names().size(), 10u);
  EXPECT_THROW(run_suite("nope"), Error);
}
