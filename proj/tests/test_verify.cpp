#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cjt/verify.hpp"

using namespace cjt;
namespace vf = cjt::verify;

TEST(Describe, LineBundlesAndOthers) {
  EXPECT_EQ(vf::describe(ChowClass::line(2, -5)), "O(-5)");
  EXPECT_EQ(vf::describe(ChowClass::from(3, 1, {1, -2, 0})), "O(-2)");
  EXPECT_EQ(vf::describe(ChowClass::from(3, 1, {1, -2, 3})), "rank 1, c = 1-2h+3h^2");
  EXPECT_EQ(vf::describe(ChowClass::from(3, 2, {1, 1, 1})), "rank 2, c = 1+h+h^2");
  EXPECT_EQ(vf::describe(ChowClass::from(3, 1, {1, 1, 1})), "rank 1, c = 1+h+h^2");
}

TEST(SpecChern, MatchesKnownBundles) {
  EXPECT_EQ(vf::spec_chern(vf::specs::euler(2, 3)), ChowClass::from(3, 2, {1, 1, 1}));
  EXPECT_EQ(vf::spec_chern(vf::specs::euler(3, 4)), ChowClass::from(4, 3, {1, 1, 1, 1}));
  EXPECT_EQ(vf::spec_chern(vf::specs::squares(3)), ChowClass::line(2, 2));
  EXPECT_EQ(vf::spec_chern(vf::specs::koszul(2)), ChowClass::from(3, 0, {1}));
  EXPECT_EQ(vf::spec_chern(vf::specs::sum(3, 3, {1, -1})), ChowClass::from(3, 2, {1, 0, -1}));
}

TEST(SpecBuilders, Validate) {
  for (int p : {2, 3})
    for (const auto& e : vf::specs::standard(p)) EXPECT_NO_THROW(e.spec.validate()) << e.name;
}

TEST(Battery, CoversTheStandardFamilies) {
  auto b = vf::battery(3, 2);
  std::vector<std::string> names;
  for (const auto& n : b) names.push_back(n.name);
  for (const char* want : {"trivial", "regular", "radq2", "perm1", "zigzag2", "omega-2"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  EXPECT_EQ(vf::battery(2, 3).size(), 10u);
}

TEST(Suites, RestrictedRunsAreSmall) {
  vf::Options o;
  o.p = 2;
  o.r = 2;
  o.module = "builtin:zigzag2";
  auto r = vf::duality(o);
  EXPECT_TRUE(r.pass()) << r.table();
  EXPECT_EQ(r.cases.size(), 2u);
  EXPECT_NE(r.table().find("PASS: 2/2"), std::string::npos);
}

TEST(Suites, FailuresAreReported) {
  vf::SuiteResult r;
  r.name = "x";
  r.cases.push_back({"a", true, "", true});
  r.cases.push_back({"b", false, "bad", true});
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.failures(), 1u);
  EXPECT_NE(r.table().find("FAIL  b"), std::string::npos);
  EXPECT_FALSE(vf::SuiteResult{}.pass());
}

TEST(Suites, NamesAreUnique) {
  std::set<std::string> seen;
  for (const auto& [n, f] : vf::suites()) EXPECT_TRUE(seen.insert(n).second) << n;
  EXPECT_EQ(seen.size(), 15u);
  EXPECT_TRUE(vf::find_suite("omegank"));
  EXPECT_FALSE(vf::find_suite("all"));
}
