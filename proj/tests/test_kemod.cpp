#include <gtest/gtest.h>

#include <random>
#include <set>

#include "cjt/kemod.hpp"

using namespace cjt;

namespace {

// Ranks b_n of the minimal resolution of k, read off from the cohomology
// ring: polynomial on r degree-1 classes for p = 2, polynomial on r
// degree-2 classes tensor exterior on r degree-1 classes for p odd.
long long resolution_rank(int p, int r, int n) {
  auto choose = [](long long a, long long b) {
    if (b < 0 || a < b) return 0LL;
    long long c = 1;
    for (long long k = 1; k <= b; ++k) c = c * (a - b + k) / k;
    return c;
  };
  if (p == 2) return choose(n + r - 1, r - 1);
  long long s = 0;
  for (int k = 0; k <= r && k <= n; ++k)
    if ((n - k) % 2 == 0) s += choose(r, k) * choose((n - k) / 2 + r - 1, r - 1);
  return s;
}

long long pow_ll(long long b, int e) {
  long long v = 1;
  while (e-- > 0) v *= b;
  return v;
}

// dim Omega^n k from the alternating sum along the minimal resolution.
long long omega_dim(int p, int r, int n) {
  long long d = 1;
  for (int j = 0; j < n; ++j) d = resolution_rank(p, r, j) * pow_ll(p, r) - d;
  return d;
}

KEModule random_builtin_sum(int p, int r, std::mt19937_64& rng) {
  KEModule m = KEModule::zero(p, r);
  int parts = 1 + static_cast<int>(rng() % 3);
  for (int k = 0; k < parts; ++k) {
    switch (rng() % 4) {
      case 0: m = direct_sum(m, trivial_module(p, r)); break;
      case 1: m = direct_sum(m, rad_quotient(p, r, 2)); break;
      case 2: m = direct_sum(m, perm_module(p, r, 1 + static_cast<int>(rng() % r))); break;
      default: m = direct_sum(m, omega(trivial_module(p, r), 1)); break;
    }
  }
  return m;
}

}  // namespace

TEST(GroupAlgebra, IndexRoundTrip) {
  GroupAlgebra ka(3, 3);
  EXPECT_EQ(ka.dim(), 27u);
  for (std::size_t idx = 0; idx < ka.dim(); ++idx) EXPECT_EQ(ka.index(ka.exponents(idx)), idx);
  EXPECT_EQ(ka.index({1, 2, 0}), 7u);
  EXPECT_FALSE(ka.times(ka.index({2, 0, 0}), 0));
  EXPECT_EQ(*ka.times(0, 2), 9u);
}

TEST(KEModule, RejectsNonCommutingAndNonNilpotent) {
  auto f = Field::make(2);
  FFMatrix a(f, 2, 2), b(f, 2, 2);
  a(0, 1) = 1;
  b(1, 0) = 1;
  try {
    KEModule::make(2, 2, {a, b});
    FAIL();
  } catch (const NonCommuting& e) {
    EXPECT_EQ(e.i, 1);
    EXPECT_EQ(e.j, 2);
  }
  FFMatrix id = FFMatrix::identity(f, 2);
  try {
    KEModule::make(2, 2, {a, id});
    FAIL();
  } catch (const NotPNilpotent& e) {
    EXPECT_EQ(e.i, 2);
  }
  EXPECT_NO_THROW(KEModule::make(2, 2, {a, a}));
}

TEST(JordanType, Formatting) {
  JordanType t{{2, 1}};
  EXPECT_EQ(t.str(), "[2][1]^2");
  EXPECT_EQ((JordanType{{0, 0}}.str()), "0");
  EXPECT_EQ(t.dim(), 4u);
}

TEST(JordanType, RegularModuleIsFreeEverywhere) {
  for (auto [p, r] : {std::pair{2, 2}, {2, 3}, {3, 2}}) {
    auto m = regular_module(p, r);
    auto v = check_constant(m);
    EXPECT_TRUE(v.constant);
    EXPECT_EQ(v.type.mult(p), static_cast<std::size_t>(pow_ll(p, r - 1)));
    EXPECT_EQ(v.type.stable().dim(), 0u);
  }
}

TEST(JordanType, PermutationModuleIsNotConstant) {
  auto m = perm_module(3, 2, 1);
  auto v = check_constant(m);
  EXPECT_FALSE(v.constant);
  EXPECT_EQ(v.type.str(), "[3]");
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->coords, (std::vector<Field::Elem>{0, 1}));
  EXPECT_EQ(v.type_at_witness.str(), "[1]^3");
}

TEST(JordanType, RadicalQuotientsAndZigzagsAreConstant) {
  auto v = check_constant(rad_quotient(2, 3, 2));
  EXPECT_TRUE(v.constant);
  EXPECT_EQ(v.type.str(), "[2][1]^2");
  auto z = check_constant(zigzag_module(3, 2, 3));
  EXPECT_TRUE(z.constant);
  EXPECT_EQ(z.type.str(), "[2]^3[1]");
  EXPECT_GT(z.points_checked, 200u);
  EXPECT_EQ(z.fields_used, (std::vector<int>{1, 2, 3, 4}));
}

TEST(Points, CountsAndNormalization) {
  for (auto [p, e, r] : {std::tuple{2, 1, 3}, {3, 1, 2}, {2, 2, 2}, {3, 2, 3}}) {
    auto f = Field::make(p, e);
    auto pts = projective_points(f, r);
    long long q = pow_ll(p, e);
    EXPECT_EQ(static_cast<long long>(pts.size()), (pow_ll(q, r) - 1) / (q - 1));
    std::set<std::vector<Field::Elem>> seen;
    for (const auto& pt : pts) {
      EXPECT_EQ(pt.normalized().coords, pt.coords);
      seen.insert(pt.coords);
    }
    EXPECT_EQ(seen.size(), pts.size());
    EXPECT_EQ(pts.front().coords[0], 1);
  }
}

TEST(Sampling, IsDeterministicAndStartsAtAxis) {
  auto a = sample_points(3, 3, {});
  auto b = sample_points(3, 3, {});
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].coords, b[k].coords);
  EXPECT_EQ(a.front().coords, (std::vector<Field::Elem>{1, 0, 0}));
}

TEST(Heller, OmegaOfTrivialP2R2HasDimThree) {
  auto m = omega(trivial_module(2, 2), 1);
  EXPECT_EQ(m.dim(), 3u);
  EXPECT_NO_THROW(m.validate());
}

TEST(Heller, DimensionsAndCoverRanksMatchCohomology) {
  for (auto [p, r, nmax] : {std::tuple{2, 2, 4}, {2, 3, 3}, {3, 2, 4}, {3, 3, 2}}) {
    KEModule cur = trivial_module(p, r);
    for (int n = 0; n <= nmax; ++n) {
      EXPECT_EQ(static_cast<long long>(cur.dim()), omega_dim(p, r, n)) << p << " " << r << " " << n;
      auto pc = projective_cover(cur);
      EXPECT_EQ(static_cast<long long>(pc.generators), resolution_rank(p, r, n));
      cur = syzygy(cur).module;
    }
  }
}

TEST(Heller, KnownDimensions) {
  EXPECT_EQ(omega(trivial_module(2, 3), 3).dim(), 31u);
  EXPECT_EQ(omega(trivial_module(3, 2), 4).dim(), 19u);
  EXPECT_EQ(omega(trivial_module(3, 3), 2).dim(), 55u);
}

TEST(Heller, CosyzygyUndoesSyzygy) {
  for (auto [p, r] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
    auto k = trivial_module(p, r);
    auto back = omega(omega(k, 1), -1);
    EXPECT_EQ(back.dim(), 1u);
    auto m = rad_quotient(p, r, 2);
    auto m2 = omega(omega(m, -2), 2);
    EXPECT_EQ(m2.dim(), m.dim());
    EXPECT_EQ(jordan_type_at(m2, Point::prime(p, std::vector<long long>(r, 1))),
              jordan_type_at(m, Point::prime(p, std::vector<long long>(r, 1))));
  }
}

TEST(Heller, ShiftReversesStableJordanType) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    int p = trial % 2 ? 3 : 2, r = 2 + trial % 3 / 2;
    auto m = random_builtin_sum(p, r, rng);
    auto om = omega(m, 1);
    Point pt = Point::prime(p, std::vector<long long>(r, 1));
    auto a = jordan_type_at(m, pt), b = jordan_type_at(om, pt);
    for (int i = 1; i < p; ++i) EXPECT_EQ(b.mult(p - i), a.mult(i));
  }
}

TEST(Hull, EmbeddingIsInjectiveModuleMap) {
  for (auto m : {trivial_module(3, 2), rad_quotient(2, 3, 3), zigzag_module(2, 2, 2), omega(trivial_module(2, 2), 2)}) {
    auto h = injective_hull(m);
    KEModule hull = free_module(m.p(), m.r(), h.copies);
    EXPECT_TRUE(is_module_hom(m, hull, h.embedding));
    EXPECT_EQ(rank(h.embedding), m.dim());
    EXPECT_EQ(h.copies, socle_basis(m).cols());
  }
}

TEST(Cover, MapIsSurjectiveModuleMap) {
  for (auto m : {rad_quotient(3, 2, 3), zigzag_module(3, 2, 2), dual(zigzag_module(2, 2, 3))}) {
    auto pc = projective_cover(m);
    EXPECT_TRUE(is_module_hom(free_module(m.p(), m.r(), pc.generators), m, pc.map));
    EXPECT_EQ(rank(pc.map), m.dim());
  }
}

TEST(Dual, IsInvolutiveOnJordanData) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    int p = trial % 2 ? 3 : 2, r = 2;
    auto m = random_builtin_sum(p, r, rng);
    auto d = dual(m);
    EXPECT_NO_THROW(d.validate());
    for (const auto& pt : projective_points(Field::make(p), r)) EXPECT_EQ(jordan_type_at(d, pt), jordan_type_at(m, pt));
    auto dd = dual(d);
    for (int i = 0; i < r; ++i) EXPECT_EQ(dd.action(i), m.action(i));
  }
}

TEST(Tensor, UnitAndFreeness) {
  auto k = trivial_module(3, 2);
  auto m = zigzag_module(3, 2, 2);
  auto km = tensor(k, m);
  for (int i = 0; i < 2; ++i) EXPECT_EQ(km.action(i), m.action(i));
  auto fm = tensor(regular_module(3, 2), m);
  EXPECT_NO_THROW(fm.validate());
  auto v = check_constant(fm);
  EXPECT_TRUE(v.constant);
  EXPECT_EQ(v.type.mult(3), fm.dim() / 3);
  EXPECT_EQ(strip_free(fm).module.dim(), 0u);
}

TEST(Tensor, JordanTypeOfTwoBlocksP2) {
  // [2] (x) [2] = [2]^2 in characteristic 2.
  auto m = rad_quotient(2, 2, 2);
  auto t = tensor(m, m);
  EXPECT_NO_THROW(t.validate());
  auto jt = jordan_type_at(t, Point::prime(2, {1, 0}));
  // rad_quotient(2,2,2) at (1,0) is [2][1], so the product is [2]^2 + [2]^2 + [1].
  EXPECT_EQ(jt.str(), "[2]^4[1]");
}

TEST(Strip, RemovesExactlyTheFreeSummands) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    int p = trial % 2 ? 3 : 2, r = 2;
    auto core = random_builtin_sum(p, r, rng);
    std::size_t copies = 1 + trial % 2;
    auto m = direct_sum(core, free_module(p, r, copies));
    auto s = strip_free(m);
    EXPECT_EQ(s.free_count, copies);
    EXPECT_EQ(s.module.dim(), core.dim());
    EXPECT_NO_THROW(s.module.validate());
    EXPECT_TRUE(is_module_hom(s.module, m, s.inclusion));
    EXPECT_EQ(rank(s.inclusion), s.module.dim());
    EXPECT_EQ(strip_free(s.module).free_count, 0u);
  }
}

TEST(Stable, FactorizationThroughProjectives) {
  auto kE = regular_module(2, 2);
  EXPECT_TRUE(factors_through_projective(kE, kE, FFMatrix::identity(kE.field(), 4), injective_hull(kE)));
  auto k = trivial_module(2, 2);
  EXPECT_FALSE(factors_through_projective(k, k, FFMatrix::identity(k.field(), 1), injective_hull(k)));
  EXPECT_TRUE(factors_through_projective(k, k, FFMatrix(k.field(), 1, 1), injective_hull(k)));
  // The inclusion of the socle of kE factors through kE itself.
  FFMatrix soc(k.field(), 4, 1);
  soc(3, 0) = 1;
  FFMatrix ext;
  ASSERT_TRUE(factors_through_projective(k, kE, soc, injective_hull(k), &ext));
  auto h = injective_hull(k);
  EXPECT_EQ(free_map(kE, ext) * h.embedding, soc);
}

TEST(Builtins, ZigzagShape) {
  auto z = zigzag_module(2, 2, 3);
  EXPECT_EQ(z.dim(), 7u);
  EXPECT_EQ(projective_cover(z).generators, 4u);
  EXPECT_EQ(socle_basis(z).cols(), 3u);
  EXPECT_THROW(zigzag_module(2, 3, 1), ModuleError);
  EXPECT_THROW(rad_quotient(2, 2, 4), ModuleError);
}
