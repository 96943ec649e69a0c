#include <gtest/gtest.h>

#include "cjt/chowring.hpp"
#include "cjt/realize.hpp"
#include "cjt/thetasheaf.hpp"

using namespace cjt;

namespace {

Polynomial Y(int p, int r, int i, int pw = 1, long c = 1) {
  std::vector<int> e(r, 0);
  e[i] = pw;
  return Polynomial::monomial(p, e, c);
}

ResolutionSpec line_bundle(int p, int r, long a) { return {p, r, {{a}}, {}}; }

// 0 -> O(-1) -> O^r -> T(-1) -> 0
ResolutionSpec euler(int p, int r) {
  ResolutionSpec s{p, r, {std::vector<long>(r, 0), {-1}}, {}};
  PolyMatrix m(r, std::vector<Polynomial>(1));
  for (int i = 0; i < r; ++i) m[i][0] = Y(p, r, i);
  s.maps.push_back(m);
  return s;
}

// 0 -> O(-2) -> O^2 -> O(2) -> 0 on P^1 via (Y1^2, Y2^2).
ResolutionSpec squares(int p) {
  ResolutionSpec s{p, 2, {{0, 0}, {-2}}, {}};
  s.maps.push_back({{Y(p, 2, 1, 2)}, {Y(p, 2, 0, 2, -1)}});
  return s;
}

// Koszul complex on P^2, resolving the zero sheaf.
ResolutionSpec koszul(int p) {
  const int r = 3;
  ResolutionSpec s{p, r, {{0}, {-1, -1, -1}, {-2, -2, -2}, {-3}}, {}};
  PolyMatrix d1(1, std::vector<Polynomial>(3));
  for (int i = 0; i < 3; ++i) d1[0][i] = Y(p, r, i);
  PolyMatrix d2(3, std::vector<Polynomial>(3));
  d2[0][0] = Y(p, r, 1, 1, -1);
  d2[1][0] = Y(p, r, 0);
  d2[0][1] = Y(p, r, 2, 1, -1);
  d2[2][1] = Y(p, r, 0);
  d2[1][2] = Y(p, r, 2, 1, -1);
  d2[2][2] = Y(p, r, 1);
  PolyMatrix d3(3, std::vector<Polynomial>(1));
  d3[0][0] = Y(p, r, 2);
  d3[1][0] = Y(p, r, 1, 1, -1);
  d3[2][0] = Y(p, r, 0);
  s.maps = {d1, d2, d3};
  return s;
}

// c(F) = prod over even levels of c(L) divided by prod over odd levels.
ChowClass chern_of_spec(const ResolutionSpec& s) {
  const int r = s.r;
  std::vector<BigInt> c(r, 0);
  c[0] = 1;
  for (std::size_t i = 0; i < s.twists.size(); ++i)
    for (long a : s.twists[i]) {
      std::vector<BigInt> nx(r, 0);
      // (1 + a h) or its inverse sum_k (-a h)^k
      std::vector<BigInt> f(r, 0);
      f[0] = 1;
      for (int k = 1; k < r; ++k) f[k] = i % 2 ? f[k - 1] * (-a) : (k == 1 ? BigInt(a) : BigInt(0));
      for (int x = 0; x < r; ++x)
        for (int y = 0; x + y < r; ++y) nx[x + y] += c[x] * f[y];
      c = nx;
    }
  return ChowClass::from(r, s.rank(), c);
}

bool stably_zero(const KEModule& a, const KEModule& b, const FFMatrix& f) {
  return factors_through_projective(a, b, f, injective_hull(a));
}

// Stable independence of maps a -> b over GF(p): no nontrivial combination
// factors through a projective.
bool stably_independent(const KEModule& a, const KEModule& b, const std::vector<FFMatrix>& maps) {
  const int p = a.p();
  std::size_t combos = 1;
  for (std::size_t k = 0; k < maps.size(); ++k) combos *= static_cast<std::size_t>(p);
  for (std::size_t idx = 1; idx < combos; ++idx) {
    FFMatrix sum(a.field(), b.dim(), a.dim());
    std::size_t t = idx;
    for (const auto& m : maps) {
      sum = sum + m.scaled(static_cast<Field::Elem>(t % p));
      t /= p;
    }
    if (stably_zero(a, b, sum)) return false;
  }
  return true;
}

void expect_realizes(const ResolutionSpec& spec) {
  auto out = realize_bundle(spec);
  const auto& m = out.module;
  auto v = check_constant(m);
  EXPECT_TRUE(v.constant) << out.report.str();
  for (int i = 2; i < spec.p; ++i) EXPECT_EQ(v.type.mult(i), 0u);
  EXPECT_EQ(static_cast<long>(v.type.mult(1)), spec.rank());
  auto want = chern_of_spec(spec);
  if (spec.p != 2) want = frobenius_pullback(want, spec.p);
  if (spec.rank() == 0) {
    EXPECT_EQ(m.dim(), 0u);
    return;
  }
  auto c = chern_from_hilbert(hilbert(m, 1).fitted, spec.r);
  EXPECT_EQ(c, want) << c.str() << " vs " << want.str() << "\n" << out.report.str();
  if (spec.p == 3) EXPECT_TRUE(divisibility_check(c, 3).pass);
}

}  // namespace

TEST(Polynomials, Arithmetic) {
  auto a = poly_add(Y(3, 2, 0), Y(3, 2, 1), 3);
  auto sq = poly_mul(a, a, 3);
  EXPECT_EQ(sq.terms.size(), 3u);
  EXPECT_EQ(sq.terms.at({1, 1}), 2);
  EXPECT_EQ(*sq.degree(), 2);
  EXPECT_FALSE(poly_add(Y(2, 2, 0), Y(2, 2, 0, 2), 2).degree());
  EXPECT_TRUE(poly_add(Y(2, 2, 0), Y(2, 2, 0), 2).is_zero());
  EXPECT_EQ(evaluate(sq, Point::prime(3, {1, 1})), 1);  // (1+1)^2 = 4 = 1
}

TEST(Spec, Validation) {
  EXPECT_NO_THROW(euler(2, 3).validate());
  EXPECT_NO_THROW(koszul(3).validate());
  auto bad = euler(2, 3);
  bad.maps[0][0][0] = Y(2, 3, 0, 2);
  EXPECT_THROW(bad.validate(), SpecInvalid);
  auto noncomplex = koszul(2);
  noncomplex.maps[1][0][0] = Y(2, 3, 1, 1, 0);
  EXPECT_THROW(noncomplex.validate(), SpecInvalid);
  ResolutionSpec shape{2, 2, {{0}, {-1}}, {}};
  EXPECT_THROW(shape.validate(), SpecInvalid);
  EXPECT_EQ(euler(3, 3).rank(), 2);
  EXPECT_EQ(koszul(2).rank(), 0);
}

TEST(Resolution, RanksForP2R2) {
  Resolution res(2, 2);
  EXPECT_EQ(res.omega(0).dim(), 1u);
  EXPECT_EQ(res.omega(1).dim(), 3u);
  for (int j = 0; j <= 4; ++j) EXPECT_EQ(res.generators(j), static_cast<std::size_t>(j + 1));
}

TEST(Resolution, CapIsEnforced) {
  ResourceCaps caps;
  caps.max_dim = 20;
  Resolution res(2, 3, caps);
  EXPECT_NO_THROW(res.omega(2));
  EXPECT_THROW(res.omega(3), ResourceCap);
}

TEST(Cocycles, GeneratorsAreStablyNonzero) {
  for (int p : {2, 3}) {
    Resolution res(p, 2);
    auto k = trivial_module(p, 2);
    const auto& src = res.omega(res.eps());
    std::vector<FFMatrix> gens;
    for (int i = 0; i < 2; ++i) {
      auto g = res.generator(i);
      EXPECT_TRUE(is_module_hom(src, k, g));
      EXPECT_FALSE(stably_zero(src, k, g));
      gens.push_back(g);
    }
    EXPECT_TRUE(stably_independent(src, k, gens));
  }
}

TEST(Cocycles, LiftOfIdentityAndZero) {
  Resolution res(3, 2);
  auto id = FFMatrix::identity(res.omega(0).field(), 1);
  auto l = res.lift(id, 0, 0);
  const auto& o1 = res.omega(1);
  EXPECT_TRUE(is_module_hom(o1, o1, l));
  EXPECT_TRUE(stably_zero(o1, o1, l - FFMatrix::identity(o1.field(), o1.dim())));
  auto z = res.lift(FFMatrix(o1.field(), 1, 1), 0, 0);
  EXPECT_TRUE(stably_zero(o1, o1, z));
}

TEST(Cocycles, DegreeTwoMonomialsSpanStableHomP2) {
  // Stable Hom(Omega^2 k, k) has dimension b_2 = 3 for p = 2, r = 2, spanned
  // by y1^2, y1y2, y2^2.
  Resolution res(2, 2);
  const auto& src = res.omega(2);
  auto k = trivial_module(2, 2);
  std::vector<FFMatrix> mons = {res.monomial({2, 0}, 0), res.monomial({1, 1}, 0), res.monomial({0, 2}, 0)};
  EXPECT_TRUE(stably_independent(src, k, mons));
  auto swapped = res.cocycle(1, 0) * res.cocycle(0, 1);
  EXPECT_TRUE(stably_zero(src, k, swapped - mons[1]));
}

TEST(Cocycles, PolynomialGeneratorsIndependentP3) {
  Resolution res(3, 2);
  const auto& src = res.omega(4);
  auto k = trivial_module(3, 2);
  std::vector<FFMatrix> mons = {res.monomial({2, 0}, 0), res.monomial({1, 1}, 0), res.monomial({0, 2}, 0)};
  EXPECT_TRUE(stably_independent(src, k, mons));
  auto swapped = res.cocycle(1, 0) * res.cocycle(0, 1);
  EXPECT_TRUE(stably_zero(src, k, swapped - mons[1]));
  EXPECT_THROW(res.monomial({0, 0}, 0), Error);
}

TEST(Cone, OfIdentityVanishesStably) {
  auto k = trivial_module(3, 2);
  auto c = cone(k, k, FFMatrix::identity(k.field(), 1));
  EXPECT_EQ(strip_free(c.module).module.dim(), 0u);
}

TEST(Cone, OfZeroSplits) {
  auto a = zigzag_module(2, 2, 1), b = rad_quotient(2, 2, 2);
  auto c = cone(a, b, FFMatrix(a.field(), b.dim(), a.dim()));
  auto stripped = strip_free(c.module).module;
  auto expect = direct_sum(b, omega(a, -1));
  EXPECT_EQ(stripped.dim(), expect.dim());
  for (const auto& pt : sample_points(2, 2, {})) EXPECT_EQ(jordan_type_at(stripped, pt), jordan_type_at(expect, pt));
  EXPECT_TRUE(is_module_hom(b, c.module, c.from_target));
  EXPECT_TRUE(is_module_hom(c.module, c.shift, c.to_shift));
}

TEST(Cone, GeneratorCocycleSplitsExactlyWhereY1IsNonzero) {
  Resolution res(2, 2);
  const auto& a = res.omega(1);
  auto b = trivial_module(2, 2);
  auto c = cone(a, b, res.generator(0));
  KEModule mid = direct_sum(b, free_module(2, 2, c.hull.copies));
  SamplingPlan plan;
  plan.extra = 30;
  for (const auto& pt : sample_points(2, 2, plan)) {
    auto lhs = jordan_type_at(mid, pt);
    auto rhs = jordan_type_at(a, pt) + jordan_type_at(c.module, pt);
    EXPECT_EQ(lhs == rhs, pt.coords[0] != 0) << pt.str();
  }
}

TEST(Cone, EulerConeIsLocallySplit) {
  for (int p : {2, 3}) {
    Resolution res(p, 3);
    const auto& a = res.omega(res.eps());
    KEModule b = KEModule::zero(p, 3);
    FFMatrix f(a.field(), 0, a.dim());
    for (int i = 0; i < 3; ++i) {
      b = direct_sum(b, trivial_module(p, 3));
      f = vstack(f, res.generator(i));
    }
    auto c = cone(a, b, f);
    KEModule mid = direct_sum(b, free_module(p, 3, c.hull.copies));
    for (const auto& pt : sample_points(p, 3, {}))
      EXPECT_EQ(jordan_type_at(mid, pt), jordan_type_at(a, pt) + jordan_type_at(c.module, pt)) << pt.str();
  }
}

TEST(Cone, MonomialConesVanishExactlyOffTheZeroLocus) {
  for (int p : {2, 3}) {
    Resolution res(p, 2);
    std::vector<int> e{1, 2};
    auto f = res.monomial(e, 0);
    auto c = cone(res.omega(3 * res.eps()), trivial_module(p, 2), f);
    auto mono = Polynomial::monomial(p, e);
    SamplingPlan plan;
    plan.extra = 20;
    for (const auto& pt : sample_points(p, 2, plan)) {
      auto dims = fiber(c.module, pt).dims;
      if (evaluate(mono, pt) != 0)
        EXPECT_EQ(dims[0], 0u) << pt.str();
      else
        EXPECT_GT(dims[0], 0u) << pt.str();
    }
  }
}

TEST(Realize, LineBundlesP2) {
  for (long a = -3; a <= 2; ++a) {
    auto out = realize_bundle(line_bundle(2, 2, a));
    auto c = chern_from_hilbert(hilbert(out.module, 1).fitted, 2);
    EXPECT_EQ(c, ChowClass::line(2, a)) << a;
  }
}

TEST(Realize, LineBundleP3IsOmega2) {
  auto out = realize_bundle(line_bundle(3, 2, -1));
  auto o2 = omega(trivial_module(3, 2), 2);
  EXPECT_EQ(out.module.dim(), o2.dim());
  for (int i = 0; i < 2; ++i) EXPECT_EQ(out.module.action(i), o2.action(i));
  expect_realizes(line_bundle(3, 2, -1));
}

TEST(Realize, EulerP2) {
  auto out = realize_bundle(euler(2, 3));
  EXPECT_EQ(out.module.dim(), 4u);
  expect_realizes(euler(2, 3));
}

TEST(Realize, BatteryP3) {
  expect_realizes(line_bundle(3, 2, -2));
  expect_realizes({3, 2, {{0, -1}}, {}});
  expect_realizes(euler(3, 2));
  expect_realizes(squares(3));
}

TEST(Realize, EulerP3OnP2) {
  auto out = realize_bundle(euler(3, 3));
  EXPECT_EQ(out.module.dim(), 29u);
  EXPECT_EQ(check_constant(out.module).type.str(), "[3]^9[1]^2");
  expect_realizes(euler(3, 3));
}

TEST(Realize, KoszulComplexNeedsTodaCorrection) {
  for (int p : {2, 3}) {
    auto out = realize_bundle(koszul(p));
    EXPECT_EQ(out.module.dim(), 0u) << out.report.str();
  }
}

TEST(Realize, ResourceCapsAreReported) {
  ResourceCaps caps;
  caps.max_dim = 30;
  EXPECT_THROW(realize_bundle(euler(3, 3), caps), ResourceCap);
  caps = {};
  caps.max_levels = 2;
  EXPECT_THROW(realize_bundle(koszul(2), caps), ResourceCap);
}
