#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"

namespace gs::testing {
namespace {

// Sign of the permutation taking `order` to the sorted order of its positions
// in `reference`.
int permutation_sign(const std::vector<std::string>& order, const std::vector<std::string>& reference) {
  std::vector<int> pos;
  for (const auto& n : order)
    pos.push_back(static_cast<int>(std::find(reference.begin(), reference.end(), n) - reference.begin()));
  int inversions = 0;
  for (std::size_t i = 0; i < pos.size(); ++i)
    for (std::size_t j = i + 1; j < pos.size(); ++j)
      if (pos[i] > pos[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

TEST(Exterior, WedgeSigns) {
  EXPECT_EQ(wedge_sign(0b01, 0b10), 1);
  EXPECT_EQ(wedge_sign(0b10, 0b01), -1);
  EXPECT_EQ(wedge_sign(0b100, 0b011), 1);
  EXPECT_EQ(wedge_sign(0b010, 0b101), -1);
  EXPECT_EQ(wedge_sign(0b011, 0b010), 0);
  FramePtr R3 = flat_frame(3);
  EXPECT_EQ(wedge(R3->e("dx2"), R3->e("dx1")), -R3->basis({"dx1", "dx2"}));
  EXPECT_EQ(R3->basis({"dx3", "dx1", "dx2"}), R3->basis({"dx1", "dx2", "dx3"}));
  EXPECT_TRUE(wedge(R3->e("dx1"), R3->e("dx1")).is_zero());
}

TEST(Exterior, ExteriorDerivativeOnCoordinates) {
  FramePtr R3 = flat_frame(3);
  const auto& r = R3->ring();
  EXPECT_EQ(d(R3->scalar(r->parse("x1*x2"))), R3->e("dx1") * r->gen("x2") + R3->e("dx2") * r->gen("x1"));
  EXPECT_EQ(d(R3->e("dx2") * r->gen("x1")), R3->basis({"dx1", "dx2"}));
  EXPECT_EQ(d(R3->e("dx1") * r->parse("x3^2")), R3->basis({"dx3", "dx1"}) * r->parse("2*x3"));
}

TEST(Exterior, RejectsFrameWithNonzeroDSquared) {
  RingPtr r = Ring::create({{"x", 0, {}, {}, {}}});
  FrameSpec spec{r, {"e1", "e2", "e3"}, {{"e3", {raw_term("x", {"e1", "e2"})}}}, {{"x", {raw_term("1", {"e3"})}}}};
  EXPECT_THROW(DifferentialFrame::create(spec), FrameError);
  spec.require_closed = false;
  FramePtr f = DifferentialFrame::create(spec);
  EXPECT_FALSE(f->closed());
  bool found = false;
  for (const auto& [name, dd] : f->d_squared()) {
    if (name == "e3") {
      found = true;
      EXPECT_EQ(dd, f->basis({"e1", "e2", "e3"}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Exterior, FrameRejectsMissingDRule) {
  RingPtr r = Ring::create({{"x", 0, {}, {}, {}}});
  FrameSpec spec{r, {"e1"}, {{"e1", {raw_term("x", {"e1"})}}}, {}};
  // d(x e1) needs dx; a frame may be declared but d of x cannot be computed.
  FramePtr f;
  try {
    f = DifferentialFrame::create(spec);
  } catch (const FrameError&) {
    SUCCEED();
    return;
  }
  EXPECT_THROW(d(f->scalar(r->gen("x"))), FrameError);
}

TEST(Exterior, InteriorProduct) {
  FramePtr R3 = flat_frame(3);
  FrameVector d1 = FrameVector::basis(R3, "dx1"), d2 = FrameVector::basis(R3, "dx2");
  EXPECT_EQ(interior(d1, R3->basis({"dx1", "dx2"})), R3->e("dx2"));
  EXPECT_EQ(interior(d2, R3->basis({"dx1", "dx2"})), -R3->e("dx1"));
  EXPECT_EQ(interior(d2, R3->basis({"dx1", "dx2", "dx3"})), -R3->basis({"dx1", "dx3"}));
  EXPECT_EQ(pair(R3->e("dx1") * Rational(3), d1), R3->ring()->constant(3));
}

TEST(Exterior, HodgeMatchesPermutationOracle) {
  std::vector<FramePtr> frames = {build_s6().s6.frame, flat_frame(6),
                                  flat_frame(5, {}, std::vector<std::string>{"dx1", "dx3", "dx2", "dx4", "dx5"})};
  for (int k = 0; k < 2; ++k) {
    const FramePtr& f = frames[k == 0 ? 0 : 2];
    const auto& orient = *f->spec().orientation;
    const int n = f->dim();
    for (Mask m = 0; m < (Mask(1) << n); ++m) {
      std::vector<std::string> I, Ic;
      for (int i = 0; i < n; ++i) ((m >> i) & 1 ? I : Ic).push_back(f->name(i));
      std::vector<std::string> all = I;
      all.insert(all.end(), Ic.begin(), Ic.end());
      Form expected = f->basis(Mask(((Mask(1) << n) - 1) & ~m)) * Rational(permutation_sign(all, orient));
      ASSERT_EQ(hodge_flat(f->basis(m)), expected) << f->basis(m).to_string();
    }
  }
  EXPECT_THROW(hodge_flat(frames[1]->e("dx1")), FrameError);
}

TEST(Exterior, HodgeOfOneIsVolume) {
  FramePtr R7 = build_s6().s6.frame;
  EXPECT_EQ(hodge_flat(R7->scalar(Rational(1))),
            R7->basis({"dx2", "dx1", "dx3", "dx4", "dx5", "dx6", "dx7"}));
}

TEST(Exterior, WedgeWithHodgeIsNormSquaredVolume) {
  FramePtr R7 = build_s6().s6.frame;
  Form vol = hodge_flat(R7->scalar(Rational(1)));
  std::mt19937_64 g(9);
  for (int i = 0; i < 100; ++i) {
    int k = static_cast<int>(g() % 8);
    Form a = random_form(R7, k, {}, g, 4);
    Rational norm = 0;
    for (const auto& [m, c] : a.terms()) norm += c.constant_value() * c.constant_value();
    ASSERT_EQ(wedge(a, hodge_flat(a)), vol * norm);
  }
}

TEST(Exterior, PullbackOfSixSphereFormToEquator) {
  S6Data s6 = build_s6();
  S5Data s5 = build_s5(s6);
  FramePtr R6 = s5.literal.frame;
  FrameMap equator = FrameMap::by_name(s6.s6.frame, R6, {{"x7", R6->ring()->zero()}}, {{"dx7", R6->zero(1)}});
  EXPECT_TRUE(is_zero_on_locus(equator.apply(s6.s6.F) - s5.literal.omega1, s5.literal.locus).zero);
}

TEST(Exterior, QuaternionFormOnSliceOfThreeSphere) {
  S3S3Data s3 = build_s3s3();
  FramePtr R8 = s3.ambient.frame;
  const auto& r = R8->ring();
  FrameMap slice = FrameMap::by_name(R8, R8, {{"x4", r->zero()}}, {{"dx4", R8->zero(1)}});
  Form a1 = slice.apply(s3.embed->apply(s3.lie.frame->e("a1")));
  EXPECT_EQ(a1, (R8->e("dx2") * r->gen("x3") - R8->e("dx3") * r->gen("x2")) * Rational(2));
}

TEST(Exterior, InconsistentMapRejected) {
  FramePtr R2 = flat_frame(2);
  EXPECT_THROW(FrameMap::by_name(R2, R2, {}, {{"dx1", R2->e("dx1") * Rational(2)}}), FrameError);
  FrameMap ok = FrameMap::by_name(R2, R2, {{"x1", R2->ring()->parse("2*x1")}}, {{"dx1", R2->e("dx1") * Rational(2)}});
  for (const auto& [name, defect] : ok.defects()) EXPECT_TRUE(defect.is_zero()) << name;
}

TEST(Exterior, SphereLocusDecisions) {
  FramePtr R3 = flat_frame(3);
  LocusPtr S2 = sphere_locus(R3, 3);
  const auto& r = R3->ring();
  Form radial = R3->e("dx1") * r->gen("x1") + R3->e("dx2") * r->gen("x2") + R3->e("dx3") * r->gen("x3");
  EXPECT_TRUE(S2->test(radial).zero);
  EXPECT_FALSE(S2->test(R3->e("dx1")).zero);
  EXPECT_TRUE(S2->is_zero(r->parse("x1^2 + x2^2 + x3^2 - 1")));
  EXPECT_FALSE(S2->is_zero(r->parse("x1^2 + x2^2 - 1")));
  // On a surface every 3-form restricts to zero: decided by degree alone.
  ZeroTest top = S2->test(R3->basis({"dx1", "dx2", "dx3"}));
  EXPECT_TRUE(top.zero);
  EXPECT_TRUE(top.vacuous);
  ZeroTest two = S2->test(R3->basis({"dx1", "dx2"}));
  EXPECT_FALSE(two.zero);
  EXPECT_FALSE(two.vacuous);
  // x3 dx12 - x2 dx13 + x1 dx23 is the area form, nonzero on the sphere.
  Form area = R3->basis({"dx1", "dx2"}) * r->gen("x3") - R3->basis({"dx1", "dx3"}) * r->gen("x2") +
              R3->basis({"dx2", "dx3"}) * r->gen("x1");
  EXPECT_FALSE(S2->test(area).zero);
  EXPECT_TRUE(S2->test(wedge(radial, area) - R3->basis({"dx1", "dx2", "dx3"})).zero);
}

TEST(Exterior, MetricOnUnitNormal) {
  S6Data s6 = build_s6();
  FramePtr R7 = s6.s6.frame;
  BilinearForm g = euclidean_metric(R7);
  LocusPtr sphere = sphere_locus(R7, 7);
  RingElement nn = eval_bilinear(g, s6.radial, s6.radial);
  EXPECT_TRUE(sphere->is_zero(nn - R7->ring()->one()));
  // Numeric oracle: sum of squares at random unit vectors.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 20; ++i) {
    std::vector<double> x(7);
    for (double& v : x) v = n01(rng);
    double len = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    std::map<std::string, double> at;
    for (int j = 0; j < 7; ++j) at["x" + std::to_string(j + 1)] = x[j] / len;
    EXPECT_NEAR(nn.evaluate(at), 1.0, 1e-12);
  }
  EXPECT_TRUE(eval_bilinear(g, s6.radial, FrameVector(R7)).is_zero());
}

TEST(Exterior, ThreeSphereProductMetricOnDualVectors) {
  S3S3Data s3 = build_s3s3();
  for (int j = 0; j < 3; ++j) {
    RingElement uu = eval_bilinear(s3.ambient_metric, s3.U[j], s3.U[j]);
    EXPECT_TRUE(s3.locus->is_zero(uu - uu.ring()->constant(Rational(1, 9))));
  }
  RingElement uv = eval_bilinear(s3.ambient_metric, s3.U[0], s3.V[0]);
  EXPECT_TRUE(s3.locus->is_zero(uv + uv.ring()->constant(Rational(1, 18))));
}

TEST(Exterior, MetricMustBeSymmetric) {
  FramePtr R2 = flat_frame(2);
  const auto& r = R2->ring();
  EXPECT_THROW(BilinearForm(R2, {{r->one(), r->one()}, {r->zero(), r->one()}}), FrameError);
  EXPECT_THROW(BilinearForm(R2, {}), FrameError);
}

}  // namespace
}  // namespace gs::testing
